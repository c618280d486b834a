#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kakeya/erosion.hpp"
#include "kakeya/hull3d.hpp"

namespace kakeya {

/* Two bodies showing that continuous placement selection dies above the
 * plane.
 *
 * The 3D body is the convex hull of the swept circles
 *   (t, x, y) -> (t + x, y cos t, y sin t) / 2,  t in [0, pi], x^2 + y^2 = 1:
 * it contains a unit segment in every direction, yet the valid translate
 * for direction (0, cos phi, sin phi) is a single point that jumps by pi/2
 * (in the first coordinate) as phi crosses 0.
 *
 * The 4D body replaces the segment probe by the two-sphere pair
 *   S_v = { v' : |v'| = 1, <v, v'> = +-1/2 },
 * glued to a dyadic family of translate budgets A_p; near v = e1 any
 * continuous motion of v forces the placement to jump by at least 1/100. */

/* ------------------------------------------------------------------ */
/*  Shared sampling helper                                            */
/* ------------------------------------------------------------------ */

/* Deterministic, nearly uniform unit directions (golden-angle spiral). */
std::vector<Vec<3>> fibonacci_sphere(int n);

/* ------------------------------------------------------------------ */
/*  3D: swept-circle body                                              */
/* ------------------------------------------------------------------ */

inline Vec<3> sweep_map(double t, double x, double y) {
  return vec3(0.5 * (t + x), 0.5 * y * std::cos(t), 0.5 * y * std::sin(t));
}

struct SweptCircleBody {
  int n_t = 0, n_circle = 0;
  VPolytope<3> points;   /* the sampled sweep image */
  Hull3D hull;           /* its convex hull */
  HPolytope<3> hrep;     /* hull faces, reused by erosion and membership */
  /* how far an exact surface point can stick out of the sampled hull;
   * derived from the grid spacing, confirmed by the witness check */
  double surface_slack = 0;
};

/* Samples the sweep map on an inclusive t-grid and a full circle grid,
 * hulls the cloud, and certifies the direction-coverage property on
 * `n_witness` random directions via the exact witness pair
 * f(phi, r) - f(phi, -r) = v.  Fails with ResolutionTooLow when a witness
 * escapes the hull by more than the predicted surface slack. */
SweptCircleBody build_swept_body(int n_t, int n_circle, int n_witness = 100,
                                 uint64_t seed = 271828);

/* The unique translate placing a unit segment of direction
 * (0, cos phi, sin phi) inside the exact swept body:
 *   phi in (0, pi):  (phi, -cos phi, -sin phi) / 2
 *   phi in (-pi, 0): (pi + phi, -cos phi, -sin phi) / 2
 * The two branches disagree in the limit at phi = 0: the placement is
 * forced to jump by pi/2. */
Vec<3> expected_translate_3d(double phi);

struct TranslateProbe3D {
  double phi = 0;
  Vec<3> translate{};        /* deepest point of the computed translate set */
  Vec<3> expected{};         /* closed-form singleton */
  double center_distance = 0; /* |translate - expected| */
  double hausdorff = 0;       /* max |x - expected| over the translate set */
  double extent = 0;          /* max |x - translate| over the translate set */
  SetKind kind = SetKind::Empty;
};

struct DiscontinuityReport {
  double probe_length = 0;  /* stick shrunk below 1 by the hull slack */
  double point_tol = 0;     /* dimension classification resolution */
  std::vector<TranslateProbe3D> probes;
  /* distance between the translates at the smallest positive and smallest
   * negative probed angle; approaches pi/2 as those angles shrink */
  std::optional<double> measured_jump;
  double expected_jump = 0; /* pi/2 */
};

/* Erodes the hull by a (slightly shrunk) unit stick for each angle and
 * compares the resulting near-singleton translate set with the formula.
 * Fails with ResolutionTooLow when some translate set comes out empty. */
DiscontinuityReport verify_discontinuity(const SweptCircleBody& body,
                                         const std::vector<double>& phis);

/* How far the computed translate set may sit from the closed-form point
 * at this resolution.  Two effects, both calibrated over a resolution
 * sweep: facet slack lets the stick endpoints roam a window of width
 * ~sqrt(slack), and near the jump angles (0 and pi) the shortened stick
 * slides along the hull's wall chords, stretching the translate set by
 * ~shrink / m^2 where m is the angular distance to the nearer jump. */
double singleton_tolerance(const SweptCircleBody& body, double phi,
                           double base = 0.02);

/* ------------------------------------------------------------------ */
/*  4D: dyadic translate budgets A_p                                   */
/* ------------------------------------------------------------------ */

/* The four budget sets, all inside [0,1]^2:
 *   T1 = {0} x [0,1],  T2 = [0,1] x {0},  T3 = {z + w = 1, z, w >= 0},
 *   T  = the full triangle {z, w >= 0, z + w <= 1}.
 * A point p = (x, y) on the circle selects one of them from the dyadic
 * position of s = min(|x - 1/2|, |x + 1/2|): s = 0 or s = 2^-k exactly
 * gives T; otherwise the k with 2^-k > s > 2^-(k+1) gives T_(k mod 3),
 * reading T_0 as T3.  The rule never looks at y, so A_p = A_{-p}. */
enum class ApSet { T = 0, T1 = 1, T2 = 2, T3 = 3 };

ApSet a_p_label(double x);
inline ApSet a_p_label(const Direction<2>& p) { return a_p_label(p[0]); }

const VPolytope<2>& ap_vertices(ApSet which);
HPolytope<2> ap_hrep(ApSet which);
inline HPolytope<2> a_p(const Direction<2>& p) { return ap_hrep(a_p_label(p)); }

/* Exact intersection of two budget sets (every pair meets). */
VPolytope<2> ap_intersection(ApSet a, ApSet b);

struct ApReport {
  int intersection_checks = 0, intersection_failures = 0;  /* pairs meet */
  int symmetry_checks = 0, symmetry_failures = 0;          /* A_p = A_-p */
  int norm_checks = 0, norm_failures = 0;                  /* |t| <= 1 */
  int closedness_checks = 0, closedness_failures = 0;      /* graph closed */
  int far_set_checks = 0, far_set_failures = 0;            /* 1/100 escape */
  bool all_pass() const {
    return intersection_failures == 0 && symmetry_failures == 0 &&
           norm_failures == 0 && closedness_failures == 0 &&
           far_set_failures == 0;
  }
};

/* Checks the five properties the 4D construction leans on: random pairs
 * intersect (by LP feasibility, not the table), the rule is even, budgets
 * stay in the unit ball, the graph {(p, t) : t in A_p} is closed along
 * convergent sequences, and for any target (z, w) there is an arbitrarily
 * small dyadic radius whose budget set sits >= 1/100 away from it. */
ApReport verify_ap_properties(int n_pairs, int n_prop5_trials, uint64_t seed);

/* ------------------------------------------------------------------ */
/*  4D: probe spheres and their cylinder trace                         */
/* ------------------------------------------------------------------ */

/* S_v meets the cylinder C = {x^2 + y^2 = 1, z = w = 0 on the sphere}
 * in 0, 2 or 4 points depending on v_1^2 + v_2^2 vs 1/4. */
enum class SvCylKind { None, Pair, TwoPairs };

struct SvCylResult {
  SvCylKind kind = SvCylKind::None;
  /* None: empty.  Pair: { v', -v' }.  TwoPairs: { v', -v', v'', -v'' }.
   * The positive representatives satisfy <v, point> = +1/2. */
  std::vector<Vec<4>> points;
};

SvCylResult sv_cylinder_intersection(const Direction<4>& v);

/* Points of S_v itself: the two 2-spheres 1/2 v + sqrt(3)/2 S^2(v-perp),
 * sampled deterministically. */
std::vector<Vec<4>> sample_sv(const Direction<4>& v, int n_per_sphere);

/* ------------------------------------------------------------------ */
/*  4D: witness cloud                                                  */
/* ------------------------------------------------------------------ */

struct CloudResolution {
  int per_stratum = 400;   /* sampled directions v in each stratum */
  int sphere_samples = 48; /* points per 2-sphere of S_v */
  int budget = 200000;     /* hard cap on emitted points */
};

struct WitnessCloud {
  VPolytope<4> points;
  int n_v1 = 0, n_v2 = 0, n_v3 = 0; /* directions sampled per stratum */
  /* Membership in conv(points), decided per query by projection distance
   * (no explicit 4D hull is ever built). */
  bool member(const Vec<4>& q, double tol) const;
};

/* Samples the three direction strata (front radius above 1/2, between
 * 1/10 and 1/2, below 1/10), attaches the matching translate budgets, and
 * emits the union cloud.  Fails with BudgetExceeded if the resolution
 * would emit more than `budget` points. */
WitnessCloud build_4d_witness_cloud(const CloudResolution& res, uint64_t seed);

/* ------------------------------------------------------------------ */
/*  4D: the jump obstruction                                           */
/* ------------------------------------------------------------------ */

struct PathSample4 {
  double t = 0;
  Vec<4> gamma{};  /* probe direction, on the unit sphere */
  Vec<4> delta{};  /* attempted translate for S_gamma */
};

struct Crossing {
  double t0 = 0;       /* time where the cylinder trace hits the radius */
  double x0 = 0;       /* first coordinate of v' there: 1/2 +- radius */
  double radius = 0;   /* forbidden dyadic radius (property-5 midpoint) */
  int k = 0;           /* dyadic level of the radius */
  ApSet forced = ApSet::T; /* budget set the crossing forces delta into */
  double required_jump = 0;  /* distance from delta(0) tail to that set */
  bool delta_front_zero = false; /* |delta_1|, |delta_2| small at t0 */
  bool delta_in_forced = false;  /* delta tail lands in the forced set */
  double observed_jump = 0; /* delta step across the crossing's segment */
};

struct ObstructionReport {
  bool vacuous = false;        /* gamma never leaves (1,0,0,0) */
  bool start_valid = false;    /* delta(0) in {(0,0)} x T */
  bool start_contained = false; /* S_gamma(0) + delta(0) fits the cloud hull */
  int target_index = 0;      /* which T_i is >= 1/100 from delta(0) tail */
  double required_jump = 0;  /* that distance */
  double window_end = 0;     /* last time with |delta - delta(0)| < 1/100 */
  double max_delta_step = 0; /* largest consecutive delta step on samples */
  std::vector<Crossing> crossings;
  /* true when some crossing inside the small-motion window forces the
   * translate at least required_jump away from where it started */
  bool obstructed = false;
  /* true when the supplied delta actually satisfies the forced constraint
   * at every crossing (so a continuous delta is already contradicted) */
  bool delta_respects_constraints = false;
};

/* Follows the cylinder trace v'(t) of a sampled direction path starting
 * at (1,0,0,0) and staying in the front-heavy regime gamma_1 > 9/10.
 * Whenever v'_1 crosses the forbidden dyadic radius chosen for delta(0),
 * the translate is forced into {(0,0)} x T_i at distance >= 1/100 from
 * its start, and the report measures what the supplied delta did there.
 * Fails with OutOfRegime if the path leaves gamma_1 > 9/10 or does not
 * start at (1,0,0,0). */
ObstructionReport verify_4d_obstruction(const WitnessCloud& cloud,
                                        const std::vector<PathSample4>& path);

}  // namespace kakeya
