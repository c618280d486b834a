#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "kakeya/constructions.hpp"
#include "kakeya/nearest.hpp"

namespace kakeya {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTau = 2 * kPi;

/* residue of k mod 3 that selects T_i (T3 sits at residue 0) */
int residue_of(ApSet s) {
  switch (s) {
    case ApSet::T1: return 1;
    case ApSet::T2: return 2;
    case ApSet::T3: return 0;
    default: return -1;
  }
}

}  // namespace

/* ------------------------------------------------------------------ */
/*  Budget sets                                                        */
/* ------------------------------------------------------------------ */

ApSet a_p_label(double x) {
  if (!(std::abs(x) <= 1 + 1e-9))
    fail("DomainError", "budget rule expects a circle coordinate in [-1, 1]");
  double s = std::min(std::abs(x - 0.5), std::abs(x + 0.5));
  if (s <= 1e-15) return ApSet::T;
  int e = 0;
  double m = std::frexp(s, &e); /* s = m 2^e, m in [0.5, 1) */
  if (std::abs(m - 0.5) <= 1e-12) return ApSet::T; /* s is exactly dyadic */
  /* 2^(e-1) < s < 2^e, so the rule's level is k = -e */
  int k = -e;
  static const ApSet by_residue[3] = {ApSet::T3, ApSet::T1, ApSet::T2};
  return by_residue[k % 3];
}

const VPolytope<2>& ap_vertices(ApSet which) {
  static const VPolytope<2> t{{vec2(0, 0), vec2(1, 0), vec2(0, 1)}};
  static const VPolytope<2> t1{{vec2(0, 0), vec2(0, 1)}};
  static const VPolytope<2> t2{{vec2(0, 0), vec2(1, 0)}};
  static const VPolytope<2> t3{{vec2(1, 0), vec2(0, 1)}};
  switch (which) {
    case ApSet::T1: return t1;
    case ApSet::T2: return t2;
    case ApSet::T3: return t3;
    default: return t;
  }
}

HPolytope<2> ap_hrep(ApSet which) {
  switch (which) {
    case ApSet::T1:
      return HPolytope<2>::from_rows({{vec2(1, 0), 0},
                                      {vec2(-1, 0), 0},
                                      {vec2(0, 1), 1},
                                      {vec2(0, -1), 0}});
    case ApSet::T2:
      return HPolytope<2>::from_rows({{vec2(0, 1), 0},
                                      {vec2(0, -1), 0},
                                      {vec2(1, 0), 1},
                                      {vec2(-1, 0), 0}});
    case ApSet::T3:
      return HPolytope<2>::from_rows({{vec2(1, 1), 1},
                                      {vec2(-1, -1), -1},
                                      {vec2(-1, 0), 0},
                                      {vec2(0, -1), 0}});
    default:
      return HPolytope<2>::from_rows(
          {{vec2(-1, 0), 0}, {vec2(0, -1), 0}, {vec2(1, 1), 1}});
  }
}

VPolytope<2> ap_intersection(ApSet a, ApSet b) {
  if (a == b) return ap_vertices(a);
  if (a == ApSet::T) return ap_vertices(b);
  if (b == ApSet::T) return ap_vertices(a);
  /* distinct segments meet in the shared corner of the triangle */
  auto has = [](ApSet s, ApSet x, ApSet y) { return s == x || s == y; };
  if (has(a, ApSet::T1, ApSet::T2) && has(b, ApSet::T1, ApSet::T2))
    return VPolytope<2>{{vec2(0, 0)}};
  if (has(a, ApSet::T1, ApSet::T3) && has(b, ApSet::T1, ApSet::T3))
    return VPolytope<2>{{vec2(0, 1)}};
  return VPolytope<2>{{vec2(1, 0)}};
}

ApReport verify_ap_properties(int n_pairs, int n_prop5_trials, uint64_t seed) {
  if (n_pairs < 1 || n_prop5_trials < 1)
    fail("DomainError", "property check needs positive trial counts");
  ApReport rep;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ang(0, kTau);
  std::uniform_real_distribution<double> unit(0, 1);

  /* 1: any two budget sets meet (checked by LP on the joined rows, with
   * the tabulated intersection as a cross-check), and 2: the rule is even. */
  for (int i = 0; i < n_pairs; ++i) {
    Direction<2> p(vec2(std::cos(ang(rng)), std::sin(ang(rng))));
    Direction<2> q(vec2(std::cos(ang(rng)), std::sin(ang(rng))));
    ApSet la = a_p_label(p), lb = a_p_label(q);

    auto joined = ap_hrep(la).rows;
    auto more = ap_hrep(lb).rows;
    joined.insert(joined.end(), more.begin(), more.end());
    bool feasible = inscribed_ball(HPolytope<2>::from_rows(joined)).radius >= -1e-9;
    bool table_ok = true;
    for (const auto& t : ap_intersection(la, lb).vertices)
      table_ok = table_ok && ap_hrep(la).contains(t, 1e-9) &&
                 ap_hrep(lb).contains(t, 1e-9);
    ++rep.intersection_checks;
    if (!feasible || !table_ok) ++rep.intersection_failures;

    ++rep.symmetry_checks;
    if (a_p_label(-p[0]) != la) ++rep.symmetry_failures;
  }

  /* 3: every budget stays in the unit disk (vertices suffice by convexity) */
  for (ApSet s : {ApSet::T, ApSet::T1, ApSet::T2, ApSet::T3})
    for (const auto& t : ap_vertices(s).vertices) {
      ++rep.norm_checks;
      if (norm(t) > 1 + 1e-12) ++rep.norm_failures;
    }

  /* 4: the graph {(p, t) : t in A_p} is closed.  Along sequences toward a
   * non-dyadic coordinate the label settles to the limit's label; toward a
   * dyadic coordinate the approaching budgets must sit inside the limit's
   * full triangle. */
  auto settles = [&](double target, double dir) {
    ApSet want = a_p_label(target);
    for (int n = 9; n <= 12; ++n) {
      ++rep.closedness_checks;
      if (a_p_label(target + dir * std::pow(0.25, n)) != want)
        ++rep.closedness_failures;
    }
  };
  for (int i = 0; i < 16; ++i) {
    double x = 1.9 * unit(rng) - 0.95; /* stay clear of the domain edge */
    if (a_p_label(x) == ApSet::T) continue; /* drew a dyadic point */
    settles(x, +1);
    settles(x, -1);
  }
  HPolytope<2> full = ap_hrep(ApSet::T);
  for (int k = 2; k <= 6; ++k) {
    double x = 0.5 + std::ldexp(1.0, -k); /* label T, a dyadic boundary */
    for (double dir : {+1.0, -1.0})
      for (int n = 2; n <= 10; ++n) {
        ApSet near_label = a_p_label(x + dir * std::pow(0.25, n));
        for (const auto& t : ap_vertices(near_label).vertices) {
          ++rep.closedness_checks;
          if (!full.contains(t, 1e-9)) ++rep.closedness_failures;
        }
      }
  }

  /* 5: from any target there is an arbitrarily small radius whose budget
   * keeps distance >= 1/100. */
  std::uniform_real_distribution<double> coord(-1, 2);
  std::uniform_real_distribution<double> eps_draw(1e-5, 0.25);
  for (int i = 0; i < n_prop5_trials; ++i) {
    Vec<2> zw = vec2(coord(rng), coord(rng));
    double eps = eps_draw(rng);
    double best = -1;
    ApSet target = ApSet::T1;
    for (ApSet s : {ApSet::T1, ApSet::T2, ApSet::T3}) {
      double d = nearest_point(ap_vertices(s), zw).distance;
      if (d > best) {
        best = d;
        target = s;
      }
    }
    /* largest dyadic-gap midpoint below eps whose level picks the target */
    int k = 1;
    while (0.75 * std::ldexp(1.0, -k) >= eps) ++k;
    while (k % 3 != residue_of(target)) ++k;
    double r = 0.75 * std::ldexp(1.0, -k);

    ++rep.far_set_checks;
    bool ok = best >= 0.01 && r > 0 && r < eps &&
              a_p_label(0.5 + r) == target && a_p_label(0.5 - r) == target;
    if (!ok) ++rep.far_set_failures;
  }
  return rep;
}

/* ------------------------------------------------------------------ */
/*  Probe spheres and the cylinder trace                               */
/* ------------------------------------------------------------------ */

SvCylResult sv_cylinder_intersection(const Direction<4>& v) {
  double a1 = v[0], a2 = v[1];
  double m = a1 * a1 + a2 * a2;
  SvCylResult out;
  double disc = m - 0.25;
  if (disc < -1e-12) return out; /* None */
  if (disc <= 1e-12) {
    double inv = 1.0 / std::sqrt(m);
    Vec<4> p = vec4(a1 * inv, a2 * inv, 0, 0);
    out.kind = SvCylKind::Pair;
    out.points = {p, -p};
    return out;
  }
  /* On the front circle, <(a1,a2), p> = 1/2 cuts the chord through
   * (a/2 +- s a-perp) / m with s^2 = m - 1/4. */
  double s = std::sqrt(disc);
  Vec<4> vp = vec4((0.5 * a1 - s * a2) / m, (0.5 * a2 + s * a1) / m, 0, 0);
  Vec<4> vpp = vec4((0.5 * a1 + s * a2) / m, (0.5 * a2 - s * a1) / m, 0, 0);
  out.kind = SvCylKind::TwoPairs;
  out.points = {vp, -vp, vpp, -vpp};
  return out;
}

std::vector<Vec<4>> sample_sv(const Direction<4>& v, int n_per_sphere) {
  if (n_per_sphere < 1) fail("DomainError", "sphere sample count must be positive");
  /* orthonormal basis of the hyperplane perpendicular to v */
  Vec<4> basis[3];
  int have = 0;
  for (int j = 0; j < 4 && have < 3; ++j) {
    Vec<4> cand{};
    cand.c[j] = 1;
    cand = cand - v.vec() * dot(cand, v.vec());
    for (int i = 0; i < have; ++i) cand = cand - basis[i] * dot(cand, basis[i]);
    double len = norm(cand);
    if (len < 1e-7) continue;
    basis[have++] = cand * (1.0 / len);
  }
  if (have < 3) fail("DomainError", "failed to frame the probe sphere");

  const double rad = std::sqrt(3.0) / 2;
  std::vector<Vec<4>> out;
  out.reserve(2 * size_t(n_per_sphere));
  for (const auto& u : fibonacci_sphere(n_per_sphere)) {
    Vec<4> off = (basis[0] * u[0] + basis[1] * u[1] + basis[2] * u[2]) * rad;
    out.push_back(v.vec() * 0.5 + off);
    out.push_back(v.vec() * -0.5 + off);
  }
  return out;
}

/* ------------------------------------------------------------------ */
/*  Witness cloud                                                      */
/* ------------------------------------------------------------------ */

namespace {

/* uniform direction with front radius-squared in [lo, hi]: on the unit
 * 3-sphere the front mass x^2 + y^2 is uniform on [0, 1], so sampling it
 * directly hits each stratum without rejection */
Vec<4> stratum_direction(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> unit(0, 1);
  double m = lo + (hi - lo) * unit(rng);
  double a = kTau * unit(rng), b = kTau * unit(rng);
  double rf = std::sqrt(m), rb = std::sqrt(1 - m);
  return vec4(rf * std::cos(a), rf * std::sin(a), rb * std::cos(b),
              rb * std::sin(b));
}

/* translate budget attached to a direction of the middle stratum: the
 * direction rescaled onto the tangency locus (front radius exactly 1/2)
 * meets the cylinder at one antipodal pair, whose budget it borrows */
ApSet middle_stratum_label(const Vec<4>& v) {
  double fm = std::sqrt(v[0] * v[0] + v[1] * v[1]);
  return a_p_label(v[0] / fm); /* tangent trace point: front part, unit */
}

}  // namespace

bool WitnessCloud::member(const Vec<4>& q, double tol) const {
  if (!(tol >= 0)) fail("DomainError", "membership tolerance must be nonnegative");
  /* hull membership as a projection-distance question: the min-norm-point
   * solve certifies its own optimum, where a pure LP feasibility verdict
   * can be a rounding artifact at this row count */
  return contains(points, q, tol);
}

WitnessCloud build_4d_witness_cloud(const CloudResolution& res, uint64_t seed) {
  if (res.per_stratum < 1 || res.sphere_samples < 4)
    fail("DomainError", "cloud resolution is too small to mean anything");
  WitnessCloud cloud;
  std::vector<Vec<4>> pts;
  std::mt19937_64 rng(seed);

  auto emit = [&](const std::vector<Vec<4>>& sphere,
                  const std::vector<Vec<2>>& budget) {
    if (pts.size() + sphere.size() * budget.size() > size_t(res.budget))
      fail("BudgetExceeded",
           "witness cloud would exceed " + std::to_string(res.budget) +
               " points; lower the resolution");
    for (const auto& s : sphere)
      for (const auto& t : budget)
        pts.push_back(vec4(s[0], s[1], s[2] + t[0], s[3] + t[1]));
  };

  for (int i = 0; i < res.per_stratum; ++i) {
    /* outer stratum: the trace exists, budget = intersection of the two
     * traced budgets; the trace points themselves are body points */
    Direction<4> v(stratum_direction(rng, 0.25, 1.0));
    auto trace = sv_cylinder_intersection(v);
    ApSet la = a_p_label(trace.points[0][0]);
    ApSet lb = trace.kind == SvCylKind::TwoPairs ? a_p_label(trace.points[2][0])
                                                 : la;
    std::vector<Vec<2>> budget = ap_intersection(la, lb).vertices;
    emit(sample_sv(v, res.sphere_samples), budget);
    emit(trace.points, budget);
    ++cloud.n_v1;

    /* middle stratum: budget borrowed from the tangency rescaling */
    v = Direction<4>(stratum_direction(rng, 0.01, 0.25));
    emit(sample_sv(v, res.sphere_samples),
         ap_vertices(middle_stratum_label(v.vec())).vertices);
    ++cloud.n_v2;

    /* inner stratum: spheres only, no translate freedom */
    v = Direction<4>(stratum_direction(rng, 0.0, 0.01));
    emit(sample_sv(v, res.sphere_samples), {vec2(0, 0)});
    ++cloud.n_v3;
  }
  cloud.points = VPolytope<4>{pts};
  return cloud;
}

/* ------------------------------------------------------------------ */
/*  The jump obstruction                                               */
/* ------------------------------------------------------------------ */

namespace {

struct Branches {
  Vec<4> vp, vpp; /* the two positive trace representatives */
};

/* trace of an interpolated direction, matched to the previous sample so
 * each branch stays continuous */
Branches traced_branches(const Vec<4>& gamma, const Branches& prev) {
  auto tr = sv_cylinder_intersection(Direction<4>(gamma));
  if (tr.kind != SvCylKind::TwoPairs)
    fail("OutOfRegime", "direction left the two-pair trace regime");
  Vec<4> a = tr.points[0], b = tr.points[2];
  Branches out;
  if (dist(a, prev.vp) + dist(b, prev.vpp) <= dist(b, prev.vp) + dist(a, prev.vpp)) {
    out.vp = a;
    out.vpp = b;
  } else {
    out.vp = b;
    out.vpp = a;
  }
  return out;
}

Vec<4> lerp_unit(const Vec<4>& a, const Vec<4>& b, double s) {
  Vec<4> g = a * (1 - s) + b * s;
  return g * (1.0 / norm(g));
}

}  // namespace

ObstructionReport verify_4d_obstruction(const WitnessCloud& cloud,
                                        const std::vector<PathSample4>& path) {
  if (path.size() < 2)
    fail("DomainError", "obstruction check needs at least two path samples");
  const Vec<4> pole = vec4(1, 0, 0, 0);
  for (const auto& s : path) {
    if (std::abs(norm(s.gamma) - 1) > 1e-9)
      fail("DomainError", "direction path must stay on the unit sphere");
    if (!(s.gamma[0] > 0.9))
      fail("OutOfRegime", "direction path leaves the front-heavy regime at t = " +
                              std::to_string(s.t));
  }
  if (dist(path.front().gamma, pole) > 1e-9)
    fail("OutOfRegime", "direction path must start at (1, 0, 0, 0)");
  for (size_t j = 0; j + 1 < path.size(); ++j)
    if (dist(path[j].gamma, path[j + 1].gamma) > 0.2)
      fail("DomainError", "direction path is sampled too coarsely to track");

  ObstructionReport rep;
  const Vec<4> d0 = path.front().delta;
  Vec<2> zw0 = vec2(d0[2], d0[3]);

  rep.start_valid = std::abs(d0[0]) <= 1e-9 && std::abs(d0[1]) <= 1e-9 &&
                    ap_hrep(ApSet::T).contains(zw0, 1e-9);
  rep.start_contained = true;
  for (const auto& s : sample_sv(Direction<4>(path.front().gamma), 12))
    rep.start_contained = rep.start_contained && cloud.member(s + d0, 0.1);

  for (size_t j = 0; j + 1 < path.size(); ++j)
    rep.max_delta_step =
        std::max(rep.max_delta_step, dist(path[j].delta, path[j + 1].delta));

  rep.vacuous = true;
  for (const auto& s : path)
    rep.vacuous = rep.vacuous && dist(s.gamma, pole) <= 1e-12;
  if (rep.vacuous) {
    rep.delta_respects_constraints = true;
    rep.window_end = path.back().t;
    return rep;
  }

  /* the budget set farthest from where the translate starts */
  double best = -1;
  ApSet target = ApSet::T1;
  for (ApSet s : {ApSet::T1, ApSet::T2, ApSet::T3}) {
    double d = nearest_point(ap_vertices(s), zw0).distance;
    if (d > best) {
      best = d;
      target = s;
    }
  }
  rep.target_index = int(target);
  rep.required_jump = best;

  /* last sample before the translate first strays 1/100 from its start */
  size_t last_ok = 0;
  while (last_ok + 1 < path.size() &&
         dist(path[last_ok + 1].delta, d0) < 0.01)
    ++last_ok;
  rep.window_end = path[last_ok].t;

  /* continuous trace branches along the samples */
  std::vector<Branches> br(path.size());
  br[0].vp = vec4(0.5, std::sqrt(3.0) / 2, 0, 0);
  br[0].vpp = vec4(0.5, -std::sqrt(3.0) / 2, 0, 0);
  for (size_t j = 1; j < path.size(); ++j)
    br[j] = traced_branches(path[j].gamma, br[j - 1]);

  /* forbidden radius: the largest budget-selecting dyadic midpoint under
   * the trace's first-coordinate excursion */
  double excursion = 0;
  for (const auto& b : br)
    excursion = std::max(
        {excursion, std::abs(b.vp[0] - 0.5), std::abs(b.vpp[0] - 0.5)});
  if (excursion <= 1e-12) return rep; /* trace never moves: nothing forced */

  int k = 1;
  while (0.75 * std::ldexp(1.0, -k) >= excursion) ++k;
  while (k % 3 != residue_of(target)) ++k;
  const double radius = 0.75 * std::ldexp(1.0, -k);

  /* walk both branches and refine every crossing of the radius */
  for (int which = 0; which < 2; ++which) {
    auto coord = [&](const Branches& b) {
      return std::abs((which == 0 ? b.vp : b.vpp)[0] - 0.5) - radius;
    };
    for (size_t j = 0; j + 1 < path.size(); ++j) {
      double g0 = coord(br[j]), g1 = coord(br[j + 1]);
      if (g0 == 0 || (g0 < 0) == (g1 < 0)) continue;

      double lo = 0, hi = 1;
      Branches at = br[j + 1];
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        Branches bm = traced_branches(
            lerp_unit(path[j].gamma, path[j + 1].gamma, mid), br[j]);
        if ((coord(bm) < 0) == (g0 < 0))
          lo = mid;
        else {
          hi = mid;
          at = bm;
        }
      }
      double sstar = 0.5 * (lo + hi);

      Crossing c;
      c.t0 = path[j].t + sstar * (path[j + 1].t - path[j].t);
      c.x0 = (which == 0 ? at.vp : at.vpp)[0];
      c.radius = radius;
      c.k = k;
      c.forced = a_p_label(c.x0);
      c.required_jump = nearest_point(ap_vertices(c.forced), zw0).distance;

      /* judge the supplied translate at the crossing charitably: the
       * interpolant or either bracketing sample may satisfy the forced
       * membership */
      Vec<4> di = path[j].delta * (1 - sstar) + path[j + 1].delta * sstar;
      auto complies = [&](const Vec<4>& d) {
        return std::abs(d[0]) <= 1e-6 && std::abs(d[1]) <= 1e-6 &&
               ap_hrep(c.forced).contains(vec2(d[2], d[3]), 1e-6);
      };
      c.delta_front_zero = std::abs(di[0]) <= 1e-6 && std::abs(di[1]) <= 1e-6;
      c.delta_in_forced =
          complies(di) || complies(path[j].delta) || complies(path[j + 1].delta);
      c.observed_jump = dist(path[j + 1].delta, path[j].delta);
      rep.crossings.push_back(c);
    }
  }
  std::sort(rep.crossings.begin(), rep.crossings.end(),
            [](const Crossing& a, const Crossing& b) { return a.t0 < b.t0; });

  /* the contradiction of the jump argument: a crossing is forced while the
   * translate still claims to have moved less than 1/100 (the segment on
   * which the window breaks counts: that is where the jump happens) */
  double seam_end = path[std::min(last_ok + 1, path.size() - 1)].t;
  rep.obstructed = false;
  for (const auto& c : rep.crossings)
    rep.obstructed = rep.obstructed ||
                     (c.t0 <= seam_end + 1e-12 && c.required_jump >= 0.0099);
  rep.delta_respects_constraints = rep.start_valid;
  for (const auto& c : rep.crossings)
    rep.delta_respects_constraints =
        rep.delta_respects_constraints && c.delta_in_forced;
  return rep;
}

}  // namespace kakeya
