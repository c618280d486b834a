#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "kakeya/constructions.hpp"
#include "kakeya/metrics.hpp"

namespace kakeya {

std::vector<Vec<3>> fibonacci_sphere(int n) {
  if (n < 1) fail("DomainError", "direction sample count must be positive");
  /* golden angle pi (3 - sqrt 5) */
  constexpr double kStep = 2.399963229728653;
  std::vector<Vec<3>> out;
  out.reserve(size_t(n));
  for (int i = 0; i < n; ++i) {
    double z = 1.0 - 2.0 * (i + 0.5) / n;
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    double a = kStep * i;
    out.push_back(vec3(r * std::cos(a), r * std::sin(a), z));
  }
  return out;
}

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

/* Split a unit direction into sweep parameters (phi, r1, r2) with
 * v = (r1, r2 cos phi, r2 sin phi) and phi in [0, pi]; the sign of r2
 * absorbs the lower half-plane. */
void sweep_coordinates(const Vec<3>& v, double& phi, double& r1, double& r2) {
  r1 = std::clamp(v[0], -1.0, 1.0);
  r2 = std::sqrt(std::max(0.0, 1.0 - r1 * r1));
  phi = r2 > 1e-14 ? std::atan2(v[2], v[1]) : 0.0;
  if (phi < 0) {
    phi += kPi;
    r2 = -r2;
  }
}

}  // namespace

SweptCircleBody build_swept_body(int n_t, int n_circle, int n_witness,
                                 uint64_t seed) {
  if (n_t < 8 || n_circle < 8)
    fail("DomainError", "swept body needs at least 8 samples per axis");
  SweptCircleBody body;
  body.n_t = n_t;
  body.n_circle = n_circle;

  const double tau = 2 * kPi;
  std::vector<Vec<3>> pts;
  pts.reserve(size_t(n_t) * size_t(n_circle));
  for (int i = 0; i < n_t; ++i) {
    double t = kPi * i / (n_t - 1); /* inclusive: both end caps sampled */
    for (int j = 0; j < n_circle; ++j) {
      double phi = tau * j / n_circle;
      pts.push_back(sweep_map(t, std::cos(phi), std::sin(phi)));
    }
  }
  body.points = VPolytope<3>{pts};
  body.hull = convex_hull_3d(pts);
  body.hrep = hull3d_hrep(body.hull);

  /* Chord sagitta of the radius-1/2 circles plus the curvature deficit of
   * the helical wall contact between adjacent t samples, with headroom. */
  double circ = 0.5 * (1.0 - std::cos(kPi / n_circle));
  double along = (kPi / (n_t - 1)) * (kPi / (n_t - 1)) / 16.0;
  body.surface_slack = 1.5 * (circ + along) + 1e-12;

  /* Coverage certificate: for random unit v the exact body contains the
   * chord from f(phi, -r) to f(phi, r) = f(phi, -r) + v, so both ends must
   * sit inside the sampled hull up to the surface slack. */
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0, 1);
  for (int w = 0; w < n_witness; ++w) {
    Vec<3> v = vec3(g(rng), g(rng), g(rng));
    if (norm(v) < 1e-6) continue;
    v = v * (1.0 / norm(v));
    double phi, r1, r2;
    sweep_coordinates(v, phi, r1, r2);
    Vec<3> lo = sweep_map(phi, -r1, -r2);
    Vec<3> hi = sweep_map(phi, r1, r2);
    if (!body.hrep.contains(lo, body.surface_slack) ||
        !body.hrep.contains(hi, body.surface_slack))
      fail("ResolutionTooLow",
           "direction coverage witness escapes the sampled hull at phi = " +
               std::to_string(phi));
  }
  return body;
}

Vec<3> expected_translate_3d(double phi) {
  if (std::abs(phi) < 1e-12 || std::abs(phi) > kPi - 1e-12)
    fail("DomainError",
         "the forced translate is only defined for phi in (-pi, 0) or (0, pi)");
  double shift = phi > 0 ? 0.0 : kPi;
  return vec3(0.5 * (shift + phi), -0.5 * std::cos(phi), -0.5 * std::sin(phi));
}

DiscontinuityReport verify_discontinuity(const SweptCircleBody& body,
                                         const std::vector<double>& phis) {
  if (body.hrep.size() == 0) fail("DomainError", "swept body has no faces");
  DiscontinuityReport rep;
  /* Shrink the probe until its valid placements provably survive the
   * sampling deficit: the exact chord's endpoints are within the surface
   * slack of the hull, so pulling both ends in by three slacks leaves the
   * placement strictly feasible.  The translate set then widens to a
   * sliver of transversal half-extent about sqrt(shrink / 2). */
  double shrink = std::max(6.0 * body.surface_slack, 1e-4);
  rep.probe_length = 1.0 - shrink;
  rep.point_tol = std::max(0.02, 1.5 * std::sqrt(shrink / 2));
  rep.expected_jump = kPi / 2;

  auto dirs = fibonacci_sphere(128);
  for (double phi : phis) {
    TranslateProbe3D probe;
    probe.phi = phi;
    probe.expected = expected_translate_3d(phi);

    Segment<3> stick{vec3(0, 0, 0), Direction<3>(vec3(0, std::cos(phi), std::sin(phi))),
                     rep.probe_length};
    HPolytope<3> iset = erode(body.hrep, stick);
    auto ib = inscribed_ball(iset);
    if (ib.radius < -1e-9)
      fail("ResolutionTooLow",
           "translate set is empty at phi = " + std::to_string(phi) +
               "; raise the sampling resolution");
    probe.translate = ib.center;
    probe.center_distance = dist(ib.center, probe.expected);

    for (const auto& d : dirs) {
      auto r = lp_maximize(iset.rows, d);
      if (r.status != LpStatus::Optimal) continue;
      probe.hausdorff = std::max(probe.hausdorff, dist(r.point, probe.expected));
      probe.extent = std::max(probe.extent, dist(r.point, probe.translate));
    }
    probe.hausdorff = std::max(probe.hausdorff, probe.center_distance);

    probe.kind = dimension_class(iset, rep.point_tol).kind;
    rep.probes.push_back(probe);
  }

  /* Jump across phi = 0: compare the translates at the smallest probed
   * angles on either side. */
  const TranslateProbe3D* pos = nullptr;
  const TranslateProbe3D* neg = nullptr;
  for (const auto& p : rep.probes) {
    if (p.phi > 0 && (!pos || p.phi < pos->phi)) pos = &p;
    if (p.phi < 0 && (!neg || p.phi > neg->phi)) neg = &p;
  }
  if (pos && neg)
    rep.measured_jump = dist(pos->translate, neg->translate);
  return rep;
}

double singleton_tolerance(const SweptCircleBody& body, double phi,
                           double base) {
  double shrink = std::max(6.0 * body.surface_slack, 1e-4);
  double m = std::max(std::min(std::abs(phi), kPi - std::abs(phi)), 1e-3);
  /* Constants 2.5 and 4 bound the measured errors across a 96x48 to
   * 512x256 resolution sweep with margin; see the accompanying tests. */
  return std::max(base, 2.5 * std::sqrt(body.surface_slack)) +
         4.0 * shrink / (m * m);
}

}  // namespace kakeya
