#include <doctest.h>

#include <cmath>
#include <random>

#include "kakeya/constructions.hpp"
#include "kakeya/erosion.hpp"
#include "kakeya/linprog.hpp"
#include "test_util.hpp"

using namespace kakeya;

namespace {

constexpr double kPi = 3.14159265358979323846;

/* distance from q to the wall curves: the two helices t -> (t, ±cos t,
 * ±sin t)/2 read off at t = 2 q_x, plus the two straight wall chords
 * (a, ±1, 0)/2 for a in [0, pi] */
double wall_model_distance(const Vec<3>& q) {
  double t = 2 * q[0];
  double d = std::min(
      std::hypot(q[1] - 0.5 * std::cos(t), q[2] - 0.5 * std::sin(t)),
      std::hypot(q[1] + 0.5 * std::cos(t), q[2] + 0.5 * std::sin(t)));
  if (t >= -1e-12 && t <= kPi + 1e-12)
    d = std::min(d, std::min(std::abs(q[1] - 0.5), std::abs(q[1] + 0.5)) +
                        std::abs(q[2]));
  return d;
}

const TranslateProbe3D& probe_at(const DiscontinuityReport& rep, double phi) {
  for (const auto& p : rep.probes)
    if (std::abs(p.phi - phi) < 1e-12) return p;
  REQUIRE(false);
  return rep.probes.front();
}

}  // namespace

TEST_CASE("sweep map matches the parametrization") {
  /* f(t, x, y) = (t + x, y cos t, y sin t) / 2 */
  CHECK(dist(sweep_map(0, 1, 0), vec3(0.5, 0, 0)) == 0);
  CHECK(dist(sweep_map(0, -1, 0), vec3(-0.5, 0, 0)) == 0);
  CHECK(dist(sweep_map(kPi / 2, 0, 1), vec3(kPi / 4, 0, 0.5)) < 1e-15);
  CHECK(dist(sweep_map(kPi, 0, -1), vec3(kPi / 2, 0.5, 0)) < 1e-15);

  /* the two ends of the stick pointing along v = (r1, r2 cos p, r2 sin p)
   * are realized as a sweep-point difference: f(p,r1,r2) - f(p,-r1,-r2) = v */
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 200; ++i) {
    double p = kPi * (u(rng) + 1) / 2, r1 = u(rng);
    double r2 = std::sqrt(1 - r1 * r1) * (u(rng) < 0 ? -1 : 1);
    Vec<3> diff = sweep_map(p, r1, r2) - sweep_map(p, -r1, -r2);
    CHECK(dist(diff, vec3(r1, r2 * std::cos(p), r2 * std::sin(p))) < 1e-15);
  }
}

TEST_CASE("swept body samples stay inside the bounding cylinder") {
  auto body = build_swept_body(64, 32);
  CHECK(body.points.vertices.size() == 64 * 32);
  CHECK(body.hull.rank == 3);
  for (const auto& q : body.points.vertices) {
    CHECK(q[1] * q[1] + q[2] * q[2] <= 0.25 + 1e-9);
    CHECK(q[0] >= -0.5 - 1e-12);
    CHECK(q[0] <= (kPi + 1) / 2 + 1e-12);
    CHECK(body.hrep.contains(q, 1e-9));
  }
}

TEST_CASE("hull refines with resolution") {
  auto coarse = build_swept_body(64, 32);
  auto fine = build_swept_body(128, 64);
  CHECK(fine.hull.vertices.size() > coarse.hull.vertices.size());
  CHECK(fine.surface_slack < coarse.surface_slack);
}

TEST_CASE("wall vertices follow the two helices and the two wall chords") {
  auto body = build_swept_body(64, 32);
  int band = 0;
  for (const auto& q : body.hull.vertices) {
    if (q[1] * q[1] + q[2] * q[2] < 0.25 * (1 - 1e-4)) continue;
    ++band;
    CHECK(wall_model_distance(q) < 1e-9);
  }
  CHECK(band >= 64); /* every t sample contributes wall points */
}

TEST_CASE("swept body rejects resolutions below the sampling floor") {
  CHECK_FAILS_WITH("DomainError", build_swept_body(7, 32));
  CHECK_FAILS_WITH("DomainError", build_swept_body(64, 7));
}

TEST_CASE("forced translate formula") {
  CHECK(dist(expected_translate_3d(kPi / 2), vec3(kPi / 4, 0, -0.5)) < 1e-15);
  CHECK(dist(expected_translate_3d(-kPi / 2), vec3(kPi / 4, 0, 0.5)) < 1e-15);

  /* the one-sided limits at 0 disagree by pi/2 in the first coordinate */
  Vec<3> from_above = expected_translate_3d(1e-9);
  Vec<3> from_below = expected_translate_3d(-1e-9);
  CHECK(dist(from_above, vec3(0, -0.5, 0)) < 1e-8);
  CHECK(dist(from_below, vec3(kPi / 2, -0.5, 0)) < 1e-8);
  CHECK(std::abs(dist(from_above, from_below) - kPi / 2) < 1e-8);

  CHECK_FAILS_WITH("DomainError", expected_translate_3d(0));
  CHECK_FAILS_WITH("DomainError", expected_translate_3d(kPi));
  CHECK_FAILS_WITH("DomainError", expected_translate_3d(-kPi));
  CHECK_FAILS_WITH("DomainError", expected_translate_3d(3.2));

  /* both stick ends sit exactly on the swept surface: the translate and
   * translate + v are f(s, 0, -+1), with s = phi on the positive branch
   * and s = pi + phi (y-signs swapped) on the negative one */
  for (int i = 1; i < 40; ++i) {
    double phi = -kPi + i * kPi / 20;
    if (std::abs(phi) < 1e-9) continue;
    double s = phi > 0 ? phi : kPi + phi;
    double y = phi > 0 ? -1 : 1;
    Vec<3> psi = expected_translate_3d(phi);
    Vec<3> v = vec3(0, std::cos(phi), std::sin(phi));
    CHECK(dist(psi, sweep_map(s, 0, y)) < 1e-12);
    CHECK(dist(psi + v, sweep_map(s, 0, -y)) < 1e-12);
  }
}

TEST_CASE("translate sets collapse to the forced point at generic angles") {
  auto body = build_swept_body(96, 48);
  auto rep = verify_discontinuity(
      body, {0.02, -0.02, kPi / 4, -kPi / 4, kPi / 2, 2.0, -2.4});
  CHECK(rep.probe_length > 0.98);
  CHECK(rep.expected_jump == doctest::Approx(kPi / 2));

  for (double phi : {kPi / 4, -kPi / 4, kPi / 2, 2.0, -2.4}) {
    const auto& p = probe_at(rep, phi);
    CHECK(p.kind == SetKind::Point);
    CHECK(p.center_distance < 0.02);
    CHECK(p.hausdorff < 0.12);
    CHECK(p.hausdorff < singleton_tolerance(body, phi));
  }

  /* near the jump the shortened stick can slide along the wall chords,
   * so the translate set is genuinely long there — that elongation IS
   * the discontinuity showing up at finite resolution */
  for (double phi : {0.02, -0.02}) {
    const auto& p = probe_at(rep, phi);
    CHECK(p.kind != SetKind::Point);
    CHECK(p.extent > 0.5);
    CHECK(p.center_distance < 0.05); /* deepest point still near the formula */
  }

  REQUIRE(rep.measured_jump.has_value());
  CHECK(std::abs(*rep.measured_jump - kPi / 2) < 0.05);

  /* the full-length stick has nowhere to go once the facets cut inward —
   * that is why the probe is shrunk */
  Segment<3> full{vec3(0, 0, 0), Direction<3>(vec3(0, 0, 1)), 1.0};
  CHECK(inscribed_ball(erode(body.hrep, full)).radius < 0);
  Segment<3> most{vec3(0, 0, 0), Direction<3>(vec3(0, 0, 1)), 0.99};
  CHECK(inscribed_ball(erode(body.hrep, most)).radius > 0);
}

TEST_CASE("finer grids tighten the translate sets") {
  auto body = build_swept_body(160, 96);
  auto rep = verify_discontinuity(body, {0.02, -0.02, kPi / 4, kPi / 2, -2.4});
  for (double phi : {kPi / 4, kPi / 2, -2.4}) {
    const auto& p = probe_at(rep, phi);
    CHECK(p.kind == SetKind::Point);
    CHECK(p.center_distance < 0.01);
    CHECK(p.hausdorff < 0.06);
  }
  CHECK(std::abs(*rep.measured_jump - kPi / 2) < 0.04);
}

TEST_CASE("singleton tolerance tracks resolution and the jump angles") {
  auto coarse = build_swept_body(96, 48);
  auto fine = build_swept_body(160, 96);
  /* tighter with resolution, looser toward the jump, floored at the base */
  CHECK(singleton_tolerance(fine, kPi / 2) < singleton_tolerance(coarse, kPi / 2));
  CHECK(singleton_tolerance(fine, 0.05) > singleton_tolerance(fine, 0.3));
  CHECK(singleton_tolerance(fine, 0.3) > singleton_tolerance(fine, kPi / 2));
  CHECK(singleton_tolerance(fine, kPi / 2, 0.5) >= 0.5);
  /* symmetric about 0 and about pi */
  CHECK(singleton_tolerance(fine, 0.1) ==
        doctest::Approx(singleton_tolerance(fine, -0.1)));
  CHECK(singleton_tolerance(fine, kPi - 0.1) ==
        doctest::Approx(singleton_tolerance(fine, 0.1)));
}
