#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "kakeya/hull3d.hpp"
#include "kakeya/linprog.hpp"
#include "test_util.hpp"

using namespace kakeya;

namespace {

/* Watertight closed triangulation: every edge shared by exactly two faces,
 * and V - E + F = 2. */
void check_surface(const Hull3D& h) {
  std::map<std::pair<int, int>, int> edge_count;
  for (const auto& f : h.faces)
    for (int s = 0; s < 3; ++s) {
      int a = f[size_t(s)], b = f[size_t((s + 1) % 3)];
      edge_count[std::minmax(a, b)]++;
    }
  for (const auto& [e, c] : edge_count) CHECK(c == 2);
  long V = long(h.vertices.size());
  long E = long(edge_count.size());
  long F = long(h.faces.size());
  CHECK(V - E + F == 2);
  CHECK(E == 3 * F / 2);
}

/* Outward orientation: the vertex centroid sits strictly below each face. */
void check_orientation(const Hull3D& h) {
  Vec<3> cen{};
  for (const auto& v : h.vertices) cen += v;
  cen = cen * (1.0 / double(h.vertices.size()));
  for (const auto& f : h.faces) {
    const Vec<3>& a = h.vertices[size_t(f[0])];
    const Vec<3>& b = h.vertices[size_t(f[1])];
    const Vec<3>& c = h.vertices[size_t(f[2])];
    Vec<3> u = b - a, w = c - a;
    Vec<3> n = vec3(u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2],
                    u[0] * w[1] - u[1] * w[0]);
    CHECK(dot(n, cen - a) < 0);
  }
}

/* The independent completeness oracle: the hull's support function must
 * match the point set's in every direction. */
void check_support_agreement(const Hull3D& h, const std::vector<Vec<3>>& pts,
                             uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0, 1);
  for (int k = 0; k < 120; ++k) {
    Vec<3> d = vec3(g(rng), g(rng), g(rng));
    if (norm(d) < 1e-3) continue;
    double over_pts = -1e300, over_hull = -1e300;
    for (const auto& p : pts) over_pts = std::max(over_pts, dot(d, p));
    for (const auto& v : h.vertices) over_hull = std::max(over_hull, dot(d, v));
    CHECK(over_hull == doctest::Approx(over_pts).epsilon(1e-9));
  }
}

}  // namespace

TEST_CASE("hull of a cube with clutter") {
  std::vector<Vec<3>> pts;
  for (int i = 0; i < 8; ++i)
    pts.push_back(vec3(i & 1 ? 1 : -1, i & 2 ? 1 : -1, i & 4 ? 1 : -1));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  for (int i = 0; i < 200; ++i) pts.push_back(vec3(u(rng), u(rng), u(rng)));
  auto h = convex_hull_3d(pts);
  CHECK(h.rank == 3);
  CHECK(h.vertices.size() == 8);
  CHECK(h.faces.size() == 12);
  check_surface(h);
  check_orientation(h);
  auto hp = hull3d_hrep(h);
  for (const auto& p : pts) CHECK(hp.contains(p, 1e-9));
}

TEST_CASE("hull of the octahedron") {
  std::vector<Vec<3>> pts = {vec3(1, 0, 0),  vec3(-1, 0, 0), vec3(0, 1, 0),
                             vec3(0, -1, 0), vec3(0, 0, 1),  vec3(0, 0, -1),
                             vec3(0, 0, 0)};
  auto h = convex_hull_3d(pts);
  CHECK(h.vertices.size() == 6);
  CHECK(h.faces.size() == 8);
  check_surface(h);
  check_orientation(h);
}

TEST_CASE("hull of random sphere points keeps every point") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g(0, 1);
  std::vector<Vec<3>> pts;
  for (int i = 0; i < 500; ++i) {
    Vec<3> p = vec3(g(rng), g(rng), g(rng));
    pts.push_back(p * (1.0 / norm(p)));
  }
  auto h = convex_hull_3d(pts);
  CHECK(h.vertices.size() == 500);
  check_surface(h);
  check_orientation(h);
  check_support_agreement(h, pts, 99);
  auto hp = hull3d_hrep(h);
  for (const auto& p : pts) CHECK(hp.contains(p, 1e-9));
}

TEST_CASE("hull of random clouds") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<Vec<3>> pts;
    for (int i = 0; i < 2000; ++i) pts.push_back(vec3(u(rng), u(rng), u(rng)));
    auto h = convex_hull_3d(pts);
    check_surface(h);
    check_orientation(h);
    check_support_agreement(h, pts, 1000 + uint64_t(trial));
    auto hp = hull3d_hrep(h);
    size_t inside = 0;
    for (const auto& p : pts) inside += hp.contains(p, 1e-9);
    CHECK(inside == pts.size());
  }
}

TEST_CASE("hull survives heavy coplanarity (lattice on a cube surface)") {
  std::vector<Vec<3>> pts;
  int n = 9;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      double x = -1 + 2.0 * i / n, y = -1 + 2.0 * j / n;
      pts.push_back(vec3(x, y, 1));
      pts.push_back(vec3(x, y, -1));
      pts.push_back(vec3(x, 1, y));
      pts.push_back(vec3(x, -1, y));
      pts.push_back(vec3(1, x, y));
      pts.push_back(vec3(-1, x, y));
    }
  auto h = convex_hull_3d(pts);
  check_surface(h);
  check_orientation(h);
  auto hp = hull3d_hrep(h);
  for (const auto& p : pts) CHECK(hp.contains(p, 1e-9));
  /* only the 8 corners are vertices */
  CHECK(h.vertices.size() == 8);
}

TEST_CASE("flat, collinear, and single-point inputs") {
  std::vector<Vec<3>> flat;
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 60; ++i) {
    double a = u(rng), b = u(rng);
    flat.push_back(vec3(a, b, 0.5 * a - 0.25 * b + 1));
  }
  auto h = convex_hull_3d(flat);
  CHECK(h.rank == 2);
  CHECK(h.faces.empty());
  CHECK(h.vertices.size() >= 3);
  /* ring points are a superset test: all inputs in the hull of the ring */
  CHECK_FAILS_WITH("DegenerateInput", hull3d_hrep(h));

  auto line = convex_hull_3d({vec3(0, 0, 0), vec3(1, 2, 3), vec3(0.5, 1, 1.5)});
  CHECK(line.rank == 1);
  REQUIRE(line.vertices.size() == 2);
  CHECK(dist(line.vertices[0], vec3(0, 0, 0)) < 1e-12);
  CHECK(dist(line.vertices[1], vec3(1, 2, 3)) < 1e-12);

  auto pt = convex_hull_3d({vec3(2, 2, 2), vec3(2, 2, 2)});
  CHECK(pt.rank == 0);
  CHECK(pt.vertices.size() == 1);
}

TEST_CASE("hull scales to tens of thousands of points") {
  std::mt19937_64 rng(59);
  std::normal_distribution<double> g(0, 1);
  std::vector<Vec<3>> pts;
  for (int i = 0; i < 20000; ++i) {
    Vec<3> p = vec3(g(rng), g(rng), g(rng));
    pts.push_back(p * (1.0 / norm(p)));
  }
  auto h = convex_hull_3d(pts);
  CHECK(h.vertices.size() == 20000);
  check_surface(h);
  check_support_agreement(h, pts, 2024);
}
