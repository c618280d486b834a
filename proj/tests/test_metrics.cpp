#include <doctest.h>

#include <cmath>
#include <random>

#include "kakeya/hull2d.hpp"
#include "kakeya/linprog.hpp"
#include "kakeya/metrics.hpp"
#include "test_util.hpp"

using namespace kakeya;

namespace {

/* Circumball of a small point set, coded from scratch for the oracle:
 * c = p0 + sum t_i (p_i - p0) with G t = diag(G)/2, Gaussian elimination
 * with partial pivoting.  Returns radius < 0 when the set is degenerate. */
template <int N>
Ball<N> oracle_circumball(const std::vector<Vec<N>>& r) {
  int k = int(r.size()) - 1;
  if (k < 0) return {Vec<N>{}, -1};
  if (k == 0) return {r[0], 0};
  std::vector<double> m(size_t(k * (k + 1)));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j)
      m[size_t(i * (k + 1) + j)] =
          dot(r[size_t(i + 1)] - r[0], r[size_t(j + 1)] - r[0]);
    m[size_t(i * (k + 1) + k)] = m[size_t(i * (k + 1) + i)] / 2;
  }
  for (int col = 0; col < k; ++col) {
    int piv = col;
    for (int i = col + 1; i < k; ++i)
      if (std::fabs(m[size_t(i * (k + 1) + col)]) >
          std::fabs(m[size_t(piv * (k + 1) + col)]))
        piv = i;
    if (std::fabs(m[size_t(piv * (k + 1) + col)]) < 1e-12) return {Vec<N>{}, -1};
    for (int j = 0; j <= k; ++j)
      std::swap(m[size_t(col * (k + 1) + j)], m[size_t(piv * (k + 1) + j)]);
    for (int i = 0; i < k; ++i) {
      if (i == col) continue;
      double f = m[size_t(i * (k + 1) + col)] / m[size_t(col * (k + 1) + col)];
      for (int j = col; j <= k; ++j)
        m[size_t(i * (k + 1) + j)] -= f * m[size_t(col * (k + 1) + j)];
    }
  }
  Vec<N> c = r[0];
  for (int i = 0; i < k; ++i)
    c += (r[size_t(i + 1)] - r[0]) *
         (m[size_t(i * (k + 1) + k)] / m[size_t(i * (k + 1) + i)]);
  return {c, dist(c, r[0])};
}

/* Brute-force minimum enclosing ball: try every boundary subset of size
 * <= N+1 and keep the smallest circumball that covers everything. */
template <int N>
Ball<N> oracle_meb(const std::vector<Vec<N>>& pts) {
  int n = int(pts.size());
  Ball<N> best{Vec<N>{}, 1e300};
  std::vector<int> idx;
  auto consider = [&](const std::vector<Vec<N>>& sub) {
    Ball<N> b = oracle_circumball<N>(sub);
    if (b.radius < 0 || b.radius >= best.radius) return;
    for (const auto& p : pts)
      if (dist(p, b.center) > b.radius + 1e-9) return;
    best = b;
  };
  std::vector<Vec<N>> sub;
  auto rec = [&](auto&& self, int start, int left) -> void {
    if (left == 0) {
      consider(sub);
      return;
    }
    for (int i = start; i + left <= n; ++i) {
      sub.push_back(pts[size_t(i)]);
      self(self, i + 1, left - 1);
      sub.pop_back();
    }
  };
  for (int sz = 1; sz <= N + 1 && sz <= n; ++sz) rec(rec, 0, sz);
  return best;
}

template <int N>
void run_meb_trials(uint64_t seed, int n, int trials) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < trials; ++t) {
    std::vector<Vec<N>> pts;
    for (int i = 0; i < n; ++i) {
      Vec<N> v{};
      for (int j = 0; j < N; ++j) v.c[j] = u(rng);
      pts.push_back(v);
    }
    Ball<N> got = min_enclosing_ball(pts);
    Ball<N> want = oracle_meb<N>(pts);
    CHECK(got.radius == doctest::Approx(want.radius).epsilon(1e-9));
    CHECK(dist(got.center, want.center) < 1e-7);
    for (const auto& p : pts) CHECK(dist(p, got.center) <= got.radius + 1e-9);
    /* the centre of the smallest enclosing ball lies in the hull */
    CHECK(contains(VPolytope<N>(pts), got.center, 1e-7));
  }
}

}  // namespace

TEST_CASE("smallest enclosing ball matches subset enumeration") {
  run_meb_trials<2>(201, 50, 12);
  run_meb_trials<3>(202, 30, 10);
  run_meb_trials<4>(203, 18, 8);
}

TEST_CASE("smallest enclosing ball on hand-checked shapes") {
  Ball<2> sq = min_enclosing_ball<2>(
      {vec2(-1, -1), vec2(1, -1), vec2(1, 1), vec2(-1, 1)});
  CHECK(sq.radius == doctest::Approx(std::sqrt(2.0)));
  CHECK(norm(sq.center) < 1e-9);

  /* right triangle: ball spans the hypotenuse */
  Ball<2> rt = min_enclosing_ball<2>({vec2(0, 0), vec2(4, 0), vec2(0, 3)});
  CHECK(rt.radius == doctest::Approx(2.5));
  CHECK(dist(rt.center, vec2(2, 1.5)) < 1e-9);

  /* obtuse triangle: third vertex is interior to the diameter ball */
  Ball<2> ob = min_enclosing_ball<2>({vec2(-2, 0), vec2(2, 0), vec2(0, 0.5)});
  CHECK(ob.radius == doctest::Approx(2.0));

  Ball<3> oct = min_enclosing_ball<3>({vec3(1, 0, 0), vec3(-1, 0, 0),
                                       vec3(0, 1, 0), vec3(0, -1, 0),
                                       vec3(0, 0, 1), vec3(0, 0, -1)});
  CHECK(oct.radius == doctest::Approx(1.0));
  CHECK(norm(oct.center) < 1e-9);

  Ball<2> one = min_enclosing_ball<2>({vec2(3, 4)});
  CHECK(one.radius == 0.0);
  Ball<2> dup = min_enclosing_ball<2>({vec2(1, 1), vec2(1, 1), vec2(1, 1)});
  CHECK(dup.radius == doctest::Approx(0.0));
  Ball<2> seg = min_enclosing_ball<2>({vec2(0, 0), vec2(1, 0), vec2(2, 0)});
  CHECK(seg.radius == doctest::Approx(1.0));
  CHECK(dist(seg.center, vec2(1, 0)) < 1e-9);

  CHECK_FAILS_WITH("DomainError", min_enclosing_ball<2>({}));
}

TEST_CASE("smallest enclosing ball is rigid under shifts and seeds") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Vec<3>> pts;
  for (int i = 0; i < 200; ++i) pts.push_back(vec3(u(rng), u(rng), u(rng)));
  Ball<3> a = min_enclosing_ball(pts, 1);
  Ball<3> b = min_enclosing_ball(pts, 999);
  CHECK(a.radius == doctest::Approx(b.radius).epsilon(1e-12));
  CHECK(dist(a.center, b.center) < 1e-9);

  Vec<3> shift = vec3(10, -3, 0.5);
  std::vector<Vec<3>> moved = pts;
  for (auto& p : moved) p += shift;
  Ball<3> m = min_enclosing_ball(moved);
  CHECK(m.radius == doctest::Approx(a.radius).epsilon(1e-9));
  CHECK(dist(m.center, a.center + shift) < 1e-7);
}

TEST_CASE("ball centre of bodies in both representations") {
  VPolytope<2> tri({vec2(0, 0), vec2(4, 0), vec2(0, 3)});
  Ball<2> cv = chebyshev_center(tri);
  CHECK(dist(cv.center, vec2(2, 1.5)) < 1e-9);
  CHECK(cv.radius == doctest::Approx(2.5));

  auto sq = HPolytope<2>::from_rows({{vec2(1, 0), 2}, {vec2(-1, 0), 0},
                                     {vec2(0, 1), 5}, {vec2(0, -1), -3}});
  Ball<2> ch = chebyshev_center(sq);
  CHECK(dist(ch.center, vec2(1, 4)) < 1e-7);
}

TEST_CASE("hausdorff distance on hand-checked pairs") {
  VPolytope<2> small({vec2(-1, -1), vec2(1, -1), vec2(1, 1), vec2(-1, 1)});
  VPolytope<2> big({vec2(-2, -2), vec2(2, -2), vec2(2, 2), vec2(-2, 2)});
  CHECK(hausdorff(small, big) == doctest::Approx(std::sqrt(2.0)));
  CHECK(hausdorff(big, small) == doctest::Approx(std::sqrt(2.0)));
  CHECK(hausdorff(small, small) == doctest::Approx(0.0));

  VPolytope<2> shifted = small.translated(vec2(0.5, 0));
  CHECK(hausdorff(small, shifted) == doctest::Approx(0.5));

  /* point vs square: farthest corner decides */
  VPolytope<2> pt({vec2(0, 0)});
  CHECK(hausdorff(pt, small) == doctest::Approx(std::sqrt(2.0)));

  VPolytope<3> cu({vec3(0, 0, 0), vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1),
                   vec3(1, 1, 0), vec3(1, 0, 1), vec3(0, 1, 1), vec3(1, 1, 1)});
  VPolytope<3> cu2 = cu.translated(vec3(0, 0, 2));
  CHECK(hausdorff(cu, cu2) == doctest::Approx(2.0));
}

TEST_CASE("hausdorff distance obeys metric axioms on random hulls") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1, 1);
  auto mk = [&] {
    std::vector<Vec<2>> pts;
    for (int i = 0; i < 12; ++i) pts.push_back(vec2(u(rng), u(rng)));
    return VPolytope<2>(convex_hull_2d(pts));
  };
  for (int t = 0; t < 20; ++t) {
    auto a = mk(), b = mk(), c = mk();
    double ab = hausdorff(a, b), ba = hausdorff(b, a);
    CHECK(ab == doctest::Approx(ba).epsilon(1e-10));
    CHECK(hausdorff(a, b) <= hausdorff(a, c) + hausdorff(c, b) + 1e-9);
    CHECK(hausdorff(a, a) == doctest::Approx(0.0));
  }
}

TEST_CASE("hausdorff distance accepts H-rep input in the plane") {
  auto a = HPolytope<2>::from_rows({{vec2(1, 0), 1}, {vec2(-1, 0), 1},
                                    {vec2(0, 1), 1}, {vec2(0, -1), 1}});
  auto b = a.translated(vec2(3, 0));
  CHECK(hausdorff(a, b) == doctest::Approx(3.0));
}
