#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "kakeya/polytope.hpp"

namespace kakeya {

/* Dense LP solver for problems with very few variables (<= 5 here) and
 * possibly many inequality rows: Seidel's randomized incremental method.
 * A violated row pins the optimum to its hyperplane; the row's largest
 * coordinate is substituted out and the prefix is re-solved one dimension
 * lower.  Expected linear time in the row count for fixed dimension.
 *
 * Variables are implicitly confined to |x_j| <= box; an optimum touching
 * that artificial box is reported as Unbounded.  Results are accurate to
 * the feasibility tolerance, not to machine precision. */

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <int N>
struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  Vec<N> point{};
  double value = 0;
};

constexpr double kLpBox = 1e7;
constexpr double kLpTol = 1e-9;

namespace lpdetail {

template <int N>
struct SeidelOut {
  bool feasible = false;
  Vec<N> x{};
};

template <int N>
SeidelOut<N> seidel(const std::vector<Halfspace<N>>& rows, const Vec<N>& c,
                    double box) {
  Vec<N> x{};
  for (int j = 0; j < N; ++j)
    x.c[j] = c[j] > 0 ? box : (c[j] < 0 ? -box : 0.0);

  for (size_t i = 0; i < rows.size(); ++i) {
    const Halfspace<N>& h = rows[i];
    if (dot(h.normal, x) - h.offset <= kLpTol * (1.0 + std::fabs(h.offset)))
      continue;

    if constexpr (N == 1) {
      double lo = -box, hi = box;
      for (size_t k = 0; k <= i; ++k) {
        double a = rows[k].normal[0], b = rows[k].offset;
        if (a > 1e-13)
          hi = std::min(hi, b / a);
        else if (a < -1e-13)
          lo = std::max(lo, b / a);
        else if (b < -kLpTol)
          return {false, x};
      }
      if (lo > hi + kLpTol) return {false, x};
      if (lo > hi) lo = hi = 0.5 * (lo + hi);
      x.c[0] = c[0] >= 0 ? hi : lo;
    } else {
      int piv = 0;
      for (int j = 1; j < N; ++j)
        if (std::fabs(h.normal[j]) > std::fabs(h.normal[piv])) piv = j;
      double ap = h.normal[piv];
      if (std::fabs(ap) < 1e-13) {
        if (h.offset < -kLpTol) return {false, x};
        continue;
      }

      /* Substitute x_piv = (b - sum_{j != piv} a_j x_j) / a_piv into every
       * earlier row and the objective; remaining variables keep their
       * identity (and their |x_j| <= box rows, which arrive projected). */
      std::vector<Halfspace<N - 1>> sub;
      sub.reserve(i);
      bool infeasible = false;
      auto project = [&](const Vec<N>& a, double b) {
        Vec<N - 1> q{};
        int t = 0;
        for (int j = 0; j < N; ++j) {
          if (j == piv) continue;
          q.c[t++] = a[j] - a[piv] * (h.normal[j] / ap);
        }
        double bb = b - a[piv] * (h.offset / ap);
        double nn = norm(q);
        if (nn < 1e-13) {
          if (bb < -kLpTol) infeasible = true;
          return;
        }
        sub.push_back({q * (1.0 / nn), bb / nn});
      };
      for (size_t k = 0; k < i && !infeasible; ++k)
        project(rows[k].normal, rows[k].offset);
      if (infeasible) return {false, x};

      Vec<N - 1> cc{};
      {
        int t = 0;
        for (int j = 0; j < N; ++j) {
          if (j == piv) continue;
          cc.c[t++] = c[j] - c[piv] * (h.normal[j] / ap);
        }
      }
      auto r = seidel<N - 1>(sub, cc, box);
      if (!r.feasible) return {false, x};
      {
        int t = 0;
        double s = h.offset;
        for (int j = 0; j < N; ++j) {
          if (j == piv) continue;
          x.c[j] = r.x[t++];
          s -= h.normal[j] * x.c[j];
        }
        x.c[piv] = s / ap;
      }
    }
  }
  return {true, x};
}

}  // namespace lpdetail

/* Maximize <objective, x> over normalized halfspace rows.  Deterministic
 * for a fixed seed (the row order is shuffled once up front).
 *
 * An "infeasible" verdict from a single Seidel pass can be a rounding
 * artifact when the optimum is degenerate (more than N tight rows): the
 * projection step divides by the norm of a nearly-parallel residual, which
 * amplifies roundoff past the feasibility tolerance for unlucky insertion
 * orders.  Genuine infeasibility does not depend on the order, so before
 * giving up we re-run a few reshuffles and accept any answer that checks
 * out against every row. */
template <int N>
LpOutcome<N> lp_maximize(const std::vector<Halfspace<N>>& rows,
                         const Vec<N>& objective, uint64_t seed = 12345,
                         double box = kLpBox) {
  std::vector<Halfspace<N>> work;
  work.reserve(rows.size() + 2 * N);
  for (int j = 0; j < N; ++j) {
    Vec<N> e{};
    e.c[j] = 1;
    work.push_back({e, box});
    work.push_back({-e, box});
  }
  for (const auto& h : rows) {
    double n = norm(h.normal);
    if (n < 1e-12) fail("DomainError", "lp row has zero normal");
    work.push_back({h.normal * (1.0 / n), h.offset / n});
  }

  auto run = [&](uint64_t s) {
    std::mt19937_64 rng(s);
    std::shuffle(work.begin() + 2 * N, work.end(), rng);
    return lpdetail::seidel<N>(work, objective, box);
  };
  auto r = run(seed);
  for (int attempt = 1; !r.feasible && attempt <= 3; ++attempt) {
    auto retry = run(seed + 0x9e3779b97f4a7c15ull * uint64_t(attempt));
    if (!retry.feasible) continue;
    bool ok = true;
    for (const auto& h : work)
      if (dot(h.normal, retry.x) - h.offset > 1e2 * kLpTol * (1.0 + std::fabs(h.offset)))
        ok = false;
    if (ok) r = retry;
  }

  LpOutcome<N> out;
  if (!r.feasible) {
    out.status = LpStatus::Infeasible;
    return out;
  }
  out.point = r.x;
  out.value = dot(objective, r.x);
  out.status = LpStatus::Optimal;
  for (int j = 0; j < N; ++j)
    if (std::fabs(r.x[j]) >= box * (1.0 - 1e-9)) out.status = LpStatus::Unbounded;
  return out;
}

template <int N>
inline Vec<N> support_point(const HPolytope<N>& p, const Vec<N>& d,
                            uint64_t seed = 12345) {
  auto r = lp_maximize(p.rows, d, seed);
  if (r.status == LpStatus::Infeasible) fail("EmptyBody", "support of empty polytope");
  if (r.status == LpStatus::Unbounded)
    fail("UnboundedInDirection", "support is unbounded in the given direction");
  return r.point;
}

template <int N>
inline double support(const HPolytope<N>& p, const Vec<N>& d, uint64_t seed = 12345) {
  return dot(d, support_point(p, d, seed));
}

template <int N>
struct InscribedBall {
  double radius = 0;  /* max-min row slack; negative means empty */
  Vec<N> center{};
};

/* Largest inscribed ball (Chebyshev problem): maximize r subject to
 * <n_i, x> + r <= b_i.  Because rows are unit-normalized the optimal r is
 * the max-min slack; r < 0 measures infeasibility depth. */
template <int N>
InscribedBall<N> inscribed_ball(const HPolytope<N>& p, uint64_t seed = 12345) {
  std::vector<Halfspace<N + 1>> rows;
  rows.reserve(p.rows.size());
  for (const auto& h : p.rows) {
    Vec<N + 1> a{};
    for (int j = 0; j < N; ++j) a.c[j] = h.normal[j];
    a.c[N] = 1;
    rows.push_back({a, h.offset});
  }
  Vec<N + 1> obj{};
  obj.c[N] = 1;
  auto r = lp_maximize(rows, obj, seed);
  if (r.status == LpStatus::Infeasible)
    fail("DomainError", "inball LP cannot be infeasible");
  if (r.status == LpStatus::Unbounded)
    fail("Unbounded", "polytope is unbounded");
  InscribedBall<N> out;
  out.radius = r.point[N];
  for (int j = 0; j < N; ++j) out.center.c[j] = r.point[j];
  return out;
}

template <int N>
struct ChordResult {
  double length = 0;  /* longest segment in the given direction */
  Vec<N> foot{};      /* its starting point */
};

/* Longest chord of a polytope in direction v: maximize L subject to
 * u in K and u + L v in K. */
template <int N>
ChordResult<N> max_chord(const HPolytope<N>& p, const Direction<N>& v,
                         uint64_t seed = 12345) {
  std::vector<Halfspace<N + 1>> rows;
  rows.reserve(2 * p.rows.size() + 1);
  for (const auto& h : p.rows) {
    Vec<N + 1> a{};
    for (int j = 0; j < N; ++j) a.c[j] = h.normal[j];
    a.c[N] = 0;
    rows.push_back({a, h.offset});
    a.c[N] = dot(h.normal, v.vec());
    rows.push_back({a, h.offset});
  }
  {
    Vec<N + 1> a{};
    a.c[N] = -1;
    rows.push_back({a, 0});
  }
  Vec<N + 1> obj{};
  obj.c[N] = 1;
  auto r = lp_maximize(rows, obj, seed);
  if (r.status == LpStatus::Infeasible) fail("EmptyBody", "chord of empty polytope");
  if (r.status == LpStatus::Unbounded)
    fail("Unbounded", "polytope is unbounded along the chord direction");
  ChordResult<N> out;
  out.length = r.point[N];
  for (int j = 0; j < N; ++j) out.foot.c[j] = r.point[j];
  return out;
}

/* Best sup-normalized separation margin of p against conv(vertices):
 * maximize t with <a, p - v_i> >= t for all i, |a|_inf <= 1.  For p inside
 * the hull t <= 0; outside, dist <= t <= sqrt(N) * dist where dist is the
 * Euclidean distance to the hull.  So t <= tol certifies dist <= tol. */
template <int N>
double separation_margin(const VPolytope<N>& vp, const Vec<N>& p,
                         uint64_t seed = 12345) {
  std::vector<Halfspace<N + 1>> rows;
  rows.reserve(vp.vertices.size() + 2 * N + 1);
  double scale = 1.0;
  for (const auto& v : vp.vertices) {
    Vec<N + 1> a{};
    for (int j = 0; j < N; ++j) a.c[j] = v[j] - p[j];
    a.c[N] = 1;
    rows.push_back({a, 0});
    scale = std::max(scale, norm(v - p));
  }
  for (int j = 0; j < N; ++j) {
    Vec<N + 1> e{};
    e.c[j] = 1;
    rows.push_back({e, 1});
    rows.push_back({-e, 1});
  }
  {
    Vec<N + 1> e{};
    e.c[N] = 1;
    rows.push_back({e, scale + 1});
  }
  Vec<N + 1> obj{};
  obj.c[N] = 1;
  auto r = lp_maximize(rows, obj, seed);
  if (r.status != LpStatus::Optimal)
    fail("DomainError", "separation LP must have an optimum");
  return r.value;
}

template <int N>
inline bool is_bounded(const HPolytope<N>& p) {
  for (int j = 0; j < N; ++j) {
    Vec<N> e{};
    e.c[j] = 1;
    for (double s : {1.0, -1.0}) {
      auto r = lp_maximize(p.rows, e * s);
      if (r.status == LpStatus::Unbounded) return false;
      if (r.status == LpStatus::Infeasible) return true;
    }
  }
  return true;
}

}  // namespace kakeya
