#pragma once

#include <vector>

#include "kakeya/linprog.hpp"
#include "kakeya/polytope.hpp"

namespace kakeya {

template <int N>
struct NearestResult {
  double distance = 0;
  Vec<N> witness{}; /* the closest point of the body */
};

namespace nndetail {

/* Gaussian elimination with partial pivoting on a k x k system, k tiny.
 * Returns false when the matrix is numerically singular. */
inline bool solve_dense(std::vector<double>& a, std::vector<double>& b, int k) {
  for (int col = 0; col < k; ++col) {
    int piv = col;
    for (int r = col + 1; r < k; ++r)
      if (std::fabs(a[size_t(r * k + col)]) > std::fabs(a[size_t(piv * k + col)]))
        piv = r;
    if (std::fabs(a[size_t(piv * k + col)]) < 1e-13) return false;
    if (piv != col) {
      for (int j = 0; j < k; ++j)
        std::swap(a[size_t(col * k + j)], a[size_t(piv * k + j)]);
      std::swap(b[size_t(col)], b[size_t(piv)]);
    }
    for (int r = col + 1; r < k; ++r) {
      double f = a[size_t(r * k + col)] / a[size_t(col * k + col)];
      for (int j = col; j < k; ++j) a[size_t(r * k + j)] -= f * a[size_t(col * k + j)];
      b[size_t(r)] -= f * b[size_t(col)];
    }
  }
  for (int r = k - 1; r >= 0; --r) {
    double s = b[size_t(r)];
    for (int j = r + 1; j < k; ++j) s -= a[size_t(r * k + j)] * b[size_t(j)];
    b[size_t(r)] = s / a[size_t(r * k + r)];
  }
  return true;
}

/* Affine minimizer of |sum w_i s_i| with sum w_i = 1: KKT system
 * [2G 1; 1^T 0] [w; nu] = [0; 1].  Falls back to a tiny ridge when the
 * points are affinely dependent. */
template <int N>
bool affine_min_norm(const std::vector<Vec<N>>& s, std::vector<double>& w) {
  int k = int(s.size());
  int m = k + 1;
  std::vector<double> a(size_t(m * m), 0.0), b(size_t(m), 0.0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) a[size_t(i * m + j)] = 2.0 * dot(s[size_t(i)], s[size_t(j)]);
  for (int i = 0; i < k; ++i) {
    a[size_t(i * m + k)] = 1.0;
    a[size_t(k * m + i)] = 1.0;
  }
  b[size_t(k)] = 1.0;
  auto a2 = a;
  auto b2 = b;
  if (!solve_dense(a2, b2, m)) {
    for (int i = 0; i < k; ++i) a[size_t(i * m + i)] += 1e-12;
    a2 = a;
    b2 = b;
    if (!solve_dense(a2, b2, m)) return false;
  }
  w.assign(b2.begin(), b2.begin() + k);
  return true;
}

}  // namespace nndetail

/* Closest point of conv(vertices) to p, by Wolfe's minimum-norm-point
 * algorithm (Math. Programming 11, 1976) on the shifted set.  Finite in
 * exact arithmetic; iteration-capped here with ~1e-10 accuracy in
 * practice. */
template <int N>
NearestResult<N> nearest_point(const VPolytope<N>& vp, const Vec<N>& p) {
  const auto& vs = vp.vertices;
  /* shifted LMO: argmin over vertices of <x, v - p> */
  auto lmo = [&](const Vec<N>& x) {
    size_t best = 0;
    double bv = dot(x, vs[0] - p);
    for (size_t i = 1; i < vs.size(); ++i) {
      double v = dot(x, vs[i] - p);
      if (v < bv) {
        bv = v;
        best = i;
      }
    }
    return best;
  };

  size_t start = 0;
  double bn = dist(vs[0], p);
  for (size_t i = 1; i < vs.size(); ++i)
    if (dist(vs[i], p) < bn) {
      bn = dist(vs[i], p);
      start = i;
    }
  std::vector<Vec<N>> corral = {vs[start] - p};
  std::vector<size_t> ids = {start};
  std::vector<double> lam = {1.0};
  Vec<N> x = corral[0];

  int guard = 1000 + 10 * int(vs.size());
  while (guard-- > 0) {
    size_t s = lmo(x);
    if (dot(x, x) - dot(x, vs[s] - p) <= 1e-12 * (1.0 + dot(x, x))) break;
    bool dup = false;
    for (size_t id : ids)
      if (id == s) dup = true;
    if (dup) break; /* numerical stall: x is optimal to working precision */
    corral.push_back(vs[s] - p);
    ids.push_back(s);
    lam.push_back(0.0);

    while (true) {
      std::vector<double> w;
      if (!nndetail::affine_min_norm(corral, w)) {
        /* hopeless dependence: drop the oldest point and retry */
        corral.erase(corral.begin());
        ids.erase(ids.begin());
        lam.erase(lam.begin());
        continue;
      }
      double wmin = 1e300;
      for (double wi : w) wmin = std::min(wmin, wi);
      if (wmin > 1e-12) {
        lam = w;
        break;
      }
      /* step toward w until the first coefficient dies, then drop it */
      double theta = 1.0;
      for (size_t i = 0; i < w.size(); ++i)
        if (w[i] <= 1e-12 && lam[i] - w[i] > 1e-300)
          theta = std::min(theta, lam[i] / (lam[i] - w[i]));
      for (size_t i = 0; i < w.size(); ++i)
        lam[i] = (1 - theta) * lam[i] + theta * w[i];
      for (size_t i = lam.size(); i-- > 0;)
        if (lam[i] <= 1e-12) {
          corral.erase(corral.begin() + long(i));
          ids.erase(ids.begin() + long(i));
          lam.erase(lam.begin() + long(i));
        }
      if (corral.empty()) fail("DomainError", "nearest-point corral collapsed");
    }
    x = Vec<N>{};
    for (size_t i = 0; i < corral.size(); ++i) x += corral[i] * lam[i];
  }

  NearestResult<N> out;
  out.witness = x + p;
  out.distance = norm(x);
  return out;
}

/* Projection of p onto an H-polytope by a primal active-set method started
 * from the inball center.  Throws EmptyBody when there is nothing to
 * project onto. */
template <int N>
NearestResult<N> nearest_point(const HPolytope<N>& hp, const Vec<N>& p) {
  if (hp.contains(p, 0.0)) return {0.0, p};
  auto ib = inscribed_ball(hp);
  if (ib.radius < -1e-9) fail("EmptyBody", "projection onto empty polytope");
  Vec<N> x = hp.contains(p, kTol) ? p : ib.center;

  std::vector<size_t> active;
  auto solve_alpha = [&](const Vec<N>& r, std::vector<double>& alpha) {
    int k = int(active.size());
    std::vector<double> g(size_t(k * k)), rhs(size_t(k), 0.0);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j)
        g[size_t(i * k + j)] = dot(hp.rows[active[size_t(i)]].normal,
                                   hp.rows[active[size_t(j)]].normal);
      rhs[size_t(i)] = dot(hp.rows[active[size_t(i)]].normal, r);
    }
    for (int i = 0; i < k; ++i) g[size_t(i * k + i)] += 1e-14;
    if (!nndetail::solve_dense(g, rhs, k)) return false;
    alpha = rhs;
    return true;
  };

  int guard = 200 * int(hp.rows.size()) + 200;
  while (guard-- > 0) {
    Vec<N> r = p - x;
    Vec<N> d = r;
    std::vector<double> alpha;
    if (!active.empty()) {
      if (!solve_alpha(r, alpha)) {
        active.pop_back();
        continue;
      }
      for (size_t i = 0; i < active.size(); ++i)
        d -= hp.rows[active[i]].normal * alpha[i];
    }
    if (norm(d) > 1e-11 * (1.0 + norm(r))) {
      /* slide toward the face minimizer, stopping at the first new row */
      double t = 1.0;
      long blocker = -1;
      for (size_t i = 0; i < hp.rows.size(); ++i) {
        double nd = dot(hp.rows[i].normal, d);
        if (nd <= 1e-13) continue;
        double slack = hp.rows[i].offset - dot(hp.rows[i].normal, x);
        double ti = slack / nd;
        if (ti < t) {
          t = ti;
          blocker = long(i);
        }
      }
      if (t > 0) x += d * t;
      if (blocker >= 0 && int(active.size()) < N) {
        bool already = false;
        for (size_t a : active)
          if (a == size_t(blocker)) already = true;
        if (!already)
          active.push_back(size_t(blocker));
        else
          break; /* degenerate cycling: accept current point */
      } else if (blocker >= 0) {
        break; /* more active rows than dimensions: accept */
      }
      if (blocker < 0) continue;
    } else {
      /* face minimizer reached: check the multipliers */
      long worst = -1;
      double wv = -1e-12;
      for (size_t i = 0; i < alpha.size(); ++i)
        if (alpha[i] < wv) {
          wv = alpha[i];
          worst = long(i);
        }
      if (worst < 0) break;
      active.erase(active.begin() + worst);
    }
  }

  NearestResult<N> out;
  out.witness = x;
  out.distance = dist(p, x);
  return out;
}

/* Hull membership as a distance question: p is inside when its projection
 * onto the hull is (numerically) p itself. */
template <int N>
inline bool contains(const VPolytope<N>& vp, const Vec<N>& p, double tol = kTol) {
  return nearest_point(vp, p).distance <= tol;
}

}  // namespace kakeya
