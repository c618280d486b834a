#pragma once

#include <random>
#include <string>

#include "kakeya/linprog.hpp"

namespace kakeya {

/* Translate set I(S) = {w : S + w subset K} of a convex probe inside an
 * H-polytope.  Exact: every row keeps its normal and gives up the probe's
 * support value, since max over x in S of <n, x + w> = <n, w> + h_S(n). */
template <int N>
HPolytope<N> erode(const HPolytope<N>& k, const Segment<N>& s) {
  HPolytope<N> out = k;
  for (auto& r : out.rows) r.offset -= support(s, r.normal);
  return out;
}

template <int N>
HPolytope<N> erode(const HPolytope<N>& k, const VPolytope<N>& s) {
  HPolytope<N> out = k;
  for (auto& r : out.rows) r.offset -= support(s, r.normal);
  return out;
}

/* Translates of a rotated probe: I_rho(S). */
template <int N>
HPolytope<N> translate_set(const HPolytope<N>& k, const Segment<N>& s,
                           const Rotation<N>& rho) {
  return erode(k, s.rotated(rho));
}

/* A ball certified to sit inside a translate set: direct evidence that the
 * set has non-empty interior. */
template <int N>
struct InteriorCertificate {
  Vec<N> center{};
  double radius = 0;
};

/* A segment of length lambda > 1 in direction v forces I_v to have interior:
 * pulling any p in K toward the segment's base by the factor (1 - 1/lambda)
 * lands it in I_v, so averaging the 2N points that realize a unit step along
 * each coordinate axis gives a centre whose l_inf clearance inside I_v is at
 * least (1 - 1/lambda)/(2N).  The returned radius is the centre's exact
 * clearance, which can only improve on that bound. */
template <int N>
InteriorCertificate<N> long_segment_certificate(const HPolytope<N>& k,
                                                const Vec<N>& u,
                                                const Direction<N>& v,
                                                double lambda) {
  if (!(lambda > 1))
    fail("PreconditionViolated",
         "certificate needs a segment strictly longer than the unit probe");
  if (!k.contains(u, 1e-9))
    fail("PreconditionViolated", "segment base point lies outside the container");
  if (!k.contains(u + v.vec() * lambda, 1e-9))
    fail("PreconditionViolated", "segment far endpoint lies outside the container");

  double pull = 1.0 - 1.0 / lambda;
  Vec<N> acc{};
  for (int i = 0; i < N; ++i) {
    Vec<N> e{};
    e.c[i] = 1;
    /* any w with w, w + e_i in K realizes a unit step along axis i */
    auto step = inscribed_ball(erode(k, Segment<N>(Vec<N>{}, Direction<N>(e), 1)));
    if (step.radius < -1e-9)
      fail("InfeasibleAuxiliary",
           "container holds no unit chord along axis " + std::to_string(i));
    acc = acc + (u + (step.center - u) * pull) +
          (u + (step.center + e - u) * pull);
  }
  InteriorCertificate<N> out;
  out.center = acc * (1.0 / (2 * N));
  double bound = pull / (2 * N);
  double clearance = erode(k, unit_segment(v)).slack(out.center);
  if (clearance < bound - 1e-9)
    fail("NumericalInstability", "certificate centre lost its guaranteed clearance");
  out.radius = std::max(clearance, bound);
  return out;
}

/* Interior certificate from an over-unit inner product: if x, x + q lie in K
 * and <p,q> > 1, blending that chord with a unit chord along the auxiliary
 * direction p' = (p - eps q)/|p - eps q| manufactures a segment of length
 * 1/(eps + |p - eps q|) > 1 in direction p itself.  eps is set to half the
 * largest value admitted by |p - eps q| < 1 - eps, which maximizes the margin
 * of the resulting length over 1. */
template <int N>
InteriorCertificate<N> inner_product_interior(const HPolytope<N>& k,
                                              const Direction<N>& p,
                                              const Vec<N>& x,
                                              const Vec<N>& q) {
  double pq = dot(p.vec(), q);
  if (!(pq > 1 + 1e-9))
    fail("PreconditionViolated", "chord must have inner product > 1 with p");
  if (!k.contains(x, 1e-9) || !k.contains(x + q, 1e-9))
    fail("PreconditionViolated", "chord endpoints lie outside the container");

  /* |p - eps q|^2 < (1 - eps)^2  <=>  eps (|q|^2 - 1) < 2 (<p,q> - 1), and
   * |q| >= <p,q> > 1 keeps the bound finite */
  double eps = (pq - 1.0) / (dot(q, q) - 1.0);
  Vec<N> shifted = p.vec() - q * eps;
  double len = norm(shifted);
  auto aux = inscribed_ball(erode(k, unit_segment(Direction<N>(shifted))));
  if (aux.radius < -1e-9)
    fail("InfeasibleAuxiliary",
         "no unit chord along the auxiliary direction; container is not a "
         "Kakeya set there");
  /* z and z + p/(eps + len) both lie in K by convexity */
  Vec<N> z = (x * eps + aux.center * len) * (1.0 / (eps + len));
  return long_segment_certificate(k, z, p, 1.0 / (eps + len));
}

enum class SetKind { Empty, Point, LowDim, FullDim };

template <int N>
struct DimensionClass {
  SetKind kind = SetKind::Empty;
  int dim = -1;       /* affine dimension at the probe tolerance */
  double inradius = 0; /* largest inscribed ball; negative depth if empty */
  Vec<N> witness{};    /* a deep feasible point when one exists */
};

/* Classify a (possibly degenerate) H-polytope at a resolution: anything
 * thinner than point_tol in some direction is reported as lower
 * dimensional, matching how the set would look to a probe of that size.
 * The default resolution is far above LP noise but far below body scale.
 *
 * When extremes_out is given it receives the support points probed along
 * the way (empty when the set is empty or fat enough to classify from its
 * inscribed ball alone); callers that need both a classification and a
 * spread sample of the same set avoid paying for the LPs twice. */
template <int N>
DimensionClass<N> dimension_class(const HPolytope<N>& hp, double point_tol = 1e-7,
                                  std::vector<Vec<N>>* extremes_out = nullptr) {
  if (!(point_tol > 0)) fail("DomainError", "classification tolerance must be positive");
  if (extremes_out) extremes_out->clear();
  DimensionClass<N> out;
  auto ib = inscribed_ball(hp);
  out.inradius = ib.radius;
  out.witness = ib.center;
  if (ib.radius < -1e-9) {
    out.kind = SetKind::Empty;
    out.dim = -1;
    return out;
  }
  if (ib.radius > point_tol) {
    out.kind = SetKind::FullDim;
    out.dim = N;
    return out;
  }

  /* Thin set: probe extreme points along the axes and a few fixed random
   * directions, then measure the spread's affine rank. */
  std::vector<Vec<N>> probes;
  for (int j = 0; j < N; ++j) {
    Vec<N> e{};
    e.c[j] = 1;
    probes.push_back(e);
    probes.push_back(-e);
  }
  std::mt19937_64 rng(314159);
  std::normal_distribution<double> g(0, 1);
  for (int t = 0; t < 4 * N; ++t) {
    Vec<N> d{};
    for (int j = 0; j < N; ++j) d.c[j] = g(rng);
    if (norm(d) > 1e-6) probes.push_back(d * (1.0 / norm(d)));
  }
  std::vector<Vec<N>> ext;
  ext.push_back(ib.center);
  for (const auto& d : probes) {
    auto r = lp_maximize(hp.rows, d);
    if (r.status == LpStatus::Unbounded) fail("Unbounded", "polytope is unbounded");
    if (r.status == LpStatus::Optimal) ext.push_back(r.point);
  }
  if (extremes_out) extremes_out->assign(ext.begin() + 1, ext.end());
  double spread = 0;
  for (const auto& p : ext) spread = std::max(spread, dist(p, ext[0]));
  if (spread <= point_tol) {
    out.kind = SetKind::Point;
    out.dim = 0;
    return out;
  }
  int rank = affine_rank(ext, point_tol);
  if (rank >= N) rank = N; /* borderline-thin full body */
  out.dim = std::max(rank, 1);
  out.kind = out.dim == N ? SetKind::FullDim : SetKind::LowDim;
  return out;
}

}  // namespace kakeya
