#pragma once

#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "kakeya/erosion.hpp"
#include "kakeya/hull2d.hpp"
#include "kakeya/metrics.hpp"

namespace kakeya {

/* Continuous placement selection in the plane.
 *
 * When a convex body K contains a copy of the probe S at every rotation,
 * the map  theta -> ball centre of { w : rot(theta) S + w subset K }  is a
 * continuous choice of placement.  (The centre of the smallest enclosing
 * ball is unique and moves continuously with the body, and the translate
 * set itself varies continuously with the angle; this is special to the
 * plane and fails from dimension three on.)  `select` evaluates that map
 * at one angle, `trace` sweeps a full turn and records the step sizes so
 * continuity can be checked numerically. */

inline constexpr double kTau = 6.283185307179586476925286766559;

struct SelectorTrace {
  std::vector<double> angles;      /* theta_i = i * 2pi / n */
  std::vector<Vec<2>> translates;  /* selected placement at theta_i */
  /* gaps[i] = |f(theta_{i+1}) - f(theta_i)|, one per angle: the last entry
   * wraps around to theta_0, closing the loop over the whole circle. */
  std::vector<double> gaps;

  double max_gap() const {
    double m = 0;
    for (double g : gaps) m = std::max(m, g);
    return m;
  }
};

namespace seldetail {

/* Shared core: erode, take the ball centre, and re-check the placement. */
template <class Probe>
Vec<2> select_at(const HPolytope<2>& k, const Probe& s, double theta) {
  Probe turned = s.rotated(rotation2(theta));
  HPolytope<2> iset = erode(k, turned);

  auto ib = inscribed_ball(iset);
  if (ib.radius < -1e-9)
    fail("NotKakeyaAtAngle",
         "no translate of the probe fits at angle " + std::to_string(theta));

  Vec<2> f = chebyshev_center(VPolytope<2>(h_to_v_2d(iset))).center;

  /* The centre lies in the translate set by convexity; this guards the
   * numerics, not the math. */
  auto check = [&](const Vec<2>& v) {
    if (!k.contains(v + f, 1e-9))
      fail("NotKakeyaAtAngle",
           "selected placement escapes the body at angle " +
               std::to_string(theta));
  };
  if constexpr (std::is_same_v<Probe, Segment<2>>) {
    check(turned.base);
    check(turned.head());
  } else {
    for (const auto& v : turned.vertices) check(v);
  }
  return f;
}

}  // namespace seldetail

inline Vec<2> select(const HPolytope<2>& k, const Segment<2>& s, double theta) {
  return seldetail::select_at(k, s, theta);
}

inline Vec<2> select(const HPolytope<2>& k, const VPolytope<2>& s, double theta) {
  return seldetail::select_at(k, s, theta);
}

namespace seldetail {

template <class Probe>
SelectorTrace trace_impl(const HPolytope<2>& k, const Probe& s, int n_samples) {
  if (n_samples < 2) fail("DomainError", "trace needs at least two samples");

  SelectorTrace t;
  t.angles.resize(size_t(n_samples));
  t.translates.resize(size_t(n_samples));
  for (int i = 0; i < n_samples; ++i)
    t.angles[size_t(i)] = kTau * double(i) / double(n_samples);

  /* Per-angle work is independent; results land by index, so the output
   * does not depend on the thread split.  The lowest failing angle wins
   * to keep errors deterministic too. */
  unsigned hw = std::thread::hardware_concurrency();
  int nthreads = int(std::min<unsigned>(hw == 0 ? 1 : hw, 8));
  nthreads = std::min(nthreads, n_samples);

  struct Failure {
    int index;
    std::string kind, msg;
  };
  std::vector<Failure> fails(size_t(nthreads), {-1, "", ""});

  auto worker = [&](int tid) {
    for (int i = tid; i < n_samples; i += nthreads) {
      try {
        t.translates[size_t(i)] = select_at(k, s, t.angles[size_t(i)]);
      } catch (const Error& e) {
        auto& f = fails[size_t(tid)];
        if (f.index < 0 || i < f.index) f = {i, e.kind, e.what()};
        return;
      }
    }
  };
  if (nthreads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int tid = 0; tid < nthreads; ++tid) pool.emplace_back(worker, tid);
    for (auto& th : pool) th.join();
  }

  const Failure* first = nullptr;
  for (const auto& f : fails)
    if (f.index >= 0 && (!first || f.index < first->index)) first = &f;
  if (first) {
    std::string msg = first->msg;
    auto cut = msg.find(": ");
    throw Error(first->kind, cut == std::string::npos ? msg : msg.substr(cut + 2));
  }

  t.gaps.resize(size_t(n_samples));
  for (int i = 0; i < n_samples; ++i)
    t.gaps[size_t(i)] =
        dist(t.translates[size_t((i + 1) % n_samples)], t.translates[size_t(i)]);
  return t;
}

}  // namespace seldetail

inline SelectorTrace trace(const HPolytope<2>& k, const Segment<2>& s,
                           int n_samples) {
  return seldetail::trace_impl(k, s, n_samples);
}

inline SelectorTrace trace(const HPolytope<2>& k, const VPolytope<2>& s,
                           int n_samples) {
  return seldetail::trace_impl(k, s, n_samples);
}

}  // namespace kakeya
