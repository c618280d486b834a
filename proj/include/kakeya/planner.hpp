#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "kakeya/erosion.hpp"

namespace kakeya {

/* One sampled direction of the graph together with what the search needs
 * to know about its translate set: classification at the build's
 * resolution and candidate translates.  candidates[0] is the Chebyshev
 * centre (slack = cls.inradius); the rest are support points of the
 * translate set, farthest-point subsampled, which sit on its boundary.
 * The search pulls boundary candidates toward the centre as far as its
 * margin requires, so they are stored raw here.  The translate set itself
 * is not stored — erosion is a cheap exact row transform, so
 * DirectionGraph::translate_set recomputes it on demand rather than
 * holding thousands of row copies. */
struct DirectionNode {
  Vec<3> dir{};                    // unit
  DimensionClass<3> cls;
  std::vector<Vec<3>> candidates;  // [0] is the Chebyshev centre
  bool built = false;              // false outside a restricted band
};

struct DirectionGraph {
  int level = 0;
  double point_tol = 0;       // classification resolution used per node
  double max_edge_arc = 0;    // measured over all geometric edges
  double subdivision_c = 0;   // max_edge_arc * 2^level
  HPolytope<3> container;
  std::vector<DirectionNode> nodes;
  std::vector<std::vector<int>> adj;       // sorted neighbour lists
  std::vector<std::pair<int, int>> edges;  // i < j, lexicographic

  HPolytope<3> translate_set(int node) const {
    return erode(container, unit_segment(Direction<3>(nodes[node].dir)));
  }
};

struct GraphOptions {
  /* Classification is resolution-relative: a polytope approximation blurs
   * every translate set by its own facet slack, so the tolerance should
   * match the approximation, not the exact body.  The default suits the
   * corpus bodies built from a few hundred facets. */
  double point_tol = 0.02;
  int max_candidates = 16;  // Chebyshev centre plus up to 15 extreme points
  /* When band_ref is non-empty only nodes within chord distance `band` of
   * some reference direction are built; the rest stay empty shells.  This
   * is what makes planning against a tight reference affordable on big
   * containers: the off-band translate sets are never computed. */
  std::vector<Vec<3>> band_ref;
  double band = std::numeric_limits<double>::infinity();
  int threads = 0;  // 0 = hardware concurrency
};

/* Sample the directions of an icosphere at `level` (subdivided icosahedron,
 * 10*4^level + 2 vertices), erode the container by the unit stick at every
 * direction, and classify each translate set.  Fails with NotKakeya naming
 * the offending direction if any translate set comes out empty. */
DirectionGraph build_graph(const HPolytope<3>& k, int level,
                           const GraphOptions& opts = {});

struct PathSample {
  double t = 0;
  Vec<3> dir{};        // unit
  Vec<3> translate{};  // segment base; the stick spans translate..translate+dir
};

/* A continuous stick motion, piecewise geodesic in direction and linear in
 * translate between samples.  `margin` is the measured minimum constraint
 * slack over both stick endpoints at the re-validated sampling. */
struct MotionPath {
  std::vector<PathSample> samples;
  double margin = 0;
};

/* Union of the two open spherical caps {p : <p, v+w> > 1} and
 * {p : <p, v-w> > 1}.  Every direction in it carries a translate set with
 * interior, and is reachable from (v, u) by a stick motion whose directions
 * stay within 2|p - v| of v. */
struct CapRegion {
  Vec<3> v{};
  Vec<3> w{};
  bool member(const Vec<3>& p) const {
    /* strict by a hair above exactly 1 so that v itself, which meets both
     * cap boundaries, never tests as a member under roundoff */
    return dot(p, v + w) > 1 + 1e-12 || dot(p, v - w) > 1 + 1e-12;
  }
  double reach_bound(const Vec<3>& p) const {
    Vec<3> d = p - v;
    return 2 * norm(d);
  }
};

/* Build the escape region of a degenerate direction: v with u, u+w in its
 * translate set and w perpendicular to v.  Preconditions are enforced
 * (PreconditionViolated): 0 < |w| < 1, |<v,w>| <= 1e-8, and both chord
 * endpoints inside the translate set within 1e-9. */
CapRegion cap_region(const HPolytope<3>& k, const Direction<3>& v,
                     const Vec<3>& u, const Vec<3>& w);

struct PlanRequest {
  Vec<3> start_dir{};  // unit; normalized on entry by plan()
  Vec<3> start_translate{};
  Vec<3> goal_dir{};
  Vec<3> goal_translate{};
  double margin = 1e-3;
  /* Optional reference: a discrete set of directions the path should stay
   * near.  With a finite eps_budget the search only uses graph nodes within
   * that chord distance of the reference; the achieved closeness is
   * reported either way. */
  std::vector<Vec<3>> reference;
  double eps_budget = std::numeric_limits<double>::infinity();
};

struct PlanResult {
  MotionPath path;
  double epsilon = std::numeric_limits<double>::quiet_NaN();
  double requested_margin = 0;
  int expanded = 0;  // search states popped, a determinism-friendly effort gauge
};

/* Search the direction graph for a validated stick motion from
 * (start_dir, start_translate) to (goal_dir, goal_translate).  Interior
 * path samples keep constraint slack >= margin; the two endpoint
 * attachments are allowed down to the slack the endpoints themselves have,
 * since a caller may hand in a boundary translate.  Degenerate (LowDim)
 * endpoints get two-phase cap escapes injected.  Fails with
 * PreconditionViolated if an endpoint translate is not in its translate
 * set, and NoPathAtResolution if the search exhausts the graph. */
PlanResult plan(const DirectionGraph& g, const PlanRequest& req);

struct EpsilonReport {
  double epsilon = 0;  // max over path samples of min chord distance to ref
};
EpsilonReport epsilon_closeness(const MotionPath& path,
                                const std::vector<Vec<3>>& reference);

struct ValidationReport {
  bool pass = false;
  double min_slack = 0;
  int samples = 0;
};

/* Re-sample every adjacent sample pair `multiplier` times denser (geodesic
 * in direction, linear in translate) and report the minimum constraint
 * slack over both stick endpoints.  Passes iff that minimum is >= 0. */
ValidationReport validate(const MotionPath& path, const HPolytope<3>& k,
                          int multiplier);

}  // namespace kakeya
