#include "kakeya/planner.hpp"

#include <array>
#include <cstdio>
#include <map>
#include <mutex>
#include <queue>
#include <thread>
#include <tuple>
#include <unordered_map>

namespace kakeya {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/* Checkpoint scans sample a motion, they do not cover it.  Between two
 * checkpoints the direction geodesic sags below its chord by at most
 * (sub-arc)^2/8, so a scan that clears `req` guarantees true slack only
 * down to req minus that sag.  Scan densities are therefore chosen so the
 * sag stays below half the requirement, which keeps the 10x revalidation
 * of an emitted path nonnegative.  kSlackFloor bounds the requirement away
 * from zero so the density stays finite. */
constexpr int kScanEdge = 8;   // interior graph edges (contract density)
constexpr int kScanLeg = 16;   // endpoint attachment legs
constexpr int kScanEsc1 = 8;   // cap-escape slide phase minimum
constexpr int kScanEsc2 = 9;   // cap-escape rotate phase minimum (16 total)
constexpr int kScanMax = 600;
constexpr double kSlackFloor = 2.5e-6;

struct Icosphere {
  std::vector<Vec<3>> verts;
  std::vector<std::array<int, 3>> faces;
};

Icosphere icosphere(int level) {
  const double p = (1.0 + std::sqrt(5.0)) / 2.0;
  Icosphere ico;
  auto add = [&](double x, double y, double z) {
    Vec<3> v = vec3(x, y, z);
    ico.verts.push_back(v * (1.0 / norm(v)));
  };
  add(-1, p, 0), add(1, p, 0), add(-1, -p, 0), add(1, -p, 0);
  add(0, -1, p), add(0, 1, p), add(0, -1, -p), add(0, 1, -p);
  add(p, 0, -1), add(p, 0, 1), add(-p, 0, -1), add(-p, 0, 1);
  ico.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
               {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
               {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
               {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      Vec<3> m = ico.verts[a] + ico.verts[b];
      ico.verts.push_back(m * (1.0 / norm(m)));
      int id = (int)ico.verts.size() - 1;
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(ico.faces.size() * 4);
    for (const auto& f : ico.faces) {
      int a = mid(f[0], f[1]), b = mid(f[1], f[2]), c = mid(f[2], f[0]);
      next.push_back({f[0], a, c});
      next.push_back({f[1], b, a});
      next.push_back({f[2], c, b});
      next.push_back({a, b, c});
    }
    ico.faces = std::move(next);
  }
  return ico;
}

/* Support probes for candidate translates: the 12 icosahedron directions,
 * a fixed well-spread set so every build is deterministic. */
const std::vector<Vec<3>>& probe_dirs() {
  static const std::vector<Vec<3>> dirs = icosphere(0).verts;
  return dirs;
}

std::string dir_string(const Vec<3>& v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.6g, %.6g, %.6g)", v[0], v[1], v[2]);
  return buf;
}

/* Erode, classify, and pick candidate translates for one direction. */
DirectionNode build_node(const HPolytope<3>& k, const Vec<3>& dir,
                         double point_tol, int max_candidates) {
  DirectionNode n;
  n.dir = dir;
  n.built = true;
  HPolytope<3> iset = erode(k, unit_segment(Direction<3>(dir)));
  std::vector<Vec<3>> ext;
  n.cls = dimension_class(iset, point_tol, &ext);
  if (n.cls.kind == SetKind::Empty) return n;
  if (ext.empty()) {
    /* fat set classified from its inscribed ball alone: probe support
     * points ourselves so the search still sees the set's spread */
    for (const auto& d : probe_dirs()) {
      auto r = lp_maximize(iset.rows, d);
      if (r.status == LpStatus::Optimal) ext.push_back(r.point);
    }
  }
  /* farthest-point subsample, seeded at the Chebyshev centre; ties and
   * near-duplicates resolve to the lowest probe index */
  n.candidates.push_back(n.cls.witness);
  std::vector<char> used(ext.size(), 0);
  while ((int)n.candidates.size() < max_candidates) {
    int best = -1;
    double bestd = 1e-7;
    for (int i = 0; i < (int)ext.size(); ++i) {
      if (used[i]) continue;
      double d = kInf;
      for (const auto& c : n.candidates) d = std::min(d, dist(ext[i], c));
      if (d > bestd) {
        bestd = d;
        best = i;
      }
    }
    if (best < 0) break;
    used[best] = 1;
    n.candidates.push_back(ext[best]);
  }
  return n;
}

}  // namespace

DirectionGraph build_graph(const HPolytope<3>& k, int level,
                           const GraphOptions& opts) {
  if (level < 2 || level > 7)
    fail("DomainError", "direction graph level must be between 2 and 7");
  if (!(opts.point_tol > 0))
    fail("DomainError", "classification tolerance must be positive");
  if (opts.max_candidates < 1 || opts.max_candidates > 16)
    fail("DomainError", "candidate budget must be between 1 and 16");
  if (k.size() == 0) fail("DomainError", "container has no rows");
  if (!is_bounded(k)) fail("Unbounded", "container must be bounded");

  Icosphere ico = icosphere(level);
  int n = (int)ico.verts.size();

  DirectionGraph g;
  g.level = level;
  g.point_tol = opts.point_tol;
  g.container = k;
  g.nodes.resize(n);
  for (int i = 0; i < n; ++i) g.nodes[i].dir = ico.verts[i];

  /* undirected edge set from the faces */
  std::vector<std::pair<int, int>> es;
  es.reserve(ico.faces.size() * 3);
  for (const auto& f : ico.faces)
    for (int j = 0; j < 3; ++j) {
      int a = f[j], b = f[(j + 1) % 3];
      es.emplace_back(std::min(a, b), std::max(a, b));
    }
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  g.edges = std::move(es);
  g.adj.assign(n, {});
  for (const auto& e : g.edges) {
    g.adj[e.first].push_back(e.second);
    g.adj[e.second].push_back(e.first);
  }
  for (auto& a : g.adj) std::sort(a.begin(), a.end());
  g.max_edge_arc = 0;
  for (const auto& e : g.edges)
    g.max_edge_arc = std::max(
        g.max_edge_arc, arc_angle(ico.verts[e.first], ico.verts[e.second]));
  g.subdivision_c = g.max_edge_arc * std::ldexp(1.0, level);

  /* band restriction: skip directions far from every reference direction */
  std::vector<char> wanted(n, 1);
  if (!opts.band_ref.empty() && std::isfinite(opts.band)) {
    for (const auto& r : opts.band_ref)
      if (std::fabs(norm(r) - 1.0) > 1e-6)
        fail("DomainError", "band reference directions must be unit vectors");
    for (int i = 0; i < n; ++i) {
      double d = kInf;
      for (const auto& r : opts.band_ref) d = std::min(d, dist(ico.verts[i], r));
      wanted[i] = d <= opts.band;
    }
  }

  /* node builds are independent pure erosions, so they parallelize; the
   * strided split keeps every schedule's output identical */
  int nt = opts.threads > 0 ? opts.threads
                            : (int)std::thread::hardware_concurrency();
  nt = std::clamp(nt, 1, 16);
  auto worker = [&](int t) {
    for (int i = t; i < n; i += nt) {
      if (!wanted[i]) continue;
      g.nodes[i] = build_node(k, ico.verts[i], opts.point_tol, opts.max_candidates);
    }
  };
  if (nt == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    std::mutex err_mu;
    std::exception_ptr first_error = nullptr;
    for (int t = 0; t < nt; ++t)
      pool.emplace_back([&, t] {
        try {
          worker(t);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!first_error) first_error = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  for (int i = 0; i < n; ++i)
    if (g.nodes[i].built && g.nodes[i].cls.kind == SetKind::Empty)
      fail("NotKakeya",
           "translate set is empty at direction " + dir_string(ico.verts[i]) +
               "; the container holds no unit segment there");
  return g;
}

CapRegion cap_region(const HPolytope<3>& k, const Direction<3>& v,
                     const Vec<3>& u, const Vec<3>& w) {
  double wn = norm(w);
  if (!(wn > 0) || !(wn < 1))
    fail("PreconditionViolated", "escape chord must satisfy 0 < |w| < 1");
  if (std::fabs(dot(v.vec(), w)) > 1e-8)
    fail("PreconditionViolated",
         "escape chord must be perpendicular to the degenerate direction");
  HPolytope<3> iv = erode(k, unit_segment(v));
  if (!iv.contains(u, 1e-9))
    fail("PreconditionViolated", "base translate lies outside the translate set");
  if (!iv.contains(u + w, 1e-9))
    fail("PreconditionViolated",
         "shifted translate lies outside the translate set");
  return CapRegion{v.vec(), w};
}

EpsilonReport epsilon_closeness(const MotionPath& path,
                                const std::vector<Vec<3>>& reference) {
  if (path.samples.empty()) fail("DomainError", "path has no samples");
  if (reference.empty()) fail("DomainError", "reference direction set is empty");
  double eps = 0;
  for (const auto& s : path.samples) {
    double best = kInf;
    for (const auto& r : reference) best = std::min(best, dist(s.dir, r));
    eps = std::max(eps, best);
  }
  return {eps};
}

ValidationReport validate(const MotionPath& path, const HPolytope<3>& k,
                          int multiplier) {
  if (multiplier < 1)
    fail("DomainError", "validation multiplier must be at least 1");
  if (path.samples.empty()) fail("DomainError", "path has no samples");
  for (size_t j = 0; j + 1 < path.samples.size(); ++j)
    if (!(path.samples[j + 1].t > path.samples[j].t))
      fail("DomainError", "path sample times must be strictly increasing");
  ValidationReport rep;
  size_t gaps = path.samples.size() - 1;
  /* One worker owns every nt-th inter-sample gap; the probes are pure reads
   * of K, so the merge is just a min over the per-worker results. */
  auto sweep = [&](size_t start, size_t stride, double* out) {
    double lo = kInf;
    for (size_t j = start; j < gaps; j += stride) {
      const auto& a = path.samples[j];
      const auto& b = path.samples[j + 1];
      for (int q = 1; q <= multiplier; ++q) {
        double s = (double)q / multiplier;
        Vec<3> d = slerp(a.dir, b.dir, s);
        Vec<3> w = a.translate * (1 - s) + b.translate * s;
        lo = std::min(lo, std::min(k.slack(w), k.slack(w + d)));
      }
    }
    *out = lo;
  };
  unsigned hw = std::thread::hardware_concurrency();
  size_t nt = std::clamp<size_t>(hw ? hw : 1, 1, 8);
  nt = std::min(nt, std::max<size_t>(gaps / 64, 1));
  rep.min_slack = std::min(k.slack(path.samples[0].translate),
                           k.slack(path.samples[0].translate + path.samples[0].dir));
  if (nt <= 1) {
    double lo;
    sweep(0, 1, &lo);
    rep.min_slack = std::min(rep.min_slack, lo);
  } else {
    std::vector<double> lows(nt, kInf);
    std::vector<std::exception_ptr> errs(nt);
    std::vector<std::thread> pool;
    for (size_t t = 0; t < nt; ++t)
      pool.emplace_back([&, t] {
        try {
          sweep(t, nt, &lows[t]);
        } catch (...) {
          errs[t] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);
    for (double lo : lows) rep.min_slack = std::min(rep.min_slack, lo);
  }
  rep.samples = 1 + (int)gaps * multiplier;
  rep.pass = rep.min_slack >= 0;
  return rep;
}

namespace {

/* ---- the search ------------------------------------------------------- */

struct SearchCand {
  Vec<3> w;
  double sl;  // guaranteed translate-set slack (concavity bound, no LP)
};

enum EdgeKind : int8_t { kNone = 0, kEdgeMove, kLegMove, kEscape, kEscapeBack };

struct EscapeRec {
  Vec<3> v;     // degenerate direction the escape leaves (or enters)
  Vec<3> u;     // translate held through the slide phase
  Vec<3> w;     // perpendicular chord, |w| < 1
  double lambda = 0;
  Vec<3> vmid;  // normalize(v + lambda w), end of the slide
  int terminal_node = -1;
  Vec<3> terminal_w;
  double cost = 0;  // 2 |p - v|, the cap region's reachability bound
  int pts1 = kScanEsc1, pts2 = kScanEsc2;
};

struct Planner {
  const DirectionGraph& g;
  const PlanRequest& req;
  int n;  // graph node count; node n = virtual start, n+1 = virtual goal
  Vec<3> v0{}, v1{};
  double margin = 0;

  DirectionNode vs, vg;            // virtual endpoint nodes
  HPolytope<3> iv0, iv1;           // endpoint translate sets
  std::vector<SearchCand> ctx[2];  // pulled candidates for virtual nodes

  std::vector<std::vector<SearchCand>> cands;  // per graph node, lazy
  std::vector<char> cands_ready;
  std::vector<double> refdist;  // chord distance to reference, lazy
  std::vector<EscapeRec> escapes;
  struct EscMeta {
    int deg_node, deg_cand, term_node, term_cand;
  };
  std::vector<EscMeta> esc_meta;
  std::unordered_map<long long, std::vector<int>> esc_from;  // outer state -> idx
  std::vector<char> esc_built;  // per graph node, midpath escapes done
  std::vector<int> start_ring, goal_ring;
  std::vector<char> goal_ring_flag;

  std::vector<double> dist_;
  std::vector<long long> parent_;
  std::vector<int8_t> kind_;
  std::vector<int> aux_;  // scan density of the incoming move, or escape index
  int expanded = 0;

  static constexpr int kSlot = 32;  // candidate slots per node in the state id

  using PQItem = std::tuple<double, long long>;
  using PQ = std::priority_queue<PQItem, std::vector<PQItem>, std::greater<>>;

  Planner(const DirectionGraph& graph, const PlanRequest& r)
      : g(graph), req(r), n((int)graph.nodes.size()) {}

  long long pack(int node, int cand) const {
    return (long long)node * kSlot + cand;
  }
  int node_of(long long s) const { return (int)(s / kSlot); }
  int cand_of(long long s) const { return (int)(s % kSlot); }

  const Vec<3>& ndir(int node) const {
    if (node == n) return v0;
    if (node == n + 1) return v1;
    return g.nodes[node].dir;
  }
  bool is_virtual(int node) const { return node >= n; }

  double ref_distance(int node) {
    double& d = refdist[node];
    if (std::isnan(d)) {
      d = kInf;
      for (const auto& r : req.reference) d = std::min(d, dist(ndir(node), r));
    }
    return d;
  }
  bool restricted() const {
    return !req.reference.empty() && std::isfinite(req.eps_budget);
  }
  bool node_allowed(int node) {
    if (is_virtual(node)) return true;
    if (!g.nodes[node].built) return false;
    if (restricted() && ref_distance(node) > req.eps_budget) return false;
    return true;
  }
  bool dir_in_band(const Vec<3>& d) const {
    if (!restricted()) return true;
    double best = kInf;
    for (const auto& r : req.reference) best = std::min(best, dist(d, r));
    return best <= req.eps_budget + 1e-9;
  }

  /* Pull boundary candidates toward the Chebyshev centre until the
   * concavity bound (slack >= s * inradius along the pulled-in segment)
   * reaches the target depth.  Virtual endpoints may sit in degenerate
   * translate sets, so they are pulled to what the set can give rather
   * than to the margin; interior nodes must carry the full margin or the
   * candidate is dropped. */
  std::vector<SearchCand> pulled(const DirectionNode& node, bool virt) const {
    std::vector<SearchCand> out;
    if (node.cls.kind == SetKind::Empty || node.candidates.empty()) return out;
    double inr = std::max(node.cls.inradius, 0.0);
    double arcpad = g.max_edge_arc * g.max_edge_arc / 8 +
                    g.max_edge_arc * g.max_edge_arc * g.max_edge_arc;
    double target =
        virt ? std::min(margin * 1.02, 0.45 * inr) : margin * 1.02 + arcpad;
    const Vec<3>& cheb = node.candidates[0];
    out.push_back({cheb, inr});
    if (inr > 0) {
      double s = std::min(1.0, target / inr);
      for (size_t j = 1; j < node.candidates.size(); ++j) {
        Vec<3> w = node.candidates[j] + (cheb - node.candidates[j]) * s;
        bool dup = false;
        for (const auto& c : out)
          if (dist(c.w, w) < 1e-9) {
            dup = true;
            break;
          }
        if (!dup) out.push_back({w, s * inr});
      }
    }
    if (!virt) {
      std::vector<SearchCand> keep;
      for (const auto& c : out)
        if (c.sl >= margin) keep.push_back(c);
      out = std::move(keep);
    }
    return out;
  }

  const std::vector<SearchCand>& node_cands(int node) {
    if (node == n) return ctx[0];
    if (node == n + 1) return ctx[1];
    if (!cands_ready[node]) {
      cands[node] = pulled(g.nodes[node], false);
      cands_ready[node] = 1;
    }
    return cands[node];
  }

  /* The slack a motion touching this state must keep.  Interior states
   * carry the requested margin; virtual endpoints are allowed down to what
   * their own translate slack supports, since the caller may hand in a
   * boundary or degenerate pose. */
  double state_req(int node, double sl) const {
    double r = is_virtual(node) ? std::min(margin, 0.9 * sl) : margin;
    return std::max(r, kSlackFloor);
  }

  /* Checkpoints for a move of total direction arc `arc` under slack
   * requirement `reqd`: enough that the geodesic sag between neighbours
   * stays under half the requirement, never sparser than `base`, and never
   * so sparse that adjacent directions sit more than ~2 edge arcs apart. */
  int scan_points(double arc, double reqd, int base) const {
    double sub = 1.4 * std::sqrt(std::max(reqd, kSlackFloor));
    sub = std::min(sub, 1.9 * std::max(g.max_edge_arc, 1e-6));
    int pts = base;
    if (arc > 0) pts = std::max(base, (int)std::ceil(arc / sub) + 1);
    return std::min(pts, kScanMax);
  }

  /* Check one straight-translate geodesic-direction move.  The slack
   * certificate (both ends deep enough that the interpolation cannot sag
   * under the requirement) short-circuits the row scans; arc^2/8 bounds
   * the geodesic's deviation from the chord the concavity bound lives on,
   * and the cubic term pads the parametrization mismatch. */
  bool motion_ok(const Vec<3>& va, const Vec<3>& wa, double sa,
                 const Vec<3>& vb, const Vec<3>& wb, double sb, double reqd,
                 int base_pts, int* pts_out) const {
    double arc = arc_angle(va, vb);
    int pts = scan_points(arc, reqd, base_pts);
    *pts_out = pts;
    /* Under an epsilon budget every checkpoint must also stay inside the
     * reference band, so the slack certificate alone cannot admit a move. */
    if (!restricted() &&
        std::min(sa, sb) >= reqd + arc * arc / 8 + arc * arc * arc + 1e-12)
      return true;
    const HPolytope<3>& k = g.container;
    for (int j = 0; j < pts; ++j) {
      double s = (double)j / (pts - 1);
      Vec<3> d = slerp(va, vb, s);
      Vec<3> w = wa * (1 - s) + wb * s;
      if (!dir_in_band(d)) return false;
      if (std::min(k.slack(w), k.slack(w + d)) < reqd - 1e-12) return false;
    }
    return true;
  }

  /* ---- cap escapes ---- */

  /* The two-phase checkpoint list of an escape: slide the stick's free end
   * along the chord under a fixed base translate (the direction
   * normalize(v + t lambda w) walks a great circle toward vmid), then
   * rotate from vmid to the terminal direction while the translate drifts
   * to its landing candidate. */
  void escape_points(const EscapeRec& e, std::vector<Vec<3>>& ds,
                     std::vector<Vec<3>>& ws) const {
    ds.clear();
    ws.clear();
    for (int j = 0; j < e.pts1; ++j) {
      double tau = (double)j / (e.pts1 - 1);
      Vec<3> d = e.v + e.w * (tau * e.lambda);
      ds.push_back(d * (1.0 / norm(d)));
      ws.push_back(e.u);
    }
    const Vec<3>& vt = g.nodes[e.terminal_node].dir;
    for (int j = 1; j < e.pts2; ++j) {
      double s = (double)j / (e.pts2 - 1);
      ds.push_back(slerp(e.vmid, vt, s));
      ws.push_back(e.u * (1 - s) + e.terminal_w * s);
    }
  }

  bool escape_feasible(const EscapeRec& e, double reqd) const {
    std::vector<Vec<3>> ds, ws;
    escape_points(e, ds, ws);
    const HPolytope<3>& k = g.container;
    for (size_t j = 0; j < ds.size(); ++j) {
      if (!dir_in_band(ds[j])) return false;
      if (std::min(k.slack(ws[j]), k.slack(ws[j] + ds[j])) < reqd - 1e-12)
        return false;
    }
    return true;
  }

  /* Build cap escapes out of one degenerate state.  `node_id` may be a
   * virtual endpoint; `back` marks goal-side escapes that the search will
   * traverse toward the degenerate state.  Each feasible escape is
   * registered as a directed search edge keyed by the packed state at its
   * outer end. */
  void build_escapes(int node_id, const DirectionNode& node,
                     const std::vector<SearchCand>& scands, bool back) {
    if (node.cls.kind != SetKind::LowDim) return;
    if (node.candidates.size() < 2) return;
    const Vec<3>& v = node.dir;

    /* degenerate spread must be perpendicular to the stick before cap
     * escapes apply; measured resolution-relative, same spirit as the
     * erosion module's exact check */
    double along = 0, perp = 0;
    for (size_t a = 1; a < node.candidates.size(); ++a)
      for (size_t b = a + 1; b < node.candidates.size(); ++b) {
        Vec<3> d = node.candidates[a] - node.candidates[b];
        along = std::max(along, std::fabs(dot(v, d)));
        perp = std::max(perp, norm(d - v * dot(v, d)));
      }
    if (perp < 1e-9 || along > std::max(1e-6, 0.01 * perp)) return;

    /* farthest raw extreme pair spans the degenerate spread */
    size_t pa = 1, pb = 1;
    double best = 0;
    for (size_t a = 1; a < node.candidates.size(); ++a)
      for (size_t b = a + 1; b < node.candidates.size(); ++b) {
        double d = dist(node.candidates[a], node.candidates[b]);
        if (d > best) {
          best = d;
          pa = a;
          pb = b;
        }
      }
    if (best <= 0) return;

    const HPolytope<3>* ivp;
    HPolytope<3> iv_local;
    if (node_id == n) {
      ivp = &iv0;
    } else if (node_id == n + 1) {
      ivp = &iv1;
    } else {
      iv_local = erode(g.container, unit_segment(Direction<3>(v)));
      ivp = &iv_local;
    }
    const HPolytope<3>& iv = *ivp;

    for (size_t ci = 0; ci < scands.size(); ++ci) {
      const Vec<3> u = scands[ci].w;
      if (!iv.contains(u, 1e-9)) continue;
      double reqd0 = state_req(node_id, scands[ci].sl);
      for (size_t side = 0; side < 2; ++side) {
        Vec<3> wr = node.candidates[side == 0 ? pa : pb] - u;
        wr = wr - v * dot(v, wr);  // exact perpendicularity for the cap
        double wl = norm(wr);
        if (wl < 1e-9) continue;
        Vec<3> wc = wr * (0.9 * std::min(1.0, 0.95 / (0.9 * wl)));
        for (int shrink = 0; shrink < 3 && !iv.contains(u + wc, 1e-9); ++shrink)
          wc = wc * 0.5;
        if (!iv.contains(u + wc, 1e-9)) continue;
        CapRegion cap;
        try {
          cap = cap_region(g.container, Direction<3>(v), u, wc);
        } catch (...) {
          continue;
        }
        double wcl = norm(wc);
        for (int step = 1; step <= 4; ++step) {
          double tilt = std::min(std::ldexp(g.max_edge_arc, step), 1.0);
          double lam = std::min(std::tan(tilt) / wcl, 0.95);
          EscapeRec e;
          e.v = v;
          e.u = u;
          e.w = wc;
          e.lambda = lam;
          Vec<3> vm = v + wc * lam;
          e.vmid = vm * (1.0 / norm(vm));
          if (!cap.member(e.vmid)) continue;
          /* land at the nearest admissible full-dimensional node inside
           * the cap */
          int bestn = -1;
          double bestarc = kInf;
          for (int i = 0; i < this->n; ++i) {
            if (!node_allowed(i)) continue;
            if (g.nodes[i].cls.kind != SetKind::FullDim) continue;
            if (!cap.member(g.nodes[i].dir)) continue;
            double a = arc_angle(e.vmid, g.nodes[i].dir);
            if (a < bestarc) {
              bestarc = a;
              bestn = i;
            }
          }
          if (bestn < 0) continue;
          e.terminal_node = bestn;
          e.cost = cap.reach_bound(g.nodes[bestn].dir);
          const auto& tc = node_cands(bestn);
          for (size_t b = 0; b < tc.size(); ++b) {
            e.terminal_w = tc[b].w;
            double reqd = std::min(reqd0, state_req(bestn, tc[b].sl));
            e.pts1 = scan_points(lam * wcl, reqd, kScanEsc1);
            e.pts2 = scan_points(arc_angle(e.vmid, g.nodes[bestn].dir), reqd,
                                 kScanEsc2);
            if (!escape_feasible(e, reqd)) continue;
            int idx = (int)escapes.size();
            escapes.push_back(e);
            esc_meta.push_back({node_id, (int)ci, bestn, (int)b});
            long long outer =
                back ? pack(bestn, (int)b) : pack(node_id, (int)ci);
            esc_from[outer].push_back(idx);
            break;  // one landing candidate per (chord, tilt) is plenty
          }
        }
      }
    }
  }

  /* ---- A* over (node, candidate) states ---- */

  double heuristic(int node) const { return arc_angle(ndir(node), v1); }

  void relax(PQ& pq, long long from, long long to, double cost, int8_t kind,
             int aux) {
    double nd = dist_[from] + cost;
    if (nd < dist_[to] - 1e-15) {
      dist_[to] = nd;
      parent_[to] = from;
      kind_[to] = kind;
      aux_[to] = aux;
      pq.emplace(nd + heuristic(node_of(to)), to);
    }
  }

  PlanResult run() {
    margin = req.margin;
    if (!(margin >= 0) || !std::isfinite(margin))
      fail("DomainError", "margin must be a nonnegative finite number");
    if (!(req.eps_budget > 0))
      fail("DomainError", "closeness budget must be positive");
    for (const auto& r : req.reference)
      if (std::fabs(norm(r) - 1.0) > 1e-6)
        fail("DomainError", "reference directions must be unit vectors");
    if (n < 12) fail("DomainError", "direction graph is empty");

    v0 = Direction<3>(req.start_dir).vec();
    v1 = Direction<3>(req.goal_dir).vec();

    iv0 = erode(g.container, unit_segment(Direction<3>(v0)));
    iv1 = erode(g.container, unit_segment(Direction<3>(v1)));
    if (!iv0.contains(req.start_translate, 1e-9))
      fail("PreconditionViolated",
           "start translate lies outside the start direction's translate set");
    if (!iv1.contains(req.goal_translate, 1e-9))
      fail("PreconditionViolated",
           "goal translate lies outside the goal direction's translate set");

    vs = build_node(g.container, v0, g.point_tol, 16);
    vg = build_node(g.container, v1, g.point_tol, 16);
    if (vs.cls.kind == SetKind::Empty)
      fail("NotKakeya", "translate set is empty at direction " + dir_string(v0));
    if (vg.cls.kind == SetKind::Empty)
      fail("NotKakeya", "translate set is empty at direction " + dir_string(v1));
    ctx[0] = pulled(vs, true);
    ctx[1] = pulled(vg, true);
    if (ctx[0].empty() || ctx[1].empty())
      fail("NoPathAtResolution",
           "an endpoint translate set is too degenerate to attach at this "
           "resolution; refining the level may succeed — this failure is not "
           "evidence that no continuous motion exists");

    cands.resize(n);
    cands_ready.assign(n, 0);
    refdist.assign(n + 2, std::numeric_limits<double>::quiet_NaN());
    esc_built.assign(n, 0);

    int states = (n + 2) * kSlot;
    dist_.assign(states, kInf);
    parent_.assign(states, -1);
    kind_.assign(states, kNone);
    aux_.assign(states, -1);

    /* endpoint attachment rings; generous, because near a degenerate
     * direction the translate set fattens only a few node spacings out,
     * and A* prices distant attachments by cost anyway.  A nearest-node
     * fallback covers band restrictions that push every ring node out
     * of reach. */
    double ring = std::min(3.5 * g.max_edge_arc, 0.5);
    for (int i = 0; i < n; ++i) {
      if (!node_allowed(i)) continue;
      if (arc_angle(g.nodes[i].dir, v0) <= ring) start_ring.push_back(i);
      if (arc_angle(g.nodes[i].dir, v1) <= ring) goal_ring.push_back(i);
    }
    auto nearest_allowed = [&](const Vec<3>& v) {
      int bi = -1;
      double ba = kInf;
      for (int i = 0; i < n; ++i) {
        if (!node_allowed(i)) continue;
        double a = arc_angle(g.nodes[i].dir, v);
        if (a < ba) {
          ba = a;
          bi = i;
        }
      }
      return bi;
    };
    if (start_ring.empty()) {
      int i = nearest_allowed(v0);
      if (i >= 0) start_ring.push_back(i);
    }
    if (goal_ring.empty()) {
      int i = nearest_allowed(v1);
      if (i >= 0) goal_ring.push_back(i);
    }
    goal_ring_flag.assign(n, 0);
    for (int i : goal_ring) goal_ring_flag[i] = 1;

    /* degenerate endpoints get their cap escapes up front, both ways */
    build_escapes(n, vs, ctx[0], false);
    build_escapes(n + 1, vg, ctx[1], true);

    PQ pq;
    for (size_t a = 0; a < ctx[0].size(); ++a) {
      long long s = pack(n, (int)a);
      dist_[s] = 0;
      pq.emplace(heuristic(n), s);
    }

    long long goal_state = -1;
    std::vector<char> closed(states, 0);
    while (!pq.empty()) {
      long long s = std::get<1>(pq.top());
      pq.pop();
      if (closed[s]) continue;
      closed[s] = 1;
      ++expanded;
      int i = node_of(s), a = cand_of(s);
      if (i == n + 1) {
        goal_state = s;
        break;
      }
      double sa = i == n ? ctx[0][a].sl : node_cands(i)[a].sl;
      Vec<3> wa = i == n ? ctx[0][a].w : node_cands(i)[a].w;
      const Vec<3>& va = ndir(i);
      double req_a = state_req(i, sa);

      auto try_node = [&](int k2, int8_t kd, int base_pts) {
        const Vec<3>& vb = ndir(k2);
        double arc = arc_angle(va, vb);
        const auto& tc = node_cands(k2);
        for (size_t b = 0; b < tc.size(); ++b) {
          long long t = pack(k2, (int)b);
          if (closed[t]) continue;
          double reqd = std::min(req_a, state_req(k2, tc[b].sl));
          int pts = 0;
          if (!motion_ok(va, wa, sa, vb, tc[b].w, tc[b].sl, reqd, base_pts,
                         &pts))
            continue;
          relax(pq, s, t, arc, kd, pts);
        }
      };

      if (i == n) {
        for (int k2 : start_ring) try_node(k2, kLegMove, kScanLeg);
        if (arc_angle(v0, v1) <= ring) try_node(n + 1, kLegMove, kScanLeg);
      } else {
        for (int k2 : g.adj[i])
          if (node_allowed(k2)) try_node(k2, kEdgeMove, kScanEdge);
        if (goal_ring_flag[i]) try_node(n + 1, kLegMove, kScanLeg);
        /* a degenerate interior node the search actually reached: give it
         * cap escapes too */
        if (!esc_built[i] && g.nodes[i].cls.kind == SetKind::LowDim) {
          esc_built[i] = 1;
          build_escapes(i, g.nodes[i], node_cands(i), false);
        }
      }

      auto it = esc_from.find(s);
      if (it != esc_from.end()) {
        for (int eidx : it->second) {
          const EscMeta& m = esc_meta[eidx];
          bool back = pack(m.term_node, m.term_cand) == s;
          long long t = back ? pack(m.deg_node, m.deg_cand)
                             : pack(m.term_node, m.term_cand);
          if (closed[t]) continue;
          relax(pq, s, t, escapes[eidx].cost, back ? kEscapeBack : kEscape,
                eidx);
        }
      }
    }

    if (goal_state < 0) {
      char buf[192];
      std::snprintf(buf, sizeof buf,
                    "no stick motion found at level %d with margin %g; refine "
                    "the level or relax the margin — failure at one resolution "
                    "is not evidence that no continuous motion exists",
                    g.level, margin);
      fail("NoPathAtResolution", buf);
    }

    return emit(goal_state);
  }

  /* ---- output assembly ---- */

  void state_pose(long long s, Vec<3>& d, Vec<3>& w) {
    int i = node_of(s), c = cand_of(s);
    d = ndir(i);
    w = i == n ? ctx[0][c].w : i == n + 1 ? ctx[1][c].w : node_cands(i)[c].w;
  }

  PlanResult emit(long long goal_state) {
    std::vector<long long> chain;
    for (long long s = goal_state; s >= 0; s = parent_[s]) chain.push_back(s);
    std::reverse(chain.begin(), chain.end());

    std::vector<Vec<3>> ds, ws, tds, tws;
    {
      Vec<3> d, w;
      state_pose(chain[0], d, w);
      ds.push_back(d);
      ws.push_back(w);
    }
    for (size_t j = 1; j < chain.size(); ++j) {
      long long t = chain[j];
      Vec<3> da, wa, db, wb;
      state_pose(chain[j - 1], da, wa);
      state_pose(t, db, wb);
      tds.clear();
      tws.clear();
      switch (kind_[t]) {
        case kEdgeMove:
        case kLegMove: {
          int pts = std::max(aux_[t], 2);
          for (int q = 0; q < pts; ++q) {
            double s = (double)q / (pts - 1);
            tds.push_back(slerp(da, db, s));
            tws.push_back(wa * (1 - s) + wb * s);
          }
          break;
        }
        case kEscape:
          escape_points(escapes[aux_[t]], tds, tws);
          break;
        case kEscapeBack:
          escape_points(escapes[aux_[t]], tds, tws);
          std::reverse(tds.begin(), tds.end());
          std::reverse(tws.begin(), tws.end());
          break;
        default:
          fail("NumericalInstability", "search chain lost an edge record");
      }
      for (size_t q = 1; q < tds.size(); ++q) {  // q = 0 repeats the joint pose
        ds.push_back(tds[q]);
        ws.push_back(tws[q]);
      }
    }

    /* splice the caller's exact endpoint translates on with translate-only
     * moves; both stay inside the convex endpoint translate sets */
    std::vector<std::pair<Vec<3>, Vec<3>>> poses;
    if (dist(req.start_translate, ws.front()) > 1e-12)
      poses.push_back({v0, req.start_translate});
    for (size_t j = 0; j < ds.size(); ++j) poses.push_back({ds[j], ws[j]});
    if (dist(req.goal_translate, ws.back()) > 1e-12)
      poses.push_back({v1, req.goal_translate});

    std::vector<std::pair<Vec<3>, Vec<3>>> keep;
    for (const auto& p : poses)
      if (keep.empty() || arc_angle(keep.back().first, p.first) > 1e-14 ||
          dist(keep.back().second, p.second) > 1e-14)
        keep.push_back(p);
    if (keep.size() == 1) keep.push_back(keep[0]);  // start pose == goal pose

    MotionPath path;
    std::vector<double> ts(keep.size(), 0);
    for (size_t j = 1; j < keep.size(); ++j)
      ts[j] = ts[j - 1] + arc_angle(keep[j - 1].first, keep[j].first) +
              dist(keep[j - 1].second, keep[j].second);
    double total = ts.back();
    for (size_t j = 0; j < keep.size(); ++j) {
      double t =
          total > 1e-15 ? ts[j] / total : (double)j / (double)(keep.size() - 1);
      path.samples.push_back({t, keep[j].first, keep[j].second});
    }
    path.samples.front().t = 0;
    path.samples.back().t = 1;

    auto rep = validate(path, g.container, 10);
    if (rep.min_slack < -1e-9)
      fail("NumericalInstability",
           "planned path failed its own revalidation; the checkpoint density "
           "did not capture the container at this scale");
    path.margin = std::max(0.0, rep.min_slack);

    PlanResult out;
    out.path = std::move(path);
    out.requested_margin = margin;
    out.expanded = expanded;
    if (!req.reference.empty())
      out.epsilon = epsilon_closeness(out.path, req.reference).epsilon;
    return out;
  }
};

}  // namespace

PlanResult plan(const DirectionGraph& g, const PlanRequest& req) {
  Planner p(g, req);
  return p.run();
}

}  // namespace kakeya
