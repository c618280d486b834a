#include "kakeya/hull3d.hpp"

#include <algorithm>
#include <map>

#include "kakeya/hull2d.hpp"

namespace kakeya {

namespace {

struct Face {
  int a, b, c;
  Vec<3> n{};
  double off = 0;
  int nbr[3] = {-1, -1, -1}; /* across edges (a,b), (b,c), (c,a) */
  std::vector<int> pts;      /* conflict points assigned to this face */
  double far_d = 0;
  int far_p = -1;
  bool dead = false;
};

Vec<3> cross3(const Vec<3>& a, const Vec<3>& b) {
  return vec3(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
              a[0] * b[1] - a[1] * b[0]);
}

double pdist(const Face& f, const Vec<3>& p) { return dot(f.n, p) - f.off; }

/* Monotone chain over projected coordinates, keeping input indices so the
 * flat-hull ring can report original points. */
std::vector<int> hull_ring_indexed(const std::vector<Vec<2>>& q) {
  std::vector<int> idx(q.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = int(i);
  std::sort(idx.begin(), idx.end(), [&](int i, int j) {
    return q[i][0] < q[j][0] || (q[i][0] == q[j][0] && q[i][1] < q[j][1]);
  });
  double scale = 0;
  for (const auto& p : q) scale = std::max({scale, std::fabs(p[0]), std::fabs(p[1])});
  double ptol = 1e-12 * (1.0 + scale);
  idx.erase(std::unique(idx.begin(), idx.end(),
                        [&](int i, int j) { return dist(q[i], q[j]) <= ptol; }),
            idx.end());
  size_t n = idx.size();
  if (n <= 2) return idx;
  double eps = 1e-12 * (1.0 + scale) * (1.0 + scale);
  std::vector<int> h(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 &&
           cross2(q[h[k - 1]] - q[h[k - 2]], q[idx[i]] - q[h[k - 2]]) <= eps)
      --k;
    h[k++] = idx[i];
  }
  for (size_t i = n - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower &&
           cross2(q[h[k - 1]] - q[h[k - 2]], q[idx[i]] - q[h[k - 2]]) <= eps)
      --k;
    h[k++] = idx[i];
  }
  h.resize(k - 1);
  return h;
}

}  // namespace

Hull3D convex_hull_3d(const std::vector<Vec<3>>& in) {
  if (in.empty()) fail("DomainError", "hull of empty point set");
  for (const auto& p : in)
    if (!is_finite(p)) fail("DomainError", "hull input has non-finite point");

  Vec<3> lo = in[0], hi = in[0];
  for (const auto& p : in)
    for (int j = 0; j < 3; ++j) {
      lo.c[j] = std::min(lo[j], p[j]);
      hi.c[j] = std::max(hi[j], p[j]);
    }
  double eps = 1e-10 * (1.0 + dist(lo, hi));

  /* Initial simplex: a far pair among the axis extremes, then the point
   * farthest from their line, then from their plane.  Failure at any stage
   * pins down the affine rank. */
  int ext[6];
  for (int j = 0; j < 3; ++j) {
    int imin = 0, imax = 0;
    for (size_t i = 1; i < in.size(); ++i) {
      if (in[i][j] < in[imin][j]) imin = int(i);
      if (in[i][j] > in[imax][j]) imax = int(i);
    }
    ext[2 * j] = imin;
    ext[2 * j + 1] = imax;
  }
  int i0 = ext[0], i1 = ext[1];
  double best = -1;
  for (int s = 0; s < 6; ++s)
    for (int t = s + 1; t < 6; ++t) {
      double d = dist(in[ext[s]], in[ext[t]]);
      if (d > best) {
        best = d;
        i0 = ext[s];
        i1 = ext[t];
      }
    }
  Hull3D out;
  if (best < eps) { /* everything coincides */
    out.rank = 0;
    out.vertices = {in[0]};
    return out;
  }

  Vec<3> u = (in[i1] - in[i0]) * (1.0 / dist(in[i0], in[i1]));
  int i2 = -1;
  best = -1;
  for (size_t i = 0; i < in.size(); ++i) {
    double d = norm(cross3(u, in[i] - in[i0]));
    if (d > best) {
      best = d;
      i2 = int(i);
    }
  }
  if (best < eps) { /* collinear: endpoints along u */
    int pmin = i0, pmax = i0;
    for (size_t i = 0; i < in.size(); ++i) {
      double t = dot(u, in[i] - in[i0]);
      if (t < dot(u, in[pmin] - in[i0])) pmin = int(i);
      if (t > dot(u, in[pmax] - in[i0])) pmax = int(i);
    }
    out.rank = 1;
    out.vertices = {in[pmin], in[pmax]};
    return out;
  }

  Vec<3> w = in[i2] - in[i0];
  Vec<3> v = w - u * dot(u, w);
  v = v * (1.0 / norm(v));
  Vec<3> n0 = cross3(u, v); /* unit: plane normal of (i0,i1,i2) */
  int i3 = -1;
  best = -1;
  for (size_t i = 0; i < in.size(); ++i) {
    double d = std::fabs(dot(n0, in[i] - in[i0]));
    if (d > best) {
      best = d;
      i3 = int(i);
    }
  }
  if (best < eps) { /* coplanar: 2D hull in the (u, v) frame */
    std::vector<Vec<2>> proj;
    proj.reserve(in.size());
    for (const auto& p : in)
      proj.push_back(vec2(dot(u, p - in[i0]), dot(v, p - in[i0])));
    out.rank = 2;
    for (int i : hull_ring_indexed(proj)) out.vertices.push_back(in[size_t(i)]);
    return out;
  }

  /* Rank 3: build the tetra, orienting every face away from its centroid. */
  Vec<3> inner = (in[i0] + in[i1] + in[i2] + in[i3]) * 0.25;
  std::vector<Face> fs;
  auto mk_face = [&](int a, int b, int c) {
    Face f;
    f.a = a;
    f.b = b;
    f.c = c;
    Vec<3> nn = cross3(in[b] - in[a], in[c] - in[a]);
    double ln = norm(nn);
    if (ln < 1e-14 * (1.0 + dist(lo, hi)) * (1.0 + dist(lo, hi)))
      fail("DomainError", "degenerate hull face");
    f.n = nn * (1.0 / ln);
    f.off = dot(f.n, in[a]);
    return f;
  };
  auto mk_oriented = [&](int a, int b, int c) {
    Face f = mk_face(a, b, c);
    if (pdist(f, inner) > 0) {
      std::swap(f.b, f.c);
      f.n = -f.n;
      f.off = -f.off;
    }
    return f;
  };
  fs.push_back(mk_oriented(i0, i1, i2));
  fs.push_back(mk_oriented(i0, i1, i3));
  fs.push_back(mk_oriented(i0, i2, i3));
  fs.push_back(mk_oriented(i1, i2, i3));
  /* wire tetra adjacency by undirected edge */
  {
    std::map<std::pair<int, int>, std::pair<int, int>> half; /* edge -> (face, slot) */
    for (int fi = 0; fi < 4; ++fi) {
      int vs[3] = {fs[fi].a, fs[fi].b, fs[fi].c};
      for (int s = 0; s < 3; ++s) {
        int x = vs[s], y = vs[(s + 1) % 3];
        auto key = std::minmax(x, y);
        auto it = half.find(key);
        if (it == half.end()) {
          half[key] = {fi, s};
        } else {
          fs[fi].nbr[s] = it->second.first;
          fs[it->second.first].nbr[it->second.second] = fi;
        }
      }
    }
  }

  auto push_conflict = [&](int fi, int pi) {
    double d = pdist(fs[fi], in[pi]);
    if (d <= eps) return false;
    fs[fi].pts.push_back(pi);
    if (d > fs[fi].far_d) {
      fs[fi].far_d = d;
      fs[fi].far_p = pi;
    }
    return true;
  };
  for (size_t i = 0; i < in.size(); ++i) {
    if (int(i) == i0 || int(i) == i1 || int(i) == i2 || int(i) == i3) continue;
    for (int fi = 0; fi < 4; ++fi)
      if (push_conflict(fi, int(i))) break;
  }

  std::vector<int> todo = {0, 1, 2, 3};
  std::vector<int> mark(4, 0);
  int epoch = 0;
  while (!todo.empty()) {
    int seed = todo.back();
    todo.pop_back();
    if (fs[seed].dead || fs[seed].pts.empty()) continue;
    int apex = fs[seed].far_p;
    const Vec<3>& ap = in[apex];

    /* visible region and its horizon */
    ++epoch;
    mark.resize(fs.size(), 0);
    std::vector<int> stack = {seed}, visible;
    mark[seed] = epoch;
    struct HEdge {
      int u, w, hidden, hslot;
    };
    std::vector<HEdge> horizon;
    while (!stack.empty()) {
      int fi = stack.back();
      stack.pop_back();
      visible.push_back(fi);
      int vs[3] = {fs[fi].a, fs[fi].b, fs[fi].c};
      for (int s = 0; s < 3; ++s) {
        int g = fs[fi].nbr[s];
        if (g < 0) fail("DomainError", "hull surface lost a neighbor");
        if (mark[size_t(g)] == epoch) continue;
        if (pdist(fs[g], ap) > eps) {
          mark[size_t(g)] = epoch;
          stack.push_back(g);
        } else {
          /* horizon edge, directed as the visible face walks it */
          int x = vs[s], y = vs[(s + 1) % 3];
          int gvs[3] = {fs[g].a, fs[g].b, fs[g].c};
          int hs = -1;
          for (int t = 0; t < 3; ++t)
            if ((gvs[t] == y && gvs[(t + 1) % 3] == x) ||
                (gvs[t] == x && gvs[(t + 1) % 3] == y))
              hs = t;
          if (hs < 0) fail("DomainError", "hull adjacency out of sync");
          horizon.push_back({x, y, g, hs});
        }
      }
    }

    /* fan of new faces around the horizon ring */
    std::map<int, int> ring_face; /* u -> new face index */
    std::vector<int> fresh;
    for (const auto& he : horizon) {
      Face f = mk_face(he.u, he.w, apex);
      if (pdist(f, inner) > 0)
        fail("DomainError", "hull face oriented inward; input too degenerate");
      f.nbr[0] = he.hidden;
      int nf = int(fs.size());
      fs.push_back(std::move(f));
      fs[size_t(he.hidden)].nbr[he.hslot] = nf;
      ring_face[he.u] = nf;
      fresh.push_back(nf);
    }
    for (int nf : fresh) {
      auto it = ring_face.find(fs[size_t(nf)].b); /* ring edge starting at w */
      if (it == ring_face.end())
        fail("DomainError", "hull horizon is pinched; input too degenerate");
      fs[size_t(nf)].nbr[1] = it->second; /* edge (w, apex) */
      fs[size_t(it->second)].nbr[2] = nf; /* its edge (apex, u) */
    }

    /* retire the visible faces, handing their conflicts to the new ones */
    for (int fi : visible) fs[size_t(fi)].dead = true;
    for (int fi : visible)
      for (int pi : fs[size_t(fi)].pts) {
        if (pi == apex) continue;
        for (int nf : fresh)
          if (push_conflict(nf, pi)) break;
      }
    for (int fi : visible) fs[size_t(fi)].pts.clear();
    for (int nf : fresh)
      if (!fs[size_t(nf)].pts.empty()) todo.push_back(nf);
  }

  /* compact to the surviving surface */
  std::map<int, int> remap;
  for (const auto& f : fs) {
    if (f.dead) continue;
    for (int vtx : {f.a, f.b, f.c})
      if (!remap.count(vtx)) {
        int id = int(remap.size());
        remap[vtx] = id;
      }
  }
  out.vertices.resize(remap.size());
  for (const auto& [old_i, new_i] : remap) out.vertices[size_t(new_i)] = in[size_t(old_i)];
  for (const auto& f : fs)
    if (!f.dead) out.faces.push_back({remap.at(f.a), remap.at(f.b), remap.at(f.c)});
  out.rank = 3;
  return out;
}

HPolytope<3> hull3d_hrep(const Hull3D& h) {
  if (h.rank < 3)
    fail("DegenerateInput", "flat hulls have no full-dimensional face rows");
  std::vector<Halfspace<3>> rows;
  rows.reserve(h.faces.size());
  std::map<std::array<long long, 4>, bool> seen;
  for (const auto& f : h.faces) {
    const Vec<3>& a = h.vertices[size_t(f[0])];
    Vec<3> nn = vec3(0, 0, 0);
    {
      const Vec<3>& b = h.vertices[size_t(f[1])];
      const Vec<3>& c = h.vertices[size_t(f[2])];
      Vec<3> d1 = b - a, d2 = c - a;
      nn = vec3(d1[1] * d2[2] - d1[2] * d2[1], d1[2] * d2[0] - d1[0] * d2[2],
                d1[0] * d2[1] - d1[1] * d2[0]);
    }
    double ln = norm(nn);
    if (ln < 1e-16) continue;
    nn = nn * (1.0 / ln);
    double off = dot(nn, a);
    std::array<long long, 4> key = {llround(nn[0] * 1e7), llround(nn[1] * 1e7),
                                    llround(nn[2] * 1e7), llround(off * 1e7)};
    if (seen.emplace(key, true).second) rows.push_back({nn, off});
  }
  return HPolytope<3>::from_rows(rows);
}

}  // namespace kakeya
