#include "framelab/cellcomplex.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace framelab {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

// Edge-end at a vertex: 2 * edge + (0 for the reference tail, 1 for the head).
int arriving_end(const WalkStep& s, int edge) { return 2 * edge + (s.dir > 0 ? 1 : 0); }
int leaving_end(const WalkStep& s, int edge) { return 2 * edge + (s.dir > 0 ? 0 : 1); }

}  // namespace

void Complex2::add_vertex(const std::string& v) {
  if (vertex_index_.count(v)) throw InvalidInput("duplicate vertex '" + v + "'");
  vertex_index_[v] = static_cast<int>(vertices_.size());
  vertices_.push_back(v);
}

void Complex2::add_edge(const std::string& id, const std::string& from, const std::string& to) {
  if (edge_index_.count(id)) throw InvalidInput("duplicate edge '" + id + "'");
  vertex_index(from);
  vertex_index(to);
  edge_index_[id] = static_cast<int>(edges_.size());
  edges_.push_back({id, {from, to}});
  edge_uses_.push_back(0);
}

void Complex2::add_face(const std::string& id, std::vector<WalkStep> walk) {
  if (walk.empty()) throw InvalidInput("face '" + id + "' has an empty boundary");
  Face f{id, std::move(walk)};
  for (const auto& s : f.walk) {
    edge_index(s.edge);
    if (s.dir != 1 && s.dir != -1) throw InvalidInput("face '" + id + "': direction must be +1 or -1");
  }
  auto corners = face_corners(f);
  for (size_t i = 0; i < f.walk.size(); ++i) {
    const Edge& e = edges_[static_cast<size_t>(edge_index(f.walk[i].edge))];
    int head = vertex_index(f.walk[i].dir > 0 ? e.ends[1] : e.ends[0]);
    if (head != corners[(i + 1) % corners.size()])
      throw InvalidInput("face '" + id + "' boundary is not a closed walk");
  }
  for (const auto& s : f.walk)
    if (++edge_uses_[static_cast<size_t>(edge_index(s.edge))] > 2)
      throw InvalidInput("edge '" + s.edge + "' lies on more than two face sides");
  faces_.push_back(std::move(f));
}

int Complex2::vertex_index(const std::string& v) const {
  auto it = vertex_index_.find(v);
  if (it == vertex_index_.end()) throw InvalidInput("unknown vertex '" + v + "'");
  return it->second;
}

int Complex2::edge_index(const std::string& e) const {
  auto it = edge_index_.find(e);
  if (it == edge_index_.end()) throw InvalidInput("unknown edge '" + e + "'");
  return it->second;
}

std::vector<int> Complex2::face_corners(const Face& f) const {
  std::vector<int> out;
  for (const auto& s : f.walk) {
    const Edge& e = edges_[static_cast<size_t>(edge_index(s.edge))];
    out.push_back(vertex_index(s.dir > 0 ? e.ends[0] : e.ends[1]));
  }
  return out;
}

std::vector<std::string> Complex2::neighbors(const std::string& v) const {
  std::set<std::string> out;
  vertex_index(v);
  for (const auto& e : edges_) {
    if (e.ends[0] == v) out.insert(e.ends[1]);
    if (e.ends[1] == v) out.insert(e.ends[0]);
  }
  return {out.begin(), out.end()};
}

int Complex2::degree(const std::string& v) const {
  vertex_index(v);
  int d = 0;
  for (const auto& e : edges_) d += (e.ends[0] == v) + (e.ends[1] == v);
  return d;
}

SurfaceReport surface_report(const Complex2& c) {
  SurfaceReport r;
  r.v = static_cast<int>(c.vertices().size());
  r.e = static_cast<int>(c.edges().size());
  r.f = static_cast<int>(c.faces().size());
  r.euler = r.v - r.e + r.f;

  // Face sides per edge: (face, direction).
  std::vector<std::vector<std::pair<int, int>>> uses(static_cast<size_t>(r.e));
  for (int fi = 0; fi < r.f; ++fi)
    for (const auto& s : c.faces()[static_cast<size_t>(fi)].walk)
      uses[static_cast<size_t>(c.edge_index(s.edge))].push_back({fi, s.dir});

  bool closed = r.f > 0 && r.v > 0;
  for (const auto& u : uses) closed = closed && u.size() == 2;

  // Vertex links: corners join the arriving and leaving edge-ends.
  if (closed) {
    UnionFind link(2 * r.e);
    std::vector<int> link_degree(static_cast<size_t>(2 * r.e), 0);
    for (const auto& f : c.faces()) {
      const size_t m = f.walk.size();
      for (size_t i = 0; i < m; ++i) {
        const WalkStep& in = f.walk[(i + m - 1) % m];
        const WalkStep& out = f.walk[i];
        int a = arriving_end(in, c.edge_index(in.edge));
        int b = leaving_end(out, c.edge_index(out.edge));
        link.unite(a, b);
        ++link_degree[static_cast<size_t>(a)];
        ++link_degree[static_cast<size_t>(b)];
      }
    }
    std::vector<std::set<int>> roots(static_cast<size_t>(r.v));
    for (int ei = 0; ei < r.e; ++ei) {
      const Edge& e = c.edges()[static_cast<size_t>(ei)];
      for (int end = 0; end < 2; ++end) {
        int node = 2 * ei + end;
        if (link_degree[static_cast<size_t>(node)] != 2) closed = false;
        roots[static_cast<size_t>(c.vertex_index(e.ends[static_cast<size_t>(end)]))].insert(link.find(node));
      }
    }
    for (const auto& s : roots) closed = closed && s.size() == 1;
  }
  r.closed_surface = closed;

  // Orientation: faces sharing an edge must traverse it in opposite directions.
  std::vector<int> orient(static_cast<size_t>(r.f), 0);
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<size_t>(r.f));  // (face, relative sign)
  bool orientable = true;
  for (const auto& u : uses) {
    if (u.size() != 2) continue;
    auto [f1, d1] = u[0];
    auto [f2, d2] = u[1];
    if (f1 == f2) {
      if (d1 == d2) orientable = false;
      continue;
    }
    // o1 d1 = -o2 d2  =>  o2 = -d1 d2 o1.
    adj[static_cast<size_t>(f1)].push_back({f2, -d1 * d2});
    adj[static_cast<size_t>(f2)].push_back({f1, -d1 * d2});
  }
  for (int s = 0; s < r.f && orientable; ++s) {
    if (orient[static_cast<size_t>(s)]) continue;
    orient[static_cast<size_t>(s)] = 1;
    std::deque<int> q{s};
    while (!q.empty() && orientable) {
      int f = q.front();
      q.pop_front();
      for (auto [g, rel] : adj[static_cast<size_t>(f)]) {
        int want = rel * orient[static_cast<size_t>(f)];
        if (!orient[static_cast<size_t>(g)]) {
          orient[static_cast<size_t>(g)] = want;
          q.push_back(g);
        } else if (orient[static_cast<size_t>(g)] != want) {
          orientable = false;
          break;
        }
      }
    }
  }
  r.orientable = orientable;

  UnionFind uf(std::max(r.v, 1));
  for (const auto& e : c.edges()) uf.unite(c.vertex_index(e.ends[0]), c.vertex_index(e.ends[1]));
  std::set<int> comps;
  for (int i = 0; i < r.v; ++i) comps.insert(uf.find(i));
  r.connected = comps.size() == 1;

  if (r.closed_surface && r.connected) {
    if (r.orientable)
      r.genus = (2 - r.euler) / 2;
    else
      r.crosscaps = 2 - r.euler;
  }
  return r;
}

std::vector<Complex2> connected_components(const Complex2& c) {
  const int nv = static_cast<int>(c.vertices().size());
  UnionFind uf(std::max(nv, 1));
  for (const auto& e : c.edges()) uf.unite(c.vertex_index(e.ends[0]), c.vertex_index(e.ends[1]));
  std::vector<int> slot(static_cast<size_t>(nv), -1);
  std::vector<Complex2> out;
  auto comp_of = [&](int v) { return slot[static_cast<size_t>(uf.find(v))]; };
  for (int i = 0; i < nv; ++i) {
    int root = uf.find(i);
    if (slot[static_cast<size_t>(root)] < 0) {
      slot[static_cast<size_t>(root)] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[static_cast<size_t>(comp_of(i))].add_vertex(c.vertices()[static_cast<size_t>(i)]);
  }
  for (const auto& e : c.edges())
    out[static_cast<size_t>(comp_of(c.vertex_index(e.ends[0])))].add_edge(e.id, e.ends[0], e.ends[1]);
  for (const auto& f : c.faces()) {
    const Edge& e = c.edges()[static_cast<size_t>(c.edge_index(f.walk.front().edge))];
    out[static_cast<size_t>(comp_of(c.vertex_index(e.ends[0])))].add_face(f.id, f.walk);
  }
  return out;
}

}  // namespace framelab
