#include <doctest.h>

#include <Eigen/Dense>
#include <map>
#include <nlohmann/json.hpp>
#include <numbers>
#include <queue>
#include <random>
#include <set>

#include "framelab/cellcomplex.hpp"

using namespace framelab;
using nlohmann::json;

namespace {

Complex2 torus(const std::string& tag = "") {
  Complex2 c;
  c.add_vertex("v" + tag);
  c.add_edge("a" + tag, "v" + tag, "v" + tag);
  c.add_edge("b" + tag, "v" + tag, "v" + tag);
  c.add_face("T" + tag, {{"a" + tag, 1}, {"b" + tag, 1}, {"a" + tag, -1}, {"b" + tag, -1}});
  return c;
}

Complex2 klein_bottle() {
  Complex2 c;
  c.add_vertex("v");
  c.add_edge("a", "v", "v");
  c.add_edge("b", "v", "v");
  c.add_face("K", {{"a", 1}, {"b", 1}, {"a", -1}, {"b", 1}});
  return c;
}

Complex2 projective_plane() {
  Complex2 c;
  c.add_vertex("v");
  c.add_edge("a", "v", "v");
  c.add_face("P", {{"a", 1}, {"a", 1}});
  return c;
}

Complex2 sphere() {
  Complex2 c;
  for (auto v : {"x", "y", "z"}) c.add_vertex(v);
  c.add_edge("e1", "x", "y");
  c.add_edge("e2", "y", "z");
  c.add_edge("e3", "z", "x");
  c.add_face("N", {{"e1", 1}, {"e2", 1}, {"e3", 1}});
  c.add_face("S", {{"e3", -1}, {"e2", -1}, {"e1", -1}});
  return c;
}

Complex2 merge(const Complex2& a, const Complex2& b) {
  Complex2 c;
  for (const Complex2* p : {&a, &b}) {
    for (const auto& v : p->vertices()) c.add_vertex(v);
    for (const auto& e : p->edges()) c.add_edge(e.id, e.ends[0], e.ends[1]);
  }
  for (const Complex2* p : {&a, &b})
    for (const auto& f : p->faces()) c.add_face(f.id, f.walk);
  return c;
}

std::string mul(const std::string& a, const std::string& b) {
  std::string r(a.size(), '+');
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] == b[i] ? '+' : '-';
  return r;
}

std::vector<std::string> all_signs() {
  std::vector<std::string> out;
  for (int m = 0; m < 16; ++m) {
    std::string s;
    for (int j = 3; j >= 0; --j) s += (m >> j & 1) ? '-' : '+';
    out.push_back(s);
  }
  return out;
}

// Reads the polygon data directly: a glued pair forces opposite face
// orientations when both raw edges run from the same endpoint class. Returns
// whether a consistent choice of orientations exists.
bool orientable_from_data(const json& d) {
  std::vector<std::string> vs = d["polygon"]["vertices"], es = d["polygon"]["edges"];
  std::map<std::pair<std::string, std::string>, std::string> cls;
  for (const auto& c : d["vertex_classes"])
    for (const auto& eps : all_signs())
      for (const auto& m : c["members"]) cls[{m[0], mul(eps, m[1])}] = c["name"].get<std::string>() + eps;
  auto ends = [&](const std::string& e, const std::string& eps) {
    size_t i = static_cast<size_t>(std::find(es.begin(), es.end(), e) - es.begin());
    return std::pair{cls.at({vs[i], eps}), cls.at({vs[(i + 1) % vs.size()], eps})};
  };
  // Constraint graph on faces: parity 1 means opposite orientation.
  std::map<std::string, std::vector<std::pair<std::string, int>>> adj;
  for (const auto& g : d["edge_identifications"])
    for (const auto& eps : all_signs()) {
      std::string other = mul(eps, g["twist"]);
      auto [x0, x1] = ends(g["edges"][0], eps);
      auto [y0, y1] = ends(g["edges"][1], other);
      REQUIRE(((x0 == y0 && x1 == y1) || (x0 == y1 && x1 == y0)));
      int parity = x0 == y0 ? 1 : 0;
      adj[eps].push_back({other, parity});
      adj[other].push_back({eps, parity});
    }
  std::map<std::string, int> side;
  for (const auto& start : all_signs()) {
    if (side.count(start)) continue;
    side[start] = 0;
    std::queue<std::string> q;
    q.push(start);
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      for (auto [v, p] : adj[u]) {
        int want = side[u] ^ p;
        if (!side.count(v)) {
          side[v] = want;
          q.push(v);
        } else if (side[v] != want) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("synthetic surfaces") {
  auto t = surface_report(torus());
  CHECK(t.euler == 0);
  CHECK(t.closed_surface);
  CHECK(t.orientable);
  CHECK(t.connected);
  CHECK(t.genus == 1);
  CHECK_FALSE(t.crosscaps.has_value());

  auto k = surface_report(klein_bottle());
  CHECK(k.closed_surface);
  CHECK_FALSE(k.orientable);
  CHECK_FALSE(k.genus.has_value());
  CHECK(k.crosscaps == 2);

  auto p = surface_report(projective_plane());
  CHECK(p.euler == 1);
  CHECK(p.closed_surface);
  CHECK_FALSE(p.orientable);
  CHECK(p.crosscaps == 1);

  auto s = surface_report(sphere());
  CHECK(s.euler == 2);
  CHECK(s.genus == 0);
}

TEST_CASE("non-surfaces are reported as such") {
  Complex2 sq;
  for (auto v : {"p", "q", "r", "s"}) sq.add_vertex(v);
  sq.add_edge("pq", "p", "q");
  sq.add_edge("qr", "q", "r");
  sq.add_edge("rs", "r", "s");
  sq.add_edge("sp", "s", "p");
  sq.add_face("F", {{"pq", 1}, {"qr", 1}, {"rs", 1}, {"sp", 1}});
  auto r = surface_report(sq);
  CHECK_FALSE(r.closed_surface);
  CHECK(r.euler == 1);
  CHECK_FALSE(r.genus.has_value());

  // Two tori sharing their vertex: every edge is used twice but the vertex
  // link has two components.
  Complex2 pinched;
  pinched.add_vertex("v");
  for (auto e : {"a", "b", "c", "d"}) pinched.add_edge(e, "v", "v");
  pinched.add_face("T1", {{"a", 1}, {"b", 1}, {"a", -1}, {"b", -1}});
  pinched.add_face("T2", {{"c", 1}, {"d", 1}, {"c", -1}, {"d", -1}});
  auto pr = surface_report(pinched);
  CHECK_FALSE(pr.closed_surface);
  CHECK(pr.connected);
}

TEST_CASE("two disjoint tori") {
  Complex2 two = merge(torus("1"), torus("2"));
  auto r = surface_report(two);
  CHECK(r.closed_surface);
  CHECK(r.orientable);
  CHECK_FALSE(r.connected);
  CHECK_FALSE(r.genus.has_value());
  auto comps = connected_components(two);
  REQUIRE(comps.size() == 2);
  for (const auto& c : comps) CHECK(surface_report(c).genus == 1);
}

TEST_CASE("Complex2 rejects malformed cells") {
  Complex2 c;
  c.add_vertex("x");
  c.add_vertex("y");
  CHECK_THROWS_AS(c.add_vertex("x"), InvalidInput);
  CHECK_THROWS_AS(c.add_edge("e", "x", "nope"), InvalidInput);
  c.add_edge("e", "x", "y");
  CHECK_THROWS_AS(c.add_edge("e", "x", "y"), InvalidInput);
  CHECK_THROWS_AS(c.add_face("F", {{"e", 1}}), InvalidInput);
  CHECK_THROWS_AS(c.add_face("F", {{"missing", 1}}), InvalidInput);
  CHECK_THROWS_AS(c.add_face("F", {{"e", 2}, {"e", -1}}), InvalidInput);
  c.add_face("F", {{"e", 1}, {"e", -1}});
  CHECK_THROWS_AS(c.add_face("G", {{"e", 1}, {"e", -1}}), InvalidInput);
}

TEST_CASE("G42 graph") {
  Complex2 g = build_g42();
  CHECK(g.vertices().size() == 12);
  CHECK(g.edges().size() == 24);
  CHECK(g.faces().empty());
  for (const auto& v : g.vertices()) CHECK(g.degree(v) == 4);
  CHECK(g.neighbors("v1") == std::vector<std::string>{"v10", "v12", "v3", "v7"});
  auto r = surface_report(g);
  CHECK(r.euler == -12);
  CHECK(r.connected);
  CHECK_FALSE(r.closed_surface);
  CHECK(connected_components(g).size() == 1);
}

TEST_CASE("G52 complex counts") {
  Complex2 g = build_g52();
  auto r = surface_report(g);
  CHECK(r.v == 96);
  CHECK(r.e == 160);
  CHECK(r.f == 16);
  CHECK(r.euler == -48);
  CHECK(r.closed_surface);
  CHECK(r.connected);
  CHECK(connected_components(g).size() == 1);

  std::map<std::string, int> uses;
  for (const auto& f : g.faces()) {
    CHECK(f.walk.size() == 20);
    for (const auto& s : f.walk) ++uses[s.edge];
  }
  CHECK(uses.size() == 160);
  for (const auto& [e, n] : uses) CHECK(n == 2);
}

TEST_CASE("G52 corner classes") {
  Complex2 g = build_g52();
  std::map<int, int> corners;
  for (const auto& f : g.faces())
    for (int v : g.face_corners(f)) ++corners[v];
  std::map<int, int> by_size;
  for (const auto& [v, n] : corners) ++by_size[n];
  CHECK(by_size == std::map<int, int>{{2, 32}, {4, 64}});
  // Class sizes per eps follow the class letter: a and f pair two corners.
  for (const auto& [v, n] : corners) {
    const std::string& label = g.vertices()[size_t(v)];
    CHECK(n == (label[0] == 'a' || label[0] == 'f' ? 2 : 4));
    // In a closed surface each corner contributes two edge ends.
    CHECK(g.degree(label) == n);
  }
}

TEST_CASE("G52 orientability agrees with the identification data") {
  json d = json::parse(g52_data());
  bool oracle = orientable_from_data(d);
  auto r = surface_report(build_g52());
  CHECK(r.orientable == oracle);
  CHECK_FALSE(oracle);
  CHECK(r.crosscaps == 2 - r.euler);
}

TEST_CASE("conjugation reverses the orientation of the level set") {
  // On the 4-torus, sum z_j^2 = -1 cut out as a regular level set; compare the
  // induced orientation at z and at conj(z) through the differential of
  // conjugation.
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 20; ++trial) {
    double t1 = u(rng), t2 = u(rng);
    std::complex<double> rest = -1.0 - std::polar(1.0, 2 * t1) - std::polar(1.0, 2 * t2);
    double rho = std::abs(rest);
    if (rho > 1.9 || rho < 0.1) continue;
    double h = std::acos(rho / 2);
    double t3 = (std::arg(rest) + h) / 2, t4 = (std::arg(rest) - h) / 2;
    Eigen::Vector4d th(t1, t2, t3, t4);
    auto jac = [](const Eigen::Vector4d& x) {
      Eigen::Matrix<double, 2, 4> j;
      for (int c = 0; c < 4; ++c) {
        j(0, c) = -2 * std::sin(2 * x(c));
        j(1, c) = 2 * std::cos(2 * x(c));
      }
      return j;
    };
    std::complex<double> g = 0;
    for (int c = 0; c < 4; ++c) g += std::polar(1.0, 2 * th(c));
    REQUIRE(std::abs(g + 1.0) < 1e-12);
    auto j0 = jac(th), j1 = jac(-th);
    Eigen::JacobiSVD<Eigen::Matrix<double, 2, 4>> svd(j0, Eigen::ComputeFullV);
    Eigen::Matrix<double, 4, 2> tangent = svd.matrixV().rightCols<2>();
    Eigen::Matrix4d at_z, at_conj;
    at_z << j0.transpose(), tangent;
    at_conj << j1.transpose(), -tangent;
    CHECK(at_z.determinant() * at_conj.determinant() < 0);
    ++checked;
  }
  CHECK(checked == 20);
}

TEST_CASE("transcription checks catch corrupted data") {
  json base = json::parse(g52_data());
  CHECK_NOTHROW(complex_from_identifications(base.dump()));

  json twist = base;
  twist["edge_identifications"][0]["twist"] = "-+++";
  CHECK_THROWS_AS(complex_from_identifications(twist.dump()), TranscriptionError);

  json dropped = base;
  dropped["vertex_identifications"].erase(0);
  CHECK_THROWS_AS(complex_from_identifications(dropped.dump()), TranscriptionError);

  json moved = base;
  moved["vertex_classes"][0]["members"][1][1] = "-+++";
  CHECK_THROWS_AS(complex_from_identifications(moved.dump()), TranscriptionError);

  json twice = base;
  twice["edge_identifications"][1]["edges"][0] = "A";
  CHECK_THROWS_AS(complex_from_identifications(twice.dump()), TranscriptionError);

  json g42 = json::parse(g42_data());
  g42["vertex_classes"][1]["members"][0] = g42["vertex_classes"][0]["members"][0];
  CHECK_THROWS_AS(complex_from_identifications(g42.dump()), TranscriptionError);

  CHECK_THROWS_AS(complex_from_identifications("{\"kind\": \"nonsense\"}"), InvalidInput);
  CHECK_THROWS_AS(complex_from_identifications("not json"), InvalidInput);
}
