#include "framelab/io.hpp"

#include <fstream>
#include <sstream>

namespace framelab::io {

namespace {

json scalar(cplx v, Field f) {
  if (f == Field::Real) return v.real();
  return json::array({v.real(), v.imag()});
}

cplx read_scalar(const json& j, Field f) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (f == Field::Real) throw InvalidInput("real entries must be plain numbers");
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw InvalidInput("complex entries must be [re, im] pairs");
}

json matrix(const CMatrix& m, Field f) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(scalar(m(i, j), f));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix read_matrix(const json& j, int rows, int cols, Field f) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw InvalidInput("entries must have " + std::to_string(rows) + " rows");
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json& row = j[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw InvalidInput("row " + std::to_string(i + 1) + " must have " + std::to_string(cols) + " entries");
    for (int c = 0; c < cols; ++c) m(i, c) = read_scalar(row[static_cast<size_t>(c)], f);
  }
  return m;
}

template <typename Fn>
auto guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

int positive(const json& j, const char* key) {
  int v = j.at(key).get<int>();
  if (v < 1) throw InvalidInput(std::string(key) + " must be positive");
  return v;
}

json point(const std::vector<cplx>& z) {
  json a = json::array();
  for (auto v : z) a.push_back(json::array({v.real(), v.imag()}));
  return a;
}

}  // namespace

json to_json(const Frame& f) {
  return {{"field", std::string(to_string(f.field()))}, {"n", f.n()}, {"k", f.k()},
          {"entries", matrix(f.entries(), f.field())}};
}

json to_json(const GramPoint& r) {
  return {{"field", std::string(to_string(r.field()))}, {"k", r.k()}, {"n", r.n()},
          {"entries", matrix(r.entries(), r.field())}};
}

json to_json(const Partition& p) {
  json blocks = json::array();
  for (const auto& b : p.blocks()) {
    json blk = json::array();
    for (int i : b) blk.push_back(i + 1);
    blocks.push_back(std::move(blk));
  }
  return {{"k", p.k()}, {"blocks", blocks}};
}

json to_json(const TangentReport& t) {
  return {{"rank", t.rank}, {"regular", t.regular}, {"stratum_dim", t.stratum_dim},
          {"ambient_dim", t.ambient_dim}};
}

json to_json(const ExpectedDimensions& d) {
  return {{"dimG", d.dim_g}, {"dimF", d.dim_f}, {"dimN", d.dim_n}, {"dimM", d.dim_m}};
}

json to_json(const FramePath& p) {
  json samples = json::array();
  for (const auto& s : p.samples) samples.push_back({{"t", s.t}, {"z", point(s.point)}});
  return {{"kind", p.kind == PathKind::Planar ? "planar" : "chain"}, {"k", p.k()}, {"samples", samples}};
}

json to_json(const Complex2& c) {
  json edges = json::array(), faces = json::array();
  for (const auto& e : c.edges()) edges.push_back({{"id", e.id}, {"ends", {e.ends[0], e.ends[1]}}});
  for (const auto& f : c.faces()) {
    json walk = json::array();
    for (const auto& s : f.walk) walk.push_back({{"edge", s.edge}, {"dir", s.dir}});
    faces.push_back({{"id", f.id}, {"walk", walk}});
  }
  return {{"vertices", c.vertices()}, {"edges", edges}, {"faces", faces}};
}

json to_json(const SurfaceReport& r) {
  json j = {{"v", r.v}, {"e", r.e}, {"f", r.f}, {"euler", r.euler},
            {"closed_surface", r.closed_surface}, {"orientable", r.orientable},
            {"connected", r.connected}};
  j["genus"] = r.genus ? json(*r.genus) : json(nullptr);
  if (r.crosscaps) j["crosscaps"] = *r.crosscaps;
  return j;
}

json to_json(const PathValidation& v) {
  json j = {{"ok", v.ok}, {"worst", v.worst}, {"t", v.worst_t}, {"sample", v.worst_sample},
            {"max_modulus_error", v.max_modulus_error},
            {"max_constraint_error", v.max_constraint_error}, {"max_step", v.max_step}};
  j["index"] = v.worst_index >= 0 ? json(v.worst_index + 1) : json(nullptr);
  if (!v.ok) j["violation"] = v.violation;
  return j;
}

json loop_to_json(const std::vector<GramPoint>& loop) {
  json pts = json::array();
  for (const auto& r : loop) pts.push_back(to_json(r));
  return {{"points", pts}};
}

Frame frame_from_json(const json& j) {
  return guarded([&] {
    Field f = parse_field(j.at("field").get<std::string>());
    int n = positive(j, "n"), k = positive(j, "k");
    return Frame(f, read_matrix(j.at("entries"), n, k, f));
  });
}

GramPoint gram_from_json(const json& j, double tol) {
  return guarded([&] {
    Field f = j.contains("field") ? parse_field(j.at("field").get<std::string>()) : Field::Real;
    int k = positive(j, "k"), n = positive(j, "n");
    return GramPoint::make(f, read_matrix(j.at("entries"), k, k, f), n, tol);
  });
}

Partition partition_from_json(const json& j) {
  return guarded([&] {
    int k = positive(j, "k");
    std::vector<std::vector<int>> blocks;
    for (const auto& b : j.at("blocks")) {
      std::vector<int> blk;
      for (const auto& i : b) blk.push_back(i.get<int>() - 1);
      blocks.push_back(std::move(blk));
    }
    return Partition(k, std::move(blocks));
  });
}

FramePath path_from_json(const json& j) {
  return guarded([&] {
    FramePath p;
    std::string kind = j.at("kind");
    if (kind == "planar")
      p.kind = PathKind::Planar;
    else if (kind == "chain")
      p.kind = PathKind::Chain;
    else
      throw InvalidInput("path kind must be 'planar' or 'chain'");
    int k = positive(j, "k");
    for (const auto& s : j.at("samples")) {
      PathSample ps;
      ps.t = s.at("t").get<double>();
      for (const auto& z : s.at("z")) ps.point.push_back(read_scalar(z, Field::Complex));
      if (static_cast<int>(ps.point.size()) != k) throw InvalidInput("path sample has the wrong length");
      p.samples.push_back(std::move(ps));
    }
    if (p.samples.empty()) throw InvalidInput("path has no samples");
    p.max_step = j.contains("max_step") ? j.at("max_step").get<double>() : p.observed_max_step();
    return p;
  });
}

Complex2 complex_from_json(const json& j) {
  return guarded([&] {
    Complex2 c;
    for (const auto& v : j.at("vertices")) c.add_vertex(v.get<std::string>());
    for (const auto& e : j.at("edges"))
      c.add_edge(e.at("id").get<std::string>(), e.at("ends").at(0).get<std::string>(),
                 e.at("ends").at(1).get<std::string>());
    if (j.contains("faces"))
      for (const auto& f : j.at("faces")) {
        std::vector<WalkStep> walk;
        for (const auto& s : f.at("walk")) walk.push_back({s.at("edge").get<std::string>(), s.at("dir").get<int>()});
        c.add_face(f.at("id").get<std::string>(), std::move(walk));
      }
    return c;
  });
}

std::vector<GramPoint> loop_from_json(const json& j, double tol) {
  return guarded([&] {
    std::vector<GramPoint> out;
    for (const auto& p : j.at("points")) out.push_back(gram_from_json(p, tol));
    return out;
  });
}

json read_json(const std::string& path, std::istream& in) {
  std::string text;
  if (path == "-") {
    std::ostringstream os;
    os << in.rdbuf();
    text = os.str();
  } else {
    std::ifstream f(path);
    if (!f) throw InvalidInput("cannot open '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    text = os.str();
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput("malformed JSON in '" + path + "': " + e.what());
  }
}

}  // namespace framelab::io
