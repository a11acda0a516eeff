#include <map>
#include <set>
#include <string_view>

#include <json.hpp>

#include "framelab/cellcomplex.hpp"

namespace framelab {

namespace data {
extern const std::string_view kG42Json;
extern const std::string_view kG52Json;
}  // namespace data

namespace {

using nlohmann::json;
using Signs = std::string;  // one '+' or '-' per coordinate

Signs multiply(const Signs& a, const Signs& b) {
  if (a.size() != b.size()) throw TranscriptionError("sign vectors of different length");
  Signs out(a.size(), '+');
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] == b[i] ? '+' : '-';
  return out;
}

std::vector<Signs> all_signs(int length) {
  std::vector<Signs> out;
  for (int mask = 0; mask < (1 << length); ++mask) {
    Signs s(static_cast<size_t>(length), '+');
    for (int i = 0; i < length; ++i)
      if (mask >> (length - 1 - i) & 1) s[static_cast<size_t>(i)] = '-';
    out.push_back(s);
  }
  return out;
}

std::string label(const std::string& name, const Signs& eps) { return name + "(" + eps + ")"; }

Complex2 build_circles(const json& d) {
  std::map<std::pair<std::string, std::string>, std::string> cls;
  std::vector<std::string> names;
  for (const auto& c : d.at("vertex_classes")) {
    std::string name = c.at("name");
    names.push_back(name);
    for (const auto& m : c.at("members")) {
      auto key = std::make_pair(m.at(0).get<std::string>(), m.at(1).get<std::string>());
      if (!cls.emplace(key, name).second)
        throw TranscriptionError("marked point " + key.first + "(" + key.second + ") is in two classes");
    }
  }
  Complex2 out;
  for (const auto& n : names) out.add_vertex(n);
  for (const auto& circle : d.at("circles")) {
    for (const auto& p : d.at("marked_points")) {
      if (!cls.count({circle, p}))
        throw TranscriptionError("marked point " + circle.get<std::string>() + "(" + p.get<std::string>() + ") has no class");
    }
    for (const auto& arc : d.at("arcs")) {
      std::string from = arc.at(0), to = arc.at(1);
      std::string c = circle;
      out.add_edge(c + "[" + from + "," + to + "]", cls.at({c, from}), cls.at({c, to}));
    }
  }
  return out;
}

Complex2 build_polygons(const json& d) {
  const int len = d.at("sign_length");
  const auto eps_all = all_signs(len);
  const std::vector<std::string> vletters = d.at("polygon").at("vertices");
  const std::vector<std::string> eletters = d.at("polygon").at("edges");
  if (vletters.size() != eletters.size()) throw TranscriptionError("polygon vertex and edge counts differ");
  const size_t m = vletters.size();
  std::map<std::string, size_t> vpos;
  for (size_t i = 0; i < m; ++i) vpos[vletters[i]] = i;

  // Raw polygon vertex (letter, eps) -> class label, from the class lists.
  std::map<std::pair<std::string, Signs>, std::string> cls;
  std::vector<std::string> class_names;
  for (const auto& eps : eps_all)
    for (const auto& c : d.at("vertex_classes")) {
      std::string name = label(c.at("name"), eps);
      class_names.push_back(name);
      for (const auto& mem : c.at("members")) {
        auto key = std::make_pair(mem.at(0).get<std::string>(), multiply(mem.at(1), eps));
        if (!vpos.count(key.first)) throw TranscriptionError("unknown vertex letter " + key.first);
        if (!cls.emplace(key, name).second)
          throw TranscriptionError("raw vertex " + label(key.first, key.second) + " is in two classes");
      }
    }
  if (cls.size() != m * eps_all.size()) throw TranscriptionError("vertex classes do not cover every raw vertex");

  // The pairwise identification lists must generate exactly the class lists.
  if (d.contains("vertex_identifications")) {
    std::map<std::pair<std::string, Signs>, int> id;
    for (const auto& [key, name] : cls) id.emplace(key, static_cast<int>(id.size()));
    std::vector<int> parent(id.size());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    auto find = [&](int x) {
      while (parent[static_cast<size_t>(x)] != x) x = parent[static_cast<size_t>(x)];
      return x;
    };
    for (const auto& vi : d.at("vertex_identifications"))
      for (const auto& eps : eps_all) {
        auto a = std::make_pair(vi.at("vertices").at(0).get<std::string>(), eps);
        auto b = std::make_pair(vi.at("vertices").at(1).get<std::string>(), multiply(vi.at("twist"), eps));
        if (cls.at(a) != cls.at(b))
          throw TranscriptionError("vertex identification " + label(a.first, a.second) + " ~ " +
                                   label(b.first, b.second) + " crosses the class lists");
        parent[static_cast<size_t>(find(id.at(a)))] = find(id.at(b));
      }
    std::set<int> roots;
    for (size_t i = 0; i < parent.size(); ++i) roots.insert(find(static_cast<int>(i)));
    if (roots.size() != class_names.size())
      throw TranscriptionError("vertex identifications generate " + std::to_string(roots.size()) +
                               " classes, class lists have " + std::to_string(class_names.size()));
  }

  auto tail = [&](const std::string& e, const Signs& eps) {
    for (size_t i = 0; i < m; ++i)
      if (eletters[i] == e) return cls.at({vletters[i], eps});
    throw TranscriptionError("unknown edge letter " + e);
  };
  auto head = [&](const std::string& e, const Signs& eps) {
    for (size_t i = 0; i < m; ++i)
      if (eletters[i] == e) return cls.at({vletters[(i + 1) % m], eps});
    throw TranscriptionError("unknown edge letter " + e);
  };

  Complex2 out;
  for (const auto& n : class_names) out.add_vertex(n);

  // Raw edge (letter, eps) -> (edge class label, direction relative to it).
  std::map<std::pair<std::string, Signs>, std::pair<std::string, int>> edge_of;
  for (const auto& eps : eps_all)
    for (const auto& ei : d.at("edge_identifications")) {
      std::string x = ei.at("edges").at(0), y = ei.at("edges").at(1);
      Signs eps_y = multiply(ei.at("twist"), eps);
      std::string name = label(x, eps);
      std::string t = tail(x, eps), h = head(x, eps);
      if (t == h) throw TranscriptionError("edge " + name + " has both ends in one class");
      int dir = 0;
      if (tail(y, eps_y) == t && head(y, eps_y) == h)
        dir = 1;
      else if (tail(y, eps_y) == h && head(y, eps_y) == t)
        dir = -1;
      else
        throw TranscriptionError("edges " + name + " and " + label(y, eps_y) +
                                 " have endpoint classes that do not match");
      out.add_edge(name, t, h);
      if (!edge_of.emplace(std::make_pair(x, eps), std::make_pair(name, 1)).second ||
          !edge_of.emplace(std::make_pair(y, eps_y), std::make_pair(name, dir)).second)
        throw TranscriptionError("raw edge glued twice near " + name);
    }
  if (edge_of.size() != m * eps_all.size()) throw TranscriptionError("edge identifications do not cover every raw edge");

  for (const auto& eps : eps_all) {
    std::vector<WalkStep> walk;
    for (const auto& e : eletters) {
      const auto& [name, dir] = edge_of.at({e, eps});
      walk.push_back({name, dir});
    }
    out.add_face(label("B", eps), std::move(walk));
  }
  return out;
}

}  // namespace

Complex2 complex_from_identifications(std::string_view json_text) {
  json d;
  try {
    d = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("identification data: ") + e.what());
  }
  try {
    const std::string kind = d.at("kind");
    if (kind == "circles") return build_circles(d);
    if (kind == "polygons") return build_polygons(d);
    throw InvalidInput("identification data: unknown kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("identification data: ") + e.what());
  }
}

Complex2 build_g42() { return complex_from_identifications(data::kG42Json); }
Complex2 build_g52() { return complex_from_identifications(data::kG52Json); }

std::string_view g42_data() { return data::kG42Json; }
std::string_view g52_data() { return data::kG52Json; }

}  // namespace framelab
