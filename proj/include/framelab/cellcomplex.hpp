#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "framelab/common.hpp"

namespace framelab {

struct Edge {
  std::string id;
  std::array<std::string, 2> ends;  // reference direction ends[0] -> ends[1]
};

struct WalkStep {
  std::string edge;
  int dir = 1;  // +1 along the reference direction, -1 against it
};

struct Face {
  std::string id;
  std::vector<WalkStep> walk;
};

// Labeled 2-complex. Faces are closed edge walks; an edge may occur at most
// twice over all faces.
class Complex2 {
 public:
  void add_vertex(const std::string& v);
  void add_edge(const std::string& id, const std::string& from, const std::string& to);
  void add_face(const std::string& id, std::vector<WalkStep> walk);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Face>& faces() const { return faces_; }

  int vertex_index(const std::string& v) const;
  int edge_index(const std::string& e) const;
  // Vertex indices where the walk starts each step.
  std::vector<int> face_corners(const Face& f) const;
  std::vector<std::string> neighbors(const std::string& v) const;
  int degree(const std::string& v) const;

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<Face> faces_;
  std::map<std::string, int> vertex_index_;
  std::map<std::string, int> edge_index_;
  std::vector<int> edge_uses_;
};

struct SurfaceReport {
  int v = 0, e = 0, f = 0;
  int euler = 0;
  bool closed_surface = false;
  bool orientable = false;
  bool connected = false;
  std::optional<int> genus;      // closed, orientable, connected
  std::optional<int> crosscaps;  // closed, non-orientable, connected
};

// The identification data is inconsistent with itself.
class TranscriptionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

SurfaceReport surface_report(const Complex2& c);
std::vector<Complex2> connected_components(const Complex2& c);

// Builds a complex from identification data (see data/g42.json, data/g52.json).
Complex2 complex_from_identifications(std::string_view json_text);
Complex2 build_g42();
Complex2 build_g52();
// The identification data behind the two builders.
std::string_view g42_data();
std::string_view g52_data();

}  // namespace framelab
