#pragma once

#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "framelab/cellcomplex.hpp"
#include "framelab/grassmann.hpp"
#include "framelab/planar.hpp"
#include "framelab/stratification.hpp"

namespace framelab::io {

using nlohmann::json;

json to_json(const Frame& f);
json to_json(const GramPoint& r);
json to_json(const Partition& p);  // 1-based
json to_json(const TangentReport& t);
json to_json(const ExpectedDimensions& d);
json to_json(const FramePath& p);
json to_json(const Complex2& c);
json to_json(const SurfaceReport& r);
json to_json(const PathValidation& v);
json loop_to_json(const std::vector<GramPoint>& loop);

Frame frame_from_json(const json& j);
GramPoint gram_from_json(const json& j, double tol = kDefaultTol);
Partition partition_from_json(const json& j);
FramePath path_from_json(const json& j);
Complex2 complex_from_json(const json& j);
std::vector<GramPoint> loop_from_json(const json& j, double tol = kDefaultTol);

// Reads a whole JSON document; "-" means standard input.
json read_json(const std::string& path, std::istream& stdin_stream);

}  // namespace framelab::io
