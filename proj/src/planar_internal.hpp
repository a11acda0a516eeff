#pragma once

#include <functional>
#include <vector>

#include "framelab/planar.hpp"

namespace framelab::detail {

using Point = std::vector<cplx>;

double max_dist(const Point& a, const Point& b);

// Accumulates sampled segments. Each segment is a map s -> point on [0,1]
// whose value at 0 is the current point; it is sampled uniformly, doubling
// the sample count until consecutive points are within max_step.
class PathBuilder {
 public:
  PathBuilder(Point start, double max_step);

  using Segment = std::function<void(double s, Point& out)>;
  void segment(const Segment& f);
  void apply(const RotationMove& m, std::vector<int>& lattice);

  const Point& current() const { return points_.back(); }
  FramePath finish(PathKind kind) &&;

 private:
  std::vector<Point> points_;
  double max_step_;
};

cplx lattice_value(int m);
Point lattice_point(const std::vector<int>& m);

}  // namespace framelab::detail
