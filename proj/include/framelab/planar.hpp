#pragma once

#include <optional>
#include <string>
#include <vector>

#include "framelab/frames.hpp"

namespace framelab {

// k unit complex numbers with sum of squares zero: the columns of a spherical
// tight frame in R^2 read as x + iy.
class PlanarFrame {
 public:
  static PlanarFrame make(std::vector<cplx> z, double tol = kDefaultTol);
  const std::vector<cplx>& z() const { return z_; }
  int k() const { return static_cast<int>(z_.size()); }

 private:
  explicit PlanarFrame(std::vector<cplx> z) : z_(std::move(z)) {}
  std::vector<cplx> z_;
};

// Closed polygon with unit edges: k unit complex numbers summing to zero.
class Chain {
 public:
  static Chain make(std::vector<cplx> w, double tol = kDefaultTol);
  const std::vector<cplx>& w() const { return w_; }
  int k() const { return static_cast<int>(w_.size()); }

 private:
  explicit Chain(std::vector<cplx> w) : w_(std::move(w)) {}
  std::vector<cplx> w_;
};

enum class PathKind { Planar, Chain };

struct PathSample {
  double t = 0.0;
  std::vector<cplx> point;
};

struct FramePath {
  PathKind kind = PathKind::Planar;
  double max_step = 0.0;
  std::vector<PathSample> samples;

  int k() const { return samples.empty() ? 0 : static_cast<int>(samples.front().point.size()); }
  const std::vector<cplx>& front() const { return samples.front().point; }
  const std::vector<cplx>& back() const { return samples.back().point; }
  double observed_max_step() const;
};

inline constexpr double kDefaultMaxStep = 0.05;

PlanarFrame to_planar(const Frame& f, double tol = kDefaultTol);
Frame from_planar(const PlanarFrame& z);
Chain square_map(const PlanarFrame& z);

// Standard chain s and canonical planar frame b for k >= 4.
std::vector<cplx> standard_chain(int k);
std::vector<cplx> canonical_planar(int k);

FramePath lift_path(const FramePath& chain_path, const PlanarFrame& start, double tol = kDefaultTol);
FramePath chain_straighten(const Chain& c, double max_step = kDefaultMaxStep, double tol = kDefaultTol);
FramePath connect_to_standard(const PlanarFrame& z, double max_step = kDefaultMaxStep,
                              double tol = kDefaultTol);

FramePath case1_explicit_path(double max_step = kDefaultMaxStep);
FramePath case3_explicit_path(double max_step = kDefaultMaxStep);

// Rotation of the listed coordinates by units * pi/6.
struct RotationMove {
  std::vector<int> coords;
  int units = 0;
};

std::vector<RotationMove> case1_moves();
std::vector<RotationMove> case3_moves();
// Moves taking lattice state m (z_j = e^{i pi m_j / 6}) of a fiber element
// over the standard chain to canonical_planar(k).
std::vector<RotationMove> fiber_moves_to_canonical(const std::vector<int>& m);
std::vector<int> canonical_lattice(int k);

struct PathValidation {
  bool ok = true;
  std::string violation;  // empty when ok
  double worst = 0.0;     // size of the worst violation (or worst residual when ok)
  double worst_t = 0.0;
  int worst_sample = -1;
  int worst_index = -1;
  double max_modulus_error = 0.0;
  double max_constraint_error = 0.0;
  double max_step = 0.0;
};

struct PathEndpoints {
  std::optional<std::vector<cplx>> start;
  std::optional<std::vector<cplx>> end;
};

PathValidation validate_path(const FramePath& p, double tol = kDefaultTol,
                             const PathEndpoints& endpoints = {});

FramePath concatenate(const FramePath& a, const FramePath& b);

}  // namespace framelab
