#pragma once

#include <span>
#include <vector>

#include "framelab/common.hpp"

namespace framelab {

// Synthesis matrix of a finite frame: n rows, one column per frame vector.
// Real frames keep every imaginary part exactly zero.
class Frame {
 public:
  Frame(Field field, CMatrix entries);

  static Frame real(const RMatrix& entries);
  static Frame complex(const CMatrix& entries);

  Field field() const { return field_; }
  int n() const { return static_cast<int>(entries_.rows()); }
  int k() const { return static_cast<int>(entries_.cols()); }
  const CMatrix& entries() const { return entries_; }
  cplx operator()(int i, int j) const { return entries_(i, j); }

 private:
  Field field_;
  CMatrix entries_;
};

class EllipsoidSpec {
 public:
  explicit EllipsoidSpec(std::vector<double> axes);
  static EllipsoidSpec sphere(int n);

  const std::vector<double>& axes() const { return axes_; }
  int n() const { return static_cast<int>(axes_.size()); }
  double axis_sum() const;

 private:
  std::vector<double> axes_;
};

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
};

struct TightnessReport {
  bool tight = false;
  double bound = 0.0;  // trace(FF*)/n
  FrameBounds bounds;
};

FrameBounds frame_bounds(const Frame& f);
TightnessReport is_tight(const Frame& f, double tol = kDefaultTol);
bool is_on_ellipsoid(const Frame& f, const EllipsoidSpec& a, double tol = kDefaultTol);
bool has_unit_columns(const Frame& f, double tol = kDefaultTol);
double expected_tight_bound(const EllipsoidSpec& a, int k);

Frame simplex_frame(int n);

Frame act_orthogonal(const Frame& f, const CMatrix& u, double tol = kDefaultTol);
// Column j of the result is column perm[j] of f (0-based).
Frame act_permutation(const Frame& f, std::span<const int> perm);
Frame act_phases(const Frame& f, std::span<const cplx> zeta, double tol = kDefaultTol);

// Matrix A with (F A) = act_permutation(F, perm).
RMatrix permutation_matrix(std::span<const int> perm);
bool is_permutation(std::span<const int> perm);

}  // namespace framelab
