#pragma once

#include <vector>

#include "framelab/grassmann.hpp"

namespace framelab {

// Partition of {0..k-1}; blocks sorted internally and ordered by minimum.
class Partition {
 public:
  Partition(int k, std::vector<std::vector<int>> blocks);
  static Partition trivial(int k);

  int k() const { return k_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  size_t size() const { return blocks_.size(); }
  bool is_trivial() const { return blocks_.size() == 1; }
  bool operator==(const Partition&) const = default;

 private:
  int k_;
  std::vector<std::vector<int>> blocks_;
};

struct Orthodecomposition {
  bool decomposable = false;
  Partition partition;
};

struct TangentReport {
  int rank = 0;
  bool regular = false;
  int stratum_dim = 0;
  int ambient_dim = 0;
};

struct ExpectedDimensions {
  int dim_g = 0;
  int dim_f = 0;
  int dim_n = 0;
  int dim_m = 0;
};

// Components of the support graph |M_ij| > tol * max|M|.
Partition commutant_partition(const CMatrix& m, double tol = kDefaultTol);
Orthodecomposition is_orthodecomposable(const Frame& f, double tol = kDefaultTol);
bool check_block_cardinalities(const Partition& p, int k, int n);

inline constexpr double kTangentRankTol = 1e-8;

TangentReport tangent_report(const GramPoint& r, double tol = kDefaultTol);
ExpectedDimensions expected_dimensions(int k, int n, Field field);

GramPoint construct_regular_point(int k, int n);
Frame harmonic_frame(int k, int n, Field field);

// Orthonormal type-II DCT basis: column 0 is constant.
RMatrix dct2_matrix(int d);

}  // namespace framelab
