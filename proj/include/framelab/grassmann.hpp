#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "framelab/frames.hpp"

namespace framelab {

// R = F*F for a spherical tight frame F: k x k, R* = R, R^2 = (k/n) R,
// unit diagonal, rank n.
class GramPoint {
 public:
  // Validates every invariant; throws InvalidInput naming the failed check.
  static GramPoint make(Field field, CMatrix entries, int n, double tol = kDefaultTol);
  // Caller guarantees the invariants (outputs of library constructions).
  static GramPoint unchecked(Field field, CMatrix entries, int n);

  Field field() const { return field_; }
  int k() const { return static_cast<int>(entries_.rows()); }
  int n() const { return n_; }
  const CMatrix& entries() const { return entries_; }
  cplx operator()(int i, int j) const { return entries_(i, j); }
  CMatrix projection() const;  // (n/k) R

 private:
  GramPoint(Field field, CMatrix entries, int n);
  Field field_;
  CMatrix entries_;
  int n_;
};

struct GramCheck {
  bool square = false;
  bool self_adjoint = false;
  bool idempotent = false;
  bool unit_diagonal = false;
  bool rank = false;
  double self_adjoint_residual = 0.0;
  double idempotent_residual = 0.0;
  double diagonal_residual = 0.0;
  double spectral_gap = 0.0;  // lambda_n - lambda_{n+1} of P, descending order
  bool passed() const { return square && self_adjoint && idempotent && unit_diagonal && rank; }
  std::string diagnostic() const;
};

struct OrbitWitness {
  CMatrix u;
  double residual = 0.0;
};

struct OneRedundantEnumeration {
  std::vector<GramPoint> points;
  int permutation_orbits = 0;
  int sign_orbits = 0;
};

GramCheck is_gram_point(const CMatrix& m, int n, double tol = kDefaultTol);

GramPoint gram(const Frame& f, double tol = kDefaultTol);
GramPoint complement(const GramPoint& r);
Frame frame_from_gram(const GramPoint& r, double tol = kDefaultTol);
std::optional<OrbitWitness> same_orbit(const Frame& f, const Frame& g, double tol = kDefaultTol);
GramPoint torus_point(std::span<const cplx> zeta, double tol = kDefaultTol);
OneRedundantEnumeration enumerate_one_redundant(int n);

// A_sigma* R A_sigma with A_sigma the matrix of act_permutation.
GramPoint permute_gram(const GramPoint& r, std::span<const int> perm);
// diag(conj zeta) R diag(zeta).
GramPoint phase_gram(const GramPoint& r, std::span<const cplx> zeta);

inline constexpr double kHolonomyStep = 0.2;

// Sign of det U where the loop, lifted to frames by Procrustes continuation,
// returns as F_N = U F_0. Real field only.
int holonomy_sign(std::span<const GramPoint> loop, double tol = kDefaultTol,
                  double max_step = kHolonomyStep);

// Inserts a reprojected midpoint between every consecutive pair.
std::vector<GramPoint> refine_loop(std::span<const GramPoint> loop, double tol = kDefaultTol);

}  // namespace framelab
