#include "framelab/frames.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace framelab {

Frame::Frame(Field field, CMatrix entries) : field_(field), entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.cols() < 1)
    throw InvalidInput("frame must have at least one row and one column");
  if (!all_finite(entries_)) throw InvalidInput("frame has non-finite entries");
  if (field_ == Field::Real && !is_real_matrix(entries_))
    throw InvalidInput("real frame has nonzero imaginary parts");
}

Frame Frame::real(const RMatrix& entries) {
  return Frame(Field::Real, entries.cast<cplx>());
}

Frame Frame::complex(const CMatrix& entries) { return Frame(Field::Complex, entries); }

EllipsoidSpec::EllipsoidSpec(std::vector<double> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) throw InvalidInput("ellipsoid needs at least one axis");
  for (size_t i = 0; i < axes_.size(); ++i) {
    if (!(axes_[i] > 0.0) || !std::isfinite(axes_[i]))
      throw InvalidInput("ellipsoid axes must be finite and positive");
    if (i > 0 && axes_[i] > axes_[i - 1])
      throw InvalidInput("ellipsoid axes must be sorted in descending order");
  }
}

EllipsoidSpec EllipsoidSpec::sphere(int n) {
  if (n < 1) throw InvalidInput("sphere dimension must be positive");
  return EllipsoidSpec(std::vector<double>(static_cast<size_t>(n), 1.0));
}

double EllipsoidSpec::axis_sum() const {
  return std::accumulate(axes_.begin(), axes_.end(), 0.0);
}

FrameBounds frame_bounds(const Frame& f) {
  if (max_abs(f.entries()) == 0.0) throw InvalidInput("frame_bounds: zero frame");
  CMatrix s = f.entries() * f.entries().adjoint();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(s, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {std::max(0.0, ev(0)), ev(ev.size() - 1)};
}

TightnessReport is_tight(const Frame& f, double tol) {
  if (!(tol > 0.0)) throw InvalidInput("tolerance must be positive");
  TightnessReport r;
  r.bounds = frame_bounds(f);
  CMatrix s = f.entries() * f.entries().adjoint();
  r.bound = s.trace().real() / f.n();
  r.tight = r.bounds.upper - r.bounds.lower <= tol * r.bounds.upper;
  return r;
}

bool is_on_ellipsoid(const Frame& f, const EllipsoidSpec& a, double tol) {
  if (a.n() != f.n())
    throw InvalidInput("ellipsoid has " + std::to_string(a.n()) + " axes, frame has n=" +
                       std::to_string(f.n()));
  for (int j = 0; j < f.k(); ++j) {
    double q = 0.0;
    for (int i = 0; i < f.n(); ++i) q += a.axes()[static_cast<size_t>(i)] * std::norm(f(i, j));
    if (std::abs(q - 1.0) > tol) return false;
  }
  return true;
}

bool has_unit_columns(const Frame& f, double tol) {
  return is_on_ellipsoid(f, EllipsoidSpec::sphere(f.n()), tol);
}

double expected_tight_bound(const EllipsoidSpec& a, int k) {
  if (k <= a.n()) throw InvalidInput("expected_tight_bound requires k > n");
  return k / a.axis_sum();
}

Frame simplex_frame(int n) {
  if (n < 1) throw InvalidInput("simplex_frame requires n >= 1");
  RMatrix f = RMatrix::Zero(n, n + 1);
  // Column p (1-based): zeros above row p-1, -(p-1)/sqrt((p-1)p) at row p-1,
  // then 1/sqrt(j(j+1)) for rows j >= p.
  for (int p = 1; p <= n + 1; ++p) {
    for (int j = 1; j <= n; ++j) {
      double v = 0.0;
      if (j == p - 1)
        v = -static_cast<double>(p - 1) / std::sqrt(static_cast<double>(p - 1) * p);
      else if (j >= p)
        v = 1.0 / std::sqrt(static_cast<double>(j) * (j + 1));
      f(j - 1, p - 1) = v;
    }
  }
  f *= std::sqrt(static_cast<double>(n + 1) / n);
  return Frame::real(f);
}

Frame act_orthogonal(const Frame& f, const CMatrix& u, double tol) {
  if (u.rows() != f.n() || u.cols() != f.n())
    throw InvalidInput("act_orthogonal: transform must be n x n");
  if (!all_finite(u)) throw InvalidInput("act_orthogonal: non-finite transform");
  if (f.field() == Field::Real && !is_real_matrix(u))
    throw InvalidInput("act_orthogonal: complex transform applied to a real frame");
  CMatrix defect = u.adjoint() * u - CMatrix::Identity(f.n(), f.n());
  if (max_abs(defect) > tol)
    throw InvalidInput("act_orthogonal: transform is not orthogonal/unitary");
  return Frame(f.field(), u * f.entries());
}

bool is_permutation(std::span<const int> perm) {
  std::vector<char> seen(perm.size(), 0);
  for (int p : perm) {
    if (p < 0 || static_cast<size_t>(p) >= perm.size() || seen[static_cast<size_t>(p)])
      return false;
    seen[static_cast<size_t>(p)] = 1;
  }
  return true;
}

RMatrix permutation_matrix(std::span<const int> perm) {
  if (!is_permutation(perm)) throw InvalidInput("not a permutation");
  auto k = static_cast<Eigen::Index>(perm.size());
  RMatrix a = RMatrix::Zero(k, k);
  for (Eigen::Index j = 0; j < k; ++j) a(perm[static_cast<size_t>(j)], j) = 1.0;
  return a;
}

Frame act_permutation(const Frame& f, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != f.k())
    throw InvalidInput("act_permutation: permutation length differs from k");
  if (!is_permutation(perm)) throw InvalidInput("act_permutation: not a bijection");
  CMatrix out(f.n(), f.k());
  for (int j = 0; j < f.k(); ++j) out.col(j) = f.entries().col(perm[static_cast<size_t>(j)]);
  return Frame(f.field(), std::move(out));
}

Frame act_phases(const Frame& f, std::span<const cplx> zeta, double tol) {
  if (static_cast<int>(zeta.size()) != f.k())
    throw InvalidInput("act_phases: need one phase per column");
  CMatrix out = f.entries();
  for (int j = 0; j < f.k(); ++j) {
    cplx z = zeta[static_cast<size_t>(j)];
    if (std::abs(std::abs(z) - 1.0) > tol) throw InvalidInput("act_phases: phase not unimodular");
    if (f.field() == Field::Real) {
      if (z.imag() != 0.0) throw InvalidInput("act_phases: real frames accept only +1/-1");
      z = z.real() > 0 ? 1.0 : -1.0;
    }
    out.col(j) *= z;
  }
  return Frame(f.field(), std::move(out));
}

}  // namespace framelab
