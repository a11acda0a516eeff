#include "framelab/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "framelab/random.hpp"

namespace framelab {

namespace {

// Eigenvalues (ascending) and eigenvectors of a self-adjoint matrix, using the
// real solver when the field is real so real inputs give real eigenvectors.
struct Eig {
  RVector values;
  CMatrix vectors;
};

Eig hermitian_eig(const CMatrix& m, Field field) {
  CMatrix h = 0.5 * (m + m.adjoint());
  if (field == Field::Real) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(h.real());
    return {es.eigenvalues(), es.eigenvectors().cast<cplx>()};
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  return {es.eigenvalues(), es.eigenvectors()};
}

CMatrix procrustes(const CMatrix& target, const CMatrix& g, double* sigma_min) {
  Eigen::JacobiSVD<CMatrix> svd(target * g.adjoint(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (sigma_min) *sigma_min = svd.singularValues().minCoeff();
  return svd.matrixU() * svd.matrixV().adjoint();
}

CMatrix hermitize(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

GramPoint::GramPoint(Field field, CMatrix entries, int n)
    : field_(field), entries_(std::move(entries)), n_(n) {
  if (entries_.rows() != entries_.cols()) throw InvalidInput("gram matrix must be square");
  if (!(n_ >= 1 && n_ < entries_.rows()))
    throw InvalidInput("gram point needs k > n >= 1");
  if (field_ == Field::Real && !is_real_matrix(entries_))
    throw InvalidInput("real gram point has nonzero imaginary parts");
}

GramPoint GramPoint::make(Field field, CMatrix entries, int n, double tol) {
  if (field == Field::Real && !is_real_matrix(entries))
    throw InvalidInput("real gram point has nonzero imaginary parts");
  GramCheck c = is_gram_point(entries, n, tol);
  if (!c.passed()) throw InvalidInput("invalid gram point: " + c.diagnostic());
  return GramPoint(field, std::move(entries), n);
}

GramPoint GramPoint::unchecked(Field field, CMatrix entries, int n) {
  return GramPoint(field, std::move(entries), n);
}

CMatrix GramPoint::projection() const {
  return (static_cast<double>(n_) / k()) * entries_;
}

std::string GramCheck::diagnostic() const {
  if (passed()) return "ok";
  std::ostringstream os;
  const char* sep = "";
  auto add = [&](const std::string& s) {
    os << sep << s;
    sep = "; ";
  };
  if (!square) {
    add("matrix is not square, not finite, or n is out of range");
    return os.str();
  }
  if (!self_adjoint) add("not self-adjoint (residual " + std::to_string(self_adjoint_residual) + ")");
  if (!idempotent) add("(n/k)M is not idempotent (residual " + std::to_string(idempotent_residual) + ")");
  if (!unit_diagonal) add("diagonal is not all ones (residual " + std::to_string(diagonal_residual) + ")");
  if (!rank) add("rank is not n (spectral gap " + std::to_string(spectral_gap) + ")");
  return os.str();
}

GramCheck is_gram_point(const CMatrix& m, int n, double tol) {
  GramCheck c;
  const auto k = m.rows();
  c.square = m.rows() == m.cols() && n >= 1 && n < k && all_finite(m);
  if (!c.square) return c;
  c.self_adjoint_residual = max_abs(m - m.adjoint());
  c.self_adjoint = c.self_adjoint_residual <= tol;
  CMatrix p = (static_cast<double>(n) / k) * m;
  c.idempotent_residual = max_abs(p * p - p);
  c.idempotent = c.idempotent_residual <= tol;
  c.diagonal_residual = (m.diagonal().array() - cplx(1.0)).abs().maxCoeff();
  c.unit_diagonal = c.diagonal_residual <= tol;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(p), Eigen::EigenvaluesOnly);
  const RVector& ev = es.eigenvalues();  // ascending
  c.spectral_gap = ev(k - n) - ev(k - n - 1);
  c.rank = c.spectral_gap >= 0.5;
  return c;
}

GramPoint gram(const Frame& f, double tol) {
  if (f.k() <= f.n()) throw InvalidInput("gram: spherical tight frames need k > n");
  TightnessReport t = is_tight(f, tol);
  if (!t.tight) {
    std::ostringstream os;
    os << "gram: frame is not tight (bounds " << t.bounds.lower << ", " << t.bounds.upper << ")";
    throw InvalidInput(os.str());
  }
  if (!has_unit_columns(f, tol)) throw InvalidInput("gram: frame columns are not unit vectors");
  CMatrix r = hermitize(f.entries().adjoint() * f.entries());
  if (f.field() == Field::Real) r = r.real().cast<cplx>();
  return GramPoint::unchecked(f.field(), std::move(r), f.n());
}

GramPoint complement(const GramPoint& r) {
  const int k = r.k(), n = r.n();
  CMatrix c = (static_cast<double>(k) / (k - n)) *
              (CMatrix::Identity(k, k) - (static_cast<double>(n) / k) * r.entries());
  if (r.field() == Field::Real) c = c.real().cast<cplx>();
  return GramPoint::unchecked(r.field(), std::move(c), k - n);
}

Frame frame_from_gram(const GramPoint& r, double tol) {
  const int k = r.k(), n = r.n();
  Eig e = hermitian_eig(r.projection(), r.field());
  for (int i = 0; i < k; ++i) {
    double target = i < k - n ? 0.0 : 1.0;
    if (std::abs(e.values(i) - target) > tol)
      throw InvalidInput("frame_from_gram: eigenvalues of (n/k)R are not clustered at {0,1}");
  }
  CMatrix u = e.vectors.rightCols(n);  // eigenvalue ~1
  CMatrix f = std::sqrt(static_cast<double>(k) / n) * u.adjoint();
  if (r.field() == Field::Real) f = f.real().cast<cplx>();
  return Frame(r.field(), std::move(f));
}

std::optional<OrbitWitness> same_orbit(const Frame& f, const Frame& g, double tol) {
  if (f.n() != g.n() || f.k() != g.k() || f.field() != g.field())
    throw InvalidInput("same_orbit: frames differ in shape or field");
  if (f.k() <= f.n()) throw InvalidInput("same_orbit: spherical tight frames need k > n");
  for (const Frame* x : {&f, &g})
    if (!is_tight(*x, tol).tight || !has_unit_columns(*x, tol))
      throw InvalidInput("same_orbit: inputs must be spherical tight frames");
  CMatrix rf = f.entries().adjoint() * f.entries();
  CMatrix rg = g.entries().adjoint() * g.entries();
  if (max_abs(rf - rg) > tol) return std::nullopt;
  OrbitWitness w;
  w.u = (static_cast<double>(f.n()) / f.k()) * g.entries() * f.entries().adjoint();
  if (f.field() == Field::Real) w.u = w.u.real().cast<cplx>();
  w.residual = max_abs(g.entries() - w.u * f.entries());
  return w;
}

GramPoint torus_point(std::span<const cplx> zeta, double tol) {
  if (zeta.empty()) throw InvalidInput("torus_point: need at least one phase");
  const int k = static_cast<int>(zeta.size()) + 1;
  CVector x(k);
  x(0) = 1.0;
  for (int i = 1; i < k; ++i) {
    cplx z = zeta[static_cast<size_t>(i - 1)];
    if (std::abs(std::abs(z) - 1.0) > tol) throw InvalidInput("torus_point: phase not unimodular");
    x(i) = z;
  }
  CMatrix r = x * x.adjoint();
  return GramPoint::unchecked(Field::Complex, std::move(r), 1);
}

OneRedundantEnumeration enumerate_one_redundant(int n) {
  if (n < 1) throw InvalidInput("enumerate_one_redundant requires n >= 1");
  if (n > 24) throw InvalidInput("enumerate_one_redundant: n too large to enumerate");
  OneRedundantEnumeration out;
  const int k = n + 1;
  std::set<int> perm_classes;
  std::set<std::vector<int>> sign_classes;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    RVector x(k);
    x(0) = 1.0;
    for (int i = 0; i < n; ++i) x(i + 1) = (mask >> i) & 1u ? -1.0 : 1.0;
    RMatrix r = x * x.transpose();
    out.points.push_back(GramPoint::unchecked(Field::Real, r.cast<cplx>(), 1));

    // Permutations act on the sign pattern of x, which is only defined up to a
    // global sign: the invariant is the number of -1 entries modulo m ~ k - m.
    int m = 0;
    for (int i = 0; i < k; ++i) m += r(0, i) < 0;
    perm_classes.insert(std::min(m, k - m));

    // Signs act by R -> D R D; choosing D_ii = sign R_0i makes row 0 positive.
    std::vector<int> canon;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        double s = (r(0, i) < 0 ? -1.0 : 1.0) * (r(0, j) < 0 ? -1.0 : 1.0);
        canon.push_back(static_cast<int>(std::lround(s * r(i, j))));
      }
    sign_classes.insert(canon);
  }
  out.permutation_orbits = static_cast<int>(perm_classes.size());
  out.sign_orbits = static_cast<int>(sign_classes.size());
  return out;
}

GramPoint permute_gram(const GramPoint& r, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != r.k()) throw InvalidInput("permutation length differs from k");
  CMatrix a = permutation_matrix(perm).cast<cplx>();
  return GramPoint::unchecked(r.field(), a.adjoint() * r.entries() * a, r.n());
}

GramPoint phase_gram(const GramPoint& r, std::span<const cplx> zeta) {
  if (static_cast<int>(zeta.size()) != r.k()) throw InvalidInput("need one phase per index");
  CMatrix out = r.entries();
  for (int i = 0; i < r.k(); ++i)
    for (int j = 0; j < r.k(); ++j)
      out(i, j) = std::conj(zeta[static_cast<size_t>(i)]) * out(i, j) * zeta[static_cast<size_t>(j)];
  if (r.field() == Field::Real) {
    if (!is_real_matrix(out)) throw InvalidInput("real gram point accepts only +1/-1 phases");
  }
  return GramPoint::unchecked(r.field(), std::move(out), r.n());
}

int holonomy_sign(std::span<const GramPoint> loop, double tol, double max_step) {
  if (loop.size() < 2) throw InvalidInput("holonomy: loop needs at least two points");
  const GramPoint& r0 = loop.front();
  if (r0.field() != Field::Real) throw InvalidInput("holonomy: real field only");
  for (const auto& r : loop)
    if (r.k() != r0.k() || r.n() != r0.n() || r.field() != r0.field())
      throw InvalidInput("holonomy: loop points differ in (k, n, field)");
  if (max_abs(loop.back().entries() - r0.entries()) > tol)
    throw InvalidInput("holonomy: loop is not closed");

  const double c = static_cast<double>(r0.n()) / r0.k();
  const CMatrix f0 = frame_from_gram(r0, tol).entries();
  CMatrix f = f0;
  for (size_t i = 1; i < loop.size(); ++i) {
    double step = max_abs(loop[i].entries() - loop[i - 1].entries());
    if (step > max_step)
      throw NumericalRefusal("holonomy: step " + std::to_string(i) + " has size " +
                             std::to_string(step) + " above bound " + std::to_string(max_step));
    CMatrix g = frame_from_gram(loop[i], tol).entries();
    double smin = 0.0;
    CMatrix v = procrustes(f, g, &smin);
    // sqrt(n/k) F and sqrt(n/k) G have orthonormal rows, so c F G* is a
    // contraction; a small singular value means the frames are far apart.
    if (c * smin < 0.5)
      throw NumericalRefusal("holonomy: alignment at step " + std::to_string(i) +
                             " is ill-conditioned; refine the loop");
    f = (v * g).real().cast<cplx>();
  }
  RMatrix u = (c * f * f0.adjoint()).real();
  double det = u.determinant();
  if (std::abs(std::abs(det) - 1.0) > 1e-6)
    throw NumericalRefusal("holonomy: end-to-end transform is not orthogonal");
  return det > 0 ? 1 : -1;
}

std::vector<GramPoint> refine_loop(std::span<const GramPoint> loop, double tol) {
  std::vector<GramPoint> out;
  if (loop.empty()) return out;
  out.push_back(loop.front());
  for (size_t i = 1; i < loop.size(); ++i) {
    const GramPoint& a = loop[i - 1];
    const GramPoint& b = loop[i];
    CMatrix fa = frame_from_gram(a, tol).entries();
    CMatrix fb = frame_from_gram(b, tol).entries();
    fb = procrustes(fa, fb, nullptr) * fb;
    Frame mid = project_to_spherical_tight(Frame(a.field(), a.field() == Field::Real
                                                               ? CMatrix(0.5 * (fa + fb).real().cast<cplx>())
                                                               : CMatrix(0.5 * (fa + fb))));
    out.push_back(gram(mid, std::max(tol, 1e-9)));
    out.push_back(b);
  }
  return out;
}

}  // namespace framelab
