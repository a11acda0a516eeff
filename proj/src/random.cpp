#include "framelab/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "framelab/stratification.hpp"

namespace framelab {

namespace {

CMatrix gaussian(int rows, int cols, Field field, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i)
      m(i, j) = field == Field::Real ? cplx(g(rng), 0.0) : cplx(g(rng), g(rng)) / std::sqrt(2.0);
  return m;
}

CMatrix inverse_sqrt_psd(const CMatrix& s, Field field) {
  if (field == Field::Real) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(s.real());
    RVector d = es.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
    RMatrix r = es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
    return r.cast<cplx>();
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(s);
  RVector d = es.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  return es.eigenvectors() * d.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

CMatrix random_unitary(int n, Field field, Rng& rng) {
  CMatrix z = gaussian(n, n, field, rng);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity of QR so the distribution is Haar.
  for (int j = 0; j < n; ++j) {
    cplx d = r(j, j);
    double a = std::abs(d);
    cplx ph = a > 0 ? d / a : cplx(1.0);
    if (field == Field::Real) ph = ph.real() >= 0 ? 1.0 : -1.0;
    q.col(j) *= ph;
  }
  if (field == Field::Real) q = q.real().cast<cplx>();
  return q;
}

std::vector<int> random_permutation(int k, Rng& rng) {
  std::vector<int> p(static_cast<size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

std::vector<cplx> random_phases(int k, Field field, Rng& rng) {
  std::vector<cplx> z(static_cast<size_t>(k));
  if (field == Field::Real) {
    std::bernoulli_distribution coin(0.5);
    for (auto& v : z) v = coin(rng) ? 1.0 : -1.0;
  } else {
    std::uniform_real_distribution<double> u(0.0, 2 * std::numbers::pi);
    for (auto& v : z) v = std::polar(1.0, u(rng));
  }
  return z;
}

Frame project_to_spherical_tight(const Frame& seed, double tol, int max_iter) {
  const int n = seed.n(), k = seed.k();
  if (k <= n) throw InvalidInput("spherical tight frames need k > n");
  const double scale = std::sqrt(static_cast<double>(k) / n);
  CMatrix f = seed.entries();
  for (int it = 0; it < max_iter; ++it) {
    for (int j = 0; j < k; ++j) {
      double nrm = f.col(j).norm();
      if (nrm < 1e-12) throw NumericalRefusal("alternating projection hit a zero column");
      f.col(j) /= nrm;
    }
    CMatrix s = f * f.adjoint();
    double defect = max_abs(s - (static_cast<double>(k) / n) * CMatrix::Identity(n, n));
    if (defect <= tol) {
      if (seed.field() == Field::Real) f = f.real().cast<cplx>();
      return Frame(seed.field(), f);
    }
    f = scale * inverse_sqrt_psd(s, seed.field()) * f;
  }
  throw NumericalRefusal("alternating projection did not converge");
}

Frame random_harmonic_orbit_frame(int k, int n, Field field, Rng& rng) {
  Frame f = harmonic_frame(k, n, field);
  f = act_orthogonal(f, random_unitary(n, field, rng), 1e-10);
  auto perm = random_permutation(k, rng);
  f = act_permutation(f, perm);
  auto ph = random_phases(k, field, rng);
  return act_phases(f, ph, 1e-10);
}

Frame random_spherical_tight_frame(int k, int n, Field field, Rng& rng, double spread) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    Frame base = random_harmonic_orbit_frame(k, n, field, rng);
    CMatrix seed = base.entries() + spread * gaussian(n, k, field, rng);
    try {
      return project_to_spherical_tight(Frame(field, seed));
    } catch (const NumericalRefusal&) {
    }
  }
  throw NumericalRefusal("could not generate a random spherical tight frame");
}

std::vector<cplx> random_planar_frame(int k, Rng& rng) {
  if (k < 3) throw InvalidInput("planar frames need k >= 3");
  std::uniform_real_distribution<double> u(0.0, 2 * std::numbers::pi);
  std::bernoulli_distribution coin(0.5);
  for (;;) {
    std::vector<cplx> z(static_cast<size_t>(k));
    cplx partial = 0.0;
    for (int j = 0; j < k - 2; ++j) {
      z[static_cast<size_t>(j)] = std::polar(1.0, u(rng));
      partial += z[static_cast<size_t>(j)] * z[static_cast<size_t>(j)];
    }
    // Two unit squares w1 + w2 = -partial exist iff |partial| <= 2.
    double rho = std::abs(partial);
    if (rho > 2.0 - 1e-6 || rho < 1e-9) continue;
    double phi = std::arg(-partial);
    double h = std::sqrt(1.0 - rho * rho / 4.0);
    double sigma = coin(rng) ? 1.0 : -1.0;
    cplx dir = std::polar(1.0, phi);
    cplx w1 = dir * cplx(rho / 2, sigma * h);
    cplx w2 = dir * cplx(rho / 2, -sigma * h);
    z[static_cast<size_t>(k - 2)] = std::sqrt(w1) * (coin(rng) ? 1.0 : -1.0);
    z[static_cast<size_t>(k - 1)] = std::sqrt(w2) * (coin(rng) ? 1.0 : -1.0);
    for (auto& v : z) v /= std::abs(v);
    return z;
  }
}

}  // namespace framelab
