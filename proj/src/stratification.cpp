#include "framelab/stratification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace framelab {

Partition::Partition(int k, std::vector<std::vector<int>> blocks) : k_(k), blocks_(std::move(blocks)) {
  if (k_ < 1) throw InvalidInput("partition of an empty set");
  std::vector<char> seen(static_cast<size_t>(k_), 0);
  for (auto& b : blocks_) {
    if (b.empty()) throw InvalidInput("partition has an empty block");
    std::sort(b.begin(), b.end());
    for (int i : b) {
      if (i < 0 || i >= k_) throw InvalidInput("partition index out of range");
      if (seen[static_cast<size_t>(i)]) throw InvalidInput("partition blocks overlap");
      seen[static_cast<size_t>(i)] = 1;
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw InvalidInput("partition does not cover every index");
  std::sort(blocks_.begin(), blocks_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

Partition Partition::trivial(int k) {
  std::vector<int> all(static_cast<size_t>(k));
  std::iota(all.begin(), all.end(), 0);
  return Partition(k, {all});
}

Partition commutant_partition(const CMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() < 1) throw InvalidInput("commutant_partition: matrix must be square");
  const int k = static_cast<int>(m.rows());
  const double thresh = tol * max_abs(m);
  std::vector<int> parent(static_cast<size_t>(k));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) x = parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
    return x;
  };
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (std::abs(m(i, j)) > thresh || std::abs(m(j, i)) > thresh)
        parent[static_cast<size_t>(find(i))] = find(j);
  std::vector<std::vector<int>> blocks;
  std::vector<int> slot(static_cast<size_t>(k), -1);
  for (int i = 0; i < k; ++i) {
    int r = find(i);
    if (slot[static_cast<size_t>(r)] < 0) {
      slot[static_cast<size_t>(r)] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<size_t>(slot[static_cast<size_t>(r)])].push_back(i);
  }
  return Partition(k, std::move(blocks));
}

Orthodecomposition is_orthodecomposable(const Frame& f, double tol) {
  GramPoint r = gram(f, tol);
  Partition p = commutant_partition(r.entries(), tol);
  bool dec = p.size() > 1;
  return {dec, std::move(p)};
}

bool check_block_cardinalities(const Partition& p, int k, int n) {
  if (p.k() != k) throw InvalidInput("partition size differs from k");
  if (!(k > n && n >= 1)) throw InvalidInput("need k > n >= 1");
  const int kp = k / std::gcd(k, n);
  return std::all_of(p.blocks().begin(), p.blocks().end(),
                     [&](const auto& b) { return static_cast<int>(b.size()) % kp == 0; });
}

ExpectedDimensions expected_dimensions(int k, int n, Field field) {
  if (!(k > n && n >= 1)) throw InvalidInput("expected_dimensions: need k > n >= 1");
  ExpectedDimensions d;
  if (field == Field::Real) {
    d.dim_g = (k - n - 1) * (n - 1);
    d.dim_f = (2 * k - n - 2) * (n - 1) / 2;
  } else {
    d.dim_g = 2 * n * (k - n) - k + 1;
    d.dim_f = 2 * n * (k - n) + n * n - k + 1;
  }
  d.dim_n = d.dim_g;
  d.dim_m = d.dim_f;
  return d;
}

TangentReport tangent_report(const GramPoint& r, double tol) {
  GramCheck c = is_gram_point(r.entries(), r.n(), tol);
  if (!c.passed()) throw InvalidInput("tangent_report: " + c.diagnostic());
  const int k = r.k(), n = r.n();
  const CMatrix p = r.projection();
  CMatrix u;
  if (r.field() == Field::Real) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (p + p.adjoint()).real());
    u = es.eigenvectors().cast<cplx>();
  } else {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (p + p.adjoint()));
    u = es.eigenvectors();
  }
  // Ascending eigenvalues: the last n columns span range(P), the rest ker(P).
  const int cols_per_pair = r.field() == Field::Real ? 1 : 2;
  RMatrix span(k, n * (k - n) * cols_per_pair);
  int col = 0;
  for (int iota = k - n; iota < k; ++iota)
    for (int j = 0; j < k - n; ++j) {
      CVector v = u.col(iota).cwiseProduct(u.col(j).conjugate());
      span.col(col++) = v.real();
      if (cols_per_pair == 2) span.col(col++) = v.imag();
    }
  Eigen::JacobiSVD<RMatrix> svd(span);
  const RVector& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  TangentReport t;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > smax * kTangentRankTol) ++t.rank;
  t.regular = t.rank == k - 1;
  t.ambient_dim = (r.field() == Field::Real ? 1 : 2) * n * (k - n);

  Partition sigma = commutant_partition(r.entries(), tol);
  for (const auto& b : sigma.blocks()) {
    const int kb = static_cast<int>(b.size());
    if ((kb * n) % k != 0)
      throw InvalidInput("tangent_report: block size incompatible with (k, n)");
    const int nb = kb * n / k;
    t.stratum_dim += expected_dimensions(kb, nb, r.field()).dim_g;
  }
  return t;
}

Frame harmonic_frame(int k, int n, Field field) {
  if (!(k > n && n >= 1)) throw InvalidInput("harmonic_frame: need k > n >= 1");
  const double two_pi = 2 * std::numbers::pi;
  CMatrix f(n, k);
  if (field == Field::Complex) {
    for (int r = 0; r < n; ++r)
      for (int t = 0; t < k; ++t)
        f(r, t) = std::polar(1.0 / std::sqrt(static_cast<double>(n)), two_pi * r * t / k);
    return Frame(Field::Complex, f);
  }
  RMatrix g(n, k);
  int row = 0;
  const double pair_scale = std::sqrt(2.0 / n);
  if (n % 2 == 1) g.row(row++).setConstant(1.0 / std::sqrt(static_cast<double>(n)));
  for (int j = 1; j <= n / 2; ++j) {
    for (int t = 0; t < k; ++t) {
      g(row, t) = pair_scale * std::cos(two_pi * j * t / k);
      g(row + 1, t) = pair_scale * std::sin(two_pi * j * t / k);
    }
    row += 2;
  }
  return Frame::real(g);
}

RMatrix dct2_matrix(int d) {
  RMatrix u(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double alpha = j == 0 ? std::sqrt(1.0 / d) : std::sqrt(2.0 / d);
      u(i, j) = alpha * std::cos(std::numbers::pi * (2 * i + 1) * j / (2.0 * d));
    }
  return u;
}

GramPoint construct_regular_point(int k, int n) {
  if (!(k > n && n >= 1)) throw InvalidInput("construct_regular_point: need k > n >= 1");
  const int d = std::gcd(k, n);
  if (d == 1) return gram(harmonic_frame(k, n, Field::Real), 1e-10);

  const int kp = k / d, np = n / d;
  const RMatrix seed = gram(harmonic_frame(kp, np, Field::Real), 1e-10).entries().real();
  RMatrix r = RMatrix::Zero(k, k);
  for (int b = 0; b < d; ++b) r.block(b * kp, b * kp, kp, kp) = seed;

  // W sends basis vector j to 1 + (j-1)k' (1-based) and fixes the order of the
  // rest, so diag(U, I) conjugated by W mixes the first index of every block.
  std::vector<int> image(static_cast<size_t>(k));
  {
    std::vector<char> used(static_cast<size_t>(k), 0);
    for (int j = 0; j < d; ++j) {
      image[static_cast<size_t>(j)] = j * kp;
      used[static_cast<size_t>(j * kp)] = 1;
    }
    int next = 0;
    for (int j = d; j < k; ++j) {
      while (used[static_cast<size_t>(next)]) ++next;
      image[static_cast<size_t>(j)] = next;
      used[static_cast<size_t>(next)] = 1;
    }
  }
  RMatrix w = RMatrix::Zero(k, k);
  for (int j = 0; j < k; ++j) w(image[static_cast<size_t>(j)], j) = 1.0;
  RMatrix block = RMatrix::Identity(k, k);
  block.topLeftCorner(d, d) = dct2_matrix(d);
  RMatrix v = w * block * w.transpose();
  RMatrix s = v.transpose() * r * v;
  s = 0.5 * (s + s.transpose());

  GramPoint out = GramPoint::make(Field::Real, s.cast<cplx>(), n, 1e-9);
  if (!commutant_partition(out.entries()).is_trivial())
    throw NumericalRefusal("construct_regular_point: result is not in the open stratum");
  return out;
}

}  // namespace framelab
