#include "framelab/planar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "planar_internal.hpp"

namespace framelab {

using detail::max_dist;
using detail::PathBuilder;
using detail::Point;

namespace detail {

double max_dist(const Point& a, const Point& b) {
  double d = 0.0;
  for (size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a[j] - b[j]));
  return d;
}

PathBuilder::PathBuilder(Point start, double max_step) : max_step_(max_step) {
  if (!(max_step > 0.0 && max_step < 1.0)) throw InvalidInput("max_step must lie in (0, 1)");
  points_.push_back(std::move(start));
}

void PathBuilder::segment(const Segment& f) {
  const Point start = points_.back();
  std::vector<Point> pts;
  for (int n = 4; n <= (1 << 18); n *= 2) {
    pts.assign(static_cast<size_t>(n), start);
    bool fine = true;
    const Point* prev = &start;
    for (int i = 1; i <= n; ++i) {
      f(static_cast<double>(i) / n, pts[static_cast<size_t>(i - 1)]);
      if (max_dist(*prev, pts[static_cast<size_t>(i - 1)]) > max_step_) {
        fine = false;
        break;
      }
      prev = &pts[static_cast<size_t>(i - 1)];
    }
    if (fine) {
      for (auto& p : pts) points_.push_back(std::move(p));
      return;
    }
  }
  throw NumericalRefusal("path segment could not be resolved to the requested step");
}

cplx lattice_value(int m) {
  m = ((m % 12) + 12) % 12;
  // Exact values on the axes; polar elsewhere.
  switch (m) {
    case 0: return {1.0, 0.0};
    case 3: return {0.0, 1.0};
    case 6: return {-1.0, 0.0};
    case 9: return {0.0, -1.0};
    default: return std::polar(1.0, std::numbers::pi * m / 6.0);
  }
}

Point lattice_point(const std::vector<int>& m) {
  Point p(m.size());
  for (size_t j = 0; j < m.size(); ++j) p[j] = lattice_value(m[j]);
  return p;
}

void PathBuilder::apply(const RotationMove& mv, std::vector<int>& lattice) {
  const std::vector<int> base = lattice;
  segment([&](double s, Point& out) {
    for (int j : mv.coords)
      out[static_cast<size_t>(j)] =
          std::polar(1.0, std::numbers::pi * (base[static_cast<size_t>(j)] + mv.units * s) / 6.0);
  });
  for (int j : mv.coords) lattice[static_cast<size_t>(j)] += mv.units;
  // Land exactly on the lattice point.
  for (int j : mv.coords)
    points_.back()[static_cast<size_t>(j)] = lattice_value(lattice[static_cast<size_t>(j)]);
}

FramePath PathBuilder::finish(PathKind kind) && {
  if (points_.size() == 1) points_.push_back(points_.front());
  FramePath p;
  p.kind = kind;
  p.max_step = max_step_;
  const double last = static_cast<double>(points_.size() - 1);
  p.samples.reserve(points_.size());
  for (size_t i = 0; i < points_.size(); ++i)
    p.samples.push_back({static_cast<double>(i) / last, std::move(points_[i])});
  p.samples.back().t = 1.0;
  return p;
}

}  // namespace detail

namespace {

cplx sum_squares(const Point& z) {
  cplx s = 0.0;
  for (auto v : z) s += v * v;
  return s;
}

cplx sum(const Point& w) {
  cplx s = 0.0;
  for (auto v : w) s += v;
  return s;
}

void check_unit(const Point& z, double tol, const char* what) {
  for (size_t j = 0; j < z.size(); ++j)
    if (!std::isfinite(z[j].real()) || !std::isfinite(z[j].imag()) ||
        std::abs(std::abs(z[j]) - 1.0) > tol)
      throw InvalidInput(std::string(what) + ": entry " + std::to_string(j + 1) +
                         " is not unit modulus");
}

const cplx kOmega = std::polar(1.0, 2 * std::numbers::pi / 3);

// Two unit vectors with prescribed sum r (|r| <= 2): direction r/|r| rotated
// by the elbow angle on the side sigma. dir0 is used once r vanishes.
void elbow(cplx r, double sigma, cplx& a, cplx& b, cplx dir0 = 1.0) {
  double rho = std::abs(r);
  cplx dir = rho > 0 ? r / rho : dir0;
  double h = std::sqrt(std::max(0.0, 1.0 - rho * rho / 4.0));
  rho = std::min(rho, 2.0);
  a = dir * cplx(rho / 2, sigma * h);
  b = dir * cplx(rho / 2, -sigma * h);
}

double elbow_side(cplx a, cplx r) {
  double rho = std::abs(r);
  if (rho == 0.0) return 1.0;
  return (a * std::conj(r / rho)).imag() >= 0 ? 1.0 : -1.0;
}

void rotate_pairs_to_standard(PathBuilder& pb, const std::vector<int>& firsts) {
  const Point start = pb.current();
  std::vector<double> theta;
  for (int a : firsts) theta.push_back(std::arg(start[static_cast<size_t>(a)]));
  pb.segment([&](double s, Point& out) {
    for (size_t i = 0; i < firsts.size(); ++i) {
      auto a = static_cast<size_t>(firsts[i]);
      out[a] = std::polar(1.0, theta[i] * (1 - s));
      out[a + 1] = -out[a];
    }
  });
}

struct TriplePlan {
  int pivot = 0;
  double beta = 0.0;
  double margin = -1.0;
};

// The triple (0,1,2) must absorb T(s) = (1-s) T0. Pivot p moves as
// w_p e^{i beta sin(pi s)}; the other two follow the elbow on R = T - w_p,
// which needs 0 < |R| <= 2 throughout.
TriplePlan plan_triple(const Point& w, cplx t0) {
  TriplePlan best;
  const double betas[] = {0.0,
                          std::numbers::pi / 4,
                          -std::numbers::pi / 4,
                          std::numbers::pi / 2,
                          -std::numbers::pi / 2,
                          3 * std::numbers::pi / 4,
                          -3 * std::numbers::pi / 4};
  for (double beta : betas) {
    for (int p = 0; p < 3; ++p) {
      double lo = 1e300, hi = 0.0;
      for (int i = 0; i <= 1024; ++i) {
        double s = i / 1024.0;
        cplx r = (1 - s) * t0 - w[static_cast<size_t>(p)] * std::polar(1.0, beta * std::sin(std::numbers::pi * s));
        lo = std::min(lo, std::abs(r));
        if (i > 0) hi = std::max(hi, std::abs(r));
      }
      double margin = hi <= 2.0 - 1e-9 || beta == 0.0 ? lo : -1.0;
      if (margin > best.margin) best = {p, beta, margin};
    }
    // |R| is convex in s for beta = 0, so a clear margin there is final.
    if (best.margin > 0.05) break;
  }
  if (best.margin < 1e-6) throw NumericalRefusal("chain_straighten: no admissible triple pivot");
  return best;
}

// Collapses pairs to antipodal configurations and rotates them to (1,-1);
// for odd k the triple ends as a rotated Mercedes triple with w_3 = 1.
void straighten_core(PathBuilder& pb, int k) {
  const Point w0 = pb.current();
  const bool odd = k % 2 == 1;
  std::vector<int> firsts;
  for (int a = odd ? 3 : 0; a + 1 < k; a += 2) firsts.push_back(a);

  struct PairPlan {
    int a;
    cplx sum0;
    double sigma;
    bool frozen;
  };
  std::vector<PairPlan> pairs;
  cplx pair_total = 0.0;
  for (int a : firsts) {
    cplx s0 = w0[static_cast<size_t>(a)] + w0[static_cast<size_t>(a + 1)];
    pairs.push_back({a, s0, elbow_side(w0[static_cast<size_t>(a)], s0), std::abs(s0) < 1e-13});
    pair_total += s0;
  }

  TriplePlan tp;
  int q = 1, r = 2;
  double tri_sigma = 1.0;
  cplx t0 = -pair_total;
  if (odd) {
    tp = plan_triple(w0, t0);
    q = (tp.pivot + 1) % 3;
    r = (tp.pivot + 2) % 3;
    cplx r0 = t0 - w0[static_cast<size_t>(tp.pivot)];
    tri_sigma = elbow_side(w0[static_cast<size_t>(q)], r0);
  }

  pb.segment([&](double s, Point& out) {
    for (const auto& pp : pairs) {
      if (pp.frozen) continue;
      elbow((1 - s) * pp.sum0, pp.sigma, out[static_cast<size_t>(pp.a)], out[static_cast<size_t>(pp.a + 1)],
            pp.sum0 / std::abs(pp.sum0));
    }
    if (odd) {
      cplx wp = w0[static_cast<size_t>(tp.pivot)] * std::polar(1.0, tp.beta * std::sin(std::numbers::pi * s));
      out[static_cast<size_t>(tp.pivot)] = wp;
      elbow((1 - s) * t0 - wp, tri_sigma, out[static_cast<size_t>(q)], out[static_cast<size_t>(r)]);
    }
  });

  if (!odd) {
    rotate_pairs_to_standard(pb, firsts);
    return;
  }
  // Pairs to (1,-1) and the triple rigidly until w_3 = 1, in one segment.
  const Point mid = pb.current();
  std::vector<double> theta;
  for (int a : firsts) theta.push_back(std::arg(mid[static_cast<size_t>(a)]));
  const double phi = std::arg(mid[2]);
  pb.segment([&](double s, Point& out) {
    for (size_t i = 0; i < firsts.size(); ++i) {
      auto a = static_cast<size_t>(firsts[i]);
      out[a] = std::polar(1.0, theta[i] * (1 - s));
      out[a + 1] = -out[a];
    }
    for (size_t j = 0; j < 3; ++j) out[j] = mid[j] * std::polar(1.0, -phi * s);
  });
}

bool reversed_triple(const Point& w) { return std::abs(w[0] - std::conj(kOmega)) < std::abs(w[0] - kOmega); }

// Exchanges (w-bar, w, 1) for (w, w-bar, 1) using the pair (4,5).
void flip_triple(PathBuilder& pb) {
  pb.segment([&](double s, Point& out) {
    out[3] = std::polar(1.0, std::numbers::pi / 2 * s);
    out[4] = -out[3];
  });
  auto open_close = [&](double sigma, bool opening) {
    pb.segment([&](double s, Point& out) {
      double rho = opening ? 1 + s : 2 - s;
      elbow(cplx(-rho, 0.0), sigma, out[0], out[1]);
      out[2] = 1.0;
      elbow(cplx(rho - 1, 0.0), 1.0, out[3], out[4]);
    });
  };
  open_close(1.0, true);
  open_close(-1.0, false);
  pb.segment([&](double s, Point& out) {
    out[3] = std::polar(1.0, std::numbers::pi / 2 * (1 - s));
    out[4] = -out[3];
  });
}

}  // namespace

double FramePath::observed_max_step() const {
  double m = 0.0;
  for (size_t i = 1; i < samples.size(); ++i)
    m = std::max(m, max_dist(samples[i - 1].point, samples[i].point));
  return m;
}

PlanarFrame PlanarFrame::make(std::vector<cplx> z, double tol) {
  if (z.empty()) throw InvalidInput("planar frame is empty");
  check_unit(z, tol, "planar frame");
  if (std::abs(sum_squares(z)) > tol) throw InvalidInput("planar frame: sum of squares is not zero");
  return PlanarFrame(std::move(z));
}

Chain Chain::make(std::vector<cplx> w, double tol) {
  if (w.empty()) throw InvalidInput("chain is empty");
  check_unit(w, tol, "chain");
  if (std::abs(sum(w)) > tol) throw InvalidInput("chain: edges do not sum to zero");
  return Chain(std::move(w));
}

PlanarFrame to_planar(const Frame& f, double tol) {
  if (f.n() != 2) throw InvalidInput("to_planar: frame must have n = 2");
  if (f.field() != Field::Real) throw InvalidInput("to_planar: frame must be real");
  std::vector<cplx> z(static_cast<size_t>(f.k()));
  for (int j = 0; j < f.k(); ++j) z[static_cast<size_t>(j)] = cplx(f(0, j).real(), f(1, j).real());
  return PlanarFrame::make(std::move(z), tol);
}

Frame from_planar(const PlanarFrame& z) {
  RMatrix m(2, z.k());
  for (int j = 0; j < z.k(); ++j) {
    m(0, j) = z.z()[static_cast<size_t>(j)].real();
    m(1, j) = z.z()[static_cast<size_t>(j)].imag();
  }
  return Frame::real(m);
}

Chain square_map(const PlanarFrame& z) {
  std::vector<cplx> w(z.z().size());
  for (size_t j = 0; j < w.size(); ++j) w[j] = z.z()[j] * z.z()[j];
  return Chain::make(std::move(w), 1e-6);
}

std::vector<cplx> standard_chain(int k) {
  return detail::lattice_point([&] {
    auto m = canonical_lattice(k);
    for (auto& v : m) v *= 2;
    return m;
  }());
}

std::vector<cplx> canonical_planar(int k) { return detail::lattice_point(canonical_lattice(k)); }

std::vector<int> canonical_lattice(int k) {
  if (k < 4) throw InvalidInput("standard forms are defined for k >= 4");
  std::vector<int> m(static_cast<size_t>(k));
  size_t start = 0;
  if (k % 2 == 1) {
    m[0] = 2;
    m[1] = -2;
    m[2] = 0;
    start = 3;
  }
  for (size_t j = start; j < m.size(); ++j) m[j] = (j - start) % 2 == 0 ? 0 : 3;
  return m;
}

FramePath lift_path(const FramePath& cp, const PlanarFrame& start, double tol) {
  if (cp.kind != PathKind::Chain) throw InvalidInput("lift_path: input must be a chain path");
  if (cp.samples.empty()) throw InvalidInput("lift_path: empty path");
  if (cp.k() != start.k()) throw InvalidInput("lift_path: start and path differ in k");
  Point z = start.z();
  Point sq(z.size());
  for (size_t j = 0; j < z.size(); ++j) sq[j] = z[j] * z[j];
  if (max_dist(sq, cp.front()) > tol)
    throw InvalidInput("lift_path: start does not lie over the first chain sample");
  FramePath out;
  out.kind = PathKind::Planar;
  out.max_step = cp.max_step;
  out.samples.push_back({cp.samples.front().t, z});
  for (size_t i = 1; i < cp.samples.size(); ++i) {
    const Point& w = cp.samples[i].point;
    if (w.size() != z.size()) throw InvalidInput("lift_path: sample size changes along the path");
    for (size_t j = 0; j < z.size(); ++j) {
      cplx root = std::sqrt(w[j]);
      double d_plus = std::abs(root - z[j]), d_minus = std::abs(-root - z[j]);
      if (std::abs(d_plus - d_minus) < 0.5) {
        std::ostringstream os;
        os << "lift_path: ambiguous square root at sample " << i << " (t = " << cp.samples[i].t
           << "), coordinate " << j + 1 << "; refine the chain path";
        throw NumericalRefusal(os.str());
      }
      z[j] = d_plus < d_minus ? root : -root;
    }
    out.samples.push_back({cp.samples[i].t, z});
  }
  return out;
}

FramePath chain_straighten(const Chain& c, double max_step, double tol) {
  const int k = c.k();
  if (k < 4) throw InvalidInput("chain_straighten: unsupported for k <= 3");
  if (std::abs(sum(c.w())) > tol) throw InvalidInput("chain_straighten: chain does not close");
  PathBuilder pb(c.w(), max_step);
  straighten_core(pb, k);
  if (k % 2 == 1 && reversed_triple(pb.current())) flip_triple(pb);
  return std::move(pb).finish(PathKind::Chain);
}

FramePath connect_to_standard(const PlanarFrame& z, double max_step, double tol) {
  const int k = z.k();
  if (k < 4) throw InvalidInput("connect_to_standard: unsupported for k <= 3");
  Chain c = square_map(z);
  PathBuilder pb(c.w(), max_step);
  straighten_core(pb, k);
  const bool reversed = k % 2 == 1 && reversed_triple(pb.current());
  FramePath lifted = lift_path(std::move(pb).finish(PathKind::Chain), z, std::max(tol, 1e-12));

  // Read off the fiber element: each coordinate is +-1 times the lattice
  // value of b (or of conj b when the triple landed reversed).
  std::vector<int> m = canonical_lattice(k);
  if (reversed)
    for (auto& v : m) v = -v;
  const Point& e = lifted.back();
  for (size_t j = 0; j < m.size(); ++j) {
    cplx base = detail::lattice_value(m[j]);
    if (std::abs(e[j] + base) < std::abs(e[j] - base)) m[j] += 6;
    if (std::abs(e[j] - detail::lattice_value(m[j])) > 1e-6)
      throw NumericalRefusal("connect_to_standard: lifted endpoint is off the expected fiber");
  }
  lifted.samples.back().point = detail::lattice_point(m);

  PathBuilder fb(detail::lattice_point(m), max_step);
  if (reversed) {
    // Conjugation maps the reflected fiber onto the standard one and negates
    // rotation angles. After it the first five coordinates read a, and the
    // reversed Case III path carries them to b.
    std::vector<int> conj_m(m.size());
    for (size_t j = 0; j < m.size(); ++j) conj_m[j] = -m[j];
    for (auto mv : fiber_moves_to_canonical(conj_m)) {
      mv.units = -mv.units;
      fb.apply(mv, m);
    }
    auto legs = case3_moves();
    for (auto it = legs.rbegin(); it != legs.rend(); ++it) {
      RotationMove mv = *it;
      mv.units = -mv.units;
      fb.apply(mv, m);
    }
  }
  for (const auto& mv : fiber_moves_to_canonical(m)) fb.apply(mv, m);
  return concatenate(lifted, std::move(fb).finish(PathKind::Planar));
}

FramePath case1_explicit_path(double max_step) {
  std::vector<int> m = canonical_lattice(4);
  PathBuilder pb(detail::lattice_point(m), max_step);
  for (const auto& mv : case1_moves()) pb.apply(mv, m);
  return std::move(pb).finish(PathKind::Planar);
}

FramePath case3_explicit_path(double max_step) {
  std::vector<int> m = canonical_lattice(5);
  PathBuilder pb(detail::lattice_point(m), max_step);
  for (const auto& mv : case3_moves()) pb.apply(mv, m);
  return std::move(pb).finish(PathKind::Planar);
}

FramePath concatenate(const FramePath& a, const FramePath& b) {
  if (a.samples.empty()) return b;
  if (b.samples.empty()) return a;
  if (a.kind != b.kind || a.k() != b.k()) throw InvalidInput("concatenate: paths differ in kind or k");
  std::vector<Point> pts;
  for (const auto& s : a.samples) pts.push_back(s.point);
  for (size_t i = 1; i < b.samples.size(); ++i) pts.push_back(b.samples[i].point);
  FramePath out;
  out.kind = a.kind;
  out.max_step = std::max(a.max_step, b.max_step);
  const double last = static_cast<double>(pts.size() - 1);
  for (size_t i = 0; i < pts.size(); ++i) out.samples.push_back({i / last, std::move(pts[i])});
  out.samples.back().t = 1.0;
  return out;
}

PathValidation validate_path(const FramePath& p, double tol, const PathEndpoints& ends) {
  PathValidation v;
  double worst_ratio = 0.0;
  auto record = [&](double value, double limit, const std::string& what, size_t sample, int index) {
    double ratio = limit > 0 ? value / limit : value;
    bool bad = value > limit;
    if (bad && v.ok) worst_ratio = 0.0;
    if (bad) v.ok = false;
    if ((bad || v.ok) && ratio > worst_ratio) {
      worst_ratio = ratio;
      v.worst = value;
      v.worst_sample = static_cast<int>(sample);
      v.worst_t = sample < p.samples.size() ? p.samples[sample].t : 0.0;
      v.worst_index = index;
      v.violation = bad ? what : "";
    }
  };
  if (p.samples.size() < 2) {
    v.ok = false;
    v.violation = "path needs at least two samples";
    return v;
  }
  const size_t k = p.samples.front().point.size();
  if (p.samples.front().t != 0.0) record(std::abs(p.samples.front().t), 0.0, "t does not start at 0", 0, -1);
  if (p.samples.back().t != 1.0)
    record(std::abs(p.samples.back().t - 1.0), 0.0, "t does not end at 1", p.samples.size() - 1, -1);
  for (size_t i = 0; i < p.samples.size(); ++i) {
    const auto& s = p.samples[i];
    if (s.point.size() != k) {
      record(1.0, 0.0, "sample has the wrong number of entries", i, -1);
      continue;
    }
    if (i > 0 && !(s.t > p.samples[i - 1].t)) record(1.0, 0.0, "t is not strictly increasing", i, -1);
    for (size_t j = 0; j < k; ++j) {
      double e = std::abs(std::abs(s.point[j]) - 1.0);
      v.max_modulus_error = std::max(v.max_modulus_error, e);
      record(e, tol, "modulus", i, static_cast<int>(j));
    }
    double c = std::abs(p.kind == PathKind::Planar ? sum_squares(s.point) : sum(s.point));
    v.max_constraint_error = std::max(v.max_constraint_error, c);
    record(c, tol, p.kind == PathKind::Planar ? "sum of squares" : "chain closure", i, -1);
    if (i > 0) {
      double step = max_dist(p.samples[i - 1].point, s.point);
      v.max_step = std::max(v.max_step, step);
      if (p.max_step > 0) record(step, p.max_step * (1 + 1e-12), "step bound", i, -1);
    }
  }
  if (ends.start && ends.start->size() == k)
    record(max_dist(*ends.start, p.front()), tol, "start endpoint", 0, -1);
  if (ends.end && ends.end->size() == k)
    record(max_dist(*ends.end, p.back()), tol, "end endpoint", p.samples.size() - 1, -1);
  if ((ends.start && ends.start->size() != k) || (ends.end && ends.end->size() != k))
    record(1.0, 0.0, "declared endpoint has the wrong size", 0, -1);
  return v;
}

}  // namespace framelab
