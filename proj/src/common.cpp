#include "framelab/common.hpp"

#include <cmath>

namespace framelab {

std::string_view to_string(Field f) { return f == Field::Real ? "R" : "C"; }

Field parse_field(std::string_view s) {
  if (s == "R" || s == "r" || s == "real") return Field::Real;
  if (s == "C" || s == "c" || s == "complex") return Field::Complex;
  throw InvalidInput("unknown field '" + std::string(s) + "' (expected R or C)");
}

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_real_matrix(const CMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j).imag() != 0.0) return false;
  return true;
}

bool all_finite(const CMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

}  // namespace framelab
