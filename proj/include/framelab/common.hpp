#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace framelab {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-9;

enum class Field { Real, Complex };

std::string_view to_string(Field f);
Field parse_field(std::string_view s);

// Malformed or out-of-contract input. The CLI maps this to exit code 2.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical procedure declined to produce a result it could not certify
// (step too large, ill-conditioned alignment, ambiguous square root).
class NumericalRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double max_abs(const CMatrix& m);
bool is_real_matrix(const CMatrix& m);
bool all_finite(const CMatrix& m);

}  // namespace framelab
