#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gaussmc {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;
template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;

template <typename Scalar>
using ComplexMatrix = Matrix<std::complex<Scalar>>;
template <typename Scalar>
using ComplexVector = Vector<std::complex<Scalar>>;
template <typename Scalar>
using ComplexVector2 = Vector2<std::complex<Scalar>>;

/// Default tolerances shared by every module.
namespace tol {
inline constexpr double kSymmetry = 1e-10;
inline constexpr double kPsd = 1e-9;
inline constexpr double kSymplectic = 1e-9;
inline constexpr double kDecoupled = 1e-9;
/// Residual correlation allowed on a mode flagged as decoupled.
inline constexpr double kDecoupledResidual = 1e-6;
inline constexpr double kVerdict = 1e-9;
inline constexpr double kInverseSqrtFloor = 1e-12;
}  // namespace tol

/// Base class of all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: wrong shapes, bad indices, non-finite entries.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Input violates the uncertainty relation or has a non-positive determinant.
class UnphysicalError : public Error {
 public:
  using Error::Error;
};

/// A mode with vacuum marginal (lambda = 1) carries nonzero correlations, or a
/// formula that needs lambda > 1 was handed a decoupled mode.
class DecoupledModeError : public Error {
 public:
  using Error::Error;
};

/// Scalar parameter outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

}  // namespace gaussmc
