#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hardy {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Element of B(C^V): rows and columns indexed by vertices in graph order.
using VertexMatrix = Eigen::MatrixXcd;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: duplicate names, unknown vertices, wrong shapes.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Two operands live over different graphs.
class GraphMismatch : public Error {
 public:
  using Error::Error;
};

/// A point outside the open unit ball where one is required.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed (support leakage, non-Hermitian Choi block).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Interpolation data that admits no contractive solution.
class FeasibilityError : public Error {
 public:
  using Error::Error;
};

/// Numerically ill-conditioned data (indefinite Gram, singular resolvent).
class ConditioningError : public Error {
 public:
  using Error::Error;
  ConditioningError(const std::string& what, double value) : Error(what), value_(value) {}
  double value() const noexcept { return value_; }

 private:
  double value_ = 0.0;
};

/// Spectral norm of a dense complex matrix; 0 for empty matrices.
double spectral_norm(const CMatrix& m);

}  // namespace hardy
