#pragma once

// Small dense complex linear algebra for 2-4 level systems.
//
// Everything here works on matrices of dimension <= 4 stored inline, so
// operators are cheap value types that can be copied freely between
// propagation steps and sweep workers.

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cptgate {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxDim = 4;
inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = 0.5 * std::numbers::pi;

/// Raised when an input violates a numerical precondition (non-Hermitian
/// Hamiltonian, dimension mismatch, ...).
class NumericsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense complex square matrix, row-major, dimension 1..4.
class Operator {
 public:
  Operator() = default;
  explicit Operator(std::size_t dim);
  Operator(std::size_t dim, std::initializer_list<Complex> row_major);

  static Operator identity(std::size_t dim);
  static Operator diagonal(std::initializer_list<Complex> entries);
  /// |row><col| in a dim-dimensional space.
  static Operator unit(std::size_t dim, std::size_t row, std::size_t col);

  std::size_t dim() const { return dim_; }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * kMaxDim + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * kMaxDim + c]; }

  Operator adjoint() const;
  Complex trace() const;
  /// Largest entrywise |A - A^dagger|.
  double hermiticity_error() const;
  /// Frobenius norm.
  double norm() const;
  double max_abs() const;

  /// Upper-left block of the given dimension.
  Operator block(std::size_t dim) const;
  /// Embeds this operator into the upper-left corner of a larger zero matrix.
  Operator embed(std::size_t dim) const;

  Operator& operator+=(const Operator& rhs);
  Operator& operator-=(const Operator& rhs);
  Operator& operator*=(Complex s);

  friend Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }
  friend Operator operator-(Operator lhs, const Operator& rhs) { return lhs -= rhs; }
  friend Operator operator*(Operator lhs, Complex s) { return lhs *= s; }
  friend Operator operator*(Complex s, Operator rhs) { return rhs *= s; }
  friend Operator operator*(const Operator& lhs, const Operator& rhs);

 private:
  std::size_t dim_ = 0;
  std::array<Complex, kMaxDim * kMaxDim> entries_{};
};

/// Pure state amplitudes, dimension 1..4.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::size_t dim);
  StateVector(std::initializer_list<Complex> amplitudes);

  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return dim_; }
  Complex& operator[](std::size_t i) { return amps_[i]; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;
  /// |psi><psi|
  Operator projector() const;

  friend StateVector operator*(const Operator& op, const StateVector& v);

 private:
  std::size_t dim_ = 0;
  std::array<Complex, kMaxDim> amps_{};
};

/// <a|b>
Complex inner(const StateVector& a, const StateVector& b);

/// Unit-trace Hermitian positive matrix. Construction validates the
/// invariants; arithmetic during integration happens on the raw Operator.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kTraceTol = 1e-8;
  static constexpr double kEigenTol = 1e-8;

  explicit DensityMatrix(Operator rho);
  static DensityMatrix pure(const StateVector& psi);

  const Operator& matrix() const { return rho_; }
  std::size_t dim() const { return rho_.dim(); }
  double population(std::size_t level) const { return rho_(level, level).real(); }

 private:
  Operator rho_;
};

struct Eigensystem {
  std::array<double, kMaxDim> values{};
  Operator vectors;  // columns are eigenvectors
};

/// Cyclic complex Jacobi diagonalisation. The input is symmetrised, so
/// callers are responsible for checking Hermiticity first.
Eigensystem hermitian_eigensystem(const Operator& h);

/// exp(-i H dt) for Hermitian H. Pauli closed form in 2D, eigendecomposition
/// otherwise. Throws NumericsError if H is not Hermitian to 1e-12.
Operator hermitian_expm(const Operator& h, double dt);

/// ||M - 1||_F
double frobenius_deviation_from_identity(const Operator& m);

/// Trace distance 1/2 ||a - b||_1 for Hermitian a, b.
double trace_distance(const Operator& a, const Operator& b);

std::string to_string(const Operator& op);

}  // namespace cptgate
