#include "cptgate/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cptgate {

namespace {

constexpr double kHermitianInputTol = 1e-12;

void require_dim(std::size_t dim) {
  if (dim == 0 || dim > kMaxDim) {
    throw NumericsError("operator dimension must be in [1, 4], got " + std::to_string(dim));
  }
}

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) {
    throw NumericsError("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

Operator::Operator(std::size_t dim) : dim_(dim) { require_dim(dim); }

Operator::Operator(std::size_t dim, std::initializer_list<Complex> row_major) : Operator(dim) {
  if (row_major.size() != dim * dim) {
    throw NumericsError("expected " + std::to_string(dim * dim) + " entries");
  }
  std::size_t k = 0;
  for (const Complex& z : row_major) {
    (*this)(k / dim, k % dim) = z;
    ++k;
  }
}

Operator Operator::identity(std::size_t dim) {
  Operator out(dim);
  for (std::size_t i = 0; i < dim; ++i) out(i, i) = 1.0;
  return out;
}

Operator Operator::diagonal(std::initializer_list<Complex> entries) {
  Operator out(entries.size());
  std::size_t i = 0;
  for (const Complex& z : entries) {
    out(i, i) = z;
    ++i;
  }
  return out;
}

Operator Operator::unit(std::size_t dim, std::size_t row, std::size_t col) {
  Operator out(dim);
  out(row, col) = 1.0;
  return out;
}

Operator Operator::adjoint() const {
  Operator out(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

Complex Operator::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double Operator::hermiticity_error() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = r; c < dim_; ++c)
      worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return worst;
}

double Operator::norm() const {
  double s = 0.0;
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) s += std::norm((*this)(r, c));
  return std::sqrt(s);
}

double Operator::max_abs() const {
  double m = 0.0;
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) m = std::max(m, std::abs((*this)(r, c)));
  return m;
}

Operator Operator::block(std::size_t dim) const {
  if (dim > dim_) throw NumericsError("block larger than operator");
  Operator out(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) out(r, c) = (*this)(r, c);
  return out;
}

Operator Operator::embed(std::size_t dim) const {
  if (dim < dim_) throw NumericsError("embedding into a smaller space");
  Operator out(dim);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out(r, c) = (*this)(r, c);
  return out;
}

Operator& Operator::operator+=(const Operator& rhs) {
  require_same_dim(dim_, rhs.dim_);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
  return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
  require_same_dim(dim_, rhs.dim_);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= rhs.entries_[k];
  return *this;
}

Operator& Operator::operator*=(Complex s) {
  for (Complex& z : entries_) z *= s;
  return *this;
}

Operator operator*(const Operator& lhs, const Operator& rhs) {
  require_same_dim(lhs.dim_, rhs.dim_);
  const std::size_t n = lhs.dim_;
  Operator out(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex a = lhs(r, k);
      if (a == Complex{}) continue;
      for (std::size_t c = 0; c < n; ++c) out(r, c) += a * rhs(k, c);
    }
  }
  return out;
}

StateVector::StateVector(std::size_t dim) : dim_(dim) { require_dim(dim); }

StateVector::StateVector(std::initializer_list<Complex> amplitudes) : StateVector(amplitudes.size()) {
  std::copy(amplitudes.begin(), amplitudes.end(), amps_.begin());
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  StateVector v(dim);
  v[index] = 1.0;
  return v;
}

double StateVector::norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) s += std::norm(amps_[i]);
  return std::sqrt(s);
}

Operator StateVector::projector() const {
  Operator out(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out(r, c) = amps_[r] * std::conj(amps_[c]);
  return out;
}

StateVector operator*(const Operator& op, const StateVector& v) {
  require_same_dim(op.dim(), v.dim());
  StateVector out(v.dim());
  for (std::size_t r = 0; r < v.dim(); ++r)
    for (std::size_t c = 0; c < v.dim(); ++c) out[r] += op(r, c) * v[c];
  return out;
}

Complex inner(const StateVector& a, const StateVector& b) {
  require_same_dim(a.dim(), b.dim());
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

DensityMatrix::DensityMatrix(Operator rho) : rho_(std::move(rho)) {
  if (rho_.hermiticity_error() > kHermitianTol) {
    throw NumericsError("density matrix is not Hermitian: " + to_string(rho_));
  }
  if (std::abs(rho_.trace() - 1.0) > kTraceTol) {
    throw NumericsError("density matrix trace differs from 1");
  }
  const Eigensystem es = hermitian_eigensystem(rho_);
  for (std::size_t i = 0; i < rho_.dim(); ++i) {
    if (es.values[i] < -kEigenTol) throw NumericsError("density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) { return DensityMatrix(psi.projector()); }

Eigensystem hermitian_eigensystem(const Operator& h) {
  const std::size_t n = h.dim();
  Operator a(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a(r, c) = 0.5 * (h(r, c) + std::conj(h(c, r)));
  Operator v = Operator::identity(n);

  const double scale = std::max(a.max_abs(), 1e-300);
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= 1e-17 * scale) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double g = std::abs(a(p, q));
        if (g <= 1e-18 * scale) continue;
        const Complex phase = a(p, q) / g;
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * g);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // J = [[c, s e], [-s conj(e), c]] on (p, q); A <- J^dagger A J, V <- V J.
        const Complex jpq = s * phase;
        const Complex jqp = -s * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {  // columns: A J
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * c + akq * jqp;
          a(k, q) = akp * jpq + akq * c;
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * c + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * c;
        }
        for (std::size_t k = 0; k < n; ++k) {  // rows: J^dagger (A J)
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  Eigensystem out;
  out.vectors = v;
  for (std::size_t i = 0; i < n; ++i) out.values[i] = a(i, i).real();
  return out;
}

Operator hermitian_expm(const Operator& h, double dt) {
  if (!std::isfinite(dt)) throw NumericsError("time step must be finite");
  const double herr = h.hermiticity_error();
  if (!(herr <= kHermitianInputTol)) {
    std::ostringstream msg;
    msg << "hermitian_expm: input deviates from Hermitian by " << herr << " (tolerance "
        << kHermitianInputTol << "): " << to_string(h);
    throw NumericsError(msg.str());
  }
  const std::size_t n = h.dim();

  if (n == 2) {
    // H = a0 + ax X + ay Y + az Z
    const double a0 = 0.5 * (h(0, 0).real() + h(1, 1).real());
    const double az = 0.5 * (h(0, 0).real() - h(1, 1).real());
    const Complex off = 0.5 * (h(0, 1) + std::conj(h(1, 0)));
    const double ax = off.real();
    const double ay = -off.imag();
    const double r = std::sqrt(ax * ax + ay * ay + az * az);
    const double ang = r * dt;
    const double c = std::cos(ang);
    const Complex g = std::exp(-kI * (a0 * dt));
    Operator u(2);
    if (r == 0.0) {
      u(0, 0) = g;
      u(1, 1) = g;
      return u;
    }
    const double sr = std::sin(ang) / r;
    u(0, 0) = g * Complex(c, -sr * az);
    u(1, 1) = g * Complex(c, sr * az);
    u(0, 1) = g * (-kI * sr * Complex(ax, -ay));
    u(1, 0) = g * (-kI * sr * Complex(ax, ay));
    return u;
  }

  const Eigensystem es = hermitian_eigensystem(h);
  Operator u(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex ph = std::exp(-kI * (es.values[k] * dt));
    for (std::size_t r = 0; r < n; ++r) {
      const Complex vr = es.vectors(r, k) * ph;
      for (std::size_t c = 0; c < n; ++c) u(r, c) += vr * std::conj(es.vectors(c, k));
    }
  }
  return u;
}

double frobenius_deviation_from_identity(const Operator& m) {
  return (m - Operator::identity(m.dim())).norm();
}

double trace_distance(const Operator& a, const Operator& b) {
  const Eigensystem es = hermitian_eigensystem(a - b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::abs(es.values[i]);
  return 0.5 * s;
}

std::string to_string(const Operator& op) {
  std::ostringstream os;
  os.precision(6);
  os << '[';
  for (std::size_t r = 0; r < op.dim(); ++r) {
    os << (r ? "; " : "");
    for (std::size_t c = 0; c < op.dim(); ++c) os << (c ? ", " : "") << op(r, c);
  }
  os << ']';
  return os.str();
}

}  // namespace cptgate
