#include "qkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace qkit {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw ShapeError("entry count does not match rows x cols");
  }
  if (!is_finite()) throw ShapeError("matrix entries must be finite");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ShapeError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const CVector& d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(const CVector& v, const CVector& w) {
  ComplexMatrix m(v.size(), w.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) m(i, j) = v[i] * std::conj(w[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

cplx ComplexMatrix::trace() const {
  if (!square()) throw ShapeError("trace of a non-square matrix");
  cplx t = 0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

CVector ComplexMatrix::column(std::size_t j) const {
  CVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

CVector ComplexMatrix::apply(const CVector& v) const {
  if (v.size() != cols_) throw DimensionError("matrix-vector size mismatch");
  CVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    cplx acc = 0;
    const cplx* row = &data_[i * cols_];
    for (std::size_t j = 0; j < cols_; ++j) acc += row[j] * v[j];
    out[i] = acc;
  }
  return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("matrix sum shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("matrix difference shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& x : data_) x *= s;
  return *this;
}

double ComplexMatrix::max_abs() const {
  double m = 0;
  for (const auto& x : data_) m = std::max(m, std::abs(x));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0;
  for (const auto& x : data_) s += std::norm(x);
  return std::sqrt(s);
}

bool ComplexMatrix::is_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const cplx& x) {
    return std::isfinite(x.real()) && std::isfinite(x.imag());
  });
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

bool ComplexMatrix::is_unitary(double tol) const {
  if (!square()) return false;
  const std::size_t n = rows_;
  // Columns orthonormal: (U^* U)_{jk} = sum_i conj(U_ij) U_ik
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j; k < n; ++k) {
      cplx acc = 0;
      for (std::size_t i = 0; i < n; ++i) acc += std::conj((*this)(i, j)) * (*this)(i, k);
      const cplx expect = (j == k) ? 1.0 : 0.0;
      if (std::abs(acc - expect) > tol) return false;
    }
  }
  return true;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("matrix product shape mismatch");
  ComplexMatrix c(a.rows(), b.cols());
  const std::size_t n = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx* crow = &c.data()[i * n];
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0)) continue;
      const cplx* brow = &b.data()[k * n];
      for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("shape mismatch");
  double m = 0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

ComplexMatrix matrix_power(const ComplexMatrix& a, unsigned long long k) {
  if (!a.square()) throw ShapeError("power of a non-square matrix");
  ComplexMatrix result = ComplexMatrix::identity(a.rows());
  ComplexMatrix base = a;
  while (k) {
    if (k & 1ULL) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return c;
}

cplx inner(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) throw DimensionError("inner product size mismatch");
  cplx s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(const CVector& v) {
  double s = 0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  return out;
}

ComplexMatrix householder_from_e0(const CVector& target) {
  const std::size_t d = target.size();
  if (d == 0) throw DimensionError("empty target vector");
  if (std::abs(norm(target) - 1.0) > 1e-9) throw ParameterError("target vector must have unit norm");
  const double phase = std::abs(target[0]) > 0 ? std::arg(target[0]) : 0.0;
  const cplx unphase = std::polar(1.0, -phase);
  CVector w(d);
  for (std::size_t i = 0; i < d; ++i) w[i] = -target[i] * unphase;
  w[0] += 1.0;
  const double ww = std::pow(norm(w), 2);
  ComplexMatrix h = ComplexMatrix::identity(d);
  if (ww > 1e-28) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) h(i, j) -= 2.0 * w[i] * std::conj(w[j]) / ww;
  }
  h *= std::polar(1.0, phase);
  return h;
}

const ComplexMatrix& pauli(char letter) {
  static const ComplexMatrix I{{1, 0}, {0, 1}};
  static const ComplexMatrix X{{0, 1}, {1, 0}};
  static const ComplexMatrix Y{{0, cplx(0, -1)}, {cplx(0, 1), 0}};
  static const ComplexMatrix Z{{1, 0}, {0, -1}};
  switch (letter) {
    case 'I': return I;
    case 'X': return X;
    case 'Y': return Y;
    case 'Z': return Z;
    default: throw ParameterError(std::string("unknown Pauli letter '") + letter + "'");
  }
}

ComplexMatrix PauliString::matrix() const {
  if (label.empty()) throw ParameterError("Pauli string must have at least one letter");
  ComplexMatrix m = pauli(label[0]);
  for (std::size_t i = 1; i < label.size(); ++i) m = tensor(m, pauli(label[i]));
  m *= coefficient;
  return m;
}

bool is_power_of_two(std::size_t n) { return n && !(n & (n - 1)); }

int log2_exact(std::size_t n) {
  if (!is_power_of_two(n)) throw DimensionError("dimension " + std::to_string(n) + " is not a power of two");
  int k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

int ceil_log2(std::size_t n) {
  int k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

std::string pauli_label(std::size_t index, int k) {
  static const char letters[] = {'I', 'X', 'Y', 'Z'};
  std::string s(k, 'I');
  for (int q = k - 1; q >= 0; --q) {
    s[q] = letters[index % 4];
    index /= 4;
  }
  return s;
}

CVector pauli_decompose(const ComplexMatrix& a) {
  if (!a.square()) throw DimensionError("Pauli decomposition needs a square matrix");
  const std::size_t d = a.rows();
  const int k = log2_exact(d);
  const std::size_t count = std::size_t{1} << (2 * k);
  CVector coeffs(count);
  // Each Pauli string P is monomial: P|c> = phase(c) |c ^ flip>. So
  // Tr(P^* A) = sum_c conj(phase(c)) A(c ^ flip, c).
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t flip = 0, zmask = 0, ycount = 0;
    std::size_t rem = idx;
    for (int q = k - 1; q >= 0; --q) {
      const std::size_t letter = rem % 4;
      rem /= 4;
      const std::size_t bit = std::size_t{1} << (k - 1 - q);
      if (letter == 1 || letter == 2) flip |= bit;
      if (letter == 2 || letter == 3) zmask |= bit;
      if (letter == 2) ++ycount;
    }
    // Y = i X Z, so the Pauli string equals i^{ycount} X^{flip} Z^{zmask}.
    cplx ipow = 1;
    for (std::size_t y = 0; y < ycount; ++y) ipow *= cplx(0, 1);
    cplx acc = 0;
    for (std::size_t c = 0; c < d; ++c) {
      const double sign = (__builtin_popcountll(c & zmask) & 1) ? -1.0 : 1.0;
      const cplx phase = ipow * sign;
      acc += std::conj(phase) * a(c ^ flip, c);
    }
    coeffs[idx] = acc / static_cast<double>(d);
  }
  return coeffs;
}

namespace {

ComplexMatrix checked_hermitian(const ComplexMatrix& h) {
  if (!h.square()) throw ShapeError("Hermitian eigensolver needs a square matrix");
  if (!h.is_finite()) throw ShapeError("matrix has non-finite entries");
  if (!h.is_hermitian(1e-9)) throw ShapeError("matrix is not Hermitian within 1e-9");
  ComplexMatrix s = h;
  const std::size_t n = h.rows();
  for (std::size_t i = 0; i < n; ++i) {
    s(i, i) = h(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx v = 0.5 * (h(i, j) + std::conj(h(j, i)));
      s(i, j) = v;
      s(j, i) = std::conj(v);
    }
  }
  return s;
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0;
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

HermitianEigen herm_eig(const ComplexMatrix& h) {
  ComplexMatrix a = checked_hermitian(h);
  const std::size_t n = a.rows();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double threshold = 1e-13 * std::max(1.0, a.frobenius_norm());
  constexpr int kMaxSweeps = 100;

  // One extra sweep after the threshold is met brings the residual to roundoff.
  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) {
      if (converged) break;
      converged = true;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag < 1e-300) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Rotate the real-symmetric 2x2 block obtained after removing the
        // phase of a_pq.
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx e = apq / mag;  // e^{i phi}
        // G = diag(1, conj(e)) * [[c, s], [-s, c]]
        const cplx gpp = c, gpq = s, gqp = -s * std::conj(e), gqq = c * std::conj(e);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0;
        a(q, p) = 0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });
  HermitianEigen out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

std::vector<double> herm_eigvals(const ComplexMatrix& h) { return herm_eig(h).values; }

ComplexMatrix herm_expm(const ComplexMatrix& h, double t) {
  const HermitianEigen e = herm_eig(h);
  const std::size_t n = h.rows();
  ComplexMatrix out(n, n);
  CVector phases(n);
  for (std::size_t k = 0; k < n; ++k) phases[k] = std::polar(1.0, e.values[k] * t);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx vik = e.vectors(i, k) * phases[k];
      if (vik == cplx(0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(e.vectors(j, k));
    }
  return out;
}

double op_norm(const ComplexMatrix& a) {
  const ComplexMatrix g = a.adjoint() * a;
  const auto vals = herm_eigvals(g);
  return vals.empty() ? 0.0 : std::sqrt(std::max(0.0, vals.front()));
}

double op_norm_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("op_norm_diff shape mismatch");
  return op_norm(a - b);
}

double op_norm_lanczos(const std::function<CVector(const CVector&)>& apply,
                       const std::function<CVector(const CVector&)>& apply_adjoint,
                       std::size_t dim, std::size_t max_iterations, unsigned long long seed) {
  if (dim == 0) return 0.0;
  const std::size_t m = std::min(dim, max_iterations);
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> gauss;
  CVector q(dim);
  for (auto& x : q) x = cplx(gauss(gen), gauss(gen));
  {
    const double nq = norm(q);
    for (auto& x : q) x /= nq;
  }
  std::vector<CVector> basis;
  std::vector<double> alpha, beta;
  basis.push_back(q);
  for (std::size_t j = 0; j < m; ++j) {
    CVector w = apply_adjoint(apply(basis[j]));
    const double a = inner(basis[j], w).real();
    alpha.push_back(a);
    // Full reorthogonalization, applied twice for stability.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const cplx c = inner(b, w);
        for (std::size_t i = 0; i < dim; ++i) w[i] -= c * b[i];
      }
    }
    const double bnorm = norm(w);
    if (j + 1 == m || bnorm < 1e-12) break;
    beta.push_back(bnorm);
    for (auto& x : w) x /= bnorm;
    basis.push_back(std::move(w));
  }
  const std::size_t k = alpha.size();
  ComplexMatrix t(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    t(i, i) = alpha[i];
    if (i + 1 < k) {
      t(i, i + 1) = beta[i];
      t(i + 1, i) = beta[i];
    }
  }
  const auto vals = herm_eigvals(t);
  return std::sqrt(std::max(0.0, vals.front()));
}

}  // namespace qkit
