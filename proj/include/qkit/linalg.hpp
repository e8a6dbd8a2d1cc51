#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "qkit/errors.hpp"

namespace qkit {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix diagonal(const CVector& d);
  // |v><w|
  static ComplexMatrix outer(const CVector& v, const CVector& w);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<cplx>& data() const { return data_; }
  std::vector<cplx>& data() { return data_; }

  ComplexMatrix adjoint() const;
  cplx trace() const;
  CVector column(std::size_t j) const;
  CVector apply(const CVector& v) const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  double max_abs() const;
  double frobenius_norm() const;
  bool is_finite() const;
  bool is_hermitian(double tol = 1e-9) const;
  bool is_unitary(double tol = 1e-9) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);

// max_ij |a_ij - b_ij|
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix matrix_power(const ComplexMatrix& a, unsigned long long k);

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// Vector helpers.
cplx inner(const CVector& a, const CVector& b);  // <a|b>
double norm(const CVector& v);
CVector kron(const CVector& a, const CVector& b);

// Householder reflection that maps e_0 to `target` (unit norm). Entries of
// the reflection are unitary and Hermitian up to the phase fix on e_0.
ComplexMatrix householder_from_e0(const CVector& target);

const ComplexMatrix& pauli(char letter);

struct PauliString {
  std::string label;  // over {I,X,Y,Z}, qubit 1 first
  cplx coefficient{1.0, 0.0};

  int qubit_count() const { return static_cast<int>(label.size()); }
  ComplexMatrix matrix() const;  // coefficient times the tensor product
};

// Hilbert-Schmidt coefficients over all 4^k Pauli strings. Strings are
// ordered base 4 with letter order I,X,Y,Z and qubit 1 the leading digit.
CVector pauli_decompose(const ComplexMatrix& a);
std::string pauli_label(std::size_t index, int k);

struct HermitianEigen {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column i belongs to values[i]
};

HermitianEigen herm_eig(const ComplexMatrix& h);
std::vector<double> herm_eigvals(const ComplexMatrix& h);
ComplexMatrix herm_expm(const ComplexMatrix& h, double t);

double op_norm(const ComplexMatrix& a);
double op_norm_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Largest singular value of a linear map given only as a matrix-vector
// product, using Lanczos with full reorthogonalization on A*A.
double op_norm_lanczos(const std::function<CVector(const CVector&)>& apply,
                       const std::function<CVector(const CVector&)>& apply_adjoint,
                       std::size_t dim, std::size_t max_iterations = 160,
                       unsigned long long seed = 0x5eedULL);

bool is_power_of_two(std::size_t n);
int log2_exact(std::size_t n);  // throws DimensionError unless n is a power of two
int ceil_log2(std::size_t n);

}  // namespace qkit
