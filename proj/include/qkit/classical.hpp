#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qkit/linalg.hpp"

namespace qkit {

using BigInt = boost::multiprecision::cpp_int;

// Unitary DFT with entries omega^{jk}/sqrt(N), omega = e^{2 pi i/N}; the
// inverse flag conjugates the exponent. Length must be a power of two.
CVector fft(CVector v, bool inverse = false);
CVector naive_dft(const CVector& v, bool inverse = false);

std::vector<double> poly_multiply(const std::vector<double>& a, const std::vector<double>& b);
std::vector<double> schoolbook_multiply(const std::vector<double>& a, const std::vector<double>& b);

struct Fraction {
  BigInt num = 0;
  BigInt den = 1;
  Fraction() = default;
  Fraction(BigInt n, BigInt d);  // reduces; den > 0
  double value() const;
};

bool operator==(const Fraction& a, const Fraction& b);

struct Convergent {
  BigInt p, q;
};

// Continued-fraction convergents p_n/q_n of b/q (exact integers).
std::vector<Convergent> convergents(const BigInt& b, const BigInt& q);
// The convergent of b/q with the largest denominator <= bound.
Fraction best_approx(const BigInt& b, const BigInt& q, const BigInt& bound);
// Floating-point variant: stops once the remainder drops below 1e-12.
Fraction best_approx_real(double x, const BigInt& bound);

BigInt modexp(const BigInt& x, const BigInt& a, const BigInt& n);
BigInt gcd(const BigInt& a, const BigInt& b);
std::uint64_t modexp_u64(std::uint64_t x, std::uint64_t a, std::uint64_t n);

// Trial division.
bool is_prime(std::uint64_t n);
// Returns (base, k) with base^k = n and k >= 2 maximal, or (n, 1).
std::pair<std::uint64_t, int> perfect_power(std::uint64_t n);

// Rows of bit vectors over GF(2); bit j of the row integer is the coefficient
// of the (width-1-j)-th variable, i.e. variable 1 is the most significant bit.
struct Gf2Matrix {
  int width = 0;
  std::vector<std::uint64_t> rows;
};

int gf2_rank(const Gf2Matrix& m);
// Basis of {s : m s = 0 mod 2}.
std::vector<std::uint64_t> gf2_solve(const Gf2Matrix& m);
int dot_mod2(std::uint64_t a, std::uint64_t b);

}  // namespace qkit
