#include "qkit/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qkit {

namespace {
constexpr double kPi = std::numbers::pi;
}

CVector fft(CVector v, bool inverse) {
  const std::size_t n = v.size();
  const int bits = log2_exact(n);
  // Bit-reversal permutation, then iterative butterflies.
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (int b = 0; b < bits; ++b)
      if ((i >> b) & 1U) r |= std::size_t{1} << (bits - 1 - b);
    if (i < r) std::swap(v[i], v[r]);
  }
  const double sign = inverse ? -1.0 : 1.0;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const cplx wlen = std::polar(1.0, sign * 2.0 * kPi / static_cast<double>(len));
    for (std::size_t start = 0; start < n; start += len) {
      cplx w = 1.0;
      for (std::size_t j = 0; j < len / 2; ++j) {
        const cplx u = v[start + j];
        const cplx t = w * v[start + j + len / 2];
        v[start + j] = u + t;
        v[start + j + len / 2] = u - t;
        w *= wlen;
      }
    }
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& x : v) x *= scale;
  return v;
}

CVector naive_dft(const CVector& v, bool inverse) {
  const std::size_t n = v.size();
  CVector out(n);
  const double sign = inverse ? -1.0 : 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    cplx acc = 0;
    for (std::size_t k = 0; k < n; ++k)
      acc += std::polar(1.0, sign * 2.0 * kPi * static_cast<double>((j * k) % n) / static_cast<double>(n)) * v[k];
    out[j] = acc / std::sqrt(static_cast<double>(n));
  }
  return out;
}

std::vector<double> poly_multiply(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t d = std::max(a.size(), b.size()) - 1;
  const std::size_t n = std::size_t{1} << ceil_log2(2 * d + 1);
  CVector fa(n), fb(n);
  std::copy(a.begin(), a.end(), fa.begin());
  std::copy(b.begin(), b.end(), fb.begin());
  fa = fft(std::move(fa));
  fb = fft(std::move(fb));
  for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
  fa = fft(std::move(fa), true);
  const double scale = std::sqrt(static_cast<double>(n));
  std::vector<double> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = fa[i].real() * scale;
  return out;
}

std::vector<double> schoolbook_multiply(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Fraction::Fraction(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) {
  if (den == 0) throw ParameterError("fraction with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const BigInt g = qkit::gcd(num < 0 ? BigInt(-num) : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

double Fraction::value() const { return num.convert_to<double>() / den.convert_to<double>(); }

bool operator==(const Fraction& a, const Fraction& b) { return a.num == b.num && a.den == b.den; }

std::vector<Convergent> convergents(const BigInt& b, const BigInt& q) {
  if (q <= 0) throw ParameterError("denominator must be positive");
  std::vector<Convergent> out;
  BigInt p_prev2 = 0, p_prev1 = 1, q_prev2 = 1, q_prev1 = 0;
  BigInt num = b, den = q;
  while (den != 0) {
    const BigInt a = num / den;
    const BigInt rem = num - a * den;
    const BigInt p = a * p_prev1 + p_prev2;
    const BigInt qq = a * q_prev1 + q_prev2;
    out.push_back({p, qq});
    p_prev2 = p_prev1;
    p_prev1 = p;
    q_prev2 = q_prev1;
    q_prev1 = qq;
    num = den;
    den = rem;
  }
  return out;
}

Fraction best_approx(const BigInt& b, const BigInt& q, const BigInt& bound) {
  if (b < 0 || q < 1) throw ParameterError("best_approx needs b >= 0 and q >= 1");
  if (bound < 1) throw ParameterError("best_approx needs bound >= 1");
  Fraction best(0, 1);
  for (const auto& c : convergents(b, q)) {
    if (c.q > bound) break;
    best = Fraction(c.p, c.q);
  }
  return best;
}

Fraction best_approx_real(double x, const BigInt& bound) {
  if (bound < 1) throw ParameterError("best_approx_real needs bound >= 1");
  BigInt p_prev2 = 0, p_prev1 = 1, q_prev2 = 1, q_prev1 = 0;
  Fraction best(static_cast<long long>(std::floor(x)), 1);
  double rem = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double af = std::floor(rem);
    const BigInt a = static_cast<long long>(af);
    const BigInt p = a * p_prev1 + p_prev2;
    const BigInt qq = a * q_prev1 + q_prev2;
    if (qq > bound) break;
    best = Fraction(p, qq);
    p_prev2 = p_prev1;
    p_prev1 = p;
    q_prev2 = q_prev1;
    q_prev1 = qq;
    const double frac = rem - af;
    if (frac < 1e-12) break;
    rem = 1.0 / frac;
  }
  return best;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt x = a < 0 ? BigInt(-a) : a;
  BigInt y = b < 0 ? BigInt(-b) : b;
  while (y != 0) {
    BigInt t = x % y;
    x = std::move(y);
    y = std::move(t);
  }
  return x;
}

BigInt modexp(const BigInt& x, const BigInt& a, const BigInt& n) {
  if (n < 2) throw ParameterError("modexp needs n >= 2");
  if (a < 0) throw ParameterError("modexp needs a nonnegative exponent");
  BigInt result = 1;
  BigInt base = x % n;
  if (base < 0) base += n;
  BigInt e = a;
  while (e > 0) {
    if ((e & 1) != 0) result = (result * base) % n;
    base = (base * base) % n;
    e >>= 1;
  }
  return result;
}

std::uint64_t modexp_u64(std::uint64_t x, std::uint64_t a, std::uint64_t n) {
  if (n < 2) throw ParameterError("modexp needs n >= 2");
  unsigned __int128 result = 1, base = x % n;
  while (a) {
    if (a & 1U) result = (result * base) % n;
    base = (base * base) % n;
    a >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::pair<std::uint64_t, int> perfect_power(std::uint64_t n) {
  for (int k = 63; k >= 2; --k) {
    const auto root = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(n), 1.0 / k)));
    for (std::uint64_t r = root > 1 ? root - 1 : 1; r <= root + 1; ++r) {
      if (r < 2) continue;
      unsigned __int128 p = 1;
      bool over = false;
      for (int i = 0; i < k; ++i) {
        p *= r;
        if (p > n) {
          over = true;
          break;
        }
      }
      if (!over && p == n) return {r, k};
    }
  }
  return {n, 1};
}

int dot_mod2(std::uint64_t a, std::uint64_t b) { return __builtin_popcountll(a & b) & 1; }

namespace {

// Reduced row echelon form; returns pivot bit positions per row.
std::vector<int> rref(Gf2Matrix& m) {
  std::vector<int> pivots;
  std::size_t row = 0;
  for (int col = m.width - 1; col >= 0 && row < m.rows.size(); --col) {
    const std::uint64_t bit = std::uint64_t{1} << col;
    std::size_t sel = row;
    while (sel < m.rows.size() && !(m.rows[sel] & bit)) ++sel;
    if (sel == m.rows.size()) continue;
    std::swap(m.rows[row], m.rows[sel]);
    for (std::size_t r = 0; r < m.rows.size(); ++r)
      if (r != row && (m.rows[r] & bit)) m.rows[r] ^= m.rows[row];
    pivots.push_back(col);
    ++row;
  }
  m.rows.resize(row);
  return pivots;
}

}  // namespace

int gf2_rank(const Gf2Matrix& m) {
  Gf2Matrix copy = m;
  return static_cast<int>(rref(copy).size());
}

std::vector<std::uint64_t> gf2_solve(const Gf2Matrix& m) {
  if (m.width < 0 || m.width > 64) throw ParameterError("GF(2) width must be in [0, 64]");
  const std::uint64_t mask = m.width == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << m.width) - 1);
  for (auto r : m.rows)
    if (r & ~mask) throw ParameterError("GF(2) row wider than the declared width");
  Gf2Matrix e = m;
  const auto pivots = rref(e);
  std::vector<std::uint64_t> basis;
  for (int col = m.width - 1; col >= 0; --col) {
    if (std::find(pivots.begin(), pivots.end(), col) != pivots.end()) continue;
    // Free variable `col` set to 1; pivot variables follow from each row.
    std::uint64_t s = std::uint64_t{1} << col;
    for (std::size_t r = 0; r < e.rows.size(); ++r)
      if (e.rows[r] & (std::uint64_t{1} << col)) s |= std::uint64_t{1} << pivots[r];
    basis.push_back(s);
  }
  return basis;
}

}  // namespace qkit
