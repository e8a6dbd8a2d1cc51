#include "qkit/fourier.hpp"

#include <cmath>
#include <numbers>

#include "qkit/errors.hpp"

namespace qkit {

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<int> range(int first, int count) {
  std::vector<int> v(count);
  for (int i = 0; i < count; ++i) v[i] = first + i;
  return v;
}

void check_eigenvector(const CVector& psi, const CVector& u_psi) {
  const cplx lambda = inner(psi, u_psi);
  double err = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) err += std::norm(u_psi[i] - lambda * psi[i]);
  if (std::sqrt(err) > 1e-9) throw ParameterError("input state is not an eigenvector of U within 1e-9");
}

}  // namespace

Circuit approx_qft_circuit(int n, int max_s) {
  if (n < 1) throw ParameterError("QFT needs at least one qubit");
  check_qubit_count(n);
  if (max_s < 1) throw ParameterError("rotation cutoff must be >= 1");
  Circuit c(n);
  for (int i = 0; i < n; ++i) {
    c.add(gates::H(i));
    for (int j = i + 1; j < n; ++j) {
      const int s = j - i + 1;
      if (s > max_s) break;
      c.add(gates::CRPhi(j, i, 2.0 * kPi / std::ldexp(1.0, s)));
    }
  }
  for (int i = 0; i < n / 2; ++i) c.add(gates::SWAP(i, n - 1 - i));
  return c;
}

Circuit qft_circuit(int n) { return approx_qft_circuit(n, std::max(n, 1)); }

ComplexMatrix dft_matrix(int n) {
  const std::size_t d = std::size_t{1} << n;
  ComplexMatrix f(d, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k)
      f(j, k) = std::polar(scale, 2.0 * kPi * static_cast<double>((j * k) % d) / static_cast<double>(d));
  return f;
}

PhaseEstimate make_phase_estimate(std::uint64_t value, int n) {
  PhaseEstimate p;
  p.value = value;
  p.phase = std::ldexp(static_cast<double>(value), -n);
  for (int l = n - 1; l >= 0; --l) p.bits.push_back(((value >> l) & 1U) ? '1' : '0');
  return p;
}

void append_phase_estimation(Circuit& c, const ComplexMatrix& u, const std::vector<int>& ancillas,
                             const std::vector<int>& system) {
  const int n = static_cast<int>(ancillas.size());
  if (u.rows() != (std::size_t{1} << system.size())) throw DimensionError("U does not match the system register");
  for (int a : ancillas) c.add(gates::H(a));
  // power = U^{2^(n-1-l)}, built from the least significant ancilla upwards.
  ComplexMatrix power = u;
  for (int l = n - 1; l >= 0; --l) {
    c.add(with_controls(gates::Custom(power, system), {ancillas[l]}));
    if (l > 0) power = power * power;
  }
  c.append(inverse(qft_circuit(n)), ancillas);
}

PhaseEstimate phase_estimate(const ComplexMatrix& u, const StateVector& eigenstate, int n, RandomSource& rng) {
  if (n < 1) throw ParameterError("phase estimation needs n >= 1");
  if (!u.is_unitary(1e-9)) throw ParameterError("U is not unitary");
  if (u.rows() != eigenstate.dim()) throw DimensionError("U does not match the eigenstate");
  check_eigenvector(eigenstate.amplitudes(), u.apply(eigenstate.amplitudes()));
  const int m = eigenstate.qubit_count();
  Circuit c(n + m);
  append_phase_estimation(c, u, range(0, n), range(n, m));
  StateVector s = simulate(c, tensor(StateVector(n), eigenstate));
  return make_phase_estimate(measure_inplace(s, range(0, n), rng), n);
}

PhaseEstimate phase_estimate(const Circuit& u, const StateVector& eigenstate, int n, RandomSource& rng) {
  if (n < 1) throw ParameterError("phase estimation needs n >= 1");
  const int m = u.qubit_count();
  if (m != eigenstate.qubit_count()) throw DimensionError("U does not match the eigenstate");
  check_eigenvector(eigenstate.amplitudes(), simulate(u, eigenstate).amplitudes());
  Circuit c(n + m);
  for (int a = 0; a < n; ++a) c.add(gates::H(a));
  const std::vector<int> system = range(n, m);
  for (int l = 0; l < n; ++l) {
    const Circuit cu = controlled_circuit(u, {l}, {}, n + m, system);
    for (std::uint64_t rep = 0; rep < (std::uint64_t{1} << (n - 1 - l)); ++rep) c.append(cu);
  }
  c.append(inverse(qft_circuit(n)), range(0, n));
  StateVector s = simulate(c, tensor(StateVector(n), eigenstate));
  return make_phase_estimate(measure_inplace(s, range(0, n), rng), n);
}

int period_address_bits(std::uint64_t N) {
  if (N < 1) throw ParameterError("bound must be positive");
  const unsigned __int128 sq = static_cast<unsigned __int128>(N) * N;
  int l = 0;
  while ((static_cast<unsigned __int128>(1) << l) <= sq) ++l;
  return l;
}

std::uint64_t period_sample(const FunctionOracle& f, RandomSource& rng) {
  const int l = f.input_bits();
  const int m = f.output_bits();
  Circuit first(l + m);
  for (int q = 0; q < l; ++q) first.add(gates::H(q));
  first.add(oracle_unitary(f));
  StateVector s = simulate(first, 0);
  measure_inplace(s, range(l, m), rng);
  Circuit second(l + m);
  second.append(qft_circuit(l), range(0, l));
  simulate_inplace(second, s);
  return measure_inplace(s, range(0, l), rng);
}

PeriodResult find_period(const FunctionOracle& f, std::uint64_t bound, RandomSource& rng, int max_attempts) {
  if (bound < 1) throw ParameterError("period bound must be positive");
  const std::uint64_t q = std::uint64_t{1} << f.input_bits();
  if (bound >= q) throw ParameterError("period bound must be smaller than the domain size");
  PeriodResult out;
  const std::uint64_t f0 = f.query(0);
  while (out.attempts < max_attempts) {
    ++out.attempts;
    const std::uint64_t b = period_sample(f, rng);
    out.samples.push_back(b);
    const Fraction c = best_approx(BigInt(b), BigInt(q), BigInt(bound));
    const auto r = c.den.convert_to<std::uint64_t>();
    if (r >= 1 && r < q && f.query(r) == f0) {
      out.r = r;
      return out;
    }
  }
  throw RetryLimitError("period finding did not verify a period within " + std::to_string(max_attempts) +
                        " attempts");
}

FunctionOracle modexp_oracle(std::uint64_t x, std::uint64_t N) {
  if (N < 2) throw ParameterError("modulus must be >= 2");
  const int l = period_address_bits(N);
  const int m = std::max(1, ceil_log2(N));
  check_qubit_count(l + m);
  return FunctionOracle::from_function(l, m, [&](std::uint64_t a) { return modexp_u64(x, a, N); });
}

ShorResult shor_factor(std::uint64_t n, RandomSource& rng, int max_attempts) {
  if (n < 3 || n % 2 == 0) throw ParameterError("shor_factor needs an odd number >= 3");
  if (is_prime(n)) throw ParameterError(std::to_string(n) + " is prime");
  const auto [base, k] = perfect_power(n);
  if (k >= 2 && is_prime(base)) {
    throw ParameterError(std::to_string(n) + " is a prime power " + std::to_string(base) + "^" + std::to_string(k));
  }
  ShorResult out;
  while (out.attempts < max_attempts) {
    ++out.attempts;
    const std::uint64_t x = 2 + rng.below(n - 2);
    const std::uint64_t g = gcd(BigInt(x), BigInt(n)).convert_to<std::uint64_t>();
    if (g > 1) {
      out.factor = g;
      return out;
    }
    out.used_quantum = true;
    const FunctionOracle f = modexp_oracle(x, n);
    std::uint64_t r = 0;
    try {
      r = find_period(f, n, rng, 16).r;
    } catch (const RetryLimitError&) {
      continue;
    }
    if (r % 2 != 0) continue;
    const std::uint64_t y = modexp_u64(x, r / 2, n);
    if (y == n - 1) continue;
    for (std::uint64_t cand : {y + n - 1, y + 1}) {
      const std::uint64_t d = gcd(BigInt(cand % n), BigInt(n)).convert_to<std::uint64_t>();
      if (d > 1 && d < n) {
        out.factor = d;
        return out;
      }
    }
  }
  throw RetryLimitError("no factor of " + std::to_string(n) + " after " + std::to_string(max_attempts) + " attempts");
}

int AbelianGroupSpec::bits() const {
  int b = 0;
  for (auto c : cycles) {
    if (c < 2 || !is_power_of_two(c)) throw ParameterError("cycle sizes must be powers of two >= 2");
    b += log2_exact(c);
  }
  return b;
}

std::uint64_t AbelianGroupSpec::order() const { return std::uint64_t{1} << bits(); }

std::vector<std::uint64_t> AbelianGroupSpec::unpack(std::uint64_t index) const {
  std::vector<std::uint64_t> out(cycles.size());
  for (std::size_t i = cycles.size(); i-- > 0;) {
    out[i] = index % cycles[i];
    index /= cycles[i];
  }
  return out;
}

std::uint64_t AbelianGroupSpec::pack(const std::vector<std::uint64_t>& coords) const {
  if (coords.size() != cycles.size()) throw DimensionError("coordinate count does not match the group");
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < cycles.size(); ++i) index = index * cycles[i] + coords[i] % cycles[i];
  return index;
}

std::vector<std::uint64_t> abelian_hsp_sample(const AbelianGroupSpec& g, const FunctionOracle& f, RandomSource& rng) {
  const int nb = g.bits();
  if (f.input_bits() != nb) throw DimensionError("oracle domain does not match the group");
  const int m = f.output_bits();
  check_qubit_count(nb + m);
  Circuit first(nb + m);
  for (int q = 0; q < nb; ++q) first.add(gates::H(q));
  first.add(oracle_unitary(f));
  StateVector s = simulate(first, 0);
  measure_inplace(s, range(nb, m), rng);
  Circuit second(nb + m);
  int offset = 0;
  for (auto c : g.cycles) {
    const int b = log2_exact(c);
    second.append(qft_circuit(b), range(offset, b));
    offset += b;
  }
  simulate_inplace(second, s);
  return g.unpack(measure_inplace(s, range(0, nb), rng));
}

bool character_trivial(const AbelianGroupSpec& g, const std::vector<std::uint64_t>& label,
                       const std::vector<std::uint64_t>& h) {
  // Common denominator is the largest cycle since all are powers of two.
  std::uint64_t big = 1;
  for (auto c : g.cycles) big = std::max(big, c);
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < g.cycles.size(); ++i) acc += (label[i] * h[i] % g.cycles[i]) * (big / g.cycles[i]);
  return acc % big == 0;
}

}  // namespace qkit
