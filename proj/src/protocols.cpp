#include "qkit/protocols.hpp"

#include <algorithm>
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

void check_single_qubit(const StateVector& q) {
  if (q.qubit_count() != 1) throw DimensionError("expected a single-qubit state");
}

}  // namespace

// ---- teleportation and superdense coding ----

namespace {
Circuit teleport_alice_circuit() {
  Circuit c(3);
  c.add(gates::H(1));
  c.add(gates::CNOT(1, 2));
  c.add(gates::CNOT(0, 1));
  c.add(gates::H(0));
  return c;
}
}  // namespace

TeleportResult teleport(const StateVector& q, RandomSource& rng) {
  check_single_qubit(q);
  StateVector s = simulate(teleport_alice_circuit(), tensor(q, StateVector(2)));
  TeleportResult out;
  out.a = static_cast<int>(measure_inplace(s, {0}, rng));
  out.b = static_cast<int>(measure_inplace(s, {1}, rng));
  if (out.b) apply_op(s, gates::X(2));
  if (out.a) apply_op(s, gates::Z(2));
  const std::uint64_t prefix = (static_cast<std::uint64_t>(out.a) << 2) | (static_cast<std::uint64_t>(out.b) << 1);
  out.bob = StateVector::from_amplitudes({s[prefix], s[prefix | 1]});
  return out;
}

DensityMatrix teleport_bob_state_before_correction(const StateVector& q) {
  check_single_qubit(q);
  return reduced_density(simulate(teleport_alice_circuit(), tensor(q, StateVector(2))), {2});
}

EntangledTeleportResult teleport_entangled(const StateVector& pair, RandomSource& rng) {
  if (pair.qubit_count() != 2) throw DimensionError("expected a two-qubit state");
  // Qubits: input Q, reference R, Alice's EPR half, Bob's EPR half.
  Circuit c(4);
  c.add(gates::H(2));
  c.add(gates::CNOT(2, 3));
  c.add(gates::CNOT(0, 2));
  c.add(gates::H(0));
  StateVector s = simulate(c, tensor(pair, StateVector(2)));
  EntangledTeleportResult out;
  out.a = static_cast<int>(measure_inplace(s, {0}, rng));
  out.b = static_cast<int>(measure_inplace(s, {2}, rng));
  if (out.b) apply_op(s, gates::X(3));
  if (out.a) apply_op(s, gates::Z(3));
  CVector amps(4);
  for (int bob = 0; bob < 2; ++bob)
    for (int r = 0; r < 2; ++r) {
      const std::uint64_t idx = (static_cast<std::uint64_t>(out.a) << 3) | (static_cast<std::uint64_t>(r) << 2) |
                                (static_cast<std::uint64_t>(out.b) << 1) | static_cast<std::uint64_t>(bob);
      amps[bob * 2 + r] = s[idx];
    }
  out.state = StateVector::from_amplitudes(std::move(amps));
  return out;
}

StateVector superdense_encode(int a, int b) {
  Circuit c(2);
  c.add(gates::H(0));
  c.add(gates::CNOT(0, 1));
  if (a) c.add(gates::X(0));
  if (b) c.add(gates::Z(0));
  return simulate(c, 0);
}

std::pair<int, int> superdense_decode(const StateVector& s, RandomSource& rng) {
  if (s.qubit_count() != 2) throw DimensionError("expected a two-qubit state");
  Circuit c(2);
  c.add(gates::CNOT(0, 1));
  c.add(gates::H(0));
  StateVector t = simulate(c, s);
  const std::uint64_t m = measure_inplace(t, {0, 1}, rng);
  // First qubit carries b, second carries a.
  return {static_cast<int>(m & 1U), static_cast<int>(m >> 1)};
}

std::pair<int, int> superdense(int a, int b, RandomSource& rng) {
  return superdense_decode(superdense_encode(a != 0, b != 0), rng);
}

// ---- SWAP test, fingerprints, distributed Deutsch-Jozsa ----

namespace {
StateVector swap_test_state(const StateVector& s1, const StateVector& s2) {
  if (s1.qubit_count() != s2.qubit_count()) throw DimensionError("SWAP test needs equal qubit counts");
  const int n = s1.qubit_count();
  Circuit c(2 * n + 1);
  c.add(gates::H(0));
  for (int q = 0; q < n; ++q) c.add(with_controls(gates::SWAP(1 + q, 1 + n + q), {0}));
  c.add(gates::H(0));
  return simulate(c, tensor(StateVector(1), tensor(s1, s2)));
}
}  // namespace

double swap_test_one_probability(const StateVector& s1, const StateVector& s2) {
  return marginal_probabilities(swap_test_state(s1, s2), {0}).at(1);
}

int swap_test(const StateVector& s1, const StateVector& s2, RandomSource& rng) {
  StateVector s = swap_test_state(s1, s2);
  return static_cast<int>(measure_inplace(s, {0}, rng));
}

std::vector<int> hadamard_encode(std::uint64_t x, int n) {
  if (n < 0 || n > 20) throw ParameterError("Hadamard code length out of range");
  if (n < 64 && (x >> n)) throw ParameterError("message does not fit in n bits");
  std::vector<int> c(std::size_t{1} << n);
  for (std::size_t z = 0; z < c.size(); ++z) c[z] = __builtin_popcountll(x & z) & 1;
  return c;
}

int ldc_decode(const std::vector<int>& y, int i, RandomSource& rng) {
  const int n = log2_exact(y.size());
  if (i < 0 || i >= n) throw ParameterError("bit index out of range");
  const std::uint64_t z = rng.below(y.size());
  const std::uint64_t e = std::uint64_t{1} << (n - 1 - i);
  return y[z] ^ y[z ^ e];
}

std::vector<int> corrupt(std::vector<int> y, double delta, RandomSource& rng) {
  if (delta < 0.0 || delta > 1.0) throw ParameterError("corruption fraction must lie in [0, 1]");
  const auto count = static_cast<std::size_t>(std::floor(delta * static_cast<double>(y.size())));
  std::vector<std::size_t> idx(y.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::size_t i = 0; i < count; ++i) {
    std::swap(idx[i], idx[i + rng.below(idx.size() - i)]);
    y[idx[i]] ^= 1;
  }
  return y;
}

StateVector fingerprint_state(std::uint64_t x, int n) {
  const auto c = hadamard_encode(x, n);
  CVector amps(c.size());
  const double a = 1.0 / std::sqrt(static_cast<double>(c.size()));
  for (std::size_t j = 0; j < c.size(); ++j) amps[j] = c[j] ? -a : a;
  return StateVector::from_amplitudes(std::move(amps));
}

FingerprintResult fingerprint_equality(std::uint64_t x, std::uint64_t y, int n, int k, RandomSource& rng) {
  if (k < 1) throw ParameterError("need at least one SWAP test");
  const StateVector fx = fingerprint_state(x, n), fy = fingerprint_state(y, n);
  FingerprintResult out;
  out.inner_product = inner(fx.amplitudes(), fy.amplitudes()).real();
  for (int t = 0; t < k; ++t) {
    ++out.tests;
    if (swap_test(fx, fy, rng) == 1) {
      out.verdict = Equality::Different;
      break;
    }
  }
  return out;
}

namespace {
void check_dj_inputs(const std::vector<int>& x, const std::vector<int>& y) {
  if (x.size() != y.size()) throw DimensionError("inputs must have equal length");
  log2_exact(x.size());
}
}  // namespace

DistributedDjResult distributed_dj(const std::vector<int>& x, const std::vector<int>& y, RandomSource& rng) {
  check_dj_inputs(x, y);
  const int q = log2_exact(x.size());
  StateVector s = StateVector::uniform(q);
  // Alice's phases, then the register travels to Bob who adds his.
  apply_diagonal(s, [&](std::uint64_t i) { return x[i] ? cplx(-1.0) : cplx(1.0); }, all_qubits(q));
  apply_diagonal(s, [&](std::uint64_t i) { return y[i] ? cplx(-1.0) : cplx(1.0); }, all_qubits(q));
  for (int k = 0; k < q; ++k) apply_op(s, gates::H(k));
  DistributedDjResult out;
  out.outcome = measure_inplace(s, all_qubits(q), rng);
  out.equal = out.outcome == 0;
  return out;
}

std::pair<std::uint64_t, std::uint64_t> nonlocal_dj(const std::vector<int>& x, const std::vector<int>& y,
                                                     RandomSource& rng) {
  check_dj_inputs(x, y);
  const int q = log2_exact(x.size());
  CVector amps(std::size_t{1} << (2 * q), cplx(0.0));
  const double a = 1.0 / std::sqrt(static_cast<double>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) amps[(i << q) | i] = a;
  StateVector s = StateVector::from_amplitudes(std::move(amps));
  apply_diagonal(s, [&](std::uint64_t i) { return x[i] ? cplx(-1.0) : cplx(1.0); }, range(0, q));
  apply_diagonal(s, [&](std::uint64_t i) { return y[i] ? cplx(-1.0) : cplx(1.0); }, range(q, q));
  for (int k = 0; k < 2 * q; ++k) apply_op(s, gates::H(k));
  const std::uint64_t m = measure_inplace(s, all_qubits(2 * q), rng);
  return {m >> q, m & ((std::uint64_t{1} << q) - 1)};
}

// ---- non-local games ----

ComplexMatrix rotation(double theta) {
  return ComplexMatrix{{std::cos(theta), -std::sin(theta)}, {std::sin(theta), std::cos(theta)}};
}

ChshStrategy ChshStrategy::deterministic(std::array<int, 2> a, std::array<int, 2> b) {
  ChshStrategy s;
  s.kind = Kind::Deterministic;
  s.alice = a;
  s.bob = b;
  return s;
}

ChshStrategy ChshStrategy::quantum_reference() {
  ChshStrategy s;
  s.kind = Kind::Quantum;
  const double r = 1.0 / std::sqrt(2.0);
  s.shared_state = {r, 0.0, 0.0, -r};
  s.alice_angle = {-kPi / 16.0, 3.0 * kPi / 16.0};
  s.bob_angle = {-kPi / 16.0, 3.0 * kPi / 16.0};
  return s;
}

namespace {

StateVector chsh_rotated(const ChshStrategy& s, int x, int y) {
  StateVector st = StateVector::from_amplitudes(s.shared_state);
  apply_matrix(st, rotation(s.alice_angle[x]), {0});
  apply_matrix(st, rotation(s.bob_angle[y]), {1});
  return st;
}

}  // namespace

std::array<double, 4> chsh_win_probabilities(const ChshStrategy& s) {
  std::array<double, 4> p{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      const int target = x & y;
      double w = 0.0;
      switch (s.kind) {
        case ChshStrategy::Kind::Deterministic:
          w = ((s.alice[x] ^ s.bob[y]) == target) ? 1.0 : 0.0;
          break;
        case ChshStrategy::Kind::SharedRandom: {
          double total = 0.0;
          for (const auto& [weight, t] : s.mixture) {
            total += weight;
            if ((t[x] ^ t[2 + y]) == target) w += weight;
          }
          if (std::abs(total - 1.0) > 1e-9) throw ParameterError("mixture weights must sum to 1");
          break;
        }
        case ChshStrategy::Kind::Quantum: {
          const auto probs = chsh_rotated(s, x, y).probabilities();
          for (int ab = 0; ab < 4; ++ab)
            if (((ab >> 1) ^ (ab & 1)) == target) w += probs[ab];
          break;
        }
      }
      p[2 * x + y] = w;
    }
  return p;
}

ChshReport play_chsh(const ChshStrategy& s, int trials, RandomSource& rng) {
  if (trials < 0) throw ParameterError("trial count must be nonnegative");
  ChshReport r;
  r.exact = chsh_win_probabilities(s);
  std::array<int, 4> wins{};
  for (int t = 0; t < trials; ++t) {
    const int x = rng.bit(), y = rng.bit();
    int a = 0, b = 0;
    switch (s.kind) {
      case ChshStrategy::Kind::Deterministic:
        a = s.alice[x];
        b = s.bob[y];
        break;
      case ChshStrategy::Kind::SharedRandom: {
        std::vector<double> w;
        for (const auto& m : s.mixture) w.push_back(m.first);
        const auto& table = s.mixture[sample_index(w, rng)].second;
        a = table[x];
        b = table[2 + y];
        break;
      }
      case ChshStrategy::Kind::Quantum: {
        StateVector st = chsh_rotated(s, x, y);
        const std::uint64_t m = measure_inplace(st, {0, 1}, rng);
        a = static_cast<int>(m >> 1);
        b = static_cast<int>(m & 1U);
        break;
      }
    }
    ++r.plays[2 * x + y];
    if ((a ^ b) == (x & y)) ++wins[2 * x + y];
  }
  int total_wins = 0;
  for (int i = 0; i < 4; ++i) {
    r.empirical[i] = r.plays[i] ? static_cast<double>(wins[i]) / r.plays[i] : 0.0;
    r.average_exact += r.exact[i] / 4.0;
    total_wins += wins[i];
  }
  r.average_empirical = trials ? static_cast<double>(total_wins) / trials : 0.0;
  return r;
}

std::pair<double, int> chsh_best_classical() {
  double best = 0.0;
  int perfect = 0;
  for (int code = 0; code < 16; ++code) {
    const auto p = chsh_win_probabilities(
        ChshStrategy::deterministic({code & 1, (code >> 1) & 1}, {(code >> 2) & 1, (code >> 3) & 1}));
    const double avg = (p[0] + p[1] + p[2] + p[3]) / 4.0;
    best = std::max(best, avg);
    if (avg == 1.0) ++perfect;
  }
  return {best, perfect};
}

const std::array<std::array<std::string, 3>, 3>& magic_square_observables() {
  static const std::array<std::array<std::string, 3>, 3> table{{
      {"XX", "YZ", "ZY"},
      {"YY", "ZX", "XZ"},
      {"ZZ", "XY", "YX"},
  }};
  return table;
}

namespace {

int measure_observable(StateVector& s, const std::string& label, const std::vector<int>& qubits, RandomSource& rng) {
  const ComplexMatrix o = PauliString{label, 1.0}.matrix();
  const ComplexMatrix id = ComplexMatrix::identity(o.rows());
  const ComplexMatrix plus = cplx(0.5) * (id + o);
  const ComplexMatrix minus = cplx(0.5) * (id - o);
  const int n = s.qubit_count();
  const ProjectiveMeasurement m({embed_operator(plus, qubits, n), embed_operator(minus, qubits, n)});
  ProjectiveResult r = measure_projective(s, m, rng);
  s = std::move(r.state);
  return static_cast<int>(r.index);
}

}  // namespace

MagicSquareResult play_magic_square(int x, int y, RandomSource& rng) {
  if (x < 1 || x > 3 || y < 1 || y > 3) throw ParameterError("magic square indices must be 1..3");
  const double r = 1.0 / std::sqrt(2.0);
  const CVector singlet{0.0, r, -r, 0.0};
  StateVector s = StateVector::from_amplitudes(kron(singlet, singlet));
  // kron gives order (A1, B1, A2, B2).
  const auto& obs = magic_square_observables();
  MagicSquareResult out;
  for (int k = 0; k < 3; ++k) out.a[k] = measure_observable(s, obs[x - 1][k], {0, 2}, rng);
  for (int k = 0; k < 3; ++k) out.b[k] = measure_observable(s, obs[k][y - 1], {1, 3}, rng);
  out.win = magic_square_wins(x, y, out.a, out.b);
  return out;
}

bool magic_square_wins(int x, int y, const std::array<int, 3>& a, const std::array<int, 3>& b) {
  return ((a[0] ^ a[1] ^ a[2]) == 0) && ((b[0] ^ b[1] ^ b[2]) == 1) && a[y - 1] == b[x - 1];
}

int magic_square_classical_wins(const std::array<std::array<int, 3>, 3>& alice,
                                const std::array<std::array<int, 3>, 3>& bob) {
  int wins = 0;
  for (int x = 1; x <= 3; ++x)
    for (int y = 1; y <= 3; ++y) {
      const std::array<int, 3> b{bob[0][y - 1], bob[1][y - 1], bob[2][y - 1]};
      if (magic_square_wins(x, y, alice[x - 1], b)) ++wins;
    }
  return wins;
}

namespace {

StateVector mermin_state(int x, int y, int z) {
  if ((x ^ y ^ z) != 0) throw ParameterError("Mermin inputs must satisfy x xor y xor z = 0");
  StateVector s = StateVector::from_amplitudes({0.5, 0, 0, -0.5, 0, -0.5, -0.5, 0});
  const int in[3] = {x, y, z};
  for (int p = 0; p < 3; ++p)
    if (in[p]) apply_op(s, gates::H(p));
  return s;
}

}  // namespace

std::array<int, 3> play_mermin(int x, int y, int z, RandomSource& rng) {
  StateVector s = mermin_state(x, y, z);
  const std::uint64_t m = measure_inplace(s, {0, 1, 2}, rng);
  return {static_cast<int>((m >> 2) & 1U), static_cast<int>((m >> 1) & 1U), static_cast<int>(m & 1U)};
}

double mermin_win_probability(int x, int y, int z) {
  const auto p = mermin_state(x, y, z).probabilities();
  const int target = x | y | z;
  double w = 0.0;
  for (int abc = 0; abc < 8; ++abc)
    if ((__builtin_popcount(abc) & 1) == target) w += p[abc];
  return w;
}

int mermin_best_classical() {
  static const int inputs[4][3] = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  int best = 0;
  for (int code = 0; code < 64; ++code) {
    // Each party's answer table occupies two bits: answer to input 0, then 1.
    int wins = 0;
    for (const auto& in : inputs) {
      int parity = 0;
      for (int p = 0; p < 3; ++p) parity ^= (code >> (2 * p + in[p])) & 1;
      if (parity == (in[0] | in[1] | in[2])) ++wins;
    }
    best = std::max(best, wins);
  }
  return best;
}

// ---- BB84 ----

int InterceptResend::intercept(StateVector& qubit, RandomSource& rng) const {
  check_single_qubit(qubit);
  apply_matrix(qubit, rotation(theta_).adjoint(), {0});
  const int e = static_cast<int>(measure_inplace(qubit, {0}, rng));
  qubit = StateVector(1, static_cast<std::uint64_t>(e));
  apply_matrix(qubit, rotation(theta_), {0});
  return e;
}

Bb84Transcript bb84_run(int n, const Eavesdropper& eve, double error_threshold, RandomSource& rng) {
  if (n < 16) throw ParameterError("BB84 needs n >= 16");
  Bb84Transcript t;
  std::size_t guesses = 0, correct_guesses = 0;
  for (int i = 0; i < n; ++i) {
    const int a = rng.bit(), basis = rng.bit(), bob_basis = rng.bit();
    StateVector q(1, static_cast<std::uint64_t>(a));
    if (basis) apply_op(q, gates::H(0));
    const int guess = eve.intercept(q, rng);
    if (guess >= 0) {
      ++guesses;
      if (guess == a) ++correct_guesses;
    }
    if (bob_basis) apply_op(q, gates::H(0));
    const int result = static_cast<int>(measure_inplace(q, {0}, rng));
    t.alice_bits.push_back(a);
    t.alice_bases.push_back(basis);
    t.bob_bases.push_back(bob_basis);
    t.bob_results.push_back(result);
    t.eve_guesses.push_back(guess);
    if (basis == bob_basis) t.matched.push_back(static_cast<std::size_t>(i));
  }
  std::size_t matched_errors = 0;
  for (auto i : t.matched)
    if (t.alice_bits[i] != t.bob_results[i]) ++matched_errors;
  t.matched_error = t.matched.empty() ? 0.0 : static_cast<double>(matched_errors) / t.matched.size();
  t.eve_accuracy = guesses ? static_cast<double>(correct_guesses) / guesses : 0.0;

  // Random subset of floor(n/4) matched positions (all of them if fewer).
  std::vector<std::size_t> pool = t.matched;
  const std::size_t want = std::min(pool.size(), static_cast<std::size_t>(n / 4));
  for (std::size_t i = 0; i < want; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
  t.tested.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(want));
  std::sort(t.tested.begin(), t.tested.end());
  std::size_t test_errors = 0;
  for (auto i : t.tested)
    if (t.alice_bits[i] != t.bob_results[i]) ++test_errors;
  t.observed_error = t.tested.empty() ? 0.0 : static_cast<double>(test_errors) / t.tested.size();
  t.abort = t.observed_error > error_threshold;
  for (auto i : t.matched) {
    if (std::binary_search(t.tested.begin(), t.tested.end(), i)) continue;
    t.alice_key.push_back(t.alice_bits[i]);
    t.bob_key.push_back(t.bob_results[i]);
  }
  return t;
}

}  // namespace qkit
