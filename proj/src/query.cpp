#include "qkit/query.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "qkit/classical.hpp"
#include "qkit/errors.hpp"

namespace qkit {

namespace {
constexpr double kPi = std::numbers::pi;

class PhaseOracleBox final : public Blackbox {
 public:
  explicit PhaseOracleBox(BitOracle o) : o_(std::move(o)) {}
  int arity() const override { return o_.n(); }
  std::string name() const override { return "O_x(phase)"; }
  void apply(StateVector& s, const std::vector<int>& targets, const std::vector<int>& controls,
             const std::vector<int>& values, bool) const override {
    o_.count_one();
    const auto& bits = o_.bits();
    apply_diagonal(s, [&](std::uint64_t i) { return bits[i] ? cplx(-1.0) : cplx(1.0); }, targets, controls, values);
  }
  std::vector<std::pair<std::uint64_t, cplx>> column(std::uint64_t in, bool) const override {
    return {{in, o_.bits()[in] ? cplx(-1.0) : cplx(1.0)}};
  }

 private:
  BitOracle o_;
};

class BitOracleBox final : public Blackbox {
 public:
  explicit BitOracleBox(BitOracle o) : o_(std::move(o)) {}
  int arity() const override { return o_.n() + 1; }
  std::string name() const override { return "O_x"; }
  void apply(StateVector& s, const std::vector<int>& targets, const std::vector<int>& controls,
             const std::vector<int>& values, bool) const override {
    o_.count_one();
    apply_permutation(s, [this](std::uint64_t v) { return map(v); }, targets, controls, values);
  }
  std::vector<std::pair<std::uint64_t, cplx>> column(std::uint64_t in, bool) const override {
    return {{map(in), cplx(1.0)}};
  }

 private:
  std::uint64_t map(std::uint64_t v) const { return v ^ static_cast<std::uint64_t>(o_.bits()[v >> 1]); }
  BitOracle o_;
};

class FunctionOracleBox final : public Blackbox {
 public:
  explicit FunctionOracleBox(FunctionOracle f) : f_(std::move(f)) {}
  int arity() const override { return f_.input_bits() + f_.output_bits(); }
  std::string name() const override { return "O_f"; }
  void apply(StateVector& s, const std::vector<int>& targets, const std::vector<int>& controls,
             const std::vector<int>& values, bool) const override {
    f_.count_one();
    apply_permutation(s, [this](std::uint64_t v) { return map(v); }, targets, controls, values);
  }
  std::vector<std::pair<std::uint64_t, cplx>> column(std::uint64_t in, bool) const override {
    return {{map(in), cplx(1.0)}};
  }

 private:
  std::uint64_t map(std::uint64_t v) const {
    const int m = f_.output_bits();
    return v ^ f_.table()[v >> m];
  }
  FunctionOracle f_;
};

class ZeroReflectionBox final : public Blackbox {
 public:
  explicit ZeroReflectionBox(int k) : k_(k) {}
  int arity() const override { return k_; }
  std::string name() const override { return "R0"; }
  void apply(StateVector& s, const std::vector<int>& targets, const std::vector<int>& controls,
             const std::vector<int>& values, bool) const override {
    apply_diagonal(s, [](std::uint64_t i) { return i == 0 ? cplx(1.0) : cplx(-1.0); }, targets, controls, values);
  }
  std::vector<std::pair<std::uint64_t, cplx>> column(std::uint64_t in, bool) const override {
    return {{in, in == 0 ? cplx(1.0) : cplx(-1.0)}};
  }

 private:
  int k_;
};

std::vector<int> range(int first, int count) {
  std::vector<int> v(count);
  for (int i = 0; i < count; ++i) v[i] = first + i;
  return v;
}

void hadamards(Circuit& c, int first, int count) {
  for (int q = first; q < first + count; ++q) c.add(gates::H(q));
}

}  // namespace

BitOracle::BitOracle(std::vector<int> bits) : bits_(std::move(bits)), count_(std::make_shared<std::uint64_t>(0)) {
  n_ = log2_exact(bits_.size());
  for (int b : bits_)
    if (b != 0 && b != 1) throw ParameterError("database entries must be 0 or 1");
}

BitOracle BitOracle::from_function(int n, const std::function<int(std::uint64_t)>& f) {
  std::vector<int> bits(std::size_t{1} << n);
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = f(i) ? 1 : 0;
  return BitOracle(std::move(bits));
}

std::uint64_t BitOracle::solution_count() const {
  std::uint64_t t = 0;
  for (int b : bits_) t += static_cast<std::uint64_t>(b);
  return t;
}

int BitOracle::query(std::uint64_t i) const {
  count_one();
  return bits_.at(i);
}

FunctionOracle::FunctionOracle(int n_in, int n_out, std::vector<std::uint64_t> table)
    : n_in_(n_in), n_out_(n_out), table_(std::move(table)), count_(std::make_shared<std::uint64_t>(0)) {
  if (n_in < 0 || n_out < 0 || n_in + n_out > 62) throw ParameterError("oracle register sizes out of range");
  if (table_.size() != (std::size_t{1} << n_in)) throw DimensionError("function table must have 2^n entries");
  for (auto v : table_)
    if (v >> n_out) throw ParameterError("function value does not fit in the output register");
}

FunctionOracle FunctionOracle::from_function(int n_in, int n_out, const std::function<std::uint64_t(std::uint64_t)>& f) {
  std::vector<std::uint64_t> t(std::size_t{1} << n_in);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = f(i);
  return FunctionOracle(n_in, n_out, std::move(t));
}

std::uint64_t FunctionOracle::query(std::uint64_t i) const {
  count_one();
  return table_.at(i);
}

BitOracle parity_oracle(int n, std::uint64_t a) {
  return BitOracle::from_function(n, [a](std::uint64_t i) { return std::popcount(i & a) & 1; });
}

BitOracle random_balanced_oracle(int n, RandomSource& rng) {
  if (n < 1) throw ParameterError("a balanced database needs n >= 1");
  std::vector<int> bits(std::size_t{1} << n, 0);
  std::fill(bits.begin(), bits.begin() + bits.size() / 2, 1);
  for (std::size_t i = bits.size() - 1; i > 0; --i) std::swap(bits[i], bits[rng.below(i + 1)]);
  return BitOracle(std::move(bits));
}

BitOracle random_marked_oracle(int n, std::uint64_t t, RandomSource& rng) {
  const std::uint64_t N = std::uint64_t{1} << n;
  if (t > N) throw ParameterError("more marked entries than database positions");
  std::vector<std::uint64_t> idx(N);
  for (std::uint64_t i = 0; i < N; ++i) idx[i] = i;
  std::vector<int> bits(N, 0);
  for (std::uint64_t k = 0; k < t; ++k) {
    std::swap(idx[k], idx[k + rng.below(N - k)]);
    bits[idx[k]] = 1;
  }
  return BitOracle(std::move(bits));
}

FunctionOracle simon_instance(int n, std::uint64_t s, RandomSource& rng) {
  const std::uint64_t N = std::uint64_t{1} << n;
  if (s == 0 || s >= N) throw ParameterError("Simon's hidden string must be nonzero and fit in n bits");
  std::vector<std::uint64_t> labels(N);
  for (std::uint64_t i = 0; i < N; ++i) labels[i] = i;
  for (std::uint64_t i = N - 1; i > 0; --i) std::swap(labels[i], labels[rng.below(i + 1)]);
  std::vector<std::uint64_t> table(N, N);
  std::uint64_t next = 0;
  for (std::uint64_t i = 0; i < N; ++i) {
    if (table[i] != N) continue;
    table[i] = table[i ^ s] = labels[next++];
  }
  return FunctionOracle(n, n, std::move(table));
}

GateOp oracle_unitary(const BitOracle& o, OracleKind kind, int first_qubit) {
  if (kind == OracleKind::Phase) return gates::Box(std::make_shared<PhaseOracleBox>(o), range(first_qubit, o.n()));
  return gates::Box(std::make_shared<BitOracleBox>(o), range(first_qubit, o.n() + 1));
}

GateOp oracle_unitary(const FunctionOracle& f, int first_qubit) {
  return gates::Box(std::make_shared<FunctionOracleBox>(f), range(first_qubit, f.input_bits() + f.output_bits()));
}

GateOp zero_reflection(std::vector<int> qubits) {
  const int k = static_cast<int>(qubits.size());
  return gates::Box(std::make_shared<ZeroReflectionBox>(k), std::move(qubits));
}

Verdict deutsch_jozsa(const BitOracle& o, RandomSource& rng) {
  const int n = o.n();
  Circuit c(n);
  hadamards(c, 0, n);
  c.add(oracle_unitary(o, OracleKind::Phase));
  hadamards(c, 0, n);
  StateVector s = simulate(c, 0);
  return measure_inplace(s, all_qubits(n), rng) == 0 ? Verdict::Constant : Verdict::Balanced;
}

std::uint64_t bernstein_vazirani(const BitOracle& o, RandomSource& rng) {
  const int n = o.n();
  Circuit c(n);
  hadamards(c, 0, n);
  c.add(oracle_unitary(o, OracleKind::Phase));
  hadamards(c, 0, n);
  StateVector s = simulate(c, 0);
  return measure_inplace(s, all_qubits(n), rng);
}

std::uint64_t simon_sample(const FunctionOracle& f, RandomSource& rng) {
  const int n = f.input_bits();
  const int m = f.output_bits();
  Circuit c(n + m);
  hadamards(c, 0, n);
  c.add(oracle_unitary(f));
  StateVector s = simulate(c, 0);
  measure_inplace(s, range(n, m), rng);
  Circuit h(n + m);
  hadamards(h, 0, n);
  simulate_inplace(h, s);
  return measure_inplace(s, range(0, n), rng);
}

SimonResult simon(const FunctionOracle& f, RandomSource& rng) {
  const int n = f.input_bits();
  if (n < 1) throw ParameterError("Simon's problem needs n >= 1");
  SimonResult out;
  Gf2Matrix m{n, {}};
  while (gf2_rank(m) < n - 1) {
    if (out.runs >= 20 * n) {
      throw RetryLimitError("Simon: fewer than n-1 independent equations after " + std::to_string(out.runs) + " runs");
    }
    const std::uint64_t j = simon_sample(f, rng);
    ++out.runs;
    out.samples.push_back(j);
    if (j != 0) m.rows.push_back(j);
  }
  const auto basis = gf2_solve(m);
  if (basis.size() != 1) throw RetryLimitError("Simon: solution space is not one-dimensional");
  out.s = basis.front();
  return out;
}

int grover_iterations(std::uint64_t N, std::uint64_t t) {
  if (t == 0) throw ParameterError("Grover with t = 0 solutions: use grover_unknown_t");
  if (t > N) throw ParameterError("solution count exceeds the database size");
  const double theta = std::asin(std::sqrt(static_cast<double>(t) / static_cast<double>(N)));
  const double kt = kPi / (4.0 * theta) - 0.5;
  // nearbyint rounds half to even in the default rounding mode.
  return static_cast<int>(std::nearbyint(kt + 0.0));
}

double grover_success_probability(std::uint64_t N, std::uint64_t t, int k) {
  const double theta = std::asin(std::sqrt(static_cast<double>(t) / static_cast<double>(N)));
  const double s = std::sin((2 * k + 1) * theta);
  return s * s;
}

Circuit grover_circuit(const BitOracle& o, int k) {
  const int n = o.n();
  Circuit c(n);
  hadamards(c, 0, n);
  const GateOp oracle = oracle_unitary(o, OracleKind::Phase);
  const GateOp refl = zero_reflection(range(0, n));
  for (int i = 0; i < k; ++i) {
    c.add(oracle);
    hadamards(c, 0, n);
    c.add(refl);
    hadamards(c, 0, n);
  }
  return c;
}

StateVector grover_state(const BitOracle& o, std::uint64_t t) {
  return simulate(grover_circuit(o, grover_iterations(o.size(), t)), 0);
}

std::uint64_t grover(const BitOracle& o, std::uint64_t t, RandomSource& rng) {
  StateVector s = grover_state(o, t);
  return measure_inplace(s, all_qubits(o.n()), rng);
}

ExactGroverPlan exact_grover_plan(std::uint64_t N, std::uint64_t t) {
  if (t == 0 || t > N) throw ParameterError("exact Grover needs 0 < t <= N");
  const double theta = std::asin(std::sqrt(static_cast<double>(t) / static_cast<double>(N)));
  const double kt = kPi / (4.0 * theta) - 0.5;
  ExactGroverPlan plan;
  plan.k = static_cast<int>(std::ceil(kt - 1e-12));
  if (plan.k < 0) plan.k = 0;
  const double target = kPi / (2.0 * (2 * plan.k + 1));
  const double c = std::min(1.0, std::sin(target) / std::sin(theta));
  plan.gamma = std::acos(c);
  return plan;
}

StateVector grover_exact_state(const BitOracle& o, std::uint64_t t) {
  const int n = o.n();
  const ExactGroverPlan plan = exact_grover_plan(o.size(), t);
  Circuit a(n + 1);
  hadamards(a, 0, n);
  const double g = plan.gamma;
  a.add(gates::Custom(ComplexMatrix({{std::cos(g), -std::sin(g)}, {std::sin(g), std::cos(g)}}), {n}));
  // S_y: phase query on the address, active only when the padding qubit is 0.
  const GateOp sy = with_controls(oracle_unitary(o, OracleKind::Phase), {n}, {0});
  return amplitude_amplify(a, sy, std::pow(std::sin(kPi / (2.0 * (2 * plan.k + 1))), 2));
}

std::uint64_t grover_exact(const BitOracle& o, std::uint64_t t, RandomSource& rng) {
  StateVector s = grover_exact_state(o, t);
  return measure_inplace(s, range(0, o.n()), rng);
}

std::optional<std::uint64_t> grover_unknown_t(const BitOracle& o, RandomSource& rng) {
  const std::uint64_t N = o.size();
  for (std::uint64_t guess = N; guess >= 1; guess /= 2) {
    StateVector s = simulate(grover_circuit(o, grover_iterations(N, guess)), 0);
    const std::uint64_t i = measure_inplace(s, all_qubits(o.n()), rng);
    if (o.query(i) == 1) return i;
    if (guess == 1) break;
  }
  return std::nullopt;
}

int amplification_rounds(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw ParameterError("success probability must lie in (0, 1]");
  const double theta = std::asin(std::sqrt(p));
  return static_cast<int>(std::nearbyint(kPi / (4.0 * theta) - 0.5));
}

StateVector amplitude_amplify(const Circuit& prep, const GateOp& checker, double p) {
  const int k = amplification_rounds(p);
  const int n = prep.qubit_count();
  const Circuit prep_inv = inverse(prep);
  const GateOp refl = zero_reflection(range(0, n));
  StateVector s = simulate(prep, 0);
  for (int i = 0; i < k; ++i) {
    apply_op(s, checker);
    simulate_inplace(prep_inv, s);
    apply_op(s, refl);
    simulate_inplace(prep, s);
  }
  return s;
}

double good_weight(const StateVector& s, const std::function<bool(std::uint64_t)>& good) {
  double w = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i)
    if (good(i)) w += std::norm(s[i]);
  return w;
}

BitOracle sat_oracle(int n, const Cnf& formula) {
  for (const auto& clause : formula)
    for (int lit : clause)
      if (lit == 0 || std::abs(lit) > n) throw ParameterError("literal out of range");
  return BitOracle::from_function(n, [&](std::uint64_t a) {
    for (const auto& clause : formula) {
      bool sat = false;
      for (int lit : clause) {
        const int v = std::abs(lit);
        const int value = static_cast<int>((a >> (n - v)) & 1U);
        if ((lit > 0) == (value == 1)) {
          sat = true;
          break;
        }
      }
      if (!sat) return 0;
    }
    return 1;
  });
}

std::optional<std::uint64_t> grover_sat(int n, const Cnf& formula, RandomSource& rng) {
  return grover_unknown_t(sat_oracle(n, formula), rng);
}

}  // namespace qkit
