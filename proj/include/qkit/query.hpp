#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "qkit/circuit.hpp"
#include "qkit/random.hpp"
#include "qkit/state.hpp"

namespace qkit {

// Database x in {0,1}^N, N = 2^n. Copies share the query counter.
class BitOracle {
 public:
  explicit BitOracle(std::vector<int> bits);
  static BitOracle from_function(int n, const std::function<int(std::uint64_t)>& f);

  int n() const { return n_; }
  std::uint64_t size() const { return bits_.size(); }
  int bit(std::uint64_t i) const { return bits_.at(i); }
  const std::vector<int>& bits() const { return bits_; }
  std::uint64_t solution_count() const;

  // One classical query (counted).
  int query(std::uint64_t i) const;
  std::uint64_t query_count() const { return *count_; }
  void reset_count() const { *count_ = 0; }
  void count_one() const { ++*count_; }

 private:
  int n_ = 0;
  std::vector<int> bits_;
  std::shared_ptr<std::uint64_t> count_;
};

// Table f: {0,1}^n -> {0,1}^m. Copies share the query counter.
class FunctionOracle {
 public:
  FunctionOracle(int n_in, int n_out, std::vector<std::uint64_t> table);
  static FunctionOracle from_function(int n_in, int n_out, const std::function<std::uint64_t(std::uint64_t)>& f);

  int input_bits() const { return n_in_; }
  int output_bits() const { return n_out_; }
  std::uint64_t value(std::uint64_t i) const { return table_.at(i); }
  const std::vector<std::uint64_t>& table() const { return table_; }

  std::uint64_t query(std::uint64_t i) const;
  std::uint64_t query_count() const { return *count_; }
  void reset_count() const { *count_ = 0; }
  void count_one() const { ++*count_; }

 private:
  int n_in_, n_out_;
  std::vector<std::uint64_t> table_;
  std::shared_ptr<std::uint64_t> count_;
};

// Instance generators.
BitOracle parity_oracle(int n, std::uint64_t a);  // x_i = i.a mod 2
BitOracle random_balanced_oracle(int n, RandomSource& rng);
BitOracle random_marked_oracle(int n, std::uint64_t t, RandomSource& rng);
// f(i) = f(i xor s) with distinct values across pairs (n output bits).
FunctionOracle simon_instance(int n, std::uint64_t s, RandomSource& rng);

enum class OracleKind { Bit, Phase };

// Bit kind acts on n+1 qubits starting at first_qubit (address, then target);
// phase kind on n qubits. Every application increments the query counter.
GateOp oracle_unitary(const BitOracle& o, OracleKind kind, int first_qubit = 0);
// |i, y> -> |i, y xor f(i)> on n_in + n_out qubits.
GateOp oracle_unitary(const FunctionOracle& f, int first_qubit = 0);

// 2|0^k><0^k| - I on the given qubits (no query).
GateOp zero_reflection(std::vector<int> qubits);

enum class Verdict { Constant, Balanced };

// Promise violations give an unspecified verdict.
Verdict deutsch_jozsa(const BitOracle& o, RandomSource& rng);
std::uint64_t bernstein_vazirani(const BitOracle& o, RandomSource& rng);

struct SimonResult {
  std::uint64_t s = 0;
  int runs = 0;
  std::vector<std::uint64_t> samples;
};

// Promise violations are not detected. Throws RetryLimitError after 20n runs.
SimonResult simon(const FunctionOracle& f, RandomSource& rng);
// One run: the measured j of the first register.
std::uint64_t simon_sample(const FunctionOracle& f, RandomSource& rng);

// round(pi/(4 theta) - 1/2), ties to even, theta = arcsin sqrt(t/N).
int grover_iterations(std::uint64_t N, std::uint64_t t);
double grover_success_probability(std::uint64_t N, std::uint64_t t, int k);

// The circuit H^n then k iterates (O_x, H^n R H^n).
Circuit grover_circuit(const BitOracle& o, int k);
// Final state before measurement for known t.
StateVector grover_state(const BitOracle& o, std::uint64_t t);
std::uint64_t grover(const BitOracle& o, std::uint64_t t, RandomSource& rng);

// Exact variant for known t via the padded database y_j = x_{j1..jn} and
// j_{n+1} = 0 with A = H^n (x) U_gamma; succeeds with probability 1.
struct ExactGroverPlan {
  int k = 0;
  double gamma = 0.0;
};
ExactGroverPlan exact_grover_plan(std::uint64_t N, std::uint64_t t);
StateVector grover_exact_state(const BitOracle& o, std::uint64_t t);
std::uint64_t grover_exact(const BitOracle& o, std::uint64_t t, RandomSource& rng);

// Guesses t = N, N/2, ..., 1, checking each candidate with one classical query.
std::optional<std::uint64_t> grover_unknown_t(const BitOracle& o, RandomSource& rng);

// k rounds of O_chi then A R A^{-1} applied to A|0>, k from p.
int amplification_rounds(double p);
StateVector amplitude_amplify(const Circuit& prep, const GateOp& checker, double p);

// Weight of the amplitudes on basis states i with good(i).
double good_weight(const StateVector& s, const std::function<bool(std::uint64_t)>& good);

// CNF over n variables; literal +v / -v, variables 1..n, variable 1 the most
// significant address bit.
using Cnf = std::vector<std::vector<int>>;
BitOracle sat_oracle(int n, const Cnf& formula);
std::optional<std::uint64_t> grover_sat(int n, const Cnf& formula, RandomSource& rng);

}  // namespace qkit
