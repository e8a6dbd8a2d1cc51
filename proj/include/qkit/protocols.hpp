#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qkit/circuit.hpp"
#include "qkit/random.hpp"
#include "qkit/state.hpp"

namespace qkit {

// ---- teleportation and superdense coding ----

struct TeleportResult {
  int a = 0;  // Alice's measurement of the input qubit
  int b = 0;  // Alice's measurement of her EPR half
  StateVector bob;
};

// Qubits: input, Alice's EPR half, Bob's EPR half. Bob applies X^b then Z^a.
TeleportResult teleport(const StateVector& q, RandomSource& rng);
// Bob's reduced state after Alice's operations, before any measurement or correction.
DensityMatrix teleport_bob_state_before_correction(const StateVector& q);

struct EntangledTeleportResult {
  int a = 0, b = 0;
  StateVector state;  // (Bob's qubit, reference qubit)
};
// Teleports the first qubit of a two-qubit state; the second stays put.
EntangledTeleportResult teleport_entangled(const StateVector& pair, RandomSource& rng);

// Alice's EPR half gets X^a then Z^b; returns the two-qubit state sent.
StateVector superdense_encode(int a, int b);
std::pair<int, int> superdense_decode(const StateVector& s, RandomSource& rng);
std::pair<int, int> superdense(int a, int b, RandomSource& rng);

// ---- SWAP test, fingerprints, distributed Deutsch-Jozsa ----

double swap_test_one_probability(const StateVector& s1, const StateVector& s2);
int swap_test(const StateVector& s1, const StateVector& s2, RandomSource& rng);

// C(x)_z = x.z mod 2 over all z in {0,1}^n; x and z read most significant bit first.
std::vector<int> hadamard_encode(std::uint64_t x, int n);
// Returns y[z] xor y[z xor e_i] for uniform z; i in [0, n), e_i the i-th bit from the left.
int ldc_decode(const std::vector<int>& y, int i, RandomSource& rng);
// Flips floor(delta * len) distinct random positions.
std::vector<int> corrupt(std::vector<int> y, double delta, RandomSource& rng);

// sum_j (-1)^{C(x)_j} |j> / sqrt(2^n) on n qubits.
StateVector fingerprint_state(std::uint64_t x, int n);

enum class Equality { Equal, Different };

struct FingerprintResult {
  Equality verdict = Equality::Equal;
  int tests = 0;
  double inner_product = 0.0;  // <phi_x|phi_y>
};

FingerprintResult fingerprint_equality(std::uint64_t x, std::uint64_t y, int n, int k, RandomSource& rng);

struct DistributedDjResult {
  bool equal = false;
  std::uint64_t outcome = 0;
};

// x, y in {0,1}^n with n a power of two; log n qubits are exchanged.
DistributedDjResult distributed_dj(const std::vector<int>& x, const std::vector<int>& y, RandomSource& rng);

// Shared sum_i |i>|i>/sqrt(n); each party applies its phases, H and measures.
std::pair<std::uint64_t, std::uint64_t> nonlocal_dj(const std::vector<int>& x, const std::vector<int>& y,
                                                     RandomSource& rng);

// ---- non-local games ----

// R(theta) = [[cos, -sin], [sin, cos]]
ComplexMatrix rotation(double theta);

struct ChshStrategy {
  enum class Kind { Deterministic, SharedRandom, Quantum };
  Kind kind = Kind::Deterministic;
  std::array<int, 2> alice{};  // answer per input (deterministic)
  std::array<int, 2> bob{};
  // Shared randomness: (weight, {a(0), a(1), b(0), b(1)}).
  std::vector<std::pair<double, std::array<int, 4>>> mixture;
  // Quantum: two-qubit shared state, rotation angle per input.
  CVector shared_state;
  std::array<double, 2> alice_angle{};
  std::array<double, 2> bob_angle{};

  static ChshStrategy deterministic(std::array<int, 2> a, std::array<int, 2> b);
  // (|00> - |11>)/sqrt 2 with angles -pi/16 and 3pi/16 for both parties.
  static ChshStrategy quantum_reference();
};

// Exact win probability for inputs (x, y) at index 2x + y.
std::array<double, 4> chsh_win_probabilities(const ChshStrategy& s);

struct ChshReport {
  std::array<double, 4> exact{};
  std::array<double, 4> empirical{};
  std::array<int, 4> plays{};
  double average_exact = 0.0;
  double average_empirical = 0.0;
};

ChshReport play_chsh(const ChshStrategy& s, int trials, RandomSource& rng);
// Maximum average over all 16 deterministic strategies, and how many win all four inputs.
std::pair<double, int> chsh_best_classical();

// Row x, column y observables (1-based) as two-qubit Pauli labels.
const std::array<std::array<std::string, 3>, 3>& magic_square_observables();

struct MagicSquareResult {
  std::array<int, 3> a{};
  std::array<int, 3> b{};
  bool win = false;
};

// Two singlets on qubits (A1, B1, A2, B2); sequential projective measurements.
MagicSquareResult play_magic_square(int x, int y, RandomSource& rng);
bool magic_square_wins(int x, int y, const std::array<int, 3>& a, const std::array<int, 3>& b);
// Alice answers row x with A[x-1], Bob answers column y with column y-1 of B.
int magic_square_classical_wins(const std::array<std::array<int, 3>, 3>& alice,
                                const std::array<std::array<int, 3>, 3>& bob);

// Throws ParameterError unless x xor y xor z = 0.
std::array<int, 3> play_mermin(int x, int y, int z, RandomSource& rng);
double mermin_win_probability(int x, int y, int z);
// Best number of promise inputs won by a deterministic strategy (of 64).
int mermin_best_classical();

// ---- BB84 ----

class Eavesdropper {
 public:
  virtual ~Eavesdropper() = default;
  virtual std::string name() const = 0;
  // May measure or replace the transiting qubit; returns Eve's guess of the bit, or -1.
  virtual int intercept(StateVector& qubit, RandomSource& rng) const = 0;
};

class NoEavesdropper final : public Eavesdropper {
 public:
  std::string name() const override { return "none"; }
  int intercept(StateVector&, RandomSource&) const override { return -1; }
};

// Measures in {R(theta)|0>, R(theta)|1>} and resends the observed basis state.
class InterceptResend final : public Eavesdropper {
 public:
  explicit InterceptResend(double theta) : theta_(theta) {}
  std::string name() const override { return "intercept-resend"; }
  double theta() const { return theta_; }
  int intercept(StateVector& qubit, RandomSource& rng) const override;

 private:
  double theta_;
};

struct Bb84Transcript {
  std::vector<int> alice_bits, alice_bases, bob_bases, bob_results;
  std::vector<int> eve_guesses;       // -1 where Eve made no guess
  std::vector<std::size_t> matched;   // i with equal bases
  std::vector<std::size_t> tested;    // floor(n/4) of the matched positions
  double observed_error = 0.0;        // on the tested positions
  double matched_error = 0.0;         // over all matched positions
  double eve_accuracy = 0.0;          // fraction of Eve's guesses equal to Alice's bit
  bool abort = false;
  std::vector<int> alice_key, bob_key;  // matched, untested positions
};

Bb84Transcript bb84_run(int n, const Eavesdropper& eve, double error_threshold, RandomSource& rng);

}  // namespace qkit
