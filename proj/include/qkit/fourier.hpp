#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qkit/circuit.hpp"
#include "qkit/classical.hpp"
#include "qkit/query.hpp"
#include "qkit/random.hpp"

namespace qkit {

// Hadamards, controlled rotations by 2 pi / 2^s and the final swaps; the
// unitary equals the DFT matrix with entries omega^{jk} / sqrt(2^n).
Circuit qft_circuit(int n);
// Same, dropping every controlled rotation with s > max_s.
Circuit approx_qft_circuit(int n, int max_s);
// The 2^n x 2^n DFT matrix.
ComplexMatrix dft_matrix(int n);

struct PhaseEstimate {
  std::string bits;  // phi_1 ... phi_n
  std::uint64_t value = 0;
  double phase = 0.0;  // value / 2^n
};

PhaseEstimate make_phase_estimate(std::uint64_t value, int n);

// Adds H on the ancillas, controlled U^{2^(n-1-l)} from ancilla l (repeated
// squaring) and the inverse QFT on the ancillas. Ancilla 0 is the most
// significant bit of the estimate.
void append_phase_estimation(Circuit& c, const ComplexMatrix& u, const std::vector<int>& ancillas,
                             const std::vector<int>& system);

// Throws ParameterError unless `eigenstate` is an eigenvector of u within 1e-9.
PhaseEstimate phase_estimate(const ComplexMatrix& u, const StateVector& eigenstate, int n, RandomSource& rng);
// Circuit-backed U, applied j times under control (needs 2^n - 1 copies).
PhaseEstimate phase_estimate(const Circuit& u, const StateVector& eigenstate, int n, RandomSource& rng);

// Smallest l with 2^l > N^2, so that N^2 < q <= 2N^2.
int period_address_bits(std::uint64_t N);

struct PeriodResult {
  std::uint64_t r = 0;
  int attempts = 0;
  std::vector<std::uint64_t> samples;  // measured b per attempt
};

// f is defined on q = 2^l inputs; candidates are denominators of
// best_approx(b, q, bound) accepted once f(r) = f(0).
PeriodResult find_period(const FunctionOracle& f, std::uint64_t bound, RandomSource& rng, int max_attempts = 64);
// One run of the period-finding circuit, returning the measured b.
std::uint64_t period_sample(const FunctionOracle& f, RandomSource& rng);

// a -> x^a mod N on period_address_bits(N) input bits.
FunctionOracle modexp_oracle(std::uint64_t x, std::uint64_t N);

struct ShorResult {
  std::uint64_t factor = 0;
  int attempts = 0;
  bool used_quantum = false;
};

// n must be odd, composite and not a prime power.
ShorResult shor_factor(std::uint64_t n, RandomSource& rng, int max_attempts = 64);

struct AbelianGroupSpec {
  std::vector<std::uint64_t> cycles;  // Z_{N_1} x ... x Z_{N_k}, each a power of two >= 2
  int bits() const;
  std::uint64_t order() const;
  // Element index (block 1 most significant) <-> per-cycle coordinates.
  std::vector<std::uint64_t> unpack(std::uint64_t index) const;
  std::uint64_t pack(const std::vector<std::uint64_t>& coords) const;
};

// One run of the standard algorithm; the label g has chi_g trivial on H.
std::vector<std::uint64_t> abelian_hsp_sample(const AbelianGroupSpec& g, const FunctionOracle& f, RandomSource& rng);
// Whether chi_g(h) = 1, i.e. sum_i g_i h_i / N_i is an integer.
bool character_trivial(const AbelianGroupSpec& g, const std::vector<std::uint64_t>& label,
                       const std::vector<std::uint64_t>& h);

}  // namespace qkit
