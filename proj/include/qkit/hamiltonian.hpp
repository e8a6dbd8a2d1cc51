#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "qkit/circuit.hpp"
#include "qkit/linalg.hpp"
#include "qkit/random.hpp"
#include "qkit/state.hpp"

namespace qkit {

// H = sum_j c_j P_j with real c_j.
struct PauliHamiltonian {
  int n = 0;
  std::vector<PauliString> terms;

  PauliHamiltonian() = default;
  PauliHamiltonian(int qubits, std::vector<PauliString> t);

  ComplexMatrix matrix() const;
  double one_norm() const;  // sum |c_j|
};

// e^{i c P tau} = cos(c tau) I + i sin(c tau) P for a Pauli string P.
ComplexMatrix pauli_exp(const PauliString& p, double tau);

// (prod_j e^{i H_j t / r})^r, terms in declaration order.
ComplexMatrix trotter_simulate(const PauliHamiltonian& h, double t, int r);

struct LcuResult {
  bool success = false;
  double probability = 0.0;  // probability of the all-zero ancilla outcome
  StateVector state;         // system register after the measurement
};

// Prepare (Householder), select (multiplexed V_j), unprepare on
// ceil(log2 m) ancillas placed before the system register.
Circuit lcu_circuit(const std::vector<Circuit>& unitaries, const std::vector<double>& weights);
int lcu_ancillas(std::size_t m);
LcuResult lcu_apply(const std::vector<Circuit>& unitaries, const std::vector<double>& weights,
                    const StateVector& state, RandomSource& rng);

// (-U R U^{-1} R)^k U applied to |0^a>|psi>, k = round(pi/(4 theta) - 1/2),
// R = (I - 2|0^a><0^a|) on the first a qubits. Returns the full state.
int oblivious_rounds(double theta);
StateVector oblivious_amplify(const Circuit& u, int ancillas, double theta, const StateVector& state);

struct HamSimResult {
  StateVector state;
  int blocks = 0;
  int order = 0;          // Taylor truncation K
  int terms = 0;          // distinct unitaries in the block combination
  int rounds = 0;         // oblivious amplification rounds per block
  int restarts = 0;
  double block_weight = 0.0;  // sum of the block coefficients
};

// Smallest K with sum_{k > K} x^k / k! <= bound.
int taylor_order(double x, double bound);

// sum_{k <= K} (i tau H)^k / k! written as sum_l w_l V_l with w_l > 0 and
// each V_l a Pauli string times a power of i; equal products are merged.
struct TaylorCombination {
  std::vector<PauliString> unitaries;
  std::vector<double> weights;
  ComplexMatrix matrix() const;
};
TaylorCombination taylor_combination(const PauliHamiltonian& h, double tau, int order);

// e^{iHt}|psi> to Euclidean error eps via truncated Taylor series blocks.
HamSimResult lcu_hamsim(const PauliHamiltonian& h, double t, double eps, const StateVector& state,
                        RandomSource& rng, int max_restarts = 16);

// Sparse access to a Hermitian 2^n x 2^n matrix with s locations per column.
class SparseMatrixOracle {
 public:
  // Locations per column: the nonzero rows in increasing order, padded with
  // the smallest remaining rows to exactly s entries.
  SparseMatrixOracle(const ComplexMatrix& a, int s);

  int n() const { return n_; }
  int sparsity() const { return s_; }
  cplx entry(std::uint64_t i, std::uint64_t j) const;
  std::uint64_t location(std::uint64_t j, std::uint64_t l) const;
  const ComplexMatrix& matrix() const { return a_; }

  std::uint64_t entry_queries() const { return counts_->entry; }
  std::uint64_t location_queries() const { return counts_->location; }
  void reset_counts() const { *counts_ = {}; }
  void count_entry() const { ++counts_->entry; }
  void count_location() const { ++counts_->location; }

 private:
  struct Counts {
    std::uint64_t entry = 0, location = 0;
  };
  int n_ = 0;
  int s_ = 0;
  ComplexMatrix a_;
  std::vector<std::vector<std::uint64_t>> loc_;  // column j -> s rows
  std::shared_ptr<Counts> counts_;
};

// U = W3^{-1} W2 W1 on 2n+1 qubits (flag, then two n-qubit registers); the
// top-left 2^n x 2^n block is A/s.
Circuit block_encode_sparse(const SparseMatrixOracle& a);
ComplexMatrix top_left_block(const ComplexMatrix& u, std::size_t dim);

// Random Hermitian matrix with at most s nonzeros per column and norm <= 1.
ComplexMatrix random_sparse_hermitian(int n, int s, RandomSource& rng);

struct HhlResult {
  StateVector state;
  double good_probability = 0.0;  // flag-0 weight before amplification
  int rounds = 0;
  int attempts = 0;
};

// Phase estimation on e^{i A pi/2}; eigenvalues of A must lie in
// [-1,-1/kappa] u [1/kappa,1] with lambda 2^{n_p} / 4 an integer.
HhlResult hhl_solve(const ComplexMatrix& a, const StateVector& b, double kappa, int n_p, RandomSource& rng,
                    int max_attempts = 32);
HhlResult hhl_solve(const PauliHamiltonian& a, const StateVector& b, double kappa, int n_p, RandomSource& rng,
                    int max_attempts = 32);
// Eigenvalue encoded by estimate j.
double hhl_decode(std::uint64_t j, int n_p);

}  // namespace qkit
