#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qkit/linalg.hpp"
#include "qkit/random.hpp"

namespace qkit {

inline constexpr int kMaxQubits = 26;

// Dense pure state on n qubits. Basis index bits are b_1 b_2 ... b_n with
// qubit 1 (index 0 in code) the most significant bit.
class StateVector {
 public:
  StateVector() : StateVector(0) {}
  explicit StateVector(int qubits, std::uint64_t basis_index = 0);

  static StateVector from_amplitudes(CVector amplitudes, double tol = 1e-9);
  static StateVector uniform(int qubits);
  static StateVector random(int qubits, RandomSource& rng);

  int qubit_count() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  const CVector& amplitudes() const { return amps_; }
  // Raw access for kernels; callers are responsible for keeping the norm.
  CVector& amplitudes() { return amps_; }
  cplx operator[](std::size_t i) const { return amps_[i]; }

  double norm() const { return qkit::norm(amps_); }
  void normalize();
  std::vector<double> probabilities() const;

 private:
  int n_ = 0;
  CVector amps_;
};

StateVector tensor(const StateVector& a, const StateVector& b);

void check_qubit_count(int n);

// Applies `u` (2^k x 2^k, targets[0] is the most significant local bit) to
// the given target qubits, restricted to the subspace where every control
// qubit holds the matching control value (default 1). No unitarity check.
void apply_matrix(StateVector& s, const ComplexMatrix& u, const std::vector<int>& targets,
                  const std::vector<int>& controls = {}, const std::vector<int>& control_values = {});

// Checked variants: the gate must be unitary within 1e-9 and targets distinct.
void apply_gate_inplace(StateVector& s, const ComplexMatrix& gate, const std::vector<int>& targets);
StateVector apply_gate(StateVector s, const ComplexMatrix& gate, const std::vector<int>& targets);

// Multiplies each amplitude by phase(local value of the targets).
void apply_diagonal(StateVector& s, const std::function<cplx(std::uint64_t)>& phase,
                    const std::vector<int>& targets, const std::vector<int>& controls = {},
                    const std::vector<int>& control_values = {});
// Maps the local basis value v of the targets to perm(v); perm must be a
// bijection on [0, 2^k).
void apply_permutation(StateVector& s, const std::function<std::uint64_t(std::uint64_t)>& perm,
                       const std::vector<int>& targets, const std::vector<int>& controls = {},
                       const std::vector<int>& control_values = {});

// Local value of `qubits` (first listed = most significant) inside a basis index.
std::uint64_t extract_bits(std::uint64_t index, const std::vector<int>& qubits, int n);

// Inverse-CDF draw: branches below 1e-12 are never selected.
std::size_t sample_index(const std::vector<double>& probabilities, RandomSource& rng);

struct MeasurementResult {
  std::vector<int> bits;      // in the order the qubits were listed
  std::uint64_t outcome = 0;  // bits read as a binary number, first bit most significant
  double probability = 0.0;
  StateVector state;          // collapsed and renormalized
};

std::vector<double> marginal_probabilities(const StateVector& s, const std::vector<int>& qubits);
MeasurementResult measure_computational(const StateVector& s, const std::vector<int>& qubits,
                                        RandomSource& rng);
// Same as measure_computational but collapses `s` in place.
std::uint64_t measure_inplace(StateVector& s, const std::vector<int>& qubits, RandomSource& rng);
std::vector<int> all_qubits(int n);

class ProjectiveMeasurement {
 public:
  explicit ProjectiveMeasurement(std::vector<ComplexMatrix> projectors, double tol = 1e-9);
  const std::vector<ComplexMatrix>& projectors() const { return projectors_; }
  std::size_t dim() const { return projectors_.front().rows(); }
  std::vector<double> probabilities(const StateVector& s) const;

 private:
  std::vector<ComplexMatrix> projectors_;
};

struct ProjectiveResult {
  std::size_t index = 0;
  double probability = 0.0;
  StateVector state;
};

ProjectiveResult measure_projective(const StateVector& s, const ProjectiveMeasurement& m, RandomSource& rng);

class Povm {
 public:
  explicit Povm(std::vector<ComplexMatrix> elements, double tol = 1e-9);
  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  std::vector<double> probabilities(const StateVector& s) const;

 private:
  std::vector<ComplexMatrix> elements_;
};

std::size_t sample_povm(const StateVector& s, const Povm& p, RandomSource& rng);

double expectation(const StateVector& s, const ComplexMatrix& observable);

// Full 2^n operator for `op` acting on `targets` (first target most significant).
ComplexMatrix embed_operator(const ComplexMatrix& op, const std::vector<int>& targets, int n);

class DensityMatrix {
 public:
  DensityMatrix(int qubits, ComplexMatrix rho, double tol = 1e-9);
  static DensityMatrix from_pure(const StateVector& s);

  int qubit_count() const { return n_; }
  const ComplexMatrix& matrix() const { return rho_; }
  double purity() const;

 private:
  int n_;
  ComplexMatrix rho_;
};

// Keeps the listed qubits in ascending order.
DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<int> keep);
// Reduced state of a pure state without forming the full density matrix.
DensityMatrix reduced_density(const StateVector& s, std::vector<int> keep);

struct SchmidtDecomposition {
  std::vector<double> coefficients;  // descending, all > 1e-10
  std::vector<CVector> a_states;
  std::vector<CVector> b_states;
  std::size_t rank() const { return coefficients.size(); }
};

// Splits into the first `split` qubits (side A) and the rest (side B).
SchmidtDecomposition schmidt(const StateVector& s, int split);

double state_distance(const StateVector& a, const StateVector& b);
double total_variation_distance(const StateVector& a, const StateVector& b);
double fidelity(const StateVector& a, const StateVector& b);  // |<a|b>|^2
bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol = 1e-9);

}  // namespace qkit
