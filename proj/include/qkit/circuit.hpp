#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qkit/linalg.hpp"
#include "qkit/random.hpp"
#include "qkit/state.hpp"

namespace qkit {

enum class GateKind {
  H, X, Y, Z, S, T,
  RPhi,   // diag(1, e^{i angle})
  RS,     // diag(1, e^{2 pi i / 2^s})
  CNOT, CZ,
  CRPhi,  // controlled RPhi, targets (control, target)
  SWAP, TOFFOLI,
  Custom,            // arbitrary unitary on the targets
  ControlledCustom,  // targets = (control, then the unitary's qubits)
  Blackbox,          // code-defined basis-structured operator (oracles, reflections)
};

// An operator defined by code rather than by a stored matrix. Oracles use
// this to count queries on every application.
class Blackbox {
 public:
  virtual ~Blackbox() = default;
  virtual int arity() const = 0;
  virtual std::string name() const = 0;
  virtual void apply(StateVector& s, const std::vector<int>& targets, const std::vector<int>& controls,
                     const std::vector<int>& control_values, bool adjoint) const = 0;
  // Nonzero entries (row, value) of column `in` of the local matrix, or of
  // its adjoint when `adjoint` is set.
  virtual std::vector<std::pair<std::uint64_t, cplx>> column(std::uint64_t in, bool adjoint) const = 0;
};

struct GateOp {
  GateKind kind = GateKind::H;
  std::vector<int> targets;
  double angle = 0.0;
  int s = 0;
  std::shared_ptr<const ComplexMatrix> matrix;
  std::shared_ptr<const Blackbox> box;
  bool adjoint = false;
  // Additional controls, usable on any kind; control_values empty means all 1.
  std::vector<int> controls;
  std::vector<int> control_values;
};

bool operator==(const GateOp& a, const GateOp& b);

namespace gates {
GateOp H(int q);
GateOp X(int q);
GateOp Y(int q);
GateOp Z(int q);
GateOp S(int q);
GateOp T(int q);
GateOp RPhi(int q, double phi);
GateOp RS(int q, int s);
GateOp CNOT(int control, int target);
GateOp CZ(int a, int b);
GateOp CRPhi(int control, int target, double phi);
GateOp SWAP(int a, int b);
GateOp TOFFOLI(int c1, int c2, int target);
GateOp Custom(ComplexMatrix u, std::vector<int> targets);
GateOp ControlledCustom(ComplexMatrix u, int control, std::vector<int> targets);
GateOp Box(std::shared_ptr<const Blackbox> box, std::vector<int> targets);
}  // namespace gates

// Adds controls (value 1 unless given) to an operation.
GateOp with_controls(GateOp op, const std::vector<int>& controls, const std::vector<int>& values = {});

// R_s = diag(1, e^{2 pi i / 2^s})
ComplexMatrix rs_matrix(int s);
ComplexMatrix rphi_matrix(double phi);
// Local matrix of the operation on its targets (extra controls excluded).
ComplexMatrix local_matrix(const GateOp& op);
GateOp adjoint(const GateOp& op);

// [[I,0],[0,U]]
ComplexMatrix controlled(const ComplexMatrix& u);

class Circuit {
 public:
  explicit Circuit(int qubits = 0);

  int qubit_count() const { return n_; }
  const std::vector<GateOp>& ops() const { return ops_; }
  std::size_t size() const { return ops_.size(); }
  bool empty() const { return ops_.empty(); }

  Circuit& add(GateOp op);
  // Appends `other`, mapping its qubit i to qubit_map[i] (identity if empty).
  Circuit& append(const Circuit& other, const std::vector<int>& qubit_map = {});

  // Full unitary built column by column by simulation.
  ComplexMatrix unitary() const;

 private:
  int n_;
  std::vector<GateOp> ops_;
};

bool operator==(const Circuit& a, const Circuit& b);

void apply_op(StateVector& s, const GateOp& op);
StateVector simulate(const Circuit& c, const StateVector& input);
StateVector simulate(const Circuit& c, std::uint64_t basis_input);
void simulate_inplace(const Circuit& c, StateVector& s);

Circuit inverse(const Circuit& c);
// Every op gains the given controls.
Circuit controlled_circuit(const Circuit& c, const std::vector<int>& controls,
                           const std::vector<int>& values, int total_qubits,
                           const std::vector<int>& qubit_map = {});

// <output| U_T ... U_1 |input> by depth-first summation over the nonzero
// gate-local transitions; memory grows with the circuit length only.
cplx path_sum_amplitude(const Circuit& c, std::uint64_t input, std::uint64_t output);

// Uniformly chosen gates from the text-format catalog.
Circuit random_circuit(int n, int gate_count, RandomSource& rng);

// One op per line: "H 0", "CNOT 0 1", "RPHI 2 0.785398", "TOFFOLI 0 1 2".
// An optional "QUBITS n" header fixes the width; '#' starts a comment.
Circuit parse_circuit(std::string_view text);
std::string emit_circuit(const Circuit& c);

}  // namespace qkit
