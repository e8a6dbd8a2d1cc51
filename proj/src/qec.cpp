#include "qkit/qec.hpp"

#include <cmath>

#include "qkit/errors.hpp"
#include "qkit/query.hpp"

namespace qkit {

bool operator==(const Syndrome& a, const Syndrome& b) {
  return a.bitflip == b.bitflip && a.phaseflip == b.phaseflip;
}

std::array<cplx, 4> pauli_error_decomposition(const ComplexMatrix& e) {
  if (e.rows() != 2 || e.cols() != 2) throw DimensionError("single-qubit error must be 2x2");
  const CVector c = pauli_decompose(e);
  return {c[0], c[1], c[2], c[3]};
}

Circuit shor9_encode_circuit() {
  Circuit c(9);
  c.add(gates::CNOT(0, 3));
  c.add(gates::CNOT(0, 6));
  for (int b : {0, 3, 6}) c.add(gates::H(b));
  for (int b : {0, 3, 6}) {
    c.add(gates::CNOT(b, b + 1));
    c.add(gates::CNOT(b, b + 2));
  }
  return c;
}

StateVector shor9_encode(const StateVector& q) {
  if (q.qubit_count() != 1) throw DimensionError("expected a single-qubit state");
  return simulate(shor9_encode_circuit(), tensor(q, StateVector(8)));
}

StateVector shor9_logical(int bit) { return shor9_encode(StateVector(1, bit ? 1 : 0)); }

void apply_error(StateVector& s, const SingleQubitError& e) {
  if (e.qubit < 1 || e.qubit > s.qubit_count()) throw ParameterError("error position out of range");
  apply_gate_inplace(s, e.matrix, {e.qubit - 1});
}

namespace {

int data_bit(std::uint64_t v, int q) { return static_cast<int>((v >> (8 - q)) & 1U); }

// Position 3b + pos + 1 of the minority bit in the first block that has one.
std::uint64_t bitflip_syndrome(std::uint64_t v) {
  for (int b = 0; b < 3; ++b) {
    const int x0 = data_bit(v, 3 * b), x1 = data_bit(v, 3 * b + 1), x2 = data_bit(v, 3 * b + 2);
    if (x0 == x1 && x1 == x2) continue;
    const int pos = (x1 == x2) ? 0 : (x0 == x2) ? 1 : 2;
    return static_cast<std::uint64_t>(3 * b + pos + 1);
  }
  return 0;
}

// Evaluated in the Hadamard basis: block parities p_b, compared pairwise.
std::uint64_t phaseflip_syndrome(std::uint64_t v) {
  int p[3];
  for (int b = 0; b < 3; ++b) p[b] = data_bit(v, 3 * b) ^ data_bit(v, 3 * b + 1) ^ data_bit(v, 3 * b + 2);
  const int s1 = p[0] ^ p[1], s2 = p[1] ^ p[2];
  if (!s1 && !s2) return 0;
  if (s1 && !s2) return 1;
  if (s1 && s2) return 2;
  return 3;
}

}  // namespace

Circuit shor9_syndrome_circuit() {
  Circuit c(15);
  c.add(oracle_unitary(FunctionOracle::from_function(9, 4, bitflip_syndrome), 0));
  for (int q = 0; q < 9; ++q) c.add(gates::H(q));
  GateOp phase = oracle_unitary(FunctionOracle::from_function(9, 2, phaseflip_syndrome), 0);
  phase.targets = {0, 1, 2, 3, 4, 5, 6, 7, 8, 13, 14};
  c.add(phase);
  for (int q = 0; q < 9; ++q) c.add(gates::H(q));
  return c;
}

CorrectionResult shor9_correct(const StateVector& state, RandomSource& rng) {
  if (state.qubit_count() != 9) throw DimensionError("expected a 9-qubit state");
  StateVector s = simulate(shor9_syndrome_circuit(), tensor(state, StateVector(6)));
  const std::uint64_t anc = measure_inplace(s, {9, 10, 11, 12, 13, 14}, rng);
  CorrectionResult out;
  out.syndrome.bitflip = static_cast<int>(anc >> 2);
  out.syndrome.phaseflip = static_cast<int>(anc & 3U);
  CVector data(512);
  for (std::uint64_t v = 0; v < 512; ++v) data[v] = s[(v << 6) | anc];
  out.state = StateVector::from_amplitudes(std::move(data));
  if (out.syndrome.bitflip >= 1 && out.syndrome.bitflip <= 9) apply_op(out.state, gates::X(out.syndrome.bitflip - 1));
  if (out.syndrome.phaseflip >= 1) apply_op(out.state, gates::Z(3 * (out.syndrome.phaseflip - 1)));
  return out;
}

Circuit detect4_encode_circuit() {
  Circuit c(4);
  c.add(gates::CNOT(0, 2));
  c.add(gates::H(0));
  c.add(gates::H(2));
  c.add(gates::CNOT(0, 1));
  c.add(gates::CNOT(2, 3));
  return c;
}

StateVector detect4_encode(const StateVector& q) {
  if (q.qubit_count() != 1) throw DimensionError("expected a single-qubit state");
  return simulate(detect4_encode_circuit(), tensor(q, StateVector(3)));
}

DetectResult detect4_check(const StateVector& state, RandomSource& rng) {
  if (state.qubit_count() != 4) throw DimensionError("expected a 4-qubit state");
  Circuit c(7);
  c.add(gates::CNOT(0, 4));
  c.add(gates::CNOT(1, 4));
  c.add(gates::CNOT(2, 5));
  c.add(gates::CNOT(3, 5));
  c.add(gates::H(6));
  for (int q = 0; q < 4; ++q) c.add(gates::CNOT(6, q));
  c.add(gates::H(6));
  StateVector s = simulate(c, tensor(state, StateVector(3)));
  const std::uint64_t m = measure_inplace(s, {4, 5, 6}, rng);
  DetectResult out;
  out.parity_12 = static_cast<int>((m >> 2) & 1U);
  out.parity_34 = static_cast<int>((m >> 1) & 1U);
  out.parity_xxxx = static_cast<int>(m & 1U);
  out.verdict = m == 0 ? DetectVerdict::Clean : DetectVerdict::ErrorDetected;
  CVector data(16);
  for (std::uint64_t v = 0; v < 16; ++v) data[v] = s[(v << 3) | m];
  out.state = StateVector::from_amplitudes(std::move(data));
  return out;
}

double repetition_error_rate(double p, int k) {
  if (p < 0.0 || p > 1.0) throw ParameterError("error rate must lie in [0, 1]");
  if (k < 0) throw ParameterError("level count must be nonnegative");
  for (int i = 0; i < k; ++i) p = 3.0 * p * p * (1.0 - p) + p * p * p;
  return p;
}

double repetition_bound(double p, int k) {
  if (p < 0.0 || p > 1.0) throw ParameterError("error rate must lie in [0, 1]");
  if (k < 0) throw ParameterError("level count must be nonnegative");
  return std::pow(3.0 * p, std::ldexp(1.0, k)) / 3.0;
}

}  // namespace qkit
