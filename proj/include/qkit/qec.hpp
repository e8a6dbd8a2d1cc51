#pragma once

#include <array>
#include <cstdint>

#include "qkit/circuit.hpp"
#include "qkit/random.hpp"
#include "qkit/state.hpp"

namespace qkit {

struct Syndrome {
  int bitflip = 0;     // e_b in 0..9, 0 = none
  int phaseflip = 0;   // e_p in 0..3, 0 = none
};

bool operator==(const Syndrome& a, const Syndrome& b);

struct SingleQubitError {
  int qubit = 1;  // 1..9
  ComplexMatrix matrix;
};

// The four Pauli coefficients (I, X, Y, Z) of a 2x2 operator.
std::array<cplx, 4> pauli_error_decomposition(const ComplexMatrix& e);

// CNOT 0->3, 0->6, H on 0,3,6, then CNOTs inside each block.
Circuit shor9_encode_circuit();
StateVector shor9_encode(const StateVector& q);
StateVector shor9_logical(int bit);

// Throws unless the error is a unitary 2x2 on qubit 1..9.
void apply_error(StateVector& s, const SingleQubitError& e);

// 15 qubits: data, four e_b ancillas, two e_p ancillas.
Circuit shor9_syndrome_circuit();

struct CorrectionResult {
  Syndrome syndrome;
  StateVector state;  // 9 qubits
};

// With two or more errors the returned syndrome is whatever is measured.
CorrectionResult shor9_correct(const StateVector& state, RandomSource& rng);

// Codewords (|00>+|11>)(|00>+|11>)/2 and (|00>-|11>)(|00>-|11>)/2.
Circuit detect4_encode_circuit();
StateVector detect4_encode(const StateVector& q);

enum class DetectVerdict { Clean, ErrorDetected };

struct DetectResult {
  DetectVerdict verdict = DetectVerdict::Clean;
  int parity_12 = 0, parity_34 = 0, parity_xxxx = 0;
  StateVector state;  // 4 qubits after the check
};

// Measures Z1Z2, Z3Z4 and XXXX through three ancillas.
DetectResult detect4_check(const StateVector& state, RandomSource& rng);

// Iterates p -> 3p^2(1-p) + p^3 k times.
double repetition_error_rate(double p, int k);
// (1/3)(3p)^{2^k}
double repetition_bound(double p, int k);

}  // namespace qkit
