#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qkit/circuit.hpp"

using namespace qkit;
using oracle::Dense;

namespace {

const double kS = 1.0 / std::sqrt(2.0);

// Full unitary as the product of independently embedded local matrices.
Dense dense_unitary(const Circuit& c) {
  const int n = c.qubit_count();
  Dense u = oracle::identity(std::size_t{1} << n);
  for (const auto& op : c.ops()) {
    Dense local = oracle::from(local_matrix(op));
    std::vector<int> targets = op.targets;
    for (std::size_t k = op.controls.size(); k-- > 0;) {
      const bool on_zero = !op.control_values.empty() && op.control_values[k] == 0;
      const std::size_t d = local.size();
      Dense grown = oracle::identity(2 * d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          if (on_zero) {
            grown[i][j] = local[i][j];
          } else {
            grown[d + i][d + j] = local[i][j];
          }
        }
      local = grown;
      targets.insert(targets.begin(), op.controls[k]);
    }
    u = oracle::matmul(oracle::embed(local, targets, n), u);
  }
  return u;
}

std::vector<GateOp> catalog(int n) {
  std::vector<GateOp> ops{gates::H(0), gates::X(0), gates::Y(0), gates::Z(0), gates::S(0), gates::T(0),
                          gates::RPhi(0, 0.37), gates::RS(0, 3)};
  if (n >= 2) {
    ops.push_back(gates::CNOT(0, 1));
    ops.push_back(gates::CZ(1, 0));
    ops.push_back(gates::CRPhi(1, 0, -1.1));
    ops.push_back(gates::SWAP(0, 1));
  }
  if (n >= 3) ops.push_back(gates::TOFFOLI(2, 0, 1));
  return ops;
}

}  // namespace

TEST(Simulate, BellCircuitWithZ) {
  Circuit c(2);
  c.add(gates::H(0)).add(gates::CNOT(0, 1)).add(gates::Z(1));
  const StateVector s = simulate(c, 0);
  EXPECT_LT(oracle::max_diff(s.amplitudes(), oracle::Vec{kS, 0, 0, -kS}), 1e-15);
}

TEST(Simulate, EmptyCircuitIsIdentity) {
  oracle::Rng rng(1);
  const StateVector s = oracle::random_state(3, rng);
  EXPECT_LT(state_distance(simulate(Circuit(3), s), s), 1e-15);
  EXPECT_THROW(simulate(Circuit(2), s), DimensionError);
}

TEST(Simulate, HxhEqualsZ) {
  oracle::Rng rng(2);
  Circuit hxh(1), z(1);
  hxh.add(gates::H(0)).add(gates::X(0)).add(gates::H(0));
  z.add(gates::Z(0));
  for (int i = 0; i < 10; ++i) {
    const StateVector s = oracle::random_state(1, rng);
    EXPECT_LT(state_distance(simulate(hxh, s), simulate(z, s)), 1e-12);
  }
}

TEST(Circuit, AddValidatesTargets) {
  Circuit c(2);
  EXPECT_THROW(c.add(gates::H(2)), ParameterError);
  EXPECT_THROW(c.add(gates::CNOT(1, 1)), ParameterError);
  GateOp bad = gates::H(0);
  bad.targets = {0, 1};
  EXPECT_THROW(c.add(bad), ParameterError);
  EXPECT_THROW(gates::Custom(ComplexMatrix{{1, 1}, {0, 1}}, {0}), ParameterError);
  EXPECT_THROW(c.add(with_controls(gates::X(0), {0})), ParameterError);
}

TEST(Circuit, UnitaryMatchesDenseProductOracle) {
  oracle::Rng orng(3);
  RandomSource rng(3);
  for (int n = 1; n <= 4; ++n) {
    Circuit c = random_circuit(n, 12, rng);
    c.add(gates::Custom(oracle::to(oracle::random_unitary(2, orng)), {n - 1}));
    if (n >= 3) c.add(with_controls(gates::H(0), {2, 1}, {0, 1}));
    if (n >= 3) c.add(with_controls(gates::Y(1), {0, 2}));
    EXPECT_LT(oracle::max_diff(oracle::from(c.unitary()), dense_unitary(c)), 1e-12) << "n=" << n;
  }
}

TEST(Circuit, ControlValuesSelectZeroBranch) {
  Circuit c(2);
  c.add(with_controls(gates::X(1), {0}, {0}));
  EXPECT_LT(oracle::max_diff(simulate(c, 0b00).amplitudes(), oracle::Vec{0, 1, 0, 0}), 1e-15);
  EXPECT_LT(oracle::max_diff(simulate(c, 0b10).amplitudes(), oracle::Vec{0, 0, 1, 0}), 1e-15);
}

TEST(Inverse, Examples) {
  EXPECT_TRUE(inverse(Circuit(2)).empty());
  Circuit t(1);
  t.add(gates::T(0));
  const Circuit ti = inverse(t);
  ASSERT_EQ(ti.size(), 1u);
  EXPECT_EQ(ti.ops()[0].kind, GateKind::RPhi);
  EXPECT_NEAR(ti.ops()[0].angle, -std::numbers::pi / 4, 1e-15);
}

TEST(Inverse, RandomRoundTrip) {
  RandomSource rng(4);
  oracle::Rng orng(4);
  for (int trial = 0; trial < 10; ++trial) {
    Circuit c = random_circuit(4, 20, rng);
    c.add(gates::ControlledCustom(oracle::to(oracle::random_unitary(4, orng)), 3, {0, 2}));
    const StateVector s = oracle::random_state(4, orng);
    EXPECT_LT(state_distance(simulate(inverse(c), simulate(c, s)), s), 1e-9);
  }
}

TEST(Controlled, Examples) {
  const ComplexMatrix cnot{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
  EXPECT_LT(max_abs_diff(controlled(pauli('X')), cnot), 1e-15);
  EXPECT_LT(max_abs_diff(controlled(ComplexMatrix::identity(2)), ComplexMatrix::identity(4)), 1e-15);
  const ComplexMatrix cz = controlled(pauli('Z'));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(cz(i, j), i == j ? cplx(i == 3 ? -1 : 1) : cplx(0));
  EXPECT_THROW(controlled(ComplexMatrix{{2, 0}, {0, 1}}), ParameterError);
}

TEST(Identities, HadamardConjugatedCnotSwapsRoles) {
  Circuit a(2), b(2);
  a.add(gates::H(0)).add(gates::H(1)).add(gates::CNOT(0, 1)).add(gates::H(0)).add(gates::H(1));
  b.add(gates::CNOT(1, 0));
  EXPECT_LT(max_abs_diff(a.unitary(), b.unitary()), 1e-10);
}

TEST(Identities, ThreeCnotsMakeSwap) {
  Circuit a(2), b(2);
  a.add(gates::CNOT(0, 1)).add(gates::CNOT(1, 0)).add(gates::CNOT(0, 1));
  b.add(gates::SWAP(0, 1));
  EXPECT_LT(max_abs_diff(a.unitary(), b.unitary()), 1e-12);
}

TEST(Identities, CatalogGatesAreUnitary) {
  for (const auto& op : catalog(3)) {
    const ComplexMatrix g = local_matrix(op);
    EXPECT_LT(max_abs_diff(g * g.adjoint(), ComplexMatrix::identity(g.rows())), 1e-12);
    EXPECT_LT(max_abs_diff(local_matrix(adjoint(op)), g.adjoint()), 1e-12);
  }
  EXPECT_LT(std::abs(rs_matrix(2)(1, 1) - cplx(0, 1)), 1e-15);
}

TEST(PathSum, EmptyCircuit) {
  const Circuit c(3);
  for (std::uint64_t i = 0; i < 8; ++i)
    for (std::uint64_t o = 0; o < 8; ++o) EXPECT_EQ(path_sum_amplitude(c, i, o), cplx(i == o ? 1 : 0));
}

TEST(PathSum, SingleHadamard) {
  Circuit c(1);
  c.add(gates::H(0));
  EXPECT_NEAR(std::abs(path_sum_amplitude(c, 0, 0) - kS), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(path_sum_amplitude(c, 1, 1) + kS), 0.0, 1e-15);
}

TEST(PathSum, AgreesWithSimulationOnRandomCircuits) {
  RandomSource rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(5));
    const int gates_count = static_cast<int>(rng.below(11));
    const Circuit c = random_circuit(n, gates_count, rng);
    const std::uint64_t in = rng.below(std::uint64_t{1} << n);
    const std::uint64_t out = rng.below(std::uint64_t{1} << n);
    EXPECT_LT(std::abs(path_sum_amplitude(c, in, out) - simulate(c, in)[out]), 1e-9);
  }
  const Circuit c = random_circuit(4, 8, rng);
  const StateVector s = simulate(c, 3);
  for (std::uint64_t o = 0; o < 16; ++o) EXPECT_LT(std::abs(path_sum_amplitude(c, 3, o) - s[o]), 1e-9);
}

TEST(Text, RoundTrip) {
  RandomSource rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const Circuit c = random_circuit(4, 15, rng);
    const Circuit parsed = parse_circuit(emit_circuit(c));
    EXPECT_EQ(parsed.qubit_count(), 4);
    EXPECT_LT(max_abs_diff(parsed.unitary(), c.unitary()), 1e-12);
    EXPECT_EQ(emit_circuit(parsed), emit_circuit(c));
  }
}

TEST(Text, ParsesDocumentedExampleLines) {
  const Circuit c = parse_circuit("# comment\nH 0\nCNOT 0 1\nRPHI 2 0.7853981634\nTOFFOLI 0 1 2\n");
  EXPECT_EQ(c.qubit_count(), 3);
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c.ops()[2].kind, GateKind::RPhi);
  EXPECT_NEAR(c.ops()[2].angle, std::numbers::pi / 4, 1e-10);
  EXPECT_EQ(parse_circuit("QUBITS 5\nH 0\n").qubit_count(), 5);
}

TEST(Text, RejectsMalformedInput) {
  EXPECT_THROW(parse_circuit("FOO 0\n"), ParameterError);
  EXPECT_THROW(parse_circuit("CNOT 0\n"), ParameterError);
  EXPECT_THROW(parse_circuit("H -1\n"), ParameterError);
  EXPECT_THROW(parse_circuit("RPHI 0 abc\n"), ParameterError);
  EXPECT_THROW(parse_circuit("QUBITS 1\nCNOT 0 1\n"), ParameterError);
  EXPECT_THROW(parse_circuit("CNOT 1 1\n"), ParameterError);
}

TEST(ControlledCircuit, MatchesControlledUnitary) {
  RandomSource rng(7);
  const Circuit inner = random_circuit(2, 8, rng);
  const Circuit outer = controlled_circuit(inner, {0}, {}, 3, {1, 2});
  EXPECT_LT(max_abs_diff(outer.unitary(), controlled(inner.unitary())), 1e-12);
}

TEST(Append, QubitMap) {
  Circuit inner(1);
  inner.add(gates::X(0));
  Circuit c(3);
  c.append(inner, {2});
  EXPECT_NEAR(std::abs(simulate(c, 0)[1]), 1.0, 1e-15);
  EXPECT_THROW(Circuit(1).append(c), ParameterError);
}
