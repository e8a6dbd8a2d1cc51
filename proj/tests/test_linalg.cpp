#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qkit/linalg.hpp"

using namespace qkit;
using oracle::Dense;

namespace {

const double kS = 1.0 / std::sqrt(2.0);

ComplexMatrix hadamard() { return ComplexMatrix{{kS, kS}, {kS, -kS}}; }

}  // namespace

TEST(Tensor, ScalarCase) {
  const ComplexMatrix a{{cplx(2, 1)}}, b{{cplx(0, 3)}};
  const ComplexMatrix c = tensor(a, b);
  ASSERT_EQ(c.rows(), 1u);
  EXPECT_LT(std::abs(c(0, 0) - cplx(2, 1) * cplx(0, 3)), 1e-15);
}

TEST(Tensor, HadamardTimesRotationMatchesPrintedMatrix) {
  const ComplexMatrix b{{0, 1}, {-1, 0}};
  const ComplexMatrix expected = kS * ComplexMatrix{{0, 1, 0, 1}, {-1, 0, -1, 0}, {0, 1, 0, -1}, {-1, 0, 1, 0}};
  EXPECT_LT(max_abs_diff(tensor(hadamard(), b), expected), 1e-15);
}

TEST(Tensor, IdentityCase) {
  EXPECT_LT(max_abs_diff(tensor(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4)),
            0.0 + 1e-15);
}

TEST(Tensor, MatchesOracleOnRectangularInputs) {
  oracle::Rng rng(3);
  Dense a = oracle::zeros(2, 3), b = oracle::zeros(3, 2);
  for (auto& r : a)
    for (auto& x : r) x = {rng.normal(), rng.normal()};
  for (auto& r : b)
    for (auto& x : r) x = {rng.normal(), rng.normal()};
  const ComplexMatrix c = tensor(oracle::to(a), oracle::to(b));
  ASSERT_EQ(c.rows(), 6u);
  ASSERT_EQ(c.cols(), 6u);
  EXPECT_LT(oracle::max_diff(oracle::from(c), oracle::kron(a, b)), 1e-14);
}

TEST(Tensor, AssociativeAndBilinear) {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a = oracle::to(oracle::random_unitary(2, rng));
    const ComplexMatrix b = oracle::to(oracle::random_hermitian(3, rng));
    const ComplexMatrix c = oracle::to(oracle::random_unitary(2, rng));
    const ComplexMatrix d = oracle::to(oracle::random_hermitian(2, rng));
    EXPECT_LT(max_abs_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))), 1e-12);
    const cplx s(rng.normal(), rng.normal());
    EXPECT_LT(max_abs_diff(tensor(s * a + d, b), s * tensor(a, b) + tensor(d, b)), 1e-12);
    EXPECT_LT(max_abs_diff(tensor(b, a + s * d), tensor(b, a) + s * tensor(b, d)), 1e-12);
  }
}

TEST(Pauli, LettersExpandToStandardMatrices) {
  for (char c : std::string("IXYZ")) EXPECT_LT(oracle::max_diff(oracle::from(pauli(c)), oracle::pauli(c)), 1e-15);
}

TEST(Pauli, StringMatrixMatchesOracle) {
  const PauliString p{"XZY", cplx(0.5, -0.25)};
  EXPECT_LT(oracle::max_diff(oracle::from(p.matrix()), oracle::pauli_string("XZY", cplx(0.5, -0.25))), 1e-15);
}

TEST(PauliDecompose, Identity) {
  const CVector c = pauli_decompose(ComplexMatrix::identity(2));
  ASSERT_EQ(c.size(), 4u);
  EXPECT_LT(std::abs(c[0] - 1.0), 1e-15);
  for (int i = 1; i < 4; ++i) EXPECT_LT(std::abs(c[i]), 1e-15);
}

TEST(PauliDecompose, PhaseGate) {
  const double phi = 0.7;
  const CVector c = pauli_decompose(ComplexMatrix{{1, 0}, {0, std::polar(1.0, phi)}});
  const cplx half = std::polar(1.0, phi / 2);
  EXPECT_LT(std::abs(c[0] - half * std::cos(phi / 2)), 1e-14);
  EXPECT_LT(std::abs(c[1]), 1e-14);
  EXPECT_LT(std::abs(c[2]), 1e-14);
  EXPECT_LT(std::abs(c[3] - cplx(0, -1) * half * std::sin(phi / 2)), 1e-14);
}

TEST(PauliDecompose, Hadamard) {
  const CVector c = pauli_decompose(hadamard());
  EXPECT_LT(std::abs(c[0]), 1e-15);
  EXPECT_LT(std::abs(c[1] - kS), 1e-15);
  EXPECT_LT(std::abs(c[2]), 1e-15);
  EXPECT_LT(std::abs(c[3] - kS), 1e-15);
}

TEST(PauliDecompose, RejectsNonPowerOfTwo) {
  EXPECT_THROW(pauli_decompose(ComplexMatrix::identity(3)), DimensionError);
}

TEST(PauliDecompose, ReconstructsTwoQubitMatrix) {
  oracle::Rng rng(5);
  const Dense u = oracle::random_unitary(4, rng);
  const CVector c = pauli_decompose(oracle::to(u));
  ASSERT_EQ(c.size(), 16u);
  Dense sum = oracle::zeros(4, 4);
  for (std::size_t i = 0; i < 16; ++i) {
    const Dense term = oracle::pauli_string(pauli_label(i, 2), c[i]);
    for (int r = 0; r < 4; ++r)
      for (int k = 0; k < 4; ++k) sum[r][k] += term[r][k];
  }
  EXPECT_LT(oracle::max_diff(sum, u), 1e-12);
  EXPECT_EQ(pauli_label(0, 2), "II");
  EXPECT_EQ(pauli_label(7, 2), "XZ");
}

TEST(PauliDecompose, UnitaryCoefficientsHaveUnitWeight) {
  oracle::Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const CVector c = pauli_decompose(oracle::to(oracle::random_unitary(2, rng)));
    double s = 0;
    for (auto x : c) s += std::norm(x);
    EXPECT_NEAR(s, 1.0, 1e-10);
  }
}

TEST(HermEig, Diagonal) {
  const HermitianEigen e = herm_eig(pauli('Z'));
  EXPECT_NEAR(e.values[0], 1.0, 1e-14);
  EXPECT_NEAR(e.values[1], -1.0, 1e-14);
  EXPECT_NEAR(std::abs(e.vectors(0, 0)), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(e.vectors(1, 1)), 1.0, 1e-14);
}

TEST(HermEig, PauliX) {
  const HermitianEigen e = herm_eig(pauli('X'));
  EXPECT_NEAR(e.values[0], 1.0, 1e-14);
  EXPECT_NEAR(e.values[1], -1.0, 1e-14);
  // |+> and |-> up to phase
  EXPECT_NEAR(std::abs(e.vectors(0, 0) + e.vectors(1, 0)) / 2, kS, 1e-12);
  EXPECT_NEAR(std::abs(e.vectors(0, 1) - e.vectors(1, 1)) / 2, kS, 1e-12);
}

TEST(HermEig, ReconstructionOrthonormalityAndOrder) {
  oracle::Rng rng(21);
  for (std::size_t dim : {2u, 5u, 8u, 16u}) {
    const Dense h = oracle::random_hermitian(dim, rng);
    const HermitianEigen e = herm_eig(oracle::to(h));
    const Dense v = oracle::from(e.vectors);
    Dense d = oracle::zeros(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) d[i][i] = e.values[i];
    EXPECT_LT(oracle::max_diff(oracle::matmul(oracle::matmul(v, d), oracle::dagger(v)), h), 1e-10);
    EXPECT_LT(oracle::max_diff(oracle::matmul(oracle::dagger(v), v), oracle::identity(dim)), 1e-10);
    for (std::size_t i = 1; i < dim; ++i) EXPECT_GE(e.values[i - 1], e.values[i]);
  }
}

TEST(HermEig, RejectsNonHermitian) {
  EXPECT_THROW(herm_eig(ComplexMatrix{{0, 1}, {0, 0}}), ParameterError);
}

TEST(HermEig, AcceptsSmallDriftAndDegenerateSpectra) {
  ComplexMatrix h = ComplexMatrix::identity(4);
  h(0, 1) = 1e-11;
  const auto vals = herm_eigvals(h);
  for (double v : vals) EXPECT_NEAR(v, 1.0, 1e-10);
}

TEST(HermExpm, ZeroTimeIsIdentity) {
  EXPECT_LT(max_abs_diff(herm_expm(pauli('X'), 0.0), ComplexMatrix::identity(2)), 1e-15);
}

TEST(HermExpm, ZTimesPiIsMinusIdentity) {
  EXPECT_LT(max_abs_diff(herm_expm(pauli('Z'), std::numbers::pi), cplx(-1) * ComplexMatrix::identity(2)), 1e-14);
}

TEST(HermExpm, MatchesTaylorOracle) {
  const std::vector<Dense> hs{oracle::pauli('X'), oracle::pauli('Z'),
                              Dense{{1, 1}, {1, -1}}};
  for (const auto& h : hs)
    EXPECT_LT(oracle::max_diff(oracle::from(herm_expm(oracle::to(h), 1.0)), oracle::expm_taylor(h, 1.0, 20)),
              1e-12);
  oracle::Rng rng(4);
  const Dense h = oracle::random_hermitian(8, rng, 0.5);
  EXPECT_LT(oracle::max_diff(oracle::from(herm_expm(oracle::to(h), -1.3)), oracle::expm_taylor(h, -1.3)), 1e-11);
}

TEST(HermExpm, GroupProperty) {
  oracle::Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    Dense h = oracle::random_hermitian(4, rng);
    const ComplexMatrix hm = oracle::to(h);
    const ComplexMatrix scaled = cplx(1.0 / op_norm(hm)) * hm;
    const double t1 = rng.normal(), t2 = rng.normal();
    EXPECT_LT(max_abs_diff(herm_expm(scaled, t1) * herm_expm(scaled, t2), herm_expm(scaled, t1 + t2)), 1e-9);
    EXPECT_TRUE(herm_expm(scaled, t1).is_unitary());
  }
}

TEST(OpNorm, EqualInputsGiveZero) {
  oracle::Rng rng(2);
  const ComplexMatrix u = oracle::to(oracle::random_unitary(4, rng));
  EXPECT_NEAR(op_norm_diff(u, u), 0.0, 1e-12);
}

TEST(OpNorm, IdentityMinusPhaseGate) {
  for (double phi : {0.1, 1.0, 2.5, std::numbers::pi}) {
    const ComplexMatrix r{{1, 0}, {0, std::polar(1.0, phi)}};
    EXPECT_NEAR(op_norm_diff(ComplexMatrix::identity(2), r), 2 * std::abs(std::sin(phi / 2)), 1e-12);
  }
}

TEST(OpNorm, DroppingOneGateFromProduct) {
  oracle::Rng rng(9);
  std::vector<ComplexMatrix> us;
  for (int i = 0; i < 4; ++i) us.push_back(oracle::to(oracle::random_unitary(4, rng)));
  ComplexMatrix full = ComplexMatrix::identity(4), dropped = ComplexMatrix::identity(4);
  for (int i = 0; i < 4; ++i) {
    full = us[i] * full;
    if (i != 2) dropped = us[i] * dropped;
  }
  EXPECT_NEAR(op_norm_diff(full, dropped), op_norm_diff(ComplexMatrix::identity(4), us[2]), 1e-10);
}

TEST(OpNorm, TriangleInequality) {
  oracle::Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = oracle::to(oracle::random_hermitian(4, rng));
    const ComplexMatrix b = oracle::to(oracle::random_unitary(4, rng));
    const ComplexMatrix c = oracle::to(oracle::random_hermitian(4, rng));
    EXPECT_LE(op_norm_diff(a, c), op_norm_diff(a, b) + op_norm_diff(b, c) + 1e-10);
  }
}

TEST(OpNorm, ShapeMismatchThrows) {
  EXPECT_THROW(op_norm_diff(ComplexMatrix::identity(2), ComplexMatrix::identity(4)), ParameterError);
}

TEST(OpNorm, LanczosAgreesWithDense) {
  oracle::Rng rng(31);
  Dense a = oracle::zeros(16, 16);
  for (auto& r : a)
    for (auto& x : r) x = {rng.normal(), rng.normal()};
  const ComplexMatrix m = oracle::to(a);
  const ComplexMatrix md = m.adjoint();
  const double lanczos = op_norm_lanczos([&](const CVector& v) { return m.apply(v); },
                                         [&](const CVector& v) { return md.apply(v); }, 16);
  EXPECT_NEAR(lanczos, op_norm(m), 1e-8);
}

TEST(Matrix, ConstructionChecks) {
  EXPECT_THROW(ComplexMatrix(2, 2, std::vector<cplx>(3)), ParameterError);
  ComplexMatrix m(2, 2);
  EXPECT_TRUE(m.is_finite());
  m(0, 0) = std::nan("");
  EXPECT_FALSE(m.is_finite());
  EXPECT_EQ(log2_exact(8), 3);
  EXPECT_THROW(log2_exact(6), DimensionError);
  EXPECT_EQ(ceil_log2(5), 3);
  EXPECT_EQ(ceil_log2(1), 0);
}

TEST(Matrix, HouseholderMapsE0ToTarget) {
  oracle::Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const CVector v = oracle::random_vector(8, rng);
    const ComplexMatrix h = householder_from_e0(v);
    EXPECT_TRUE(h.is_unitary());
    EXPECT_LT(oracle::max_diff(h.column(0), v), 1e-12);
  }
}

TEST(Matrix, PowerMatchesRepeatedProduct) {
  oracle::Rng rng(7);
  const ComplexMatrix u = oracle::to(oracle::random_unitary(4, rng));
  ComplexMatrix p = ComplexMatrix::identity(4);
  for (int i = 0; i < 13; ++i) p = u * p;
  EXPECT_LT(max_abs_diff(matrix_power(u, 13), p), 1e-12);
}
