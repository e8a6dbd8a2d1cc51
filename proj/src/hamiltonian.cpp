#include "qkit/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "qkit/errors.hpp"
#include "qkit/fourier.hpp"
#include "qkit/query.hpp"

namespace qkit {

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<int> range(int first, int count) {
  std::vector<int> v(count);
  for (int i = 0; i < count; ++i) v[i] = first + i;
  return v;
}

std::vector<int> bits_of(std::uint64_t value, int width) {
  std::vector<int> out(width);
  for (int i = 0; i < width; ++i) out[i] = static_cast<int>((value >> (width - 1 - i)) & 1U);
  return out;
}

// Amplitudes of the last n qubits given that the leading qubits hold `prefix`.
StateVector system_part(const StateVector& s, int n, std::uint64_t prefix) {
  CVector out(std::size_t{1} << n);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s[(prefix << n) | i];
  StateVector r(n);
  r.amplitudes() = std::move(out);
  r.normalize();
  return r;
}

cplx i_power(int k) {
  static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((k % 4) + 4) % 4];
}

// Single-qubit Pauli product a*b = i^phase c.
std::pair<char, int> pauli_product(char a, char b) {
  if (a == 'I') return {b, 0};
  if (b == 'I') return {a, 0};
  if (a == b) return {'I', 0};
  constexpr char cyc[] = "XYZ";
  auto index = [&](char p) { return p == 'X' ? 0 : p == 'Y' ? 1 : 2; };
  const int ia = index(a), ib = index(b);
  const char c = cyc[3 - ia - ib];
  return {c, (ib == (ia + 1) % 3) ? 1 : 3};
}

}  // namespace

PauliHamiltonian::PauliHamiltonian(int qubits, std::vector<PauliString> t) : n(qubits), terms(std::move(t)) {
  check_qubit_count(n);
  for (const auto& p : terms) {
    if (p.qubit_count() != n) throw DimensionError("Pauli term " + p.label + " has the wrong length");
    if (std::abs(p.coefficient.imag()) > 1e-12) throw ParameterError("Hamiltonian coefficients must be real");
    for (char c : p.label)
      if (std::string("IXYZ").find(c) == std::string::npos) throw ParameterError("bad Pauli letter");
  }
}

ComplexMatrix PauliHamiltonian::matrix() const {
  const std::size_t d = std::size_t{1} << n;
  ComplexMatrix h(d, d);
  for (const auto& p : terms) h += p.matrix();
  return h;
}

double PauliHamiltonian::one_norm() const {
  double s = 0.0;
  for (const auto& p : terms) s += std::abs(p.coefficient.real());
  return s;
}

ComplexMatrix pauli_exp(const PauliString& p, double tau) {
  const double c = p.coefficient.real();
  PauliString unit{p.label, 1.0};
  ComplexMatrix m = cplx(0.0, std::sin(c * tau)) * unit.matrix();
  const double co = std::cos(c * tau);
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) += co;
  return m;
}

ComplexMatrix trotter_simulate(const PauliHamiltonian& h, double t, int r) {
  if (r < 1) throw ParameterError("Trotter step count must be >= 1");
  const std::size_t d = std::size_t{1} << h.n;
  ComplexMatrix step = ComplexMatrix::identity(d);
  for (const auto& p : h.terms) step = step * pauli_exp(p, t / r);
  return matrix_power(step, static_cast<unsigned long long>(r));
}

int lcu_ancillas(std::size_t m) { return m <= 1 ? 0 : ceil_log2(m); }

Circuit lcu_circuit(const std::vector<Circuit>& unitaries, const std::vector<double>& weights) {
  if (unitaries.empty() || unitaries.size() != weights.size()) throw ParameterError("need one weight per unitary");
  const int n = unitaries.front().qubit_count();
  double total = 0.0;
  for (std::size_t j = 0; j < unitaries.size(); ++j) {
    if (unitaries[j].qubit_count() != n) throw DimensionError("all unitaries must act on the same qubits");
    if (!(weights[j] > 0.0)) throw ParameterError("LCU weights must be positive");
    total += weights[j];
  }
  const int a = lcu_ancillas(unitaries.size());
  check_qubit_count(a + n);
  Circuit c(a + n);
  const std::vector<int> anc = range(0, a), sys = range(a, n);
  if (a == 0) {
    c.append(unitaries.front(), sys);
    return c;
  }
  CVector amp(std::size_t{1} << a, cplx(0.0));
  for (std::size_t j = 0; j < weights.size(); ++j) amp[j] = std::sqrt(weights[j] / total);
  const ComplexMatrix w = householder_from_e0(amp);
  c.add(gates::Custom(w, anc));
  for (std::size_t j = 0; j < unitaries.size(); ++j)
    c.append(controlled_circuit(unitaries[j], anc, bits_of(j, a), a + n, sys));
  c.add(gates::Custom(w.adjoint(), anc));
  return c;
}

LcuResult lcu_apply(const std::vector<Circuit>& unitaries, const std::vector<double>& weights,
                    const StateVector& state, RandomSource& rng) {
  const Circuit c = lcu_circuit(unitaries, weights);
  const int n = state.qubit_count();
  if (unitaries.front().qubit_count() != n) throw DimensionError("state does not match the unitaries");
  const int a = c.qubit_count() - n;
  LcuResult out;
  if (a == 0) {
    out.success = true;
    out.probability = 1.0;
    out.state = simulate(c, state);
    return out;
  }
  StateVector s = simulate(c, tensor(StateVector(a), state));
  out.probability = marginal_probabilities(s, range(0, a)).at(0);
  const std::uint64_t outcome = measure_inplace(s, range(0, a), rng);
  out.success = outcome == 0;
  out.state = system_part(s, n, outcome);
  return out;
}

int oblivious_rounds(double theta) {
  if (!(theta > 0.0 && theta <= kPi / 2 + 1e-12)) throw ParameterError("angle must lie in (0, pi/2]");
  return static_cast<int>(std::nearbyint(kPi / (4.0 * theta) - 0.5));
}

StateVector oblivious_amplify(const Circuit& u, int ancillas, double theta, const StateVector& state) {
  const int k = oblivious_rounds(theta);
  if (ancillas < 1 || ancillas + state.qubit_count() != u.qubit_count()) {
    throw DimensionError("ancilla count and state do not match the circuit");
  }
  const Circuit u_inv = inverse(u);
  const GateOp z0 = zero_reflection(range(0, ancillas));  // = -R
  StateVector s = simulate(u, tensor(StateVector(ancillas), state));
  for (int r = 0; r < k; ++r) {
    // -U R U^{-1} R = -U z0 U^{-1} z0
    apply_op(s, z0);
    simulate_inplace(u_inv, s);
    apply_op(s, z0);
    simulate_inplace(u, s);
    for (auto& x : s.amplitudes()) x = -x;
  }
  return s;
}

int taylor_order(double x, double bound) {
  if (x < 0 || !(bound > 0)) throw ParameterError("taylor_order needs x >= 0 and bound > 0");
  for (int K = 0; K < 200; ++K) {
    double tail = 0.0, term = 1.0;
    for (int k = 1; k <= K + 80; ++k) {
      term *= x / k;
      if (k > K) tail += term;
    }
    if (tail <= bound) return K;
  }
  throw ParameterError("Taylor truncation order does not converge");
}

ComplexMatrix TaylorCombination::matrix() const {
  const std::size_t d = std::size_t{1} << unitaries.front().qubit_count();
  ComplexMatrix m(d, d);
  for (std::size_t l = 0; l < unitaries.size(); ++l) m += cplx(weights[l]) * unitaries[l].matrix();
  return m;
}

TaylorCombination taylor_combination(const PauliHamiltonian& h, double tau, int order) {
  using Key = std::pair<std::string, int>;  // label, power of i
  std::map<Key, double> level{{{std::string(h.n, 'I'), 0}, 1.0}};
  std::map<Key, double> total = level;
  for (int k = 1; k <= order; ++k) {
    std::map<Key, double> next;
    for (const auto& [key, w] : level) {
      for (const auto& term : h.terms) {
        const double c = term.coefficient.real();
        if (c == 0.0) continue;
        std::string label = key.first;
        int phase = key.second + 1 + (c < 0 ? 2 : 0);  // factor i * sign(c)
        for (int q = 0; q < h.n; ++q) {
          const auto [letter, ph] = pauli_product(label[q], term.label[q]);
          label[q] = letter;
          phase += ph;
        }
        next[{label, phase % 4}] += w * tau * std::abs(c) / k;
      }
    }
    for (const auto& [key, w] : next) total[key] += w;
    level = std::move(next);
  }
  TaylorCombination out;
  for (const auto& [key, w] : total) {
    if (w <= 0.0) continue;
    out.unitaries.push_back(PauliString{key.first, i_power(key.second)});
    out.weights.push_back(w);
  }
  return out;
}

HamSimResult lcu_hamsim(const PauliHamiltonian& h, double t, double eps, const StateVector& state,
                        RandomSource& rng, int max_restarts) {
  if (state.qubit_count() != h.n) throw DimensionError("state does not match the Hamiltonian");
  if (t < 0) throw ParameterError("simulation time must be nonnegative");
  if (!(eps > 0)) throw ParameterError("precision must be positive");
  HamSimResult out;
  out.state = state;
  const double norm = h.one_norm();
  if (t == 0.0 || norm == 0.0) return out;
  out.blocks = static_cast<int>(std::ceil(t * norm - 1e-12));
  const double tau = t / out.blocks;
  out.order = taylor_order(tau * norm, eps / (10.0 * out.blocks));
  const TaylorCombination comb = taylor_combination(h, tau, out.order);
  out.terms = static_cast<int>(comb.unitaries.size());
  for (double w : comb.weights) out.block_weight += w;

  std::vector<Circuit> unitaries;
  for (const auto& p : comb.unitaries) {
    Circuit c(h.n);
    c.add(gates::Custom(p.matrix(), range(0, h.n)));
    unitaries.push_back(std::move(c));
  }
  const Circuit lcu = lcu_circuit(unitaries, comb.weights);
  const int a = lcu.qubit_count() - h.n;

  // Damping qubit: shrink the good amplitude from 1/s to sin(pi/(2(2k+1))).
  const double s = out.block_weight;
  const double theta = std::asin(std::min(1.0, 1.0 / s));
  const int k = std::max(0, static_cast<int>(std::ceil(kPi / (4.0 * theta) - 0.5 - 1e-12)));
  const double target = kPi / (2.0 * (2 * k + 1));
  const double gamma = std::acos(std::min(1.0, s * std::sin(target)));
  out.rounds = k;
  Circuit block(a + 1 + h.n);
  block.add(gates::Custom(ComplexMatrix({{std::cos(gamma), -std::sin(gamma)}, {std::sin(gamma), std::cos(gamma)}}), {0}));
  block.append(lcu, range(1, a + h.n));

  for (int attempt = 0; attempt <= max_restarts; ++attempt) {
    StateVector cur = state;
    bool ok = true;
    for (int b = 0; b < out.blocks && ok; ++b) {
      StateVector full = oblivious_amplify(block, a + 1, target, cur);
      const std::uint64_t outcome = measure_inplace(full, range(0, a + 1), rng);
      if (outcome != 0) ok = false;
      else cur = system_part(full, h.n, 0);
    }
    if (ok) {
      out.state = cur;
      return out;
    }
    ++out.restarts;
  }
  throw RetryLimitError("Hamiltonian simulation failed after " + std::to_string(max_restarts) + " restarts");
}

namespace {

// |l, j> -> |nu(j, l), j> on two n-qubit registers, completed to a bijection.
class LocationBox final : public Blackbox {
 public:
  LocationBox(SparseMatrixOracle o, std::vector<std::vector<std::uint64_t>> perm)
      : o_(std::move(o)), perm_(std::move(perm)), inv_(perm_.size(), std::vector<std::uint64_t>(perm_.size())) {
    for (std::size_t j = 0; j < perm_.size(); ++j)
      for (std::size_t l = 0; l < perm_.size(); ++l) inv_[j][perm_[j][l]] = l;
  }
  int arity() const override { return 2 * o_.n(); }
  std::string name() const override { return "O_loc"; }
  void apply(StateVector& s, const std::vector<int>& targets, const std::vector<int>& controls,
             const std::vector<int>& values, bool adjoint) const override {
    o_.count_location();
    apply_permutation(s, [&](std::uint64_t v) { return map(v, adjoint); }, targets, controls, values);
  }
  std::vector<std::pair<std::uint64_t, cplx>> column(std::uint64_t in, bool adjoint) const override {
    return {{map(in, adjoint), cplx(1.0)}};
  }

 private:
  std::uint64_t map(std::uint64_t v, bool adjoint) const {
    const int n = o_.n();
    const std::uint64_t j = v & ((std::uint64_t{1} << n) - 1);
    const std::uint64_t l = v >> n;
    const std::uint64_t out = adjoint ? inv_[j][l] : perm_[j][l];
    return (out << n) | j;
  }
  SparseMatrixOracle o_;
  std::vector<std::vector<std::uint64_t>> perm_, inv_;
};

// |0>|k,j> -> A_kj |0>|k,j> + sqrt(1 - |A_kj|^2) |1>|k,j>; one O_A and one
// O_A^{-1} query per application.
class EntryRotationBox final : public Blackbox {
 public:
  explicit EntryRotationBox(SparseMatrixOracle o) : o_(std::move(o)) {}
  int arity() const override { return 2 * o_.n() + 1; }
  std::string name() const override { return "W2"; }
  void apply(StateVector& s, const std::vector<int>& targets, const std::vector<int>& controls,
             const std::vector<int>& values, bool adjoint) const override {
    o_.count_entry();
    o_.count_entry();
    const int n = o_.n();
    const std::vector<int> reg(targets.begin() + 1, targets.end());
    std::vector<int> ctl = controls;
    ctl.insert(ctl.end(), reg.begin(), reg.end());
    for (std::uint64_t kj = 0; kj < (std::uint64_t{1} << (2 * n)); ++kj) {
      std::vector<int> vals = values.empty() ? std::vector<int>(controls.size(), 1) : values;
      const auto b = bits_of(kj, 2 * n);
      vals.insert(vals.end(), b.begin(), b.end());
      apply_matrix(s, rotation(kj, adjoint), {targets[0]}, ctl, vals);
    }
  }
  std::vector<std::pair<std::uint64_t, cplx>> column(std::uint64_t in, bool adjoint) const override {
    const int n = o_.n();
    const std::uint64_t kj = in & ((std::uint64_t{1} << (2 * n)) - 1);
    const std::uint64_t f = in >> (2 * n);
    const ComplexMatrix g = rotation(kj, adjoint);
    return {{kj, g(0, f)}, {(std::uint64_t{1} << (2 * n)) | kj, g(1, f)}};
  }

 private:
  ComplexMatrix rotation(std::uint64_t kj, bool adjoint) const {
    const int n = o_.n();
    const cplx a = o_.entry(kj >> n, kj & ((std::uint64_t{1} << n) - 1));
    const double r = std::sqrt(std::max(0.0, 1.0 - std::norm(a)));
    ComplexMatrix g{{a, -r}, {r, std::conj(a)}};
    return adjoint ? g.adjoint() : g;
  }
  SparseMatrixOracle o_;
};

}  // namespace

SparseMatrixOracle::SparseMatrixOracle(const ComplexMatrix& a, int s)
    : s_(s), a_(a), counts_(std::make_shared<Counts>()) {
  if (!a.square()) throw DimensionError("sparse matrix must be square");
  n_ = log2_exact(a.rows());
  const std::size_t N = a.rows();
  if (s < 1 || !is_power_of_two(static_cast<std::size_t>(s)) || static_cast<std::size_t>(s) > N) {
    throw ParameterError("sparsity must be a power of two between 1 and the dimension");
  }
  if (!a.is_hermitian(1e-12)) throw ParameterError("sparse matrix must be Hermitian");
  if (op_norm(a) > 1.0 + 1e-9) throw ParameterError("sparse matrix must have norm at most 1");
  loc_.resize(N);
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t i = 0; i < N; ++i)
      if (a(i, j) != cplx(0.0)) loc_[j].push_back(i);
    if (loc_[j].size() > static_cast<std::size_t>(s)) throw ParameterError("column has more than s nonzero entries");
    for (std::size_t i = 0; loc_[j].size() < static_cast<std::size_t>(s); ++i)
      if (std::find(loc_[j].begin(), loc_[j].end(), i) == loc_[j].end()) loc_[j].push_back(i);
    std::sort(loc_[j].begin(), loc_[j].end());
  }
}

cplx SparseMatrixOracle::entry(std::uint64_t i, std::uint64_t j) const { return a_(i, j); }

std::uint64_t SparseMatrixOracle::location(std::uint64_t j, std::uint64_t l) const { return loc_.at(j).at(l); }

Circuit block_encode_sparse(const SparseMatrixOracle& a) {
  const int n = a.n();
  const std::size_t N = std::size_t{1} << n;
  check_qubit_count(2 * n + 1);
  std::vector<std::vector<std::uint64_t>> perm(N);
  for (std::size_t j = 0; j < N; ++j) {
    for (int l = 0; l < a.sparsity(); ++l) perm[j].push_back(a.location(j, l));
    for (std::size_t i = 0; i < N; ++i)
      if (std::find(perm[j].begin(), perm[j].end(), i) == perm[j].end()) perm[j].push_back(i);
  }
  const auto loc = std::make_shared<LocationBox>(a, std::move(perm));
  const std::vector<int> middle = range(1, n), last = range(n + 1, n);
  std::vector<int> both = middle;
  both.insert(both.end(), last.begin(), last.end());
  const int sb = log2_exact(static_cast<std::size_t>(a.sparsity()));

  Circuit w1(2 * n + 1);
  for (int q = n + 1 - sb; q <= n; ++q) w1.add(gates::H(q));
  w1.add(gates::Box(loc, both));
  Circuit w3 = w1;
  for (int q = 0; q < n; ++q) w3.add(gates::SWAP(middle[q], last[q]));

  Circuit u = w1;
  u.add(gates::Box(std::make_shared<EntryRotationBox>(a), range(0, 2 * n + 1)));
  u.append(inverse(w3));
  return u;
}

ComplexMatrix top_left_block(const ComplexMatrix& u, std::size_t dim) {
  if (dim > u.rows() || dim > u.cols()) throw DimensionError("block larger than the matrix");
  ComplexMatrix b(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) b(i, j) = u(i, j);
  return b;
}

ComplexMatrix random_sparse_hermitian(int n, int s, RandomSource& rng) {
  const std::size_t N = std::size_t{1} << n;
  ComplexMatrix a(N, N);
  for (int layer = 0; layer < s; ++layer) {
    std::vector<std::size_t> order(N);
    for (std::size_t i = 0; i < N; ++i) order[i] = i;
    for (std::size_t i = N; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    for (std::size_t i = 0; i < N; i += 2) {
      const std::size_t u = order[i];
      const std::size_t v = i + 1 < N ? order[i + 1] : u;
      if (u == v || rng.below(4) == 0) {
        a(u, u) += rng.normal();
        if (v != u) a(v, v) += rng.normal();
      } else {
        const cplx z(rng.normal(), rng.normal());
        a(u, v) += z;
        a(v, u) += std::conj(z);
      }
    }
  }
  const double nrm = op_norm(a);
  if (nrm > 1.0) a *= cplx(1.0 / nrm);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i; j < N; ++j) {
      const cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  return a;
}

double hhl_decode(std::uint64_t j, int n_p) {
  const double f = std::ldexp(static_cast<double>(j), -n_p);
  return f < 0.5 ? 4.0 * f : 4.0 * (f - 1.0);
}

HhlResult hhl_solve(const ComplexMatrix& a, const StateVector& b, double kappa, int n_p, RandomSource& rng,
                    int max_attempts) {
  if (!a.is_hermitian(1e-9)) throw ParameterError("HHL needs a Hermitian matrix");
  if (a.rows() != b.dim()) throw DimensionError("right-hand side does not match the matrix");
  if (!(kappa >= 1.0)) throw ParameterError("condition bound kappa must be >= 1");
  if (n_p < 2) throw ParameterError("HHL needs at least two phase bits");
  const int n = b.qubit_count();
  const double scale = std::ldexp(1.0, n_p) / 4.0;
  for (double lam : herm_eigvals(a)) {
    const double mag = std::abs(lam);
    if (mag < 1.0 / kappa - 1e-9 || mag > 1.0 + 1e-9) {
      throw ParameterError("eigenvalue " + std::to_string(lam) + " outside [1/kappa, 1] in magnitude");
    }
    if (std::abs(lam * scale - std::nearbyint(lam * scale)) > 1e-9) {
      throw ParameterError("eigenvalue " + std::to_string(lam) + " is not representable with " +
                           std::to_string(n_p) + " phase bits");
    }
  }
  const int total = 1 + n_p + n;
  check_qubit_count(total);
  const std::vector<int> pe_reg = range(1, n_p), sys = range(1 + n_p, n);

  Circuit pe(total);
  append_phase_estimation(pe, herm_expm(a, kPi / 2.0), pe_reg, sys);
  Circuit prep(total);
  prep.add(gates::Custom(householder_from_e0(b.amplitudes()), sys));
  prep.append(pe);
  for (std::uint64_t j = 1; j < (std::uint64_t{1} << n_p); ++j) {
    const double c = 1.0 / (kappa * hhl_decode(j, n_p));
    if (std::abs(c) > 1.0 + 1e-12) continue;  // eigenvalue not allowed; never populated
    const double cc = std::clamp(c, -1.0, 1.0);
    const double sn = std::sqrt(1.0 - cc * cc);
    prep.add(with_controls(gates::Custom(ComplexMatrix({{cc, -sn}, {sn, cc}}), {0}), pe_reg, bits_of(j, n_p)));
  }
  prep.append(inverse(pe));

  HhlResult out;
  const StateVector before = simulate(prep, 0);
  out.good_probability = marginal_probabilities(before, {0}).at(0);
  out.rounds = amplification_rounds(out.good_probability);
  const GateOp mark = gates::Custom(ComplexMatrix({{-1.0, 0.0}, {0.0, 1.0}}), {0});
  while (out.attempts < max_attempts) {
    ++out.attempts;
    StateVector s = amplitude_amplify(prep, mark, out.good_probability);
    if (measure_inplace(s, {0}, rng) != 0) continue;
    out.state = system_part(s, n, 0);
    return out;
  }
  throw RetryLimitError("HHL post-selection failed " + std::to_string(max_attempts) + " times");
}

HhlResult hhl_solve(const PauliHamiltonian& a, const StateVector& b, double kappa, int n_p, RandomSource& rng,
                    int max_attempts) {
  return hhl_solve(a.matrix(), b, kappa, n_p, rng, max_attempts);
}

}  // namespace qkit
