#include "qkit/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace qkit {

void check_qubit_count(int n) {
  if (n < 0) throw DimensionError("negative qubit count");
  if (n > kMaxQubits) {
    throw CapacityError("state on " + std::to_string(n) + " qubits exceeds the capacity of " +
                        std::to_string(kMaxQubits) + " qubits");
  }
}

StateVector::StateVector(int qubits, std::uint64_t basis_index) : n_(qubits) {
  check_qubit_count(qubits);
  amps_.assign(std::size_t{1} << qubits, cplx(0.0));
  if (basis_index >= amps_.size()) throw DimensionError("basis index out of range");
  amps_[basis_index] = 1.0;
}

StateVector StateVector::from_amplitudes(CVector amplitudes, double tol) {
  const int n = log2_exact(amplitudes.size());
  check_qubit_count(n);
  const double nrm = qkit::norm(amplitudes);
  if (std::abs(nrm * nrm - 1.0) > tol) throw ParameterError("amplitudes are not normalized");
  StateVector s(n);
  s.amps_ = std::move(amplitudes);
  return s;
}

StateVector StateVector::uniform(int qubits) {
  StateVector s(qubits);
  const double a = 1.0 / std::sqrt(static_cast<double>(s.dim()));
  std::fill(s.amps_.begin(), s.amps_.end(), cplx(a));
  return s;
}

StateVector StateVector::random(int qubits, RandomSource& rng) {
  StateVector s(qubits);
  for (auto& a : s.amps_) a = cplx(rng.normal(), rng.normal());
  s.normalize();
  return s;
}

void StateVector::normalize() {
  const double nrm = norm();
  if (nrm == 0.0) throw ParameterError("cannot normalize the zero vector");
  for (auto& a : amps_) a /= nrm;
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amps_.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(amps_[i]);
  return p;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  check_qubit_count(a.qubit_count() + b.qubit_count());
  StateVector s(a.qubit_count() + b.qubit_count());
  s.amplitudes() = kron(a.amplitudes(), b.amplitudes());
  return s;
}

namespace {

void check_qubits(int n, const std::vector<int>& targets, const std::vector<int>& controls) {
  std::set<int> seen;
  for (int q : targets) {
    if (q < 0 || q >= n) throw ParameterError("qubit index " + std::to_string(q) + " out of range");
    if (!seen.insert(q).second) throw ParameterError("duplicate qubit index " + std::to_string(q));
  }
  for (int q : controls) {
    if (q < 0 || q >= n) throw ParameterError("control index " + std::to_string(q) + " out of range");
    if (!seen.insert(q).second) throw ParameterError("control overlaps another qubit: " + std::to_string(q));
  }
}

// Enumerates indices with the fixed positions cleared, in increasing order.
struct FreeIndexer {
  std::vector<int> fixed_positions;  // ascending bit positions
  std::uint64_t count = 0;

  FreeIndexer(int n, std::vector<int> positions) : fixed_positions(std::move(positions)) {
    std::sort(fixed_positions.begin(), fixed_positions.end());
    count = std::uint64_t{1} << (n - static_cast<int>(fixed_positions.size()));
  }

  std::uint64_t operator()(std::uint64_t i) const {
    for (int p : fixed_positions) {
      const std::uint64_t low = i & ((std::uint64_t{1} << p) - 1);
      i = ((i >> p) << (p + 1)) | low;
    }
    return i;
  }
};

struct Layout {
  std::vector<std::uint64_t> offsets;  // local value -> index offset
  std::uint64_t control_value = 0;
  FreeIndexer free;
};

Layout make_layout(int n, const std::vector<int>& targets, const std::vector<int>& controls,
                   const std::vector<int>& control_values) {
  if (!control_values.empty() && control_values.size() != controls.size()) {
    throw ParameterError("control value count does not match control count");
  }
  const int k = static_cast<int>(targets.size());
  std::vector<int> positions;
  std::vector<std::uint64_t> offsets(std::size_t{1} << k, 0);
  for (int m = 0; m < k; ++m) {
    const int pos = n - 1 - targets[m];
    positions.push_back(pos);
    const std::uint64_t bit = std::uint64_t{1} << pos;
    for (std::size_t l = 0; l < offsets.size(); ++l)
      if ((l >> (k - 1 - m)) & 1U) offsets[l] |= bit;
  }
  std::uint64_t cval = 0;
  for (std::size_t c = 0; c < controls.size(); ++c) {
    const int pos = n - 1 - controls[c];
    positions.push_back(pos);
    const int v = control_values.empty() ? 1 : control_values[c];
    if (v) cval |= std::uint64_t{1} << pos;
  }
  return Layout{std::move(offsets), cval, FreeIndexer(n, std::move(positions))};
}

bool is_diagonal(const ComplexMatrix& u) {
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < u.cols(); ++j)
      if (i != j && u(i, j) != cplx(0.0)) return false;
  return true;
}

}  // namespace

void apply_matrix(StateVector& s, const ComplexMatrix& u, const std::vector<int>& targets,
                  const std::vector<int>& controls, const std::vector<int>& control_values) {
  const int n = s.qubit_count();
  const std::size_t local = std::size_t{1} << targets.size();
  if (u.rows() != local || u.cols() != local) {
    throw DimensionError("gate dimension does not match the number of targets");
  }
  check_qubits(n, targets, controls);
  const Layout lay = make_layout(n, targets, controls, control_values);
  CVector& a = s.amplitudes();

  if (is_diagonal(u)) {
    CVector d(local);
    for (std::size_t l = 0; l < local; ++l) d[l] = u(l, l);
    for (std::uint64_t i = 0; i < lay.free.count; ++i) {
      const std::uint64_t base = lay.free(i) | lay.control_value;
      for (std::size_t l = 0; l < local; ++l) a[base | lay.offsets[l]] *= d[l];
    }
    return;
  }
  if (local == 2) {
    const cplx u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
    const std::uint64_t off = lay.offsets[1];
    for (std::uint64_t i = 0; i < lay.free.count; ++i) {
      const std::uint64_t base = lay.free(i) | lay.control_value;
      const cplx x0 = a[base], x1 = a[base | off];
      a[base] = u00 * x0 + u01 * x1;
      a[base | off] = u10 * x0 + u11 * x1;
    }
    return;
  }
  CVector in(local), out(local);
  for (std::uint64_t i = 0; i < lay.free.count; ++i) {
    const std::uint64_t base = lay.free(i) | lay.control_value;
    for (std::size_t l = 0; l < local; ++l) in[l] = a[base | lay.offsets[l]];
    for (std::size_t r = 0; r < local; ++r) {
      cplx acc = 0;
      const cplx* row = &u.data()[r * local];
      for (std::size_t c = 0; c < local; ++c) acc += row[c] * in[c];
      out[r] = acc;
    }
    for (std::size_t l = 0; l < local; ++l) a[base | lay.offsets[l]] = out[l];
  }
}

void apply_gate_inplace(StateVector& s, const ComplexMatrix& gate, const std::vector<int>& targets) {
  if (!gate.is_unitary(1e-9)) throw ParameterError("gate is not unitary within 1e-9");
  apply_matrix(s, gate, targets);
}

StateVector apply_gate(StateVector s, const ComplexMatrix& gate, const std::vector<int>& targets) {
  apply_gate_inplace(s, gate, targets);
  return s;
}

void apply_diagonal(StateVector& s, const std::function<cplx(std::uint64_t)>& phase,
                    const std::vector<int>& targets, const std::vector<int>& controls,
                    const std::vector<int>& control_values) {
  const int n = s.qubit_count();
  check_qubits(n, targets, controls);
  const std::size_t local = std::size_t{1} << targets.size();
  CVector d(local);
  for (std::size_t l = 0; l < local; ++l) d[l] = phase(l);
  const Layout lay = make_layout(n, targets, controls, control_values);
  CVector& a = s.amplitudes();
  for (std::uint64_t i = 0; i < lay.free.count; ++i) {
    const std::uint64_t base = lay.free(i) | lay.control_value;
    for (std::size_t l = 0; l < local; ++l) a[base | lay.offsets[l]] *= d[l];
  }
}

void apply_permutation(StateVector& s, const std::function<std::uint64_t(std::uint64_t)>& perm,
                       const std::vector<int>& targets, const std::vector<int>& controls,
                       const std::vector<int>& control_values) {
  const int n = s.qubit_count();
  check_qubits(n, targets, controls);
  const std::size_t local = std::size_t{1} << targets.size();
  std::vector<std::uint64_t> image(local);
  std::vector<char> hit(local, 0);
  for (std::size_t l = 0; l < local; ++l) {
    image[l] = perm(l);
    if (image[l] >= local || hit[image[l]]) throw ParameterError("map is not a permutation of the local basis");
    hit[image[l]] = 1;
  }
  const Layout lay = make_layout(n, targets, controls, control_values);
  CVector& a = s.amplitudes();
  CVector buf(local);
  for (std::uint64_t i = 0; i < lay.free.count; ++i) {
    const std::uint64_t base = lay.free(i) | lay.control_value;
    for (std::size_t l = 0; l < local; ++l) buf[image[l]] = a[base | lay.offsets[l]];
    for (std::size_t l = 0; l < local; ++l) a[base | lay.offsets[l]] = buf[l];
  }
}

std::uint64_t extract_bits(std::uint64_t index, const std::vector<int>& qubits, int n) {
  std::uint64_t v = 0;
  for (int q : qubits) v = (v << 1) | ((index >> (n - 1 - q)) & 1U);
  return v;
}

std::size_t sample_index(const std::vector<double>& probabilities, RandomSource& rng) {
  constexpr double kFloor = 1e-12;
  double total = 0;
  for (double p : probabilities)
    if (p >= kFloor) total += p;
  if (total <= 0) throw ParameterError("no outcome has nonzero probability");
  const double u = rng.uniform() * total;
  double cum = 0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] < kFloor) continue;
    cum += probabilities[i];
    last = i;
    if (u < cum) return i;
  }
  return last;
}

std::vector<int> all_qubits(int n) {
  std::vector<int> q(n);
  std::iota(q.begin(), q.end(), 0);
  return q;
}

std::vector<double> marginal_probabilities(const StateVector& s, const std::vector<int>& qubits) {
  const int n = s.qubit_count();
  if (qubits.empty()) throw ParameterError("measurement needs at least one qubit");
  check_qubits(n, qubits, {});
  std::vector<double> p(std::size_t{1} << qubits.size(), 0.0);
  const CVector& a = s.amplitudes();
  for (std::uint64_t i = 0; i < a.size(); ++i) {
    const double w = std::norm(a[i]);
    if (w != 0.0) p[extract_bits(i, qubits, n)] += w;
  }
  return p;
}

std::uint64_t measure_inplace(StateVector& s, const std::vector<int>& qubits, RandomSource& rng) {
  const auto p = marginal_probabilities(s, qubits);
  const std::uint64_t outcome = sample_index(p, rng);
  const int n = s.qubit_count();
  const double scale = 1.0 / std::sqrt(p[outcome]);
  CVector& a = s.amplitudes();
  for (std::uint64_t i = 0; i < a.size(); ++i) {
    if (extract_bits(i, qubits, n) == outcome) a[i] *= scale;
    else a[i] = 0.0;
  }
  return outcome;
}

MeasurementResult measure_computational(const StateVector& s, const std::vector<int>& qubits,
                                        RandomSource& rng) {
  MeasurementResult r;
  r.state = s;
  const auto p = marginal_probabilities(s, qubits);
  r.outcome = measure_inplace(r.state, qubits, rng);
  r.probability = p[r.outcome];
  const int m = static_cast<int>(qubits.size());
  for (int i = 0; i < m; ++i) r.bits.push_back(static_cast<int>((r.outcome >> (m - 1 - i)) & 1U));
  return r;
}

ProjectiveMeasurement::ProjectiveMeasurement(std::vector<ComplexMatrix> projectors, double tol)
    : projectors_(std::move(projectors)) {
  if (projectors_.empty()) throw ParameterError("projective measurement needs at least one projector");
  const std::size_t d = projectors_.front().rows();
  ComplexMatrix sum = ComplexMatrix::zeros(d, d);
  for (std::size_t i = 0; i < projectors_.size(); ++i) {
    const auto& p = projectors_[i];
    if (p.rows() != d || p.cols() != d) throw ShapeError("projector dimensions differ");
    if (!p.is_hermitian(tol)) throw ParameterError("projector is not Hermitian");
    if (max_abs_diff(p * p, p) > tol) throw ParameterError("projector is not idempotent");
    for (std::size_t j = 0; j < i; ++j)
      if ((p * projectors_[j]).max_abs() > tol) throw ParameterError("projectors are not orthogonal");
    sum += p;
  }
  if (max_abs_diff(sum, ComplexMatrix::identity(d)) > tol) throw ParameterError("projectors do not sum to identity");
}

std::vector<double> ProjectiveMeasurement::probabilities(const StateVector& s) const {
  if (s.dim() != dim()) throw DimensionError("projector dimension does not match the state");
  std::vector<double> p;
  for (const auto& proj : projectors_) p.push_back(std::pow(qkit::norm(proj.apply(s.amplitudes())), 2));
  return p;
}

ProjectiveResult measure_projective(const StateVector& s, const ProjectiveMeasurement& m, RandomSource& rng) {
  const auto p = m.probabilities(s);
  ProjectiveResult r;
  r.index = sample_index(p, rng);
  r.probability = p[r.index];
  CVector v = m.projectors()[r.index].apply(s.amplitudes());
  const double nrm = qkit::norm(v);
  for (auto& x : v) x /= nrm;
  r.state = StateVector::from_amplitudes(std::move(v));
  return r;
}

Povm::Povm(std::vector<ComplexMatrix> elements, double tol) : elements_(std::move(elements)) {
  if (elements_.empty()) throw ParameterError("POVM needs at least one element");
  const std::size_t d = elements_.front().rows();
  ComplexMatrix sum = ComplexMatrix::zeros(d, d);
  for (const auto& e : elements_) {
    if (e.rows() != d || e.cols() != d) throw ShapeError("POVM element dimensions differ");
    if (!e.is_hermitian(tol)) throw ParameterError("POVM element is not Hermitian");
    if (herm_eigvals(e).back() < -tol) throw ParameterError("POVM element is not positive semidefinite");
    sum += e;
  }
  if (max_abs_diff(sum, ComplexMatrix::identity(d)) > tol) throw ParameterError("POVM elements do not sum to identity");
}

std::vector<double> Povm::probabilities(const StateVector& s) const {
  if (s.dim() != elements_.front().rows()) throw DimensionError("POVM dimension does not match the state");
  std::vector<double> p;
  for (const auto& e : elements_) p.push_back(std::max(0.0, inner(s.amplitudes(), e.apply(s.amplitudes())).real()));
  return p;
}

std::size_t sample_povm(const StateVector& s, const Povm& p, RandomSource& rng) {
  return sample_index(p.probabilities(s), rng);
}

double expectation(const StateVector& s, const ComplexMatrix& observable) {
  if (observable.rows() != s.dim() || observable.cols() != s.dim()) {
    throw DimensionError("observable dimension does not match the state");
  }
  if (!observable.is_hermitian(1e-9)) throw ShapeError("observable is not Hermitian");
  return inner(s.amplitudes(), observable.apply(s.amplitudes())).real();
}

ComplexMatrix embed_operator(const ComplexMatrix& op, const std::vector<int>& targets, int n) {
  check_qubit_count(n);
  const std::size_t d = std::size_t{1} << n;
  ComplexMatrix full(d, d);
  for (std::size_t c = 0; c < d; ++c) {
    StateVector e(n, c);
    apply_matrix(e, op, targets);
    for (std::size_t r = 0; r < d; ++r) full(r, c) = e[r];
  }
  return full;
}

DensityMatrix::DensityMatrix(int qubits, ComplexMatrix rho, double tol) : n_(qubits), rho_(std::move(rho)) {
  check_qubit_count(qubits);
  const std::size_t d = std::size_t{1} << qubits;
  if (rho_.rows() != d || rho_.cols() != d) throw DimensionError("density matrix dimension mismatch");
  if (!rho_.is_hermitian(tol)) throw ParameterError("density matrix is not Hermitian");
  if (std::abs(rho_.trace() - 1.0) > tol) throw ParameterError("density matrix trace is not 1");
  if (d <= 256 && herm_eigvals(rho_).back() < -tol) throw ParameterError("density matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::from_pure(const StateVector& s) {
  return DensityMatrix(s.qubit_count(), ComplexMatrix::outer(s.amplitudes(), s.amplitudes()));
}

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

namespace {

void check_keep(int n, std::vector<int>& keep) {
  std::sort(keep.begin(), keep.end());
  if (keep.empty() || static_cast<int>(keep.size()) >= n) {
    throw ParameterError("kept qubit set must be a nonempty proper subset");
  }
  check_qubits(n, keep, {});
}

std::vector<int> complement(int n, const std::vector<int>& keep) {
  std::vector<int> rest;
  for (int q = 0; q < n; ++q)
    if (!std::binary_search(keep.begin(), keep.end(), q)) rest.push_back(q);
  return rest;
}

// Index of the basis state with `a` on `keep` and `b` on `rest`.
std::uint64_t compose(std::uint64_t a, std::uint64_t b, const std::vector<int>& keep,
                      const std::vector<int>& rest, int n) {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < keep.size(); ++i)
    if ((a >> (keep.size() - 1 - i)) & 1U) idx |= std::uint64_t{1} << (n - 1 - keep[i]);
  for (std::size_t i = 0; i < rest.size(); ++i)
    if ((b >> (rest.size() - 1 - i)) & 1U) idx |= std::uint64_t{1} << (n - 1 - rest[i]);
  return idx;
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<int> keep) {
  const int n = rho.qubit_count();
  check_keep(n, keep);
  const auto rest = complement(n, keep);
  const std::size_t da = std::size_t{1} << keep.size(), db = std::size_t{1} << rest.size();
  ComplexMatrix out(da, da);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      cplx acc = 0;
      for (std::size_t b = 0; b < db; ++b)
        acc += rho.matrix()(compose(i, b, keep, rest, n), compose(j, b, keep, rest, n));
      out(i, j) = acc;
    }
  return DensityMatrix(static_cast<int>(keep.size()), std::move(out));
}

DensityMatrix reduced_density(const StateVector& s, std::vector<int> keep) {
  const int n = s.qubit_count();
  check_keep(n, keep);
  const auto rest = complement(n, keep);
  const std::size_t da = std::size_t{1} << keep.size(), db = std::size_t{1} << rest.size();
  ComplexMatrix out(da, da);
  for (std::size_t b = 0; b < db; ++b) {
    CVector col(da);
    for (std::size_t i = 0; i < da; ++i) col[i] = s[compose(i, b, keep, rest, n)];
    for (std::size_t i = 0; i < da; ++i) {
      if (col[i] == cplx(0.0)) continue;
      for (std::size_t j = 0; j < da; ++j) out(i, j) += col[i] * std::conj(col[j]);
    }
  }
  return DensityMatrix(static_cast<int>(keep.size()), std::move(out));
}

SchmidtDecomposition schmidt(const StateVector& s, int split) {
  const int n = s.qubit_count();
  if (split < 1 || split >= n) throw ParameterError("Schmidt split must satisfy 1 <= split < n");
  const std::size_t da = std::size_t{1} << split, db = std::size_t{1} << (n - split);
  // Row-major reshape: amplitude index = a * db + b.
  ComplexMatrix m(da, db, s.amplitudes());
  const ComplexMatrix rho_a = m * m.adjoint();
  const HermitianEigen e = herm_eig(rho_a);
  SchmidtDecomposition out;
  for (std::size_t i = 0; i < da; ++i) {
    CVector a = e.vectors.column(i);
    CVector b(db);
    for (std::size_t j = 0; j < db; ++j) {
      cplx acc = 0;
      for (std::size_t k = 0; k < da; ++k) acc += std::conj(a[k]) * m(k, j);
      b[j] = acc;
    }
    const double lambda = norm(b);
    if (lambda <= 1e-10) continue;
    for (auto& x : b) x /= lambda;
    out.coefficients.push_back(lambda);
    out.a_states.push_back(std::move(a));
    out.b_states.push_back(std::move(b));
  }
  return out;
}

double state_distance(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw DimensionError("state dimensions differ");
  double s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

double total_variation_distance(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw DimensionError("state dimensions differ");
  double s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::abs(std::norm(a[i]) - std::norm(b[i]));
  return 0.5 * s;
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw DimensionError("state dimensions differ");
  return std::norm(inner(a.amplitudes(), b.amplitudes()));
}

bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol) {
  if (a.dim() != b.dim()) return false;
  return std::abs(std::abs(inner(a.amplitudes(), b.amplitudes())) - 1.0) <= tol;
}

}  // namespace qkit
