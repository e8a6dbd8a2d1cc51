#include "qkit/walk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
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
}  // namespace

RegularGraph::RegularGraph(std::vector<std::vector<int>> adjacency, std::set<int> marked)
    : adj_(std::move(adjacency)), marked_(std::move(marked)) {
  const int n = vertex_count();
  if (n < 2) throw ParameterError("graph needs at least two vertices");
  d_ = static_cast<int>(adj_[0].size());
  if (d_ < 1) throw ParameterError("graph degree must be positive");
  for (int v = 0; v < n; ++v) {
    auto& nb = adj_[v];
    std::sort(nb.begin(), nb.end());
    if (static_cast<int>(nb.size()) != d_) throw ParameterError("graph is not regular");
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) throw ParameterError("repeated edge");
    for (int w : nb) {
      if (w < 0 || w >= n) throw ParameterError("neighbor index out of range");
      if (w == v) throw ParameterError("self-loop at vertex " + std::to_string(v));
    }
  }
  for (int v = 0; v < n; ++v)
    for (int w : adj_[v])
      if (!std::binary_search(adj_[w].begin(), adj_[w].end(), v)) throw ParameterError("adjacency is not symmetric");
  for (int m : marked_)
    if (m < 0 || m >= n) throw ParameterError("marked vertex out of range");
}

RegularGraph RegularGraph::complete(int n) {
  std::vector<std::vector<int>> adj(n);
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w)
      if (w != v) adj[v].push_back(w);
  return RegularGraph(std::move(adj));
}

RegularGraph RegularGraph::cycle(int n) {
  if (n < 3) throw ParameterError("cycle needs at least three vertices");
  std::vector<std::vector<int>> adj(n);
  for (int v = 0; v < n; ++v) adj[v] = {(v + n - 1) % n, (v + 1) % n};
  return RegularGraph(std::move(adj));
}

RegularGraph RegularGraph::hypercube(int k) {
  if (k < 1 || k > 12) throw ParameterError("hypercube dimension out of range");
  std::vector<std::vector<int>> adj(std::size_t{1} << k);
  for (int v = 0; v < (1 << k); ++v)
    for (int b = 0; b < k; ++b) adj[v].push_back(v ^ (1 << b));
  return RegularGraph(std::move(adj));
}

RegularGraph RegularGraph::complete_bipartite(int d) {
  std::vector<std::vector<int>> adj(2 * d);
  for (int v = 0; v < d; ++v)
    for (int w = d; w < 2 * d; ++w) {
      adj[v].push_back(w);
      adj[w].push_back(v);
    }
  return RegularGraph(std::move(adj));
}

std::vector<std::vector<int>> RegularGraph::johnson_subsets(int n, int k) {
  if (k < 1 || k >= n || n > 16) throw ParameterError("Johnson graph parameters out of range");
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

RegularGraph RegularGraph::johnson(int n, int k) {
  const auto subsets = johnson_subsets(n, k);
  const int V = static_cast<int>(subsets.size());
  std::vector<std::vector<int>> adj(V);
  for (int a = 0; a < V; ++a)
    for (int b = 0; b < V; ++b) {
      if (a == b) continue;
      std::vector<int> common;
      std::set_intersection(subsets[a].begin(), subsets[a].end(), subsets[b].begin(), subsets[b].end(),
                            std::back_inserter(common));
      if (static_cast<int>(common.size()) == k - 1) adj[a].push_back(b);
    }
  return RegularGraph(std::move(adj));
}

double RegularGraph::marked_fraction() const {
  return static_cast<double>(marked_.size()) / static_cast<double>(vertex_count());
}

bool RegularGraph::connected() const {
  std::vector<char> seen(adj_.size(), 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int w : adj_[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        q.push(w);
      }
  }
  return count == vertex_count();
}

RegularGraph RegularGraph::with_marked(std::set<int> marked) const { return RegularGraph(adj_, std::move(marked)); }

ComplexMatrix RegularGraph::transition_matrix() const {
  const int n = vertex_count();
  ComplexMatrix p(n, n);
  for (int v = 0; v < n; ++v)
    for (int w : adj_[v]) p(w, v) = 1.0 / d_;
  return p;
}

SpectralGap spectral_gap(const RegularGraph& g) {
  if (!g.connected()) throw ParameterError("graph is disconnected");
  SpectralGap out;
  out.eigenvalues = herm_eigvals(g.transition_matrix());
  double second = 0.0;
  for (std::size_t i = 1; i < out.eigenvalues.size(); ++i) second = std::max(second, std::abs(out.eigenvalues[i]));
  out.delta = 1.0 - second;
  return out;
}

int vertex_register_bits(const RegularGraph& g) { return std::max(1, ceil_log2(g.vertex_count())); }

WalkOperators walk_operators(const RegularGraph& g) {
  const int N = g.vertex_count();
  WalkOperators out;
  out.m = vertex_register_bits(g);
  check_qubit_count(2 * out.m);
  const std::size_t D = std::size_t{1} << out.m;
  const std::size_t dim = D * D;
  out.v1 = ComplexMatrix(dim, dim);
  out.ref_a = ComplexMatrix(dim, dim);
  out.u.assign(dim, cplx(0.0));
  const double amp = 1.0 / std::sqrt(static_cast<double>(g.degree()));
  for (std::size_t x = 0; x < D; ++x) {
    ComplexMatrix hx = ComplexMatrix::identity(D);
    CVector px(D, cplx(0.0));
    if (x < static_cast<std::size_t>(N)) {
      for (int y : g.neighbors(static_cast<int>(x))) px[y] = amp;
      hx = householder_from_e0(px);
      for (std::size_t y = 0; y < D; ++y) out.u[x * D + y] = px[y] / std::sqrt(static_cast<double>(N));
    } else {
      px[0] = 1.0;
    }
    // Block x of ref(A) is H_x (2|0><0| - I) H_x^dagger = 2|p_x><p_x| - I.
    for (std::size_t i = 0; i < D; ++i)
      for (std::size_t j = 0; j < D; ++j) {
        out.v1(x * D + i, x * D + j) = hx(i, j);
        out.ref_a(x * D + i, x * D + j) = 2.0 * px[i] * std::conj(px[j]) - (i == j ? 1.0 : 0.0);
      }
  }
  out.ref_b = ComplexMatrix(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t si = (i % D) * D + i / D;
    for (std::size_t j = 0; j < dim; ++j) {
      const std::size_t sj = (j % D) * D + j / D;
      out.ref_b(i, j) = out.ref_a(si, sj);
    }
  }
  out.w = out.ref_b * out.ref_a;
  return out;
}

ComplexMatrix walk_operator(const RegularGraph& g) { return walk_operators(g).w; }

int mnrs_ancilla_bits(double delta) {
  if (!(delta > 1e-12)) throw ParameterError("walk search needs a positive spectral gap");
  return ceil_log2(static_cast<std::size_t>(std::ceil(2.0 / std::sqrt(delta) - 1e-12))) + 2;
}

int mnrs_rounds(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw ParameterError("marked fraction must lie in (0, 1]");
  return static_cast<int>(std::nearbyint(kPi / (4.0 * std::asin(std::sqrt(eps))) - 0.5));
}

MnrsResult mnrs_search_with(const RegularGraph& g, double eps, RandomSource& rng) {
  const SpectralGap gap = spectral_gap(g);
  const WalkOperators ops = walk_operators(g);
  const int N = g.vertex_count();
  const int m = ops.m;
  MnrsResult out;
  out.ancilla_bits = mnrs_ancilla_bits(gap.delta);
  out.rounds = mnrs_rounds(eps);
  const int a = out.ancilla_bits;
  const int total = a + 2 * m;
  check_qubit_count(total);
  const std::vector<int> anc = range(0, a), reg1 = range(a, m), regs = range(a, 2 * m);

  Circuit prep(total);
  CVector uniform(std::size_t{1} << m, cplx(0.0));
  for (int x = 0; x < N; ++x) uniform[x] = 1.0 / std::sqrt(static_cast<double>(N));
  prep.add(gates::Custom(householder_from_e0(uniform), reg1));
  prep.add(gates::Custom(ops.v1, regs));

  CVector flips(std::size_t{1} << m, cplx(1.0));
  for (int x : g.marked()) flips[x] = -1.0;
  const GateOp mark = gates::Custom(ComplexMatrix::diagonal(flips), reg1);

  Circuit pe(total);
  append_phase_estimation(pe, ops.w, anc, regs);
  Circuit reflect = pe;
  reflect.add(zero_reflection(anc));
  reflect.append(inverse(pe));

  StateVector s = simulate(prep, 0);
  for (int r = 0; r < out.rounds; ++r) {
    apply_op(s, mark);
    simulate_inplace(reflect, s);
    out.walk_steps += 2 * ((std::uint64_t{1} << a) - 1);
  }
  const auto probs = marginal_probabilities(s, reg1);
  for (int x : g.marked()) out.success_probability += probs[x];
  const auto x = static_cast<int>(measure_inplace(s, reg1, rng));
  if (x < N && g.is_marked(x)) out.vertex = x;
  return out;
}

MnrsResult mnrs_search(const RegularGraph& g, RandomSource& rng) {
  if (g.marked().empty()) throw ParameterError("known-fraction walk search needs a marked vertex");
  return mnrs_search_with(g, g.marked_fraction(), rng);
}

MnrsResult mnrs_search_unknown(const RegularGraph& g, RandomSource& rng) {
  MnrsResult total;
  const double floor_eps = 1.0 / g.vertex_count();
  for (double eps = 1.0; eps >= floor_eps * (1.0 - 1e-12); eps /= 2.0) {
    MnrsResult r = mnrs_search_with(g, eps, rng);
    total.rounds += r.rounds;
    total.walk_steps += r.walk_steps;
    total.ancilla_bits = r.ancilla_bits;
    total.success_probability = r.success_probability;
    if (r.vertex) {
      total.vertex = r.vertex;
      return total;
    }
  }
  return total;
}

}  // namespace qkit
