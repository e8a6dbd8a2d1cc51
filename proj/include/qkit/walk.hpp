#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "qkit/circuit.hpp"
#include "qkit/linalg.hpp"
#include "qkit/random.hpp"

namespace qkit {

// d-regular undirected graph without self-loops, plus a marked vertex set.
class RegularGraph {
 public:
  RegularGraph(std::vector<std::vector<int>> adjacency, std::set<int> marked = {});

  static RegularGraph complete(int n);
  static RegularGraph cycle(int n);
  static RegularGraph hypercube(int k);
  static RegularGraph complete_bipartite(int d);
  // Vertices are the k-subsets of {0..n-1}, listed in lexicographic order;
  // adjacent when they share k-1 elements.
  static RegularGraph johnson(int n, int k);
  static std::vector<std::vector<int>> johnson_subsets(int n, int k);

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  int degree() const { return d_; }
  const std::vector<int>& neighbors(int v) const { return adj_.at(v); }
  const std::set<int>& marked() const { return marked_; }
  bool is_marked(int v) const { return marked_.count(v) > 0; }
  double marked_fraction() const;
  bool connected() const;

  RegularGraph with_marked(std::set<int> marked) const;
  // Normalized adjacency P = A / d.
  ComplexMatrix transition_matrix() const;

 private:
  std::vector<std::vector<int>> adj_;
  int d_ = 0;
  std::set<int> marked_;
};

struct SpectralGap {
  std::vector<double> eigenvalues;  // descending
  double delta = 0.0;               // 1 - max_{i >= 2} |lambda_i|
};

// Throws ParameterError for a disconnected graph.
SpectralGap spectral_gap(const RegularGraph& g);

// Qubits per vertex register, ceil(log2 N) (at least 1).
int vertex_register_bits(const RegularGraph& g);

struct WalkOperators {
  int m = 0;            // qubits per register
  ComplexMatrix v1;     // |x>|0> -> |x>|p_x> (identity on padded x)
  ComplexMatrix ref_a;  // reflection through span{|x>|p_x>}
  ComplexMatrix ref_b;  // reflection through span{|p_y>|y>}
  ComplexMatrix w;      // ref_b * ref_a
  CVector u;            // (1/sqrt N) sum_x |x>|p_x>
};

WalkOperators walk_operators(const RegularGraph& g);
ComplexMatrix walk_operator(const RegularGraph& g);

struct MnrsResult {
  std::optional<int> vertex;
  int rounds = 0;               // reflections through the marked set
  int ancilla_bits = 0;         // phase-estimation precision
  std::uint64_t walk_steps = 0; // applications of W or its inverse
  double success_probability = 0.0;  // weight on marked vertices before measuring
};

// ceil(log2(2 / sqrt(delta))) + 2
int mnrs_ancilla_bits(double delta);
// round(pi / (4 arcsin sqrt(eps)) - 1/2)
int mnrs_rounds(double eps);

// Known marked fraction; one schedule round, verified classically.
MnrsResult mnrs_search(const RegularGraph& g, RandomSource& rng);
// Runs with an assumed fraction eps instead of the true one.
MnrsResult mnrs_search_with(const RegularGraph& g, double eps, RandomSource& rng);
// Guesses eps = 1, 1/2, 1/4, ... down to 1/N.
MnrsResult mnrs_search_unknown(const RegularGraph& g, RandomSource& rng);

}  // namespace qkit
