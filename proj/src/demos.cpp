#include "qkit/demos.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "qkit/circuit.hpp"
#include "qkit/classical.hpp"
#include "qkit/errors.hpp"
#include "qkit/fourier.hpp"
#include "qkit/hamiltonian.hpp"
#include "qkit/protocols.hpp"
#include "qkit/qec.hpp"
#include "qkit/query.hpp"
#include "qkit/walk.hpp"

namespace qkit {

namespace {

using json = nlohmann::json;
constexpr double kPi = std::numbers::pi;

// Typed access to the string flags; records every value in effect and
// rejects keys that no lookup consumed.
class Params {
 public:
  Params(std::string demo, const DemoParams& raw, json& record)
      : demo_(std::move(demo)), raw_(raw), record_(record) {}

  bool has(const std::string& key) const { return raw_.count(key) > 0; }

  std::string str(const std::string& key, const std::string& def) {
    used_.insert(key);
    auto it = raw_.find(key);
    const std::string v = it == raw_.end() ? def : it->second;
    record_[key] = v;
    return v;
  }

  long long integer(const std::string& key, long long def, long long lo, long long hi) {
    used_.insert(key);
    long long v = def;
    if (auto it = raw_.find(key); it != raw_.end()) v = parse_integer(key, it->second);
    if (v < lo || v > hi) {
      throw ParameterError("--" + key + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    record_[key] = v;
    return v;
  }

  double real(const std::string& key, double def, double lo, double hi) {
    used_.insert(key);
    double v = def;
    if (auto it = raw_.find(key); it != raw_.end()) {
      std::size_t pos = 0;
      try {
        v = std::stod(it->second, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos == 0 || pos != it->second.size()) throw ParameterError("--" + key + " expects a number");
    }
    if (!(v >= lo && v <= hi)) {
      std::ostringstream msg;
      msg << "--" << key << " must lie in [" << lo << ", " << hi << "]";
      throw ParameterError(msg.str());
    }
    record_[key] = v;
    return v;
  }

  // Integer flag that may also be "random"; returns nullopt for random.
  std::optional<long long> integer_or_random(const std::string& key, long long lo, long long hi) {
    used_.insert(key);
    auto it = raw_.find(key);
    if (it == raw_.end() || it->second == "random") {
      record_[key] = "random";
      return std::nullopt;
    }
    const long long v = parse_integer(key, it->second);
    if (v < lo || v > hi) {
      throw ParameterError("--" + key + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    record_[key] = v;
    return v;
  }

  std::string choice(const std::string& key, const std::string& def, const std::vector<std::string>& allowed) {
    const std::string v = str(key, def);
    if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      throw ParameterError("--" + key + " must be one of: " + list);
    }
    return v;
  }

  void finish() const {
    for (const auto& [key, value] : raw_) {
      if (!used_.count(key)) throw UsageError("demo '" + demo_ + "' does not take --" + key);
    }
  }

 private:
  static long long parse_integer(const std::string& key, const std::string& text) {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(text, &pos, 0);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != text.size()) throw ParameterError("--" + key + " expects an integer");
    return v;
  }

  std::string demo_;
  const DemoParams& raw_;
  json& record_;
  std::set<std::string> used_;
};

struct Ctx {
  DemoReport& report;
  Params& p;
  RandomSource& rng;
  const DemoOptions& options;

  int trials(int def) {
    const int t = options.trials >= 0 ? options.trials : def;
    if (t < 1 || t > 10'000'000) throw ParameterError("--trials must lie in [1, 10000000]");
    report.params["trials"] = t;
    return t;
  }
  json& res() { return report.results; }
  json& ref() { return report.reference; }
  void state(const StateVector& s) {
    if (options.dump_state) report.state = state_to_json(s);
  }
};

double sigma(double p, int trials) { return std::sqrt(p * (1.0 - p) / trials); }

std::uint64_t sample(const std::vector<double>& probs, RandomSource& rng) { return sample_index(probs, rng); }

std::vector<std::uint64_t> parse_list(const std::string& key, const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != item.size()) throw ParameterError("--" + key + " expects comma-separated integers");
    out.push_back(v);
  }
  if (out.empty()) throw ParameterError("--" + key + " is empty");
  return out;
}

std::string bit_string(std::uint64_t v, int n) {
  std::string s;
  for (int i = n - 1; i >= 0; --i) s += ((v >> i) & 1U) ? '1' : '0';
  return s;
}

// ---------------------------------------------------------------- query

void demo_dj(Ctx& c) {
  const int n = static_cast<int>(c.p.integer("n", 4, 1, 16));
  const std::string kind = c.p.choice("kind", "balanced", {"balanced", "constant"});
  const int trials = c.trials(100);
  int errors = 0;
  std::uint64_t max_queries = 0;
  std::string first;
  for (int i = 0; i < trials; ++i) {
    BitOracle o = kind == "balanced" ? random_balanced_oracle(n, c.rng)
                                     : BitOracle(std::vector<int>(std::size_t{1} << n, c.rng.bit()));
    const Verdict v = deutsch_jozsa(o, c.rng);
    const std::string name = v == Verdict::Constant ? "constant" : "balanced";
    if (i == 0) first = name;
    if (name != kind) ++errors;
    max_queries = std::max(max_queries, o.query_count());
  }
  c.res()["verdict"] = first;
  c.res()["errors"] = errors;
  c.res()["queries_per_run"] = max_queries;
  c.ref()["errors"] = 0;
  c.ref()["queries_per_run"] = 1;
}

void demo_bv(Ctx& c) {
  const int n = static_cast<int>(c.p.integer("n", 4, 1, 16));
  const auto given = c.p.integer_or_random("a", 0, (1LL << n) - 1);
  const int trials = c.trials(100);
  const std::uint64_t a = given ? static_cast<std::uint64_t>(*given) : c.rng.below(std::uint64_t{1} << n);
  int errors = 0;
  std::uint64_t recovered = 0, max_queries = 0;
  for (int i = 0; i < trials; ++i) {
    BitOracle o = parity_oracle(n, a);
    const std::uint64_t r = bernstein_vazirani(o, c.rng);
    if (i == 0) recovered = r;
    if (r != a) ++errors;
    max_queries = std::max(max_queries, o.query_count());
  }
  c.res()["a"] = bit_string(a, n);
  c.res()["recovered"] = bit_string(recovered, n);
  c.res()["errors"] = errors;
  c.res()["queries_per_run"] = max_queries;
  c.ref()["errors"] = 0;
  c.ref()["queries_per_run"] = 1;
}

void demo_simon(Ctx& c) {
  const int n = static_cast<int>(c.p.integer("n", 4, 2, 10));
  const auto given = c.p.integer_or_random("s", 1, (1LL << n) - 1);
  const int trials = c.trials(20);
  const std::uint64_t s = given ? static_cast<std::uint64_t>(*given) : 1 + c.rng.below((std::uint64_t{1} << n) - 1);
  int errors = 0, max_runs = 0;
  double total_runs = 0;
  std::uint64_t recovered = 0;
  json first_samples = json::array();
  for (int i = 0; i < trials; ++i) {
    const FunctionOracle f = simon_instance(n, s, c.rng);
    const SimonResult r = simon(f, c.rng);
    if (i == 0) {
      recovered = r.s;
      for (auto j : r.samples) first_samples.push_back(bit_string(j, n));
    }
    if (r.s != s) ++errors;
    total_runs += r.runs;
    max_runs = std::max(max_runs, r.runs);
  }
  c.res()["s"] = bit_string(s, n);
  c.res()["recovered"] = bit_string(recovered, n);
  c.res()["samples"] = first_samples;
  c.res()["errors"] = errors;
  c.res()["mean_runs"] = total_runs / trials;
  c.res()["max_runs"] = max_runs;
  c.ref()["errors"] = 0;
  c.ref()["mean_runs_bound"] = 2 * n;
}

void demo_grover(Ctx& c) {
  const int n = static_cast<int>(c.p.integer("n", 2, 1, 16));
  const std::uint64_t N = std::uint64_t{1} << n;
  const auto t = static_cast<std::uint64_t>(c.p.integer("t", 1, 1, static_cast<long long>(N)));
  const bool exact = c.p.integer("exact", 0, 0, 1) == 1;
  const int sweep = static_cast<int>(c.p.integer("sweep", 10, 0, 64));
  const int trials = c.trials(1000);
  const BitOracle o = random_marked_oracle(n, t, c.rng);
  const double theta = std::asin(std::sqrt(static_cast<double>(t) / static_cast<double>(N)));

  o.reset_count();
  StateVector s;
  std::function<bool(std::uint64_t)> good;
  int k = 0;
  double predicted = 0.0;
  if (exact) {
    const ExactGroverPlan plan = exact_grover_plan(N, t);
    k = plan.k;
    s = grover_exact_state(o, t);
    good = [&o](std::uint64_t i) { return o.bit(i >> 1) == 1; };
    predicted = 1.0;
    c.res()["gamma"] = plan.gamma;
  } else {
    k = grover_iterations(N, t);
    s = grover_state(o, t);
    good = [&o](std::uint64_t i) { return o.bit(i) == 1; };
    predicted = grover_success_probability(N, t, k);
  }
  const std::uint64_t queries = o.query_count();
  const double p = good_weight(s, good);
  const auto probs = s.probabilities();
  int hits = 0;
  for (int i = 0; i < trials; ++i) hits += good(sample(probs, c.rng)) ? 1 : 0;

  c.res()["iterations"] = k;
  c.res()["queries"] = queries;
  c.res()["success_probability"] = p;
  c.res()["empirical_success"] = static_cast<double>(hits) / trials;
  c.ref()["theta"] = theta;
  c.ref()["success_probability"] = predicted;
  c.ref()["sigma"] = sigma(predicted, trials);
  c.state(s);

  c.report.series.columns = {"k", "predicted", "empirical"};
  for (int kk = 0; kk <= sweep; ++kk) {
    const StateVector sk = simulate(grover_circuit(o, kk), 0);
    const auto pk = sk.probabilities();
    int h = 0;
    for (int i = 0; i < trials; ++i) h += o.bit(sample(pk, c.rng));
    c.report.series.rows.push_back(
        {static_cast<double>(kk), grover_success_probability(N, t, kk), static_cast<double>(h) / trials});
  }
}

// ---------------------------------------------------------------- Fourier

void demo_qft(Ctx& c) {
  const int n = static_cast<int>(c.p.integer("n", 4, 1, 8));
  const int cutoff = static_cast<int>(c.p.integer("cutoff", ceil_log2(static_cast<std::size_t>(n)) + 3, 1, 64));
  const auto input = static_cast<std::uint64_t>(c.p.integer("input", 1, 0, (1LL << n) - 1));
  const ComplexMatrix dft = dft_matrix(n);
  const ComplexMatrix exact = qft_circuit(n).unitary();
  const ComplexMatrix approx = approx_qft_circuit(n, cutoff).unitary();
  c.res()["max_entry_error"] = max_abs_diff(exact, dft);
  c.res()["gates"] = qft_circuit(n).size();
  c.res()["approx_gates"] = approx_qft_circuit(n, cutoff).size();
  c.res()["approx_distance"] = op_norm_diff(approx, dft);
  c.ref()["max_entry_error_tolerance"] = 1e-10;
  c.ref()["approx_distance_target"] = 1.0 / n;
  c.state(simulate(qft_circuit(n), input));
  c.report.series.columns = {"cutoff", "operator_norm_distance"};
  for (int s = 1; s <= n; ++s) {
    c.report.series.rows.push_back({static_cast<double>(s), op_norm_diff(approx_qft_circuit(n, s).unitary(), dft)});
  }
}

std::uint64_t classical_order(std::uint64_t x, std::uint64_t N) {
  std::uint64_t r = 1, v = x % N;
  while (v != 1 % N) {
    v = v * x % N;
    ++r;
  }
  return r;
}

void demo_period(Ctx& c) {
  const auto N = static_cast<std::uint64_t>(c.p.integer("N", 10, 2, 255));
  const auto x = static_cast<std::uint64_t>(c.p.integer("x", 7, 2, static_cast<long long>(N) - 1));
  if (std::gcd(x, N) != 1) throw ParameterError("--x must be coprime to --N");
  const FunctionOracle f = modexp_oracle(x, N);
  const PeriodResult r = find_period(f, N, c.rng);
  c.res()["address_bits"] = f.input_bits();
  c.res()["q"] = std::uint64_t{1} << f.input_bits();
  c.res()["period"] = r.r;
  c.res()["attempts"] = r.attempts;
  c.res()["samples"] = r.samples;
  c.ref()["period"] = classical_order(x, N);
}

void demo_shor(Ctx& c) {
  const auto N = static_cast<std::uint64_t>(c.p.integer("N", 15, 3, 255));
  const ShorResult r = shor_factor(N, c.rng);
  c.res()["factor"] = r.factor;
  c.res()["cofactor"] = r.factor ? N / r.factor : 0;
  c.res()["attempts"] = r.attempts;
  c.res()["used_quantum"] = r.used_quantum;
  json divisors = json::array();
  for (std::uint64_t d = 2; d < N; ++d)
    if (N % d == 0) divisors.push_back(d);
  c.ref()["nontrivial_divisors"] = divisors;
}

void demo_hsp(Ctx& c) {
  AbelianGroupSpec g;
  g.cycles = parse_list("cycles", c.p.str("cycles", "4,4"));
  for (auto n : g.cycles)
    if (n < 2 || !std::has_single_bit(n)) throw ParameterError("--cycles entries must be powers of two >= 2");
  if (g.bits() > 10) throw CapacityError("group too large: at most 2^10 elements");
  const auto h = parse_list("generator", c.p.str("generator", "2,2"));
  if (h.size() != g.cycles.size()) throw ParameterError("--generator needs one coordinate per cycle");
  const int trials = c.trials(20);
  // Subgroup <h> and the coset label (smallest member) of every element.
  std::vector<std::vector<std::uint64_t>> subgroup;
  std::vector<std::uint64_t> cur(h.size(), 0);
  do {
    subgroup.push_back(cur);
    for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = (cur[i] + h[i]) % g.cycles[i];
  } while (std::any_of(cur.begin(), cur.end(), [](auto v) { return v != 0; }));
  const FunctionOracle f = FunctionOracle::from_function(g.bits(), g.bits(), [&](std::uint64_t idx) {
    const auto e = g.unpack(idx);
    std::uint64_t best = g.order();
    for (const auto& m : subgroup) {
      std::vector<std::uint64_t> s(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) s[i] = (e[i] + m[i]) % g.cycles[i];
      best = std::min(best, g.pack(s));
    }
    return best;
  });
  json samples = json::array();
  int trivial = 0;
  std::set<std::vector<std::uint64_t>> distinct;
  for (int i = 0; i < trials; ++i) {
    const auto label = abelian_hsp_sample(g, f, c.rng);
    samples.push_back(label);
    distinct.insert(label);
    if (character_trivial(g, label, h)) ++trivial;
  }
  c.res()["subgroup_order"] = subgroup.size();
  c.res()["samples"] = samples;
  c.res()["distinct_labels"] = distinct.size();
  c.res()["trivial_on_subgroup_fraction"] = static_cast<double>(trivial) / trials;
  c.ref()["trivial_on_subgroup_fraction"] = 1.0;
  c.ref()["annihilator_order"] = g.order() / subgroup.size();
}

// ---------------------------------------------------------------- walks and simulation

void demo_walk(Ctx& c) {
  const std::string kind = c.p.choice("graph", "complete", {"complete", "cycle", "hypercube", "johnson"});
  RegularGraph g = RegularGraph::complete(2);
  if (kind == "complete") {
    g = RegularGraph::complete(static_cast<int>(c.p.integer("size", 8, 3, 64)));
  } else if (kind == "cycle") {
    g = RegularGraph::cycle(static_cast<int>(c.p.integer("size", 9, 3, 64)));
  } else if (kind == "hypercube") {
    g = RegularGraph::hypercube(static_cast<int>(c.p.integer("size", 3, 1, 6)));
  } else {
    const int n = static_cast<int>(c.p.integer("jn", 6, 2, 12));
    const int k = static_cast<int>(c.p.integer("jk", 2, 1, n - 1));
    g = RegularGraph::johnson(n, k);
    if (g.vertex_count() > 64) throw CapacityError("Johnson graph too large: at most 64 vertices");
  }
  const int N = g.vertex_count();
  const int marked = static_cast<int>(c.p.integer("marked", 1, 1, N));
  const int trials = c.trials(20);
  std::vector<int> order(N);
  for (int i = 0; i < N; ++i) order[i] = i;
  std::set<int> mset;
  for (int k = 0; k < marked; ++k) {
    std::swap(order[k], order[k + c.rng.below(N - k)]);
    mset.insert(order[k]);
  }
  g = g.with_marked(mset);
  const SpectralGap gap = spectral_gap(g);
  int found = 0;
  double steps = 0.0;
  MnrsResult first;
  for (int i = 0; i < trials; ++i) {
    const MnrsResult r = mnrs_search(g, c.rng);
    if (i == 0) first = r;
    if (r.vertex && g.is_marked(*r.vertex)) ++found;
    steps += static_cast<double>(r.walk_steps);
  }
  c.res()["vertices"] = N;
  c.res()["degree"] = g.degree();
  c.res()["marked"] = std::vector<int>(mset.begin(), mset.end());
  c.res()["spectral_gap"] = gap.delta;
  c.res()["ancilla_bits"] = first.ancilla_bits;
  c.res()["rounds"] = first.rounds;
  c.res()["success_probability"] = first.success_probability;
  c.res()["success_frequency"] = static_cast<double>(found) / trials;
  c.res()["mean_walk_steps"] = steps / trials;
  c.ref()["marked_fraction"] = g.marked_fraction();
  c.ref()["min_success_frequency"] = 0.5;
}

void demo_trotter(Ctx& c) {
  const double t = c.p.real("t", 1.0, 1e-6, 100.0);
  const int max_exp = static_cast<int>(c.p.integer("max_exponent", 8, 1, 16));
  const PauliHamiltonian h(1, {PauliString{"X", 1.0}, PauliString{"Z", 1.0}});
  const ComplexMatrix exact = herm_expm(h.matrix(), t);
  c.report.series.columns = {"r", "error"};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int e = 0; e <= max_exp; ++e) {
    const int r = 1 << e;
    const double err = op_norm_diff(trotter_simulate(h, t, r), exact);
    c.report.series.rows.push_back({static_cast<double>(r), err});
    const double lx = std::log(static_cast<double>(r)), ly = std::log(err);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double m = max_exp + 1;
  c.res()["hamiltonian"] = "X + Z";
  c.res()["loglog_slope"] = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  c.res()["error_at_max_r"] = c.report.series.rows.back()[1];
  c.ref()["loglog_slope"] = -1.0;
  c.ref()["slope_tolerance"] = 0.15;
}

PauliHamiltonian random_pauli_hamiltonian(int n, int terms, RandomSource& rng) {
  std::vector<PauliString> t;
  std::set<std::string> seen;
  while (static_cast<int>(t.size()) < terms) {
    std::string label;
    for (int q = 0; q < n; ++q) label += "IXYZ"[rng.below(4)];
    if (label == std::string(n, 'I') || seen.count(label)) continue;
    seen.insert(label);
    const double mag = 0.25 + 0.75 * rng.uniform();
    t.push_back(PauliString{label, rng.bit() ? mag : -mag});
  }
  return PauliHamiltonian(n, std::move(t));
}

void demo_lcu(Ctx& c) {
  const int n = static_cast<int>(c.p.integer("qubits", 2, 1, 4));
  const int terms = static_cast<int>(c.p.integer("terms", 2, 1, 6));
  if (terms >= (1 << (2 * n))) throw ParameterError("--terms exceeds the number of non-identity Pauli strings");
  const double t = c.p.real("t", 1.0, 0.0, 4.0);
  const double eps = c.p.real("eps", 1e-4, 1e-8, 0.5);
  const PauliHamiltonian h = random_pauli_hamiltonian(n, terms, c.rng);
  const StateVector psi = StateVector::random(n, c.rng);
  const HamSimResult r = lcu_hamsim(h, t, eps, psi, c.rng);
  const CVector exact = herm_expm(h.matrix(), t).apply(psi.amplitudes());
  CVector diff = r.state.amplitudes();
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= exact[i];
  json hj = json::array();
  for (const auto& term : h.terms) hj.push_back({{"pauli", term.label}, {"coefficient", term.coefficient.real()}});
  c.res()["hamiltonian"] = hj;
  c.res()["error"] = norm(diff);
  c.res()["blocks"] = r.blocks;
  c.res()["taylor_order"] = r.order;
  c.res()["block_terms"] = r.terms;
  c.res()["amplification_rounds"] = r.rounds;
  c.res()["restarts"] = r.restarts;
  c.ref()["error_bound"] = eps;
  c.state(r.state);
}

void demo_hhl(Ctx& c) {
  const int n = static_cast<int>(c.p.integer("qubits", 2, 1, 3));
  const int np = static_cast<int>(c.p.integer("np", 3, 2, 8));
  const double kappa = c.p.real("kappa", 2.0, 1.0, 256.0);
  // Eigenvalues j * 4 / 2^np with 1/kappa <= |lambda| <= 1.
  std::vector<double> allowed;
  const double step = 4.0 / std::ldexp(1.0, np);
  for (int j = 1; j * step <= 1.0 + 1e-12; ++j) {
    const double l = j * step;
    if (l >= 1.0 / kappa - 1e-12) {
      allowed.push_back(l);
      allowed.push_back(-l);
    }
  }
  if (allowed.empty()) throw ParameterError("no representable eigenvalue in [1/kappa, 1] at this precision");
  CVector d(std::size_t{1} << n);
  for (auto& v : d) v = allowed[c.rng.below(allowed.size())];
  const ComplexMatrix a = ComplexMatrix::diagonal(d);
  const StateVector b = StateVector::random(n, c.rng);
  const HhlResult r = hhl_solve(a, b, kappa, np, c.rng);
  CVector x(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) x[i] = b[i] / d[i];
  const StateVector expected = StateVector::from_amplitudes([&] {
    const double nx = norm(x);
    CVector y = x;
    for (auto& v : y) v /= nx;
    return y;
  }());
  json dj = json::array();
  for (const auto& v : d) dj.push_back(v.real());
  c.res()["diagonal"] = dj;
  c.res()["fidelity"] = fidelity(r.state, expected);
  c.res()["good_probability"] = r.good_probability;
  c.res()["amplification_rounds"] = r.rounds;
  c.res()["attempts"] = r.attempts;
  c.ref()["fidelity_min"] = 1.0 - 1e-6;
  c.state(r.state);
}

// ---------------------------------------------------------------- protocols

void demo_teleport(Ctx& c) {
  const int trials = c.trials(100);
  double min_f = 1.0, sum_f = 0.0;
  std::array<int, 4> outcomes{};
  StateVector last;
  for (int i = 0; i < trials; ++i) {
    const StateVector q = StateVector::random(1, c.rng);
    const TeleportResult r = teleport(q, c.rng);
    const double f = fidelity(q, r.bob);
    min_f = std::min(min_f, f);
    sum_f += f;
    ++outcomes[2 * r.a + r.b];
    last = r.bob;
  }
  c.res()["min_fidelity"] = min_f;
  c.res()["mean_fidelity"] = sum_f / trials;
  c.res()["outcome_frequencies"] = {{"00", static_cast<double>(outcomes[0]) / trials},
                                    {"01", static_cast<double>(outcomes[1]) / trials},
                                    {"10", static_cast<double>(outcomes[2]) / trials},
                                    {"11", static_cast<double>(outcomes[3]) / trials}};
  c.ref()["fidelity"] = 1.0;
  c.ref()["outcome_probability"] = 0.25;
  c.ref()["sigma"] = sigma(0.25, trials);
  c.state(last);
}

void demo_superdense(Ctx& c) {
  const int trials = c.trials(10);
  json per = json::object();
  int errors = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      int ok = 0;
      for (int i = 0; i < trials; ++i) {
        const auto [m1, m0] = superdense(a, b, c.rng);
        if (m1 == a && m0 == b) ++ok;
      }
      errors += trials - ok;
      per[std::to_string(a) + std::to_string(b)] = static_cast<double>(ok) / trials;
    }
  c.res()["decode_success"] = per;
  c.res()["errors"] = errors;
  c.ref()["decode_success"] = 1.0;
  c.state(superdense_encode(1, 1));
}

void demo_chsh(Ctx& c) {
  const std::string kind = c.p.choice("strategy", "quantum", {"quantum", "classical"});
  const int trials = c.trials(1000);
  const ChshStrategy s = kind == "quantum" ? ChshStrategy::quantum_reference() : ChshStrategy::deterministic({0, 0}, {0, 0});
  const ChshReport r = play_chsh(s, trials, c.rng);
  const char* names[4] = {"00", "01", "10", "11"};
  json exact = json::object(), emp = json::object();
  for (int i = 0; i < 4; ++i) {
    exact[names[i]] = r.exact[i];
    emp[names[i]] = r.empirical[i];
  }
  c.res()["win_probability"] = exact;
  c.res()["win_frequency"] = emp;
  c.res()["average_win_probability"] = r.average_exact;
  c.res()["average_win_frequency"] = r.average_empirical;
  const double q = std::pow(std::cos(kPi / 8.0), 2);
  c.ref()["quantum_win_probability"] = q;
  c.ref()["classical_best"] = chsh_best_classical().first;
  c.ref()["sigma"] = sigma(kind == "quantum" ? q : 0.75, trials);
}

void demo_magicsquare(Ctx& c) {
  const int trials = c.trials(100);
  json wins = json::array();
  int total = 0;
  for (int x = 1; x <= 3; ++x) {
    json row = json::array();
    for (int y = 1; y <= 3; ++y) {
      int w = 0;
      for (int i = 0; i < trials; ++i) w += play_magic_square(x, y, c.rng).win ? 1 : 0;
      row.push_back(static_cast<double>(w) / trials);
      total += w;
    }
    wins.push_back(row);
  }
  const std::array<std::array<int, 3>, 3> alice{{{0, 0, 0}, {0, 0, 0}, {1, 1, 0}}};
  const std::array<std::array<int, 3>, 3> bob{{{0, 0, 0}, {0, 0, 0}, {1, 1, 1}}};
  c.res()["quantum_win_frequency"] = wins;
  c.res()["quantum_overall"] = static_cast<double>(total) / (9.0 * trials);
  c.res()["classical_example_wins"] = magic_square_classical_wins(alice, bob);
  c.ref()["quantum_win_probability"] = 1.0;
  c.ref()["classical_best_wins"] = 8;
}

void demo_mermin(Ctx& c) {
  const int trials = c.trials(100);
  const int inputs[4][3] = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  json exact = json::object(), freq = json::object();
  for (const auto& in : inputs) {
    int w = 0;
    for (int i = 0; i < trials; ++i) {
      const auto abc = play_mermin(in[0], in[1], in[2], c.rng);
      if ((abc[0] ^ abc[1] ^ abc[2]) == (in[0] | in[1] | in[2])) ++w;
    }
    const std::string key = std::to_string(in[0]) + std::to_string(in[1]) + std::to_string(in[2]);
    exact[key] = mermin_win_probability(in[0], in[1], in[2]);
    freq[key] = static_cast<double>(w) / trials;
  }
  c.res()["win_probability"] = exact;
  c.res()["win_frequency"] = freq;
  c.ref()["quantum_win_probability"] = 1.0;
  c.ref()["classical_best"] = mermin_best_classical() / 4.0;
}

void demo_bb84(Ctx& c) {
  const int n = static_cast<int>(c.p.integer("n", 4096, 16, 1 << 22));
  const std::string eve_kind = c.p.choice("eve", "none", {"none", "breidbart", "computational"});
  const double threshold = c.p.real("threshold", 0.11, 0.0, 1.0);
  std::unique_ptr<Eavesdropper> eve;
  if (eve_kind == "none") eve = std::make_unique<NoEavesdropper>();
  else if (eve_kind == "breidbart") eve = std::make_unique<InterceptResend>(kPi / 8.0);
  else eve = std::make_unique<InterceptResend>(0.0);
  const Bb84Transcript t = bb84_run(n, *eve, threshold, c.rng);
  c.res()["matched"] = t.matched.size();
  c.res()["tested"] = t.tested.size();
  c.res()["key_length"] = t.alice_key.size();
  c.res()["keys_agree"] = t.alice_key == t.bob_key;
  c.res()["matched_error"] = t.matched_error;
  c.res()["observed_error"] = t.observed_error;
  c.res()["abort"] = t.abort;
  if (eve_kind != "none") c.res()["eve_accuracy"] = t.eve_accuracy;
  c.ref()["key_length"] = n / 4.0;
  c.ref()["key_length_sigma"] = std::sqrt(static_cast<double>(n)) / 2.0;
  // Each intercepted matched bit is wrong with probability 1/4 for either measurement angle.
  c.ref()["matched_error"] = eve_kind == "none" ? 0.0 : 0.25;
  c.ref()["matched_error_sigma"] = eve_kind == "none" ? 0.0 : sigma(0.25, std::max<std::size_t>(1, t.matched.size()));
}

void demo_fingerprint(Ctx& c) {
  const int n = static_cast<int>(c.p.integer("n", 6, 1, 10));
  const long long top = (1LL << n) - 1;
  const auto gx = c.p.integer_or_random("x", 0, top);
  const auto gy = c.p.integer_or_random("y", 0, top);
  const int k = static_cast<int>(c.p.integer("k", 4, 1, 64));
  const int trials = c.trials(100);
  const std::uint64_t x = gx ? static_cast<std::uint64_t>(*gx) : c.rng.below(std::uint64_t{1} << n);
  const std::uint64_t y = gy ? static_cast<std::uint64_t>(*gy) : c.rng.below(std::uint64_t{1} << n);
  int equal = 0;
  double ip = 0.0;
  for (int i = 0; i < trials; ++i) {
    const FingerprintResult r = fingerprint_equality(x, y, n, k, c.rng);
    if (r.verdict == Equality::Equal) ++equal;
    ip = r.inner_product;
  }
  c.res()["x"] = bit_string(x, n);
  c.res()["y"] = bit_string(y, n);
  c.res()["inner_product"] = ip;
  c.res()["equal_verdict_frequency"] = static_cast<double>(equal) / trials;
  const double pe = std::pow((1.0 + ip * ip) / 2.0, k);
  c.ref()["equal_verdict_probability"] = pe;
  c.ref()["sigma"] = sigma(pe, trials);
}

void demo_ddj(Ctx& c) {
  const int n = static_cast<int>(c.p.integer("n", 8, 2, 1 << 12));
  if (!std::has_single_bit(static_cast<unsigned>(n))) throw ParameterError("--n must be a power of two");
  const std::string mode = c.p.choice("equal", "random", {"random", "1", "0"});
  const int trials = c.trials(100);
  int dist_errors = 0, nonlocal_errors = 0;
  for (int i = 0; i < trials; ++i) {
    std::vector<int> x(n), y;
    for (auto& b : x) b = c.rng.bit();
    y = x;
    const bool eq = mode == "random" ? c.rng.bit() == 1 : mode == "1";
    if (!eq) {
      std::vector<int> idx(n);
      for (int j = 0; j < n; ++j) idx[j] = j;
      for (int j = 0; j < n / 2; ++j) {
        std::swap(idx[j], idx[j + c.rng.below(n - j)]);
        y[idx[j]] ^= 1;
      }
    }
    if (distributed_dj(x, y, c.rng).equal != eq) ++dist_errors;
    const auto [a, b] = nonlocal_dj(x, y, c.rng);
    if ((a == b) != eq) ++nonlocal_errors;
  }
  c.res()["qubits_exchanged"] = std::countr_zero(static_cast<unsigned>(n));
  c.res()["distributed_errors"] = dist_errors;
  c.res()["nonlocal_errors"] = nonlocal_errors;
  c.ref()["errors"] = 0;
}

void demo_ldc(Ctx& c) {
  const int n = static_cast<int>(c.p.integer("n", 10, 1, 20));
  const double delta = c.p.real("delta", 0.05, 0.0, 0.25);
  const auto gx = c.p.integer_or_random("x", 0, (1LL << n) - 1);
  const int trials = c.trials(10000);
  const std::uint64_t x = gx ? static_cast<std::uint64_t>(*gx) : c.rng.below(std::uint64_t{1} << n);
  const std::vector<int> code = hadamard_encode(x, n);
  int ok = 0;
  for (int t = 0; t < trials; ++t) {
    const std::vector<int> y = corrupt(code, delta, c.rng);
    const int i = static_cast<int>(c.rng.below(n));
    if (ldc_decode(y, i, c.rng) == static_cast<int>((x >> (n - 1 - i)) & 1U)) ++ok;
  }
  c.res()["x"] = bit_string(x, n);
  if (n <= 6) {
    std::string s;
    for (int b : code) s += b ? '1' : '0';
    c.res()["codeword"] = s;
  }
  c.res()["success_frequency"] = static_cast<double>(ok) / trials;
  c.ref()["success_lower_bound"] = 1.0 - 2.0 * delta;
}

ComplexMatrix random_unitary_2x2(RandomSource& rng) {
  const double a = 2 * kPi * rng.uniform(), b = 2 * kPi * rng.uniform(), d = 2 * kPi * rng.uniform();
  const double th = std::acos(std::sqrt(rng.uniform()));
  const double g = 2 * kPi * rng.uniform();
  const cplx ph = std::polar(1.0, g);
  return ComplexMatrix{{ph * std::polar(std::cos(th), a), -ph * std::polar(std::sin(th), -b + d)},
                       {ph * std::polar(std::sin(th), b), ph * std::polar(std::cos(th), -a + d)}};
}

void demo_qec(Ctx& c) {
  const std::string err = c.p.choice("error", "x", {"x", "y", "z", "h", "random"});
  const auto gpos = c.p.integer_or_random("position", 1, 9);
  const int trials = c.trials(1);
  double min_f = 1.0;
  Syndrome first;
  int first_pos = 0;
  CorrectionResult last;
  for (int i = 0; i < trials; ++i) {
    const int pos = gpos ? static_cast<int>(*gpos) : 1 + static_cast<int>(c.rng.below(9));
    ComplexMatrix m;
    if (err == "x") m = pauli('X');
    else if (err == "y") m = pauli('Y');
    else if (err == "z") m = pauli('Z');
    else if (err == "h") m = cplx(1.0 / std::sqrt(2.0)) * ComplexMatrix{{1, 1}, {1, -1}};
    else m = random_unitary_2x2(c.rng);
    const StateVector q = StateVector::random(1, c.rng);
    const StateVector encoded = shor9_encode(q);
    StateVector noisy = encoded;
    apply_error(noisy, SingleQubitError{pos, m});
    last = shor9_correct(noisy, c.rng);
    if (i == 0) {
      first = last.syndrome;
      first_pos = pos;
    }
    min_f = std::min(min_f, fidelity(last.state, encoded));
  }
  c.res()["position"] = first_pos;
  c.res()["syndrome"] = {{"bitflip", first.bitflip}, {"phaseflip", first.phaseflip}};
  c.res()["min_fidelity"] = min_f;
  c.res()["repetition_error_rate_p0.1_k1"] = repetition_error_rate(0.1, 1);
  c.ref()["fidelity_min"] = 1.0 - 1e-9;
  c.ref()["repetition_error_rate_p0.1_k1"] = 0.028;
  c.state(last.state);
}

void demo_pathsum(Ctx& c) {
  Circuit circ;
  if (!c.options.circuit_text.empty()) {
    circ = parse_circuit(c.options.circuit_text);
    c.report.params["circuit"] = "file";
  } else {
    const int n = static_cast<int>(c.p.integer("qubits", 3, 1, 8));
    const int gates = static_cast<int>(c.p.integer("gates", 8, 0, 40));
    circ = random_circuit(n, gates, c.rng);
    c.report.params["circuit"] = "random";
  }
  const int n = circ.qubit_count();
  if (n > 10) throw CapacityError("path-sum demo supports at most 10 qubits");
  if (n < 1) throw ParameterError("circuit has no qubits");
  const auto input = static_cast<std::uint64_t>(c.p.integer("input", 0, 0, (1LL << n) - 1));
  const StateVector s = simulate(circ, input);
  double max_diff = 0.0;
  c.report.series.columns = {"output", "path_sum_re", "path_sum_im", "simulate_re", "simulate_im"};
  for (std::uint64_t out = 0; out < s.dim(); ++out) {
    const cplx a = path_sum_amplitude(circ, input, out);
    max_diff = std::max(max_diff, std::abs(a - s[out]));
    c.report.series.rows.push_back({static_cast<double>(out), a.real(), a.imag(), s[out].real(), s[out].imag()});
  }
  c.res()["qubits"] = n;
  c.res()["gates"] = circ.size();
  c.res()["circuit"] = emit_circuit(circ);
  c.res()["max_amplitude_difference"] = max_diff;
  c.ref()["tolerance"] = 1e-9;
  c.state(s);
}

struct DemoEntry {
  const char* name;
  const char* description;
  void (*run)(Ctx&);
};

const std::vector<DemoEntry>& registry() {
  static const std::vector<DemoEntry> r = {
      {"dj", "[query] Deutsch-Jozsa: constant vs balanced with one phase query. --n --kind", demo_dj},
      {"bv", "[query] Bernstein-Vazirani: recover a from x_i = i.a with one query. --n --a", demo_bv},
      {"simon", "[query] Simon: hidden xor-period s via GF(2) elimination. --n --s", demo_simon},
      {"grover", "[query] Grover search, success vs iterations sweep. --n --t --exact --sweep", demo_grover},
      {"qft", "[fourier] QFT circuit vs DFT matrix, approximate QFT cutoffs. --n --cutoff --input", demo_qft},
      {"period", "[fourier] Period finding of x^a mod N with continued fractions. --N --x", demo_period},
      {"shor", "[fourier] Shor factoring through order finding. --N", demo_shor},
      {"hsp", "[fourier] Abelian hidden subgroup sampling. --cycles --generator", demo_hsp},
      {"walk", "[walks] Szegedy walk search (MNRS) on a regular graph. --graph --size --jn --jk --marked", demo_walk},
      {"trotter", "[hamiltonian] Trotter error vs step count for H = X + Z. --t --max_exponent", demo_trotter},
      {"lcu", "[hamiltonian] Truncated-Taylor LCU simulation on a random Pauli Hamiltonian. --qubits --terms --t --eps",
       demo_lcu},
      {"hhl", "[hamiltonian] HHL on a diagonal system with representable spectrum. --qubits --np --kappa", demo_hhl},
      {"teleport", "[protocols] Teleportation of random qubits.", demo_teleport},
      {"superdense", "[protocols] Superdense coding of all four messages.", demo_superdense},
      {"chsh", "[nonlocality] CHSH game win rates. --strategy", demo_chsh},
      {"magicsquare", "[nonlocality] Magic square game with two EPR pairs.", demo_magicsquare},
      {"mermin", "[nonlocality] Mermin GHZ game on the promise inputs.", demo_mermin},
      {"bb84", "[cryptography] BB84 key distribution with optional intercept-resend. --n --eve --threshold",
       demo_bb84},
      {"fingerprint", "[communication] Quantum fingerprinting equality test. --n --x --y --k", demo_fingerprint},
      {"ddj", "[communication] Distributed and non-local Deutsch-Jozsa. --n --equal", demo_ddj},
      {"ldc", "[communication] Hadamard code local decoding under corruption. --n --delta --x", demo_ldc},
      {"qec", "[error correction] Nine-qubit code correcting one error. --error --position", demo_qec},
      {"pathsum", "[circuits] Path-sum amplitudes vs state-vector simulation. --qubits --gates --input", demo_pathsum},
  };
  return r;
}

const DemoEntry& find_demo(const std::string& name) {
  for (const auto& e : registry())
    if (name == e.name) return e;
  throw UsageError("unknown demo '" + name + "'");
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& e : registry()) v.emplace_back(e.name);
    return v;
  }();
  return names;
}

std::string demo_description(const std::string& name) { return find_demo(name).description; }

DemoReport run_demo(const std::string& name, const DemoParams& params, std::uint64_t seed,
                    const DemoOptions& options) {
  const DemoEntry& entry = find_demo(name);
  if (!options.circuit_text.empty() && name != "pathsum") {
    throw UsageError("--circuit-file applies to the pathsum demo only");
  }
  DemoReport report;
  report.name = name;
  report.seed = seed;
  RandomSource rng(seed);
  Params p(name, params, report.params);
  Ctx ctx{report, p, rng, options};
  entry.run(ctx);
  p.finish();
  if (options.dump_state && report.state.is_null()) {
    throw UsageError("demo '" + name + "' has no state to dump");
  }
  return report;
}

json state_to_json(const StateVector& s) {
  json amps = json::array();
  for (std::size_t i = 0; i < s.dim(); ++i) amps.push_back({s[i].real(), s[i].imag()});
  return {{"qubit_count", s.qubit_count()}, {"amplitudes", amps}};
}

json report_to_json(const DemoReport& r) {
  json j;
  j["demo"] = r.name;
  j["params"] = r.params;
  j["seed"] = r.seed;
  j["results"] = r.results;
  j["reference"] = r.reference;
  j["series"] = {{"columns", r.series.columns}, {"rows", r.series.rows}};
  if (!r.state.is_null()) j["state"] = r.state;
  return j;
}

std::string report_json(const DemoReport& r) { return report_to_json(r).dump(2) + "\n"; }

std::string plot_csv(const DemoReport& r) {
  std::string out;
  for (std::size_t i = 0; i < r.series.columns.size(); ++i) out += (i ? "," : "") + r.series.columns[i];
  out += "\n";
  for (const auto& row : r.series.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_number(row[i]);
    out += "\n";
  }
  return out;
}

void emit_plot_data(const DemoReport& r, const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << plot_csv(r);
  f.close();
  if (!f) throw IoError("failed writing '" + path + "'");
}

}  // namespace qkit
