#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qkit/circuit.hpp"
#include "qkit/classical.hpp"
#include "qkit/demos.hpp"
#include "qkit/errors.hpp"
#include "qkit/fourier.hpp"
#include "qkit/protocols.hpp"
#include "qkit/qec.hpp"
#include "qkit/query.hpp"

namespace py = pybind11;
using namespace qkit;

namespace {

std::vector<std::vector<cplx>> matrix_rows(const ComplexMatrix& m) {
  std::vector<std::vector<cplx>> rows(m.rows(), std::vector<cplx>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return rows;
}

}  // namespace

PYBIND11_MODULE(_qkit, m) {
  m.doc() = "State-vector simulator with textbook quantum algorithms and protocols";

  auto parameter_error = py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<RetryLimitError>(m, "RetryLimitError", PyExc_RuntimeError);
  (void)parameter_error;

  py::class_<RandomSource>(m, "RandomSource")
      .def(py::init<std::uint64_t>(), py::arg("seed") = 0)
      .def("uniform", &RandomSource::uniform)
      .def("below", &RandomSource::below)
      .def_property_readonly("seed", &RandomSource::seed);

  py::class_<StateVector>(m, "StateVector")
      .def(py::init<int, std::uint64_t>(), py::arg("qubits"), py::arg("basis_index") = 0)
      .def_static("from_amplitudes", [](CVector a) { return StateVector::from_amplitudes(std::move(a)); })
      .def_static("uniform", &StateVector::uniform)
      .def_property_readonly("qubit_count", &StateVector::qubit_count)
      .def_property_readonly("amplitudes", [](const StateVector& s) { return s.amplitudes(); })
      .def("probabilities", &StateVector::probabilities)
      .def("__len__", &StateVector::dim);

  py::class_<Circuit>(m, "Circuit")
      .def_static("parse", [](const std::string& text) { return parse_circuit(text); })
      .def("emit", [](const Circuit& c) { return emit_circuit(c); })
      .def_property_readonly("qubit_count", &Circuit::qubit_count)
      .def("__len__", &Circuit::size)
      .def("unitary", [](const Circuit& c) { return matrix_rows(c.unitary()); })
      .def("simulate", [](const Circuit& c, std::uint64_t input) { return simulate(c, input); },
           py::arg("input") = 0)
      .def("simulate_state", [](const Circuit& c, const StateVector& s) { return simulate(c, s); })
      .def("path_sum_amplitude", &path_sum_amplitude);

  m.def("random_circuit", &random_circuit);
  m.def("qft_circuit", &qft_circuit);
  m.def("approx_qft_circuit", &approx_qft_circuit);
  m.def("dft_matrix", [](int n) { return matrix_rows(dft_matrix(n)); });

  m.def("grover_iterations", &grover_iterations);
  m.def("grover_success_probability", &grover_success_probability);
  m.def("grover_search", [](std::vector<int> bits, std::uint64_t t, std::uint64_t seed) {
    RandomSource rng(seed);
    return grover(BitOracle(std::move(bits)), t, rng);
  });
  m.def("deutsch_jozsa", [](std::vector<int> bits, std::uint64_t seed) {
    RandomSource rng(seed);
    return deutsch_jozsa(BitOracle(std::move(bits)), rng) == Verdict::Constant ? "constant" : "balanced";
  });
  m.def("bernstein_vazirani", [](std::vector<int> bits, std::uint64_t seed) {
    RandomSource rng(seed);
    return bernstein_vazirani(BitOracle(std::move(bits)), rng);
  });
  m.def("simon", [](int n, std::vector<std::uint64_t> table, std::uint64_t seed) {
    RandomSource rng(seed);
    return simon(FunctionOracle(n, n, std::move(table)), rng).s;
  });
  m.def("find_period", [](std::uint64_t x, std::uint64_t n, std::uint64_t seed) {
    RandomSource rng(seed);
    return find_period(modexp_oracle(x, n), n, rng).r;
  });
  m.def("shor_factor", [](std::uint64_t n, std::uint64_t seed) {
    RandomSource rng(seed);
    return shor_factor(n, rng).factor;
  });
  m.def("best_approx", [](std::uint64_t b, std::uint64_t q, std::uint64_t bound) {
    const Fraction f = best_approx(BigInt(b), BigInt(q), BigInt(bound));
    return std::make_pair(f.num.convert_to<long long>(), f.den.convert_to<long long>());
  });

  m.def("chsh_win_probabilities", [] { return chsh_win_probabilities(ChshStrategy::quantum_reference()); });
  m.def("chsh_best_classical", [] { return chsh_best_classical().first; });
  m.def("hadamard_encode", &hadamard_encode);
  m.def("repetition_error_rate", &repetition_error_rate);

  m.def("demo_names", &demo_names);
  m.def("demo_description", &demo_description);
  m.def(
      "run_demo_json",
      [](const std::string& name, const DemoParams& params, std::uint64_t seed, int trials, bool dump_state) {
        DemoOptions o;
        o.trials = trials;
        o.dump_state = dump_state;
        return report_json(run_demo(name, params, seed, o));
      },
      py::arg("name"), py::arg("params") = DemoParams{}, py::arg("seed") = kDefaultSeed, py::arg("trials") = -1,
      py::arg("dump_state") = false);
  m.attr("DEFAULT_SEED") = kDefaultSeed;
}
