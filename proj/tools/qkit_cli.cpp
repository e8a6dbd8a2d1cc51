// qkit: run a demo and print its JSON report.
//
//   qkit grover --n 2 --t 1 --seed 7
//   qkit trotter --csv trotter.csv
//   qkit pathsum --circuit-file bell.txt --dump-state

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qkit/demos.hpp"
#include "qkit/errors.hpp"

namespace {

std::string demo_listing() {
  std::ostringstream out;
  out << "Demos:\n";
  for (const auto& name : qkit::demo_names()) {
    out << "  " << name;
    for (std::size_t i = name.size(); i < 13; ++i) out << ' ';
    out << qkit::demo_description(name) << "\n";
  }
  out << "\nDemo parameters are passed as --key value after the demo name.\n"
         "Exit codes: 0 success, 2 usage or parameter error, 3 internal or I/O failure.\n";
  return out.str();
}

// "--key value" and "--key=value" pairs; a key followed by another flag or
// nothing is an error.
qkit::DemoParams parse_demo_params(const std::vector<std::string>& extras) {
  qkit::DemoParams params;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& tok = extras[i];
    if (tok.rfind("--", 0) != 0 || tok.size() < 3) throw qkit::UsageError("unexpected argument '" + tok + "'");
    std::string key = tok.substr(2), value;
    if (auto eq = key.find('='); eq != std::string::npos) {
      value = key.substr(eq + 1);
      key = key.substr(0, eq);
    } else {
      if (i + 1 >= extras.size()) throw qkit::UsageError("--" + key + " needs a value");
      value = extras[++i];
    }
    if (params.count(key)) throw qkit::UsageError("--" + key + " given twice");
    params[key] = value;
  }
  return params;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw qkit::IoError("cannot read '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seeded demos of quantum algorithms and protocols on a state-vector simulator.", "qkit"};
  app.allow_extras();
  app.footer(demo_listing());

  std::string demo;
  std::uint64_t seed = qkit::kDefaultSeed;
  int trials = -1;
  std::string out_path, csv_path, circuit_file;
  bool dump_state = false;
  app.add_option("demo", demo, "Demo name (see the list below)");
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--trials", trials, "Repetitions for empirical estimates (default: per demo)");
  app.add_option("--out", out_path, "Write the JSON report to this file instead of stdout");
  app.add_option("--csv", csv_path, "Write the demo's data series as CSV");
  app.add_flag("--dump-state", dump_state, "Include the final state vector in the report");
  app.add_option("--circuit-file", circuit_file, "Circuit in the text format (pathsum)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (demo.empty()) throw qkit::UsageError("no demo given; run with --help for the list");
    const qkit::DemoParams params = parse_demo_params(app.remaining());
    qkit::DemoOptions options;
    options.trials = trials;
    options.dump_state = dump_state;
    if (!circuit_file.empty()) options.circuit_text = read_file(circuit_file);

    const qkit::DemoReport report = qkit::run_demo(demo, params, seed, options);
    const std::string text = qkit::report_json(report);
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
      if (!f || !(f << text)) throw qkit::IoError("cannot write '" + out_path + "'");
    }
    if (!csv_path.empty()) qkit::emit_plot_data(report, csv_path);
    return 0;
  } catch (const qkit::ParameterError& e) {
    std::cerr << "qkit: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "qkit: internal failure: " << e.what() << "\n";
    return 3;
  }
}
