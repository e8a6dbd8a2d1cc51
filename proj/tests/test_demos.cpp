#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "qkit/demos.hpp"
#include "qkit/errors.hpp"

using namespace qkit;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

int line_count(const std::string& text) { return static_cast<int>(std::count(text.begin(), text.end(), '\n')); }

fs::path scratch_dir() {
  const fs::path d = fs::temp_directory_path() / ("qkit_demo_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

#ifdef QKIT_CLI_PATH
int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + QKIT_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}
#endif

}  // namespace

TEST(Demos, RegistryListsEveryDemo) {
  const std::vector<std::string> expected{"dj",      "bv",         "simon",  "grover",      "qft",  "period",
                                          "shor",    "hsp",        "walk",   "trotter",     "lcu",  "hhl",
                                          "teleport", "superdense", "chsh",   "magicsquare", "mermin", "bb84",
                                          "fingerprint", "ddj",     "ldc",    "qec",         "pathsum"};
  auto names = demo_names();
  auto sorted_expected = expected;
  std::sort(names.begin(), names.end());
  std::sort(sorted_expected.begin(), sorted_expected.end());
  EXPECT_EQ(names, sorted_expected);
  for (const auto& n : demo_names()) EXPECT_FALSE(demo_description(n).empty()) << n;
  EXPECT_THROW(demo_description("nosuch"), UsageError);
}

TEST(Demos, EveryDemoRunsAndIsDeterministic) {
  DemoOptions opt;
  opt.trials = 20;
  for (const auto& n : demo_names()) {
    const std::string a = report_json(run_demo(n, {}, 11, opt));
    const std::string b = report_json(run_demo(n, {}, 11, opt));
    EXPECT_EQ(a, b) << n;
    const nlohmann::json j = nlohmann::json::parse(a);
    EXPECT_EQ(j["demo"], n);
    EXPECT_EQ(j["seed"], 11);
    EXPECT_TRUE(j["results"].is_object()) << n;
  }
}

TEST(Demos, GroverExample) {
  const DemoReport r = run_demo("grover", {{"n", "2"}, {"t", "1"}}, 7);
  EXPECT_NEAR(r.results["success_probability"].get<double>(), 1.0, 1e-9);
  EXPECT_EQ(r.results["iterations"], 1);
  EXPECT_EQ(r.params["n"], 2);
  const std::string csv = plot_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "k,predicted,empirical");
  EXPECT_EQ(line_count(csv), 1 + 11);
}

TEST(Demos, ShorExample) {
  const DemoReport r = run_demo("shor", {{"N", "15"}}, 1);
  const auto f = r.results["factor"].get<std::uint64_t>();
  EXPECT_TRUE(f == 3 || f == 5) << f;
}

TEST(Demos, TrotterSeriesIsLogLogReady) {
  const DemoReport r = run_demo("trotter", {}, 1);
  ASSERT_EQ(r.series.rows.size(), 9u);
  for (std::size_t i = 0; i < r.series.rows.size(); ++i) {
    EXPECT_DOUBLE_EQ(r.series.rows[i][0], double(1 << i));
    EXPECT_GT(r.series.rows[i][1], 0.0);
  }
}

TEST(Demos, EmptySeriesGivesHeaderOnlyCsv) {
  DemoReport r;
  r.series.columns = {"a", "b"};
  EXPECT_EQ(plot_csv(r), "a,b\n");
}

TEST(Demos, ParameterErrors) {
  EXPECT_THROW(run_demo("nosuch", {}, 1), UsageError);
  EXPECT_THROW(run_demo("grover", {{"bogus", "1"}}, 1), UsageError);
  EXPECT_THROW(run_demo("grover", {{"n", "abc"}}, 1), ParameterError);
  EXPECT_THROW(run_demo("grover", {{"n", "40"}}, 1), ParameterError);
  EXPECT_THROW(run_demo("shor", {{"N", "16"}}, 1), ParameterError);
  DemoOptions opt;
  opt.trials = 0;
  EXPECT_THROW(run_demo("grover", {}, 1, opt), ParameterError);
}

TEST(Demos, StateDumpAndCircuitText) {
  DemoOptions dump;
  dump.dump_state = true;
  const DemoReport g = run_demo("grover", {{"n", "3"}}, 1, dump);
  EXPECT_EQ(g.state["qubit_count"], 3);
  EXPECT_EQ(g.state["amplitudes"].size(), 8u);
  EXPECT_THROW(run_demo("shor", {}, 1, dump), UsageError);

  DemoOptions circ;
  circ.circuit_text = "H 0\nCNOT 0 1\n";
  const DemoReport p = run_demo("pathsum", {}, 1, circ);
  EXPECT_EQ(p.results["qubits"], 2);
  EXPECT_EQ(p.series.rows.size(), 4u);
  EXPECT_NEAR(p.series.rows[3][1], 1 / std::sqrt(2.0), 1e-12);
  EXPECT_THROW(run_demo("grover", {}, 1, circ), UsageError);
  circ.circuit_text = "FOO 0\n";
  EXPECT_THROW(run_demo("pathsum", {}, 1, circ), ParameterError);
}

TEST(Demos, PlotFileWritingAndIoError) {
  const fs::path dir = scratch_dir();
  const DemoReport r = run_demo("grover", {}, 3);
  emit_plot_data(r, (dir / "g.csv").string());
  EXPECT_EQ(slurp(dir / "g.csv"), plot_csv(r));
  EXPECT_THROW(emit_plot_data(r, (dir / "missing" / "g.csv").string()), IoError);
  fs::remove_all(dir);
}

#ifdef QKIT_CLI_PATH
TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("--help"), 0);
  EXPECT_EQ(run_cli("grover --n 2 --t 1 --seed 7"), 0);
  EXPECT_EQ(run_cli("grover --n=2 --t=1"), 0);
  EXPECT_EQ(run_cli(""), 2);
  EXPECT_EQ(run_cli("nosuch"), 2);
  EXPECT_EQ(run_cli("grover --n abc"), 2);
  EXPECT_EQ(run_cli("grover --n"), 2);
  EXPECT_EQ(run_cli("grover --bogus 1"), 2);
  EXPECT_EQ(run_cli("grover --seed notanumber"), 2);
  EXPECT_EQ(run_cli("grover --out /nonexistent_dir_qkit/report.json"), 3);
  EXPECT_EQ(run_cli("pathsum --circuit-file /nonexistent_dir_qkit/c.txt"), 3);
}

TEST(Cli, ReportsAreByteIdenticalAndMatchLibrary) {
  const fs::path dir = scratch_dir();
  const std::string a = (dir / "a.json").string(), b = (dir / "b.json").string(), csv = (dir / "t.csv").string();
  ASSERT_EQ(run_cli("grover --n 4 --t 2 --seed 9 --out " + a), 0);
  ASSERT_EQ(run_cli("grover --n 4 --t 2 --seed 9 --out " + b), 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(slurp(a), report_json(run_demo("grover", {{"n", "4"}, {"t", "2"}}, 9)));
  ASSERT_EQ(run_cli("trotter --csv " + csv + " --out " + a), 0);
  EXPECT_EQ(line_count(slurp(csv)), 1 + 9);
  fs::remove_all(dir);
}
#endif
