#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "qkit/state.hpp"

namespace qkit {

using DemoParams = std::map<std::string, std::string>;

struct DemoOptions {
  int trials = -1;            // -1: the demo's default
  bool dump_state = false;    // attach the demo's final state to the report
  std::string circuit_text;   // text-format circuit (pathsum)
};

struct DemoSeries {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct DemoReport {
  std::string name;
  nlohmann::json params = nlohmann::json::object();     // every parameter in effect, defaults included
  std::uint64_t seed = 0;
  nlohmann::json results = nlohmann::json::object();
  nlohmann::json reference = nlohmann::json::object();  // closed forms and tolerances
  DemoSeries series;
  nlohmann::json state;                                 // null unless dump_state
};

inline constexpr std::uint64_t kDefaultSeed = 20240607;

const std::vector<std::string>& demo_names();
// One-line description with the topic the demo illustrates; throws UsageError for unknown names.
std::string demo_description(const std::string& name);

// Throws UsageError for an unknown demo or an unknown parameter key.
DemoReport run_demo(const std::string& name, const DemoParams& params, std::uint64_t seed,
                    const DemoOptions& options = {});

nlohmann::json report_to_json(const DemoReport& r);
// Pretty-printed, newline terminated.
std::string report_json(const DemoReport& r);

// {"qubit_count": n, "amplitudes": [[re, im], ...]}
nlohmann::json state_to_json(const StateVector& s);

// Header row of column names, then one row per series entry.
std::string plot_csv(const DemoReport& r);
// Throws IoError when the file cannot be written.
void emit_plot_data(const DemoReport& r, const std::string& path);

}  // namespace qkit
