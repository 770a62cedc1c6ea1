#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "widthlab/experiment.hpp"

namespace widthlab {

// Machine-readable record of one CLI run. Sections are ordered key/value
// lists so emission is deterministic; re-running with the echoed parameters
// reproduces every measured value bit for bit (runtime_ms excepted).
struct ExperimentReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::pair<std::string, std::uint64_t>> seeds;
  std::vector<std::pair<std::string, double>> theory;
  std::vector<std::pair<std::string, double>> measured;
  std::vector<std::pair<std::string, bool>> verdicts;
  double runtime_ms = 0.0;
  std::vector<ExperimentRow> table;  // rows backing the CSV format

  bool all_pass() const {
    for (const auto& [name, ok] : verdicts) {
      if (!ok) return false;
    }
    return true;
  }

  friend bool operator==(const ExperimentReport& a, const ExperimentReport& b);
};

enum class ReportFormat { json, csv };

// JSON object with exactly the fields
// {command, params, seeds, theory, measured, verdicts, runtime_ms};
// CSV with header "n,min_lp,theory_floor_exponent,samples,seed".
std::string report_to_json(const ExperimentReport& report);
std::string report_to_csv(const ExperimentReport& report);
void emit_report(const ExperimentReport& report, const std::string& path, ReportFormat format);

ExperimentReport parse_report_json(const std::string& text);
ExperimentReport load_report_json(const std::string& path);

}  // namespace widthlab
