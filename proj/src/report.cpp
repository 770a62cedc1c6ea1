#include "widthlab/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace widthlab {

namespace {

using ordered_json = nlohmann::ordered_json;

}  // namespace

bool operator==(const ExperimentReport& a, const ExperimentReport& b) {
  auto rows_equal = [](const std::vector<ExperimentRow>& x, const std::vector<ExperimentRow>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].n != y[i].n || x[i].min_lp != y[i].min_lp ||
          x[i].theory_floor_exponent != y[i].theory_floor_exponent || x[i].samples != y[i].samples ||
          x[i].seed != y[i].seed) {
        return false;
      }
    }
    return true;
  };
  return a.command == b.command && a.params == b.params && a.seeds == b.seeds && a.theory == b.theory &&
         a.measured == b.measured && a.verdicts == b.verdicts && a.runtime_ms == b.runtime_ms &&
         rows_equal(a.table, b.table);
}

std::string report_to_json(const ExperimentReport& report) {
  ordered_json j;
  j["command"] = report.command;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : report.params) params[k] = v;
  j["params"] = params;
  ordered_json seeds = ordered_json::object();
  for (const auto& [k, v] : report.seeds) seeds[k] = v;
  j["seeds"] = seeds;
  ordered_json theory = ordered_json::object();
  for (const auto& [k, v] : report.theory) theory[k] = v;
  j["theory"] = theory;
  ordered_json measured = ordered_json::object();
  for (const auto& [k, v] : report.measured) measured[k] = v;
  j["measured"] = measured;
  ordered_json verdicts = ordered_json::object();
  for (const auto& [k, v] : report.verdicts) verdicts[k] = v ? "PASS" : "FAIL";
  j["verdicts"] = verdicts;
  j["runtime_ms"] = report.runtime_ms;
  if (!report.table.empty()) {
    ordered_json rows = ordered_json::array();
    for (const ExperimentRow& r : report.table) {
      ordered_json row = ordered_json::object();
      row["n"] = r.n;
      row["min_lp"] = r.min_lp;
      row["theory_floor_exponent"] = r.theory_floor_exponent;
      row["samples"] = r.samples;
      row["seed"] = r.seed;
      rows.push_back(row);
    }
    j["measured"]["rows"] = rows;
  }
  return j.dump(2) + "\n";
}

std::string report_to_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "n,min_lp,theory_floor_exponent,samples,seed\n";
  char buf[128];
  for (const ExperimentRow& r : report.table) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%zu,%llu\n", r.n, r.min_lp, r.theory_floor_exponent,
                  r.samples, static_cast<unsigned long long>(r.seed));
    out << buf;
  }
  return out.str();
}

void emit_report(const ExperimentReport& report, const std::string& path, ReportFormat format) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_report: cannot open '" + path + "'");
  out << (format == ReportFormat::json ? report_to_json(report) : report_to_csv(report));
  if (!out) throw std::runtime_error("emit_report: write failed for '" + path + "'");
}

ExperimentReport parse_report_json(const std::string& text) {
  const ordered_json j = ordered_json::parse(text);
  ExperimentReport rep;
  rep.command = j.at("command").get<std::string>();
  for (const auto& [k, v] : j.at("params").items()) rep.params.emplace_back(k, v.get<std::string>());
  for (const auto& [k, v] : j.at("seeds").items()) rep.seeds.emplace_back(k, v.get<std::uint64_t>());
  for (const auto& [k, v] : j.at("theory").items()) rep.theory.emplace_back(k, v.get<double>());
  for (const auto& [k, v] : j.at("measured").items()) {
    if (k == "rows") {
      for (const auto& row : v) {
        ExperimentRow r;
        r.n = row.at("n").get<int>();
        r.min_lp = row.at("min_lp").get<double>();
        r.theory_floor_exponent = row.at("theory_floor_exponent").get<double>();
        r.samples = row.at("samples").get<std::size_t>();
        r.seed = row.at("seed").get<std::uint64_t>();
        rep.table.push_back(r);
      }
    } else {
      rep.measured.emplace_back(k, v.get<double>());
    }
  }
  for (const auto& [k, v] : j.at("verdicts").items()) {
    rep.verdicts.emplace_back(k, v.get<std::string>() == "PASS");
  }
  rep.runtime_ms = j.at("runtime_ms").get<double>();
  return rep;
}

ExperimentReport load_report_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_report_json: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_report_json(ss.str());
}

}  // namespace widthlab
