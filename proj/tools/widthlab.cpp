// widthlab: exact lq-ball manifold widths, sphere-embedding certificates and
// Besov-ball scaling experiments, with deterministic seeded reports.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "widthlab/bump.hpp"
#include "widthlab/certificate.hpp"
#include "widthlab/experiment.hpp"
#include "widthlab/grid_function.hpp"
#include "widthlab/projection.hpp"
#include "widthlab/report.hpp"
#include "widthlab/rng.hpp"
#include "widthlab/widths.hpp"

namespace {

using namespace widthlab;

std::string fmt_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16g", v);
  std::string s = buf;
  if (s.find_first_of(".enai") == std::string::npos) s += ".0";
  return s;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    if (!item.empty()) out.push_back(std::stoi(item));
    pos = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

class Timer {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int run_project(int M, int n, const std::string& p_str, const std::string& q_str, std::size_t samples,
                std::uint64_t seed, const std::string& out_path) {
  Timer timer;
  const Exponent p = Exponent::parse(p_str), q = Exponent::parse(q_str);
  const UpperBoundReport ub = empirical_upper_bound(M, n, p, q, samples, seed);

  ExperimentReport rep;
  rep.command = "project";
  rep.params = {{"M", std::to_string(M)},
                {"n", std::to_string(n)},
                {"p", p.str()},
                {"q", q.str()},
                {"samples", std::to_string(samples)}};
  rep.seeds = {{"seed", seed}};
  rep.theory = {{"exact_width", ub.exact_width}};
  rep.measured = {{"max_error", ub.max_error}, {"extremal_error", ub.extremal_error}};
  rep.verdicts = {{"bound_respected", ub.bound_respected}, {"attained", ub.attained}};
  rep.runtime_ms = timer.ms();

  std::cout << "exact width        = " << fmt_number(ub.exact_width) << "\n";
  std::cout << "max sampled error  = " << fmt_number(ub.max_error) << "\n";
  std::cout << "extremal error     = " << fmt_number(ub.extremal_error) << "\n";
  for (const auto& [name, ok] : rep.verdicts) {
    std::cout << name << ": " << (ok ? "PASS" : "FAIL") << "\n";
  }
  if (!out_path.empty()) emit_report(rep, out_path, ReportFormat::json);
  return rep.all_pass() ? 0 : 2;
}

int run_certify(int M, int n, const std::string& p_str, const std::string& q_str, std::size_t samples,
                std::size_t calib_samples, std::uint64_t seed, double eps_safety,
                std::size_t minor_budget, const std::string& out_path) {
  Timer timer;
  const Exponent p = Exponent::parse(p_str), q = Exponent::parse(q_str);

  CertificateDefaults opts;
  opts.calib_samples = calib_samples;
  opts.eps_safety = eps_safety;
  opts.verify_budget = minor_budget;
  const Certificate cert = make_certificate(M, n, q, seed, opts);
  const std::uint64_t verify_seed = rng::substream(seed, 2);
  const CertificateReport ver = verify_certificate(cert, p, samples, verify_seed);
  const ChainReport chain = chain_inequality_report(M, n, p, q);

  ExperimentReport rep;
  rep.command = "certify";
  rep.params = {{"M", std::to_string(M)},
                {"n", std::to_string(n)},
                {"p", p.str()},
                {"q", q.str()},
                {"samples", std::to_string(samples)},
                {"calib_samples", std::to_string(calib_samples)},
                {"eps_safety", fmt_number(eps_safety)},
                {"minor_budget", std::to_string(minor_budget)}};
  rep.seeds = {{"seed", seed},
               {"basis_seed", cert.basis.seed},
               {"calib_seed", cert.calib_seed},
               {"verify_seed", verify_seed}};
  rep.theory = {{"floor", ver.floor},
                {"exact_width", chain.exact_width},
                {"certificate_bound", chain.certificate_bound},
                {"projection_bound", chain.projection_bound}};
  rep.measured = {{"min_lp", ver.min_lp},
                  {"eps", cert.eps},
                  {"max_qnorm_residual", ver.max_qnorm_residual},
                  {"max_oddness_residual", ver.max_oddness_residual},
                  {"min_saturated", static_cast<double>(ver.min_saturated)},
                  {"saturation_violations", static_cast<double>(ver.saturation_violations)},
                  {"min_minor_witness", cert.basis.min_witness},
                  {"checked_minors", static_cast<double>(cert.basis.checked_minors)}};
  rep.verdicts = {{"lower_bound", ver.lower_bound_pass},
                  {"membership", ver.membership_pass},
                  {"oddness", ver.oddness_pass},
                  {"saturation", ver.saturation_pass},
                  {"chain_consistent", chain.consistent}};
  rep.runtime_ms = timer.ms();

  std::cout << "floor (M-n)^(1/p-1/q) = " << fmt_number(ver.floor) << "\n";
  std::cout << "min ||c(z)||_p        = " << fmt_number(ver.min_lp) << "\n";
  std::cout << "eps                   = " << fmt_number(cert.eps) << "\n";
  std::cout << "min saturated coords  = " << ver.min_saturated << " (need >= " << (M - n) << ")\n";
  std::cout << "minors checked        = " << cert.basis.checked_minors << " ("
            << (cert.basis.verification == MinorVerification::exhaustive ? "exhaustive" : "sampled")
            << ", witness " << fmt_number(cert.basis.min_witness) << ")\n";
  for (const auto& [name, ok] : rep.verdicts) {
    std::cout << name << ": " << (ok ? "PASS" : "FAIL") << "\n";
  }
  if (!out_path.empty()) emit_report(rep, out_path, ReportFormat::json);
  return rep.all_pass() ? 0 : 2;
}

int run_besov_norm(const std::string& input, double s, const std::string& r_str, const std::string& q_str) {
  const GridFunction f = GridFunction::load(input);
  const BesovParams params = BesovParams::with_default_order(s, Exponent::parse(r_str), Exponent::parse(q_str));
  const double lq = f.lq_norm(params.q);
  const SeminormResult semi = besov_seminorm(f, params);
  std::cout << "L_q norm       = " << fmt_number(lq) << "\n";
  std::cout << "Besov seminorm = " << fmt_number(semi.value) << "\n";
  std::cout << "Besov norm     = " << fmt_number(lq + semi.value) << "\n";
  if (semi.unresolved_small_scale) {
    std::cerr << "warning: UnresolvedSmallScale: first quadrature node carries "
              << fmt_number(100.0 * semi.first_node_fraction) << "% of the seminorm integral\n";
  }
  return 0;
}

int run_besov_experiment(int d, double s, const std::string& p_str, const std::string& q_str,
                         const std::string& n_list_str, int res, std::size_t samples,
                         std::uint64_t seed, const std::string& out_path) {
  Timer timer;
  const Exponent p = Exponent::parse(p_str), q = Exponent::parse(q_str);
  const std::vector<int> n_list = parse_int_list(n_list_str);
  const BesovExperimentResult result = besov_experiment(d, s, p, q, n_list, res, samples, seed);

  ExperimentReport rep;
  rep.command = "besov experiment";
  rep.params = {{"d", std::to_string(d)},     {"s", fmt_number(s)},
                {"p", p.str()},               {"q", q.str()},
                {"n_list", n_list_str},       {"res", std::to_string(res)},
                {"samples", std::to_string(samples)}};
  rep.seeds = {{"seed", seed}};
  rep.theory = {{"expected_exponent", result.expected_exponent}};
  rep.measured = {{"slope", result.slope}};
  rep.table = result.rows;
  rep.runtime_ms = timer.ms();

  std::cout << "n,min_lp\n";
  for (const ExperimentRow& row : result.rows) {
    std::cout << row.n << "," << fmt_number(row.min_lp) << "\n";
  }
  std::cout << "slope = " << fmt_number(result.slope) << " (expected " << fmt_number(result.expected_exponent)
            << ")\n";
  bool warned = false;
  for (const auto& r : result.reports) warned = warned || r.unresolved_small_scale;
  if (warned) std::cerr << "warning: UnresolvedSmallScale on some samples\n";
  if (!out_path.empty()) emit_report(rep, out_path, ReportFormat::csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"widthlab: manifold widths of lq balls, sphere-embedding certificates, Besov scaling"};
  app.require_subcommand(1);
  app.footer("WIDTHLAB_THREADS caps worker threads (0 or unset = auto).");

  // width
  auto* width = app.add_subcommand("width", "closed-form width values and regime tables");
  width->require_subcommand(1);

  int M = 0, n = 0, d = 1, res = 4096;
  double s = 1.0, eps_safety = 0.9;
  std::string p_str = "1", q_str = "1", r_str = "1";
  std::string out_path, input_path, n_list_str;
  std::size_t samples = 10000, calib_samples = 10000, minor_budget = 1000000;
  std::uint64_t seed = 0;

  auto* wexact = width->add_subcommand("exact", "exact manifold width of the lq ball in lp");
  wexact->add_option("--M", M, "ambient dimension")->required();
  wexact->add_option("--n", n, "parameter count")->required();
  wexact->add_option("--p", p_str, "error norm index (decimal or 'inf')")->required();
  wexact->add_option("--q", q_str, "ball norm index (decimal or 'inf')")->required();

  auto* wbern = width->add_subcommand("bernstein", "Bernstein width decay exponent");
  wbern->add_option("--s", s, "smoothness")->required();
  wbern->add_option("--d", d, "dimension")->required();
  wbern->add_option("--p", p_str)->required();
  wbern->add_option("--q", q_str)->required();

  auto* wregime = width->add_subcommand("regime", "is the Bernstein lower bound sharp?");
  wregime->add_option("--p", p_str)->required();
  wregime->add_option("--q", q_str)->required();

  auto* project = app.add_subcommand("project", "empirical coordinate-projection upper bound");
  project->add_option("--M", M)->required();
  project->add_option("--n", n)->required();
  project->add_option("--p", p_str)->required();
  project->add_option("--q", q_str)->required();
  project->add_option("--samples", samples, "random unit-q-norm samples");
  project->add_option("--seed", seed);
  project->add_option("--out", out_path, "write JSON report here");

  auto* certify = app.add_subcommand("certify", "sphere-embedding lower-bound certificate");
  certify->add_option("--M", M)->required();
  certify->add_option("--n", n)->required();
  certify->add_option("--p", p_str)->required();
  certify->add_option("--q", q_str)->required();
  certify->add_option("--samples", samples, "fresh verification samples");
  certify->add_option("--calib-samples", calib_samples, "epsilon calibration samples");
  certify->add_option("--seed", seed);
  certify->add_option("--eps-safety", eps_safety, "safety factor applied to the calibrated epsilon");
  certify->add_option("--minor-budget", minor_budget, "exhaustive minor check cutoff / sampled check count");
  certify->add_option("--out", out_path, "write JSON report here");

  auto* besov = app.add_subcommand("besov", "grid-function Besov calculus");
  besov->require_subcommand(1);

  auto* bnorm = besov->add_subcommand("norm", "Besov norm of a grid function file");
  bnorm->add_option("--input", input_path, "GridFunction text file")->required();
  bnorm->add_option("--s", s, "smoothness")->required();
  bnorm->add_option("--r", r_str, "fine index (decimal or 'inf')");
  bnorm->add_option("--q", q_str, "integrability (decimal or 'inf')")->required();

  auto* bexp = besov->add_subcommand("experiment", "n^{-s/d} scaling of the Besov-ball certificate");
  bexp->add_option("--d", d)->required();
  bexp->add_option("--s", s)->required();
  bexp->add_option("--p", p_str)->required();
  bexp->add_option("--q", q_str)->required();
  bexp->add_option("--n-list", n_list_str, "comma-separated n values")->required();
  bexp->add_option("--res", res, "grid resolution per axis");
  bexp->add_option("--samples", samples, "sphere samples per n");
  bexp->add_option("--seed", seed);
  bexp->add_option("--out", out_path, "write per-n CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (wexact->parsed()) {
      std::cout << fmt_number(exact_manifold_width(M, n, Exponent::parse(p_str), Exponent::parse(q_str)))
                << "\n";
      return 0;
    }
    if (wbern->parsed()) {
      const BernsteinRegime regime = bernstein_exponent(s, d, Exponent::parse(p_str), Exponent::parse(q_str));
      std::cout << to_string(regime.label) << " " << fmt_number(regime.exponent) << "\n";
      return 0;
    }
    if (wregime->parsed()) {
      std::cout << to_string(classify_regime(Exponent::parse(p_str), Exponent::parse(q_str))) << "\n";
      return 0;
    }
    if (project->parsed()) {
      return run_project(M, n, p_str, q_str, samples, seed, out_path);
    }
    if (certify->parsed()) {
      return run_certify(M, n, p_str, q_str, samples, calib_samples, seed, eps_safety, minor_budget, out_path);
    }
    if (bnorm->parsed()) {
      return run_besov_norm(input_path, s, r_str, q_str);
    }
    if (bexp->parsed()) {
      return run_besov_experiment(d, s, p_str, q_str, n_list_str, res, samples, seed, out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
