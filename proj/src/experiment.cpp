#include "widthlab/experiment.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "widthlab/bump.hpp"
#include "widthlab/parallel.hpp"
#include "widthlab/rng.hpp"
#include "widthlab/sphere.hpp"
#include "widthlab/widths.hpp"

namespace widthlab {

double fit_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_slope: need >= 2 points");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("fit_slope: degenerate abscissae");
  return (n * sxy - sx * sy) / denom;
}

BesovCertificateReport besov_ball_certificate(int d, double s, const Exponent& p, const Exponent& q,
                                              int n, int res, std::size_t samples, std::uint64_t seed,
                                              const BesovExperimentOptions& opts) {
  if (n < 1) throw std::invalid_argument("besov_ball_certificate: n must be >= 1");
  if (samples < 2 || samples % 2 != 0) {
    throw std::invalid_argument("besov_ball_certificate: samples must be even and >= 2");
  }
  if (p > q) throw std::invalid_argument("besov_ball_certificate: need p <= q");
  if (!embedding_is_compact(s, d, p, q)) {
    throw std::invalid_argument("besov_ball_certificate: embedding is not compact");
  }

  const int m = static_cast<int>(std::ceil(std::pow(2.0 * n, 1.0 / d)));
  const BumpBasis bumps(d, m, res);
  const std::size_t M = bumps.M();  // m^d >= 2n > n

  CertificateDefaults cert_opts;
  cert_opts.calib_samples = opts.calib_samples;
  cert_opts.eps_safety = opts.eps_safety;
  cert_opts.verify_budget = opts.minor_budget;
  const Certificate cert = make_certificate(static_cast<int>(M), n, q, rng::substream(seed, 7), cert_opts);

  // r = 1 (the construction reduces to this case), k = floor(s) + 1
  const BesovParams params = BesovParams::with_default_order(s, Exponent(1.0), q);

  // Psi and c are odd, so +-z give identical norms; one evaluation per
  // antipodal pair covers the closed sample set exactly.
  const std::uint64_t eval_seed = rng::substream(seed, 8);
  const std::size_t pairs = samples / 2;
  std::vector<double> lp_vals(pairs);
  std::vector<double> besov_vals(pairs);
  std::vector<char> warn(pairs, 0);
  parallel_for(pairs, [&](std::size_t i) {
    const RealVector z = sphere_point(n, eval_seed, i);
    const CertificateImage img = certificate_map(cert, z);
    const GridFunction g = bumps.embed(img.value);
    lp_vals[i] = g.lq_norm(p);
    const SeminormResult semi = besov_seminorm(g, params, opts.modulus, opts.quad_nodes);
    besov_vals[i] = g.lq_norm(q) + semi.value;
    warn[i] = semi.unresolved_small_scale ? 1 : 0;
  });

  BesovCertificateReport rep;
  rep.d = d;
  rep.s = s;
  rep.n = n;
  rep.m = m;
  rep.M = M;
  rep.res = res;
  rep.samples = samples;
  rep.seed = seed;
  rep.eps = cert.eps;
  rep.min_lp_raw = std::numeric_limits<double>::infinity();
  rep.max_besov_norm = 0.0;
  for (std::size_t i = 0; i < pairs; ++i) {
    rep.min_lp_raw = std::min(rep.min_lp_raw, lp_vals[i]);
    rep.max_besov_norm = std::max(rep.max_besov_norm, besov_vals[i]);
    rep.unresolved_small_scale = rep.unresolved_small_scale || warn[i] != 0;
  }
  if (rep.max_besov_norm <= 0.0) {
    throw std::runtime_error("besov_ball_certificate: degenerate normalizer");
  }
  rep.min_lp_normalized = rep.min_lp_raw / rep.max_besov_norm;
  return rep;
}

BesovExperimentResult besov_experiment(int d, double s, const Exponent& p, const Exponent& q,
                                       const std::vector<int>& n_list, int res, std::size_t samples,
                                       std::uint64_t seed, const BesovExperimentOptions& opts) {
  if (n_list.empty()) throw std::invalid_argument("besov_experiment: empty n list");
  BesovExperimentResult result;
  result.expected_exponent = -s / static_cast<double>(d);
  std::vector<double> log_n, log_min;
  for (int n : n_list) {
    const BesovCertificateReport rep =
        besov_ball_certificate(d, s, p, q, n, res, samples, rng::substream(seed, static_cast<std::uint64_t>(n)), opts);
    result.reports.push_back(rep);
    result.rows.push_back(ExperimentRow{n, rep.min_lp_normalized, result.expected_exponent, samples, seed});
    log_n.push_back(std::log(static_cast<double>(n)));
    log_min.push_back(std::log(rep.min_lp_normalized));
  }
  if (n_list.size() >= 2) {
    result.slope = fit_slope(log_n, log_min);
  }
  return result;
}

}  // namespace widthlab
