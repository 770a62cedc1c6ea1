#include "widthlab/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "widthlab/errors.hpp"
#include "widthlab/parallel.hpp"
#include "widthlab/projection.hpp"
#include "widthlab/rng.hpp"
#include "widthlab/widths.hpp"

namespace widthlab {

namespace {

constexpr double kMinorThreshold = 1e-12;

// C(M, N) capped at `cap` to avoid overflow.
std::size_t binomial_capped(int M, int N, std::size_t cap) {
  long double b = 1.0L;
  for (int i = 1; i <= N; ++i) {
    b *= static_cast<long double>(M - N + i) / static_cast<long double>(i);
    if (b > static_cast<long double>(cap) * 2.0L) return cap + 1;
  }
  return static_cast<std::size_t>(b + 0.5L);
}

Eigen::MatrixXd pick_rows(const Eigen::MatrixXd& A, const std::vector<int>& rows) {
  Eigen::MatrixXd sub(static_cast<Eigen::Index>(rows.size()), A.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) sub.row(static_cast<Eigen::Index>(r)) = A.row(rows[r]);
  return sub;
}

}  // namespace

MinorWitness verify_general_position(const Eigen::MatrixXd& A, std::size_t budget, std::uint64_t seed) {
  const int M = static_cast<int>(A.rows());
  const int N = static_cast<int>(A.cols());
  if (N < 1 || M < N) throw std::invalid_argument("verify_general_position: need 1 <= N <= M");
  if (budget == 0) return {MinorVerification::unverified, 0.0, 0, true};

  const std::size_t total = binomial_capped(M, N, budget);
  if (total <= budget) {
    // exhaustive enumeration of row subsets in lexicographic order
    std::vector<int> idx(static_cast<std::size_t>(N));
    std::iota(idx.begin(), idx.end(), 0);
    double min_det = std::numeric_limits<double>::infinity();
    std::size_t checked = 0;
    while (true) {
      const double det = std::fabs(pick_rows(A, idx).determinant());
      min_det = std::min(min_det, det);
      ++checked;
      int i = N - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == M - N + i) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < N; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    return {MinorVerification::exhaustive, min_det, checked, min_det > kMinorThreshold};
  }

  // sampled: `budget` random row subsets, smallest singular value witness
  double min_sigma = std::numeric_limits<double>::infinity();
  std::vector<double> sigmas(budget);
  parallel_for(budget, [&](std::size_t c) {
    rng::Stream s(seed, c);
    // partial Fisher-Yates over row indices
    std::vector<int> rows(static_cast<std::size_t>(M));
    std::iota(rows.begin(), rows.end(), 0);
    for (int i = 0; i < N; ++i) {
      const int j = i + static_cast<int>(s.below(static_cast<std::uint64_t>(M - i)));
      std::swap(rows[static_cast<std::size_t>(i)], rows[static_cast<std::size_t>(j)]);
    }
    rows.resize(static_cast<std::size_t>(N));
    std::sort(rows.begin(), rows.end());
    Eigen::BDCSVD<Eigen::MatrixXd> svd(pick_rows(A, rows));
    sigmas[c] = svd.singularValues().tail(1)(0);
  });
  for (double sv : sigmas) min_sigma = std::min(min_sigma, sv);
  return {MinorVerification::sampled, min_sigma, budget, min_sigma > kMinorThreshold};
}

std::optional<GeneralPositionBasis> try_general_position_basis(int M, int n, std::uint64_t seed,
                                                               std::size_t verify_budget) {
  if (n < 1 || n >= M) throw std::invalid_argument("general_position_basis: need 1 <= n < M");
  const int N = n + 1;

  Eigen::MatrixXd G(M, N);
  for (int r = 0; r < M; ++r) {
    rng::Stream s(seed, static_cast<std::uint64_t>(r));
    for (int c = 0; c < N; ++c) G(r, c) = s.gaussian();
  }
  // orthonormal basis of the same column span; general position depends only
  // on the subspace
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(M, N);

  const MinorWitness w = verify_general_position(Q, verify_budget, rng::substream(seed, 0xBADC0DEull));
  if (!w.ok) return std::nullopt;

  GeneralPositionBasis basis;
  basis.columns = std::move(Q);
  basis.seed = seed;
  basis.verification = w.verification;
  basis.min_witness = w.min_witness;
  basis.checked_minors = w.checked;
  return basis;
}

GeneralPositionBasis general_position_basis(int M, int n, std::uint64_t seed, std::size_t verify_budget) {
  for (std::uint64_t attempt = 0; attempt <= 8; ++attempt) {
    if (auto basis = try_general_position_basis(M, n, seed + attempt, verify_budget)) {
      return std::move(*basis);
    }
  }
  throw DegenerateBasisError("no general-position candidate after 8 retries (M=" + std::to_string(M) +
                             ", n=" + std::to_string(n) + ", seed=" + std::to_string(seed) + ")");
}

RealVector project_to_sphere_image(const GeneralPositionBasis& basis, const RealVector& z) {
  if (static_cast<int>(z.size()) != basis.n() + 1) {
    throw std::invalid_argument("project_to_sphere_image: dimension mismatch");
  }
  const Eigen::Map<const Eigen::VectorXd> zv(z.data(), static_cast<Eigen::Index>(z.size()));
  Eigen::VectorXd out = basis.columns * zv;
  return RealVector(out.data(), out.data() + out.size());
}

namespace {

double pi_of(const GeneralPositionBasis& basis, const RealVector& z) {
  const RealVector P = project_to_sphere_image(basis, z);
  return kth_smallest_magnitude(std::span<const double>(P.data(), P.size()),
                                static_cast<std::size_t>(basis.n()) + 1);
}

// The infimum of pi_(n+1)(P(z)) sits along least-singular directions of
// (n+1)x(n+1) row minors: at such z the n+1 selected coordinates have l2 norm
// sigma_min, so pi <= sigma_min there. These make good descent starts.
std::vector<RealVector> minor_direction_candidates(const GeneralPositionBasis& basis,
                                                   std::uint64_t seed) {
  const int M = basis.M();
  const int N = basis.n() + 1;
  constexpr std::size_t kExhaustiveCap = 1024;
  constexpr std::size_t kSampledCount = 32;
  std::vector<std::vector<int>> subsets;
  if (binomial_capped(M, N, kExhaustiveCap) <= kExhaustiveCap) {
    std::vector<int> idx(static_cast<std::size_t>(N));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      subsets.push_back(idx);
      int i = N - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == M - N + i) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < N; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  } else {
    for (std::size_t c = 0; c < kSampledCount; ++c) {
      rng::Stream s(seed, 0x5EED0000ull + c);
      std::vector<int> rows(static_cast<std::size_t>(M));
      std::iota(rows.begin(), rows.end(), 0);
      for (int i = 0; i < N; ++i) {
        const int j = i + static_cast<int>(s.below(static_cast<std::uint64_t>(M - i)));
        std::swap(rows[static_cast<std::size_t>(i)], rows[static_cast<std::size_t>(j)]);
      }
      rows.resize(static_cast<std::size_t>(N));
      subsets.push_back(std::move(rows));
    }
  }
  std::vector<RealVector> out(subsets.size());
  parallel_for(subsets.size(), [&](std::size_t i) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(pick_rows(basis.columns, subsets[i]), Eigen::ComputeFullV);
    const Eigen::VectorXd v = svd.matrixV().col(N - 1);
    out[i] = RealVector(v.data(), v.data() + v.size());
  });
  return out;
}

// seeded (1+1) random search on the sphere, shrinking on failure
double refine_minimum(const GeneralPositionBasis& basis, RealVector z, double value,
                      std::uint64_t seed, std::uint64_t stream) {
  const std::size_t dim = z.size();
  double radius = 0.3;
  rng::Stream s(seed, 0xF1FE0000ull + stream);
  for (int step = 0; step < 150; ++step) {
    RealVector zp(dim);
    double nrm2 = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      zp[j] = z[j] + radius * s.gaussian();
      nrm2 += zp[j] * zp[j];
    }
    if (nrm2 < 1e-300) continue;
    const double inv = 1.0 / std::sqrt(nrm2);
    for (double& v : zp) v *= inv;
    const double candidate = pi_of(basis, zp);
    if (candidate < value) {
      value = candidate;
      z = std::move(zp);
      radius = std::min(radius * 1.4, 0.5);
    } else {
      radius *= 0.88;
    }
  }
  return value;
}

}  // namespace

double calibrate_epsilon(const GeneralPositionBasis& basis, std::size_t calibration_samples,
                         std::uint64_t seed, double eps_safety) {
  if (calibration_samples < 1000) {
    throw std::invalid_argument("calibrate_epsilon: need at least 1000 calibration samples");
  }
  if (!(eps_safety > 0.0) || eps_safety > 1.0) {
    throw std::invalid_argument("calibrate_epsilon: eps_safety must lie in (0, 1]");
  }
  const int n = basis.n();

  // phase 1: seeded random sweep; magnitudes are antipodally symmetric, so
  // one representative per pair
  const std::size_t pairs = (calibration_samples + 1) / 2;
  std::vector<std::pair<double, RealVector>> evals(pairs);
  parallel_for(pairs, [&](std::size_t i) {
    RealVector z = sphere_point(n, seed, i);
    const double v = pi_of(basis, z);
    evals[i] = {v, std::move(z)};
  });

  // phase 2: structural candidates from minor singular directions
  for (RealVector& z : minor_direction_candidates(basis, seed)) {
    const double v = pi_of(basis, z);
    evals.emplace_back(v, std::move(z));
  }

  // phase 3: local descent from the lowest finds, so the sampled minimum
  // tracks the true infimum instead of sitting above it
  std::partial_sort(evals.begin(), evals.begin() + std::min<std::size_t>(16, evals.size()), evals.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
  const std::size_t starts = std::min<std::size_t>(16, evals.size());
  std::vector<double> refined(starts);
  parallel_for(starts, [&](std::size_t i) {
    refined[i] = refine_minimum(basis, evals[i].second, evals[i].first, seed, i);
  });

  double min_pi = std::numeric_limits<double>::infinity();
  for (double v : refined) min_pi = std::min(min_pi, v);
  if (!(min_pi > kMinorThreshold)) {
    throw DegenerateBasisError("sampled pi_(n+1) minimum " + std::to_string(min_pi) +
                               " is below 1e-12; basis has a near-singular minor");
  }
  return eps_safety * min_pi;
}

Certificate make_certificate(int M, int n, const Exponent& q, std::uint64_t seed,
                             const CertificateDefaults& opts) {
  Certificate cert{
      general_position_basis(M, n, rng::substream(seed, 0), opts.verify_budget),
      0.0,
      M,
      n,
      q,
      opts.eps_safety,
      rng::substream(seed, 1),
      opts.calib_samples,
  };
  cert.eps = calibrate_epsilon(cert.basis, opts.calib_samples, cert.calib_seed, opts.eps_safety);
  return cert;
}

CertificateImage certificate_map(const Certificate& cert, const RealVector& z) {
  RealVector P = project_to_sphere_image(cert.basis, z);
  int saturated = 0;
  for (double& v : P) {
    if (v <= -cert.eps) {
      v = -1.0;
      ++saturated;
    } else if (v >= cert.eps) {
      v = 1.0;
      ++saturated;
    } else {
      v = v / cert.eps;
    }
  }
  const double qn = lp_norm(P, cert.q);
  if (qn == 0.0) throw ZeroImageError("thresholded image vanished (eps above the true infimum?)");
  for (double& v : P) v /= qn;
  const double check = lp_norm(P, cert.q);
  return CertificateImage{std::move(P), saturated, std::fabs(check - 1.0)};
}

CertificateReport verify_certificate(const Certificate& cert, const Exponent& p,
                                     std::size_t fresh_samples, std::uint64_t seed2) {
  if (p > cert.q) throw std::invalid_argument("verify_certificate: need p <= q");
  if (fresh_samples < 2) throw std::invalid_argument("verify_certificate: need at least 2 samples");

  const std::size_t pairs = (fresh_samples + 1) / 2;
  struct PairStats {
    double min_lp;
    double max_qres;
    double odd_res;
    int min_sat;
  };
  std::vector<PairStats> stats(pairs);
  parallel_for(pairs, [&](std::size_t i) {
    RealVector z = sphere_point(cert.n, seed2, i);
    RealVector zneg(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) zneg[j] = -z[j];
    const CertificateImage a = certificate_map(cert, z);
    const CertificateImage b = certificate_map(cert, zneg);
    double odd = 0.0;
    for (std::size_t j = 0; j < a.value.size(); ++j) {
      odd = std::max(odd, std::fabs(a.value[j] + b.value[j]));
    }
    stats[i] = PairStats{
        std::min(lp_norm(a.value, p), lp_norm(b.value, p)),
        std::max(a.qnorm_residual, b.qnorm_residual),
        odd,
        std::min(a.saturated, b.saturated),
    };
  });

  CertificateReport rep;
  rep.M = cert.M;
  rep.n = cert.n;
  rep.p = p.str();
  rep.q = cert.q.str();
  rep.fresh_samples = pairs * 2;
  rep.verify_seed = seed2;
  rep.eps = cert.eps;
  rep.min_lp = std::numeric_limits<double>::infinity();
  rep.max_qnorm_residual = 0.0;
  rep.max_oddness_residual = 0.0;
  rep.min_saturated = cert.M;
  rep.saturation_violations = 0;
  const int need_saturated = cert.M - cert.n;
  for (const PairStats& s : stats) {
    rep.min_lp = std::min(rep.min_lp, s.min_lp);
    rep.max_qnorm_residual = std::max(rep.max_qnorm_residual, s.max_qres);
    rep.max_oddness_residual = std::max(rep.max_oddness_residual, s.odd_res);
    rep.min_saturated = std::min(rep.min_saturated, s.min_sat);
    if (s.min_sat < need_saturated) ++rep.saturation_violations;
  }
  rep.floor = exact_manifold_width(cert.M, cert.n, p, cert.q);
  rep.lower_bound_pass = rep.min_lp >= rep.floor - 1e-9;
  rep.membership_pass = rep.max_qnorm_residual <= 1e-10;
  rep.oddness_pass = rep.max_oddness_residual <= 1e-12;
  rep.saturation_pass = rep.saturation_violations == 0;
  return rep;
}

ChainReport chain_inequality_report(int M, int n, const Exponent& p, const Exponent& q) {
  if (p > q) throw std::invalid_argument("chain_inequality_report: need p <= q");
  const RealVector ones(static_cast<std::size_t>(M - n), 1.0);
  ChainReport rep;
  rep.certificate_bound = lp_norm(ones, p) / lp_norm(ones, q);
  rep.exact_width = exact_manifold_width(M, n, p, q);
  rep.projection_bound = reconstruction_error(extremal_input(M, n, q), ProjectionScheme(M, n), p);
  const double lo = std::min({rep.certificate_bound, rep.exact_width, rep.projection_bound});
  const double hi = std::max({rep.certificate_bound, rep.exact_width, rep.projection_bound});
  rep.consistent = (hi - lo) <= 1e-12 * std::max(1.0, hi);
  return rep;
}

}  // namespace widthlab
