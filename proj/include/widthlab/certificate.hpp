#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "widthlab/exponent.hpp"
#include "widthlab/sphere.hpp"
#include "widthlab/vec.hpp"

namespace widthlab {

enum class MinorVerification { exhaustive, sampled, unverified };

// Orthonormal basis of an (n+1)-dimensional general-position subspace of R^M:
// no nonzero vector of the span vanishes in n+1 coordinates, equivalently
// every (n+1)x(n+1) minor of the basis matrix is nonsingular.
struct GeneralPositionBasis {
  Eigen::MatrixXd columns;  // M x (n+1), orthonormal columns
  std::uint64_t seed;       // seed that produced the accepted candidate
  MinorVerification verification = MinorVerification::unverified;
  double min_witness = 0.0;        // min |det| (exhaustive) or min sigma_min (sampled)
  std::size_t checked_minors = 0;

  int M() const { return static_cast<int>(columns.rows()); }
  int n() const { return static_cast<int>(columns.cols()) - 1; }
};

struct MinorWitness {
  MinorVerification verification;
  double min_witness;
  std::size_t checked;
  bool ok;  // min_witness > 1e-12
};

// Checks minors of an M x N matrix: exhaustively (min |det|) when
// C(M, N) <= budget, otherwise `budget` random minors by smallest singular
// value. The witness threshold is 1e-12 either way.
MinorWitness verify_general_position(const Eigen::MatrixXd& A, std::size_t budget, std::uint64_t seed);

// Single seeded candidate: orthonormalized Gaussian M x (n+1) matrix plus the
// minor check. Empty when some checked minor falls below the threshold.
std::optional<GeneralPositionBasis> try_general_position_basis(int M, int n, std::uint64_t seed,
                                                               std::size_t verify_budget);

// As above but retries with consecutive seeds (up to 8 retries) and throws
// DegenerateBasisError when all candidates fail.
GeneralPositionBasis general_position_basis(int M, int n, std::uint64_t seed, std::size_t verify_budget);

// P(z) = sum_i z_i a_i: parameterizes the unit sphere of the subspace.
// Linear, unit l2 norm, exactly odd.
RealVector project_to_sphere_image(const GeneralPositionBasis& basis, const RealVector& z);

// eps_safety * min over sampled z of the (n+1)-th smallest magnitude of P(z).
// Strictly positive; throws DegenerateBasisError when the sampled minimum is
// below 1e-12.
double calibrate_epsilon(const GeneralPositionBasis& basis, std::size_t calibration_samples,
                         std::uint64_t seed, double eps_safety);

struct Certificate {
  GeneralPositionBasis basis;
  double eps;
  int M;
  int n;
  Exponent q;
  double eps_safety;
  std::uint64_t calib_seed;
  std::size_t calib_samples;
};

struct CertificateDefaults {
  std::size_t calib_samples = 10000;
  double eps_safety = 0.9;
  std::size_t verify_budget = 1000000;
};

// Builds basis + threshold in one step. basis/calibration streams are derived
// from `seed` (sub-streams 0 and 1) so a single seed reproduces everything.
Certificate make_certificate(int M, int n, const Exponent& q, std::uint64_t seed,
                             const CertificateDefaults& opts = {});

struct CertificateImage {
  RealVector value;      // c(z), unit lq norm
  int saturated;         // coordinates with |P(z)_i| >= eps (post-threshold +-1)
  double qnorm_residual; // | lq_norm(c) - 1 |
};

// c(z): threshold t_eps applied coordinate-wise to P(z), then normalized in
// the lq norm. Throws ZeroImageError if the thresholded image vanishes.
CertificateImage certificate_map(const Certificate& cert, const RealVector& z);

struct CertificateReport {
  // inputs
  int M;
  int n;
  std::string p;
  std::string q;
  std::size_t fresh_samples;
  std::uint64_t verify_seed;
  double eps;
  // measurements
  double min_lp;                  // min over fresh samples of ||c(z)||_p
  double floor;                   // (M - n)^{1/p - 1/q}
  double max_qnorm_residual;      // max | ||c(z)||_q - 1 |
  double max_oddness_residual;    // max || c(z) + c(-z) ||_inf
  int min_saturated;              // min over samples of saturated coordinates
  std::size_t saturation_violations;  // samples with fewer than M - n saturated
  // verdicts
  bool lower_bound_pass;    // min_lp >= floor - 1e-9
  bool membership_pass;     // max_qnorm_residual <= 1e-10
  bool oddness_pass;        // max_oddness_residual <= 1e-12
  bool saturation_pass;     // saturation_violations == 0
  bool pass() const { return lower_bound_pass && membership_pass && oddness_pass && saturation_pass; }
};

// Evaluates c on fresh antipodally-closed samples and checks the lower bound
// min ||c(z)||_p >= (M-n)^{1/p-1/q} - 1e-9 together with membership, oddness
// and saturation. seed2 must be independent of the calibration seed.
CertificateReport verify_certificate(const Certificate& cert, const Exponent& p,
                                     std::size_t fresh_samples, std::uint64_t seed2);

struct ChainReport {
  double certificate_bound;  // lp/lq norm ratio of the all-ones tail pattern
  double exact_width;        // closed form (M - n)^{1/p - 1/q}
  double projection_bound;   // tail norm of the extremal input
  bool consistent;           // three-way equality to 1e-12 relative
};

// The lower bound from the sphere certificate, the closed-form width and the
// projection upper bound, computed through three independent numeric routes.
ChainReport chain_inequality_report(int M, int n, const Exponent& p, const Exponent& q);

}  // namespace widthlab
