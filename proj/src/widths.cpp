#include "widthlab/widths.hpp"

#include <cmath>
#include <stdexcept>

namespace widthlab {

bool embedding_is_compact(double s, int d, const Exponent& p, const Exponent& q) {
  if (!(s > 0.0)) throw std::invalid_argument("embedding_is_compact: s must be positive");
  if (d < 1) throw std::invalid_argument("embedding_is_compact: d must be >= 1");
  return q.reciprocal() - p.reciprocal() < s / static_cast<double>(d);
}

double exact_manifold_width(int M, int n, const Exponent& p, const Exponent& q) {
  if (n < 1 || n >= M) throw std::invalid_argument("exact_manifold_width: need 1 <= n < M");
  if (p > q) throw std::invalid_argument("exact_manifold_width: need p <= q");
  const double expo = p.reciprocal() - q.reciprocal();
  return std::pow(static_cast<double>(M - n), expo);
}

std::string to_string(BernsteinCase c) {
  switch (c) {
    case BernsteinCase::P_GE_Q_OR_BOTH_LE_2: return "P_GE_Q_OR_BOTH_LE_2";
    case BernsteinCase::P_LE_2_LE_Q: return "P_LE_2_LE_Q";
    case BernsteinCase::TWO_LE_P_LE_Q: return "TWO_LE_P_LE_Q";
  }
  return "?";
}

BernsteinRegime bernstein_exponent(double s, int d, const Exponent& p, const Exponent& q) {
  if (!embedding_is_compact(s, d, p, q)) {
    throw std::invalid_argument("bernstein_exponent: embedding is not compact");
  }
  const Exponent one(1.0), two(2.0);
  if (p < one || q < one) {
    throw std::invalid_argument("bernstein_exponent: table is stated for 1 <= p, q <= inf");
  }
  const double sd = s / static_cast<double>(d);
  if (p >= q || (p <= q && q <= two)) {
    return {BernsteinCase::P_GE_Q_OR_BOTH_LE_2, -sd};
  }
  if (p <= two && two <= q) {
    return {BernsteinCase::P_LE_2_LE_Q, -sd + q.reciprocal() - 0.5};
  }
  if (two <= p && p <= q) {
    return {BernsteinCase::TWO_LE_P_LE_Q, -sd + q.reciprocal() - p.reciprocal()};
  }
  throw std::logic_error("bernstein_exponent: case table did not cover input");
}

std::string to_string(WidthRegime r) {
  return r == WidthRegime::BERNSTEIN_SHARP ? "BERNSTEIN_SHARP" : "BERNSTEIN_GAP";
}

WidthRegime classify_regime(const Exponent& p, const Exponent& q) {
  const Exponent one(1.0), two(2.0);
  if (p < one || q < one) throw std::invalid_argument("classify_regime: need 1 <= p, q <= inf");
  if (p < q && q > two) return WidthRegime::BERNSTEIN_GAP;
  return WidthRegime::BERNSTEIN_SHARP;
}

}  // namespace widthlab
