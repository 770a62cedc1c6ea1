#pragma once

#include <string>

#include "widthlab/exponent.hpp"

namespace widthlab {

struct SmoothnessParams {
  double s;     // smoothness, > 0
  int d;        // dimension, >= 1
  Exponent q;   // integrability of the class
  Exponent r;   // fine index
  Exponent p;   // error norm
};

// Compact embedding of the smoothness ball into L_p: 1/q - 1/p < s/d.
bool embedding_is_compact(double s, int d, const Exponent& p, const Exponent& q);

// delta_n of the unit lq ball of R^M in the lp norm, p <= q:
// (M - n)^{1/p - 1/q}.
double exact_manifold_width(int M, int n, const Exponent& p, const Exponent& q);

enum class BernsteinCase {
  P_GE_Q_OR_BOTH_LE_2,  // exponent -s/d
  P_LE_2_LE_Q,          // exponent -s/d + 1/q - 1/2
  TWO_LE_P_LE_Q,        // exponent -s/d + 1/q - 1/p
};

struct BernsteinRegime {
  BernsteinCase label;
  double exponent;
};

std::string to_string(BernsteinCase c);

// Decay exponent of the Bernstein widths of the smoothness balls; the three
// cases overlap consistently on their boundaries and the first matching one
// (in the order declared above) is reported. Requires 1 <= p, q and a
// compact embedding.
BernsteinRegime bernstein_exponent(double s, int d, const Exponent& p, const Exponent& q);

enum class WidthRegime {
  BERNSTEIN_SHARP,  // Bernstein exponent matches -s/d
  BERNSTEIN_GAP,    // Bernstein widths decay strictly faster (p < q, q > 2)
};

std::string to_string(WidthRegime r);

WidthRegime classify_regime(const Exponent& p, const Exponent& q);

}  // namespace widthlab
