#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace widthlab {

// Norm index p in (0, inf]. Infinity is a tagged state, not a large float,
// so reciprocal() is exactly 0 for p = inf.
class Exponent {
 public:
  explicit Exponent(double value) : value_(value), inf_(false) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw std::invalid_argument("Exponent: value must be a positive finite real (or use Exponent::infinity())");
    }
  }

  static Exponent infinity() {
    Exponent e;
    e.inf_ = true;
    return e;
  }

  // Accepts a decimal string or the literal "inf".
  static Exponent parse(std::string_view text) {
    if (text == "inf" || text == "Inf" || text == "INF") return infinity();
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(std::string(text), &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("Exponent: cannot parse '" + std::string(text) + "'");
    }
    if (pos != text.size()) {
      throw std::invalid_argument("Exponent: trailing characters in '" + std::string(text) + "'");
    }
    return Exponent(v);
  }

  bool is_inf() const { return inf_; }

  // Finite value; only meaningful when !is_inf().
  double value() const {
    if (inf_) throw std::logic_error("Exponent: value() called on inf");
    return value_;
  }

  double reciprocal() const { return inf_ ? 0.0 : 1.0 / value_; }

  std::string str() const {
    if (inf_) return "inf";
    std::string s = std::to_string(value_);
    // trim trailing zeros, keep at least one digit after the point
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      auto last = s.find_last_not_of('0');
      s.erase(std::max(last, dot + 1) + 1);
    }
    return s;
  }

  friend bool operator==(const Exponent& a, const Exponent& b) {
    if (a.inf_ || b.inf_) return a.inf_ && b.inf_;
    return a.value_ == b.value_;
  }
  friend bool operator!=(const Exponent& a, const Exponent& b) { return !(a == b); }
  friend bool operator<(const Exponent& a, const Exponent& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const Exponent& a, const Exponent& b) { return a < b || a == b; }
  friend bool operator>(const Exponent& a, const Exponent& b) { return b < a; }
  friend bool operator>=(const Exponent& a, const Exponent& b) { return b <= a; }

 private:
  Exponent() : value_(0.0), inf_(true) {}

  double value_;
  bool inf_;
};

}  // namespace widthlab
