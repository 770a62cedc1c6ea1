#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "widthlab/exponent.hpp"

namespace widthlab {

// Values of a function on the uniform tensor grid over [0,1]^d with res
// points per axis (spacing 1/(res-1), endpoints included), stored row-major.
class GridFunction {
 public:
  GridFunction(int d, int res, std::vector<double> values);

  // Samples fn at every grid point; fn receives the d physical coordinates.
  static GridFunction sample(int d, int res, const std::function<double(std::span<const double>)>& fn);

  int dim() const { return d_; }
  int resolution() const { return res_; }
  double spacing() const { return 1.0 / (res_ - 1); }
  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }

  // L_q norm by the rectangle rule with cell weight spacing^d (max for q=inf).
  double lq_norm(const Exponent& q) const;

  // Text format: "d=<int>", "res=<int>", then res^d values one per line.
  void save(const std::string& path) const;
  static GridFunction load(const std::string& path);

 private:
  int d_;
  int res_;
  std::vector<double> values_;
};

}  // namespace widthlab
