#include "widthlab/grid_function.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "widthlab/errors.hpp"
#include "widthlab/vec.hpp"

namespace widthlab {

namespace {

std::size_t pow_size(int res, int d) {
  std::size_t n = 1;
  for (int i = 0; i < d; ++i) {
    if (n > std::size_t(1) << 48) throw std::invalid_argument("GridFunction: grid too large");
    n *= static_cast<std::size_t>(res);
  }
  return n;
}

}  // namespace

GridFunction::GridFunction(int d, int res, std::vector<double> values)
    : d_(d), res_(res), values_(std::move(values)) {
  if (d < 1 || d > 8) throw std::invalid_argument("GridFunction: d must be in [1, 8]");
  if (res < 4) throw std::invalid_argument("GridFunction: res must be >= 4");
  if (values_.size() != pow_size(res, d)) {
    throw std::invalid_argument("GridFunction: value count does not match res^d");
  }
  if (!all_finite(values_)) throw std::invalid_argument("GridFunction: values must be finite");
}

GridFunction GridFunction::sample(int d, int res,
                                  const std::function<double(std::span<const double>)>& fn) {
  const std::size_t n = pow_size(res, d);
  std::vector<double> values(n);
  std::vector<double> x(static_cast<std::size_t>(d));
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  const double h = 1.0 / (res - 1);
  for (std::size_t flat = 0; flat < n; ++flat) {
    for (int a = 0; a < d; ++a) x[static_cast<std::size_t>(a)] = idx[static_cast<std::size_t>(a)] * h;
    values[flat] = fn(x);
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[static_cast<std::size_t>(a)] < res) break;
      idx[static_cast<std::size_t>(a)] = 0;
    }
  }
  return GridFunction(d, res, std::move(values));
}

double GridFunction::lq_norm(const Exponent& q) const {
  if (q.is_inf()) {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::fabs(v));
    return m;
  }
  const double qv = q.value();
  const double cell = std::pow(spacing(), d_);
  double s = 0.0;
  if (qv == 1.0) {
    for (double v : values_) s += std::fabs(v);
  } else if (qv == 2.0) {
    for (double v : values_) s += v * v;
  } else {
    for (double v : values_) {
      if (v != 0.0) s += std::pow(std::fabs(v), qv);
    }
  }
  return std::pow(s * cell, 1.0 / qv);
}

void GridFunction::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw BadGridFileError("cannot open '" + path + "' for writing");
  out << "d=" << d_ << "\n";
  out << "res=" << res_ << "\n";
  char buf[64];
  for (double v : values_) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", v);
    out << buf;
  }
  if (!out) throw BadGridFileError("write failed for '" + path + "'");
}

GridFunction GridFunction::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadGridFileError("cannot open '" + path + "'");
  std::string line;
  auto read_header = [&](const char* key) -> int {
    if (!std::getline(in, line)) throw BadGridFileError("missing '" + std::string(key) + "=' header in " + path);
    const std::string prefix = std::string(key) + "=";
    if (line.rfind(prefix, 0) != 0) {
      throw BadGridFileError("malformed header line '" + line + "' in " + path);
    }
    try {
      return std::stoi(line.substr(prefix.size()));
    } catch (const std::exception&) {
      throw BadGridFileError("malformed header value '" + line + "' in " + path);
    }
  };
  const int d = read_header("d");
  const int res = read_header("res");
  if (d < 1 || d > 8 || res < 4) throw BadGridFileError("invalid d/res header in " + path);
  const std::size_t n = pow_size(res, d);
  std::vector<double> values;
  values.reserve(n);
  while (values.size() < n && std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(line, &pos);
    } catch (const std::exception&) {
      throw BadGridFileError("malformed value line '" + line + "' in " + path);
    }
    if (pos != line.size()) throw BadGridFileError("trailing characters on value line '" + line + "' in " + path);
    if (!std::isfinite(v)) throw BadGridFileError("non-finite value in " + path);
    values.push_back(v);
  }
  if (values.size() != n) {
    throw BadGridFileError("expected " + std::to_string(n) + " values in " + path + ", got " +
                           std::to_string(values.size()));
  }
  return GridFunction(d, res, std::move(values));
}

}  // namespace widthlab
