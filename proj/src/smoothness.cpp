#include "widthlab/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "widthlab/rng.hpp"

namespace widthlab {

namespace {

// Alternating binomial weights with w_k = +1, so k = 1 is the forward
// difference f(x+h) - f(x); norms are unaffected by the global sign.
std::vector<double> difference_weights(int k) {
  std::vector<double> w(static_cast<std::size_t>(k) + 1);
  double c = 1.0;
  for (int v = 0; v <= k; ++v) {
    if (v > 0) c = c * (k - v + 1) / v;
    w[static_cast<std::size_t>(v)] = ((k - v) % 2 == 0 ? c : -c);
  }
  return w;
}

std::vector<std::size_t> row_major_strides(const std::vector<int>& extent) {
  std::vector<std::size_t> strides(extent.size(), 1);
  for (int a = static_cast<int>(extent.size()) - 2; a >= 0; --a) {
    strides[static_cast<std::size_t>(a)] =
        strides[static_cast<std::size_t>(a + 1)] * static_cast<std::size_t>(extent[static_cast<std::size_t>(a + 1)]);
  }
  return strides;
}

double sup_diff_1d(const double* f, int ext, int j, int k, const double* w) {
  const int L = ext - k * j;
  if (L <= 0 || j <= 0) return 0.0;
  double m = 0.0;
  switch (k) {
    case 1:
      for (int x = 0; x < L; ++x) m = std::max(m, std::fabs(f[x + j] - f[x]));
      break;
    case 2:
      for (int x = 0; x < L; ++x) m = std::max(m, std::fabs(f[x] - 2.0 * f[x + j] + f[x + 2 * j]));
      break;
    case 3:
      for (int x = 0; x < L; ++x) {
        m = std::max(m, std::fabs(-f[x] + 3.0 * f[x + j] - 3.0 * f[x + 2 * j] + f[x + 3 * j]));
      }
      break;
    default:
      for (int x = 0; x < L; ++x) {
        double acc = 0.0;
        for (int v = 0; v <= k; ++v) acc += w[v] * f[x + v * j];
        m = std::max(m, std::fabs(acc));
      }
  }
  return m;
}

double sumpow_diff_1d(const double* f, int ext, int j, int k, const double* w, double qv) {
  const int L = ext - k * j;
  if (L <= 0 || j <= 0) return 0.0;
  double s = 0.0;
  auto accum = [&](double v) {
    if (qv == 1.0) {
      s += std::fabs(v);
    } else if (qv == 2.0) {
      s += v * v;
    } else if (v != 0.0) {
      s += std::pow(std::fabs(v), qv);
    }
  };
  switch (k) {
    case 1:
      for (int x = 0; x < L; ++x) accum(f[x + j] - f[x]);
      break;
    case 2:
      for (int x = 0; x < L; ++x) accum(f[x] - 2.0 * f[x + j] + f[x + 2 * j]);
      break;
    case 3:
      for (int x = 0; x < L; ++x) accum(-f[x] + 3.0 * f[x + j] - 3.0 * f[x + 2 * j] + f[x + 3 * j]);
      break;
    default:
      for (int x = 0; x < L; ++x) {
        double acc = 0.0;
        for (int v = 0; v <= k; ++v) acc += w[v] * f[x + v * j];
        accum(acc);
      }
  }
  return s;
}

// L_q norm of the k-th difference with integer step vector, general d.
double diff_norm_box(const BoxGrid& f, const std::vector<int>& steps, int k, const Exponent& q,
                     const std::vector<double>& w) {
  const int d = f.d;
  if (d == 1) {
    if (steps[0] == 0) return 0.0;
    const int j = std::abs(steps[0]);
    if (q.is_inf()) return sup_diff_1d(f.values.data(), f.extent[0], j, k, w.data());
    const double qv = q.value();
    const double s = sumpow_diff_1d(f.values.data(), f.extent[0], j, k, w.data(), qv);
    return std::pow(s * f.spacing, 1.0 / qv);
  }

  std::vector<int> ext(static_cast<std::size_t>(d));
  std::vector<std::size_t> base_off(static_cast<std::size_t>(d));
  const auto strides = row_major_strides(f.extent);
  std::ptrdiff_t shift = 0;
  for (int a = 0; a < d; ++a) {
    const int st = steps[static_cast<std::size_t>(a)];
    const int shrink = k * std::abs(st);
    ext[static_cast<std::size_t>(a)] = f.extent[static_cast<std::size_t>(a)] - shrink;
    if (ext[static_cast<std::size_t>(a)] <= 0) return 0.0;
    base_off[static_cast<std::size_t>(a)] = st < 0 ? static_cast<std::size_t>(-st) * static_cast<std::size_t>(k) : 0;
    shift += static_cast<std::ptrdiff_t>(st) * static_cast<std::ptrdiff_t>(strides[static_cast<std::size_t>(a)]);
  }

  const double* data = f.values.data();
  const bool inf = q.is_inf();
  const double qv = inf ? 0.0 : q.value();
  double acc = 0.0;
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  std::size_t count = 1;
  for (int a = 0; a < d; ++a) count *= static_cast<std::size_t>(ext[static_cast<std::size_t>(a)]);
  for (std::size_t it = 0; it < count; ++it) {
    std::size_t flat = 0;
    for (int a = 0; a < d; ++a) {
      flat += (base_off[static_cast<std::size_t>(a)] + static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])) *
              strides[static_cast<std::size_t>(a)];
    }
    double v = 0.0;
    for (int u = 0; u <= k; ++u) {
      v += w[static_cast<std::size_t>(u)] * data[static_cast<std::ptrdiff_t>(flat) + u * shift];
    }
    if (inf) {
      acc = std::max(acc, std::fabs(v));
    } else if (qv == 1.0) {
      acc += std::fabs(v);
    } else if (qv == 2.0) {
      acc += v * v;
    } else if (v != 0.0) {
      acc += std::pow(std::fabs(v), qv);
    }
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[static_cast<std::size_t>(a)] < ext[static_cast<std::size_t>(a)]) break;
      idx[static_cast<std::size_t>(a)] = 0;
    }
  }
  if (inf) return acc;
  return std::pow(acc * std::pow(f.spacing, d), 1.0 / qv);
}

// integer shift magnitudes 1..limit per the ladder policy, ascending
std::vector<int> shift_ladder(int limit, const ModulusOptions& opts) {
  std::vector<int> out;
  if (limit <= 0) return out;
  if (opts.ladder == ModulusOptions::Ladder::full || limit <= opts.ladder_head) {
    out.resize(static_cast<std::size_t>(limit));
    for (int j = 1; j <= limit; ++j) out[static_cast<std::size_t>(j - 1)] = j;
    return out;
  }
  for (int j = 1; j <= opts.ladder_head; ++j) out.push_back(j);
  double x = opts.ladder_head;
  while (true) {
    x *= opts.ladder_ratio;
    const int j = static_cast<int>(std::ceil(x));
    if (j >= limit) break;
    if (j > out.back()) out.push_back(j);
  }
  out.push_back(limit);
  return out;
}

struct StepCandidate {
  double norm;  // physical |h|
  std::vector<int> steps;
};

// direction-sampled lattice shift candidates for d >= 2, sorted by |h|
std::vector<StepCandidate> direction_candidates(const BoxGrid& f, double t_last,
                                                const ModulusOptions& opts) {
  const int d = f.d;
  const double sp = f.spacing;
  std::vector<std::vector<double>> dirs;
  for (int a = 0; a < d; ++a) {
    std::vector<double> e(static_cast<std::size_t>(d), 0.0);
    e[static_cast<std::size_t>(a)] = 1.0;
    dirs.push_back(std::move(e));
  }
  for (int i = 0; i < opts.directions; ++i) {
    std::vector<double> u = rng::gaussian_vector(opts.direction_seed, static_cast<std::uint64_t>(i),
                                                 static_cast<std::size_t>(d));
    double nrm = 0.0;
    for (double v : u) nrm += v * v;
    nrm = std::sqrt(nrm);
    if (nrm < 1e-12) continue;
    // canonical half-space representative: Delta_{-h} has the same norms
    double lead = 0.0;
    for (double v : u) {
      if (v != 0.0) {
        lead = v;
        break;
      }
    }
    const double scale = (lead < 0 ? -1.0 : 1.0) / nrm;
    for (double& v : u) v *= scale;
    dirs.push_back(std::move(u));
  }

  const int limit = static_cast<int>(t_last / sp * (1.0 + 1e-12));
  const std::vector<int> mags = shift_ladder(limit, opts);
  std::map<std::vector<int>, double> dedup;
  std::vector<int> steps(static_cast<std::size_t>(d));
  for (const auto& u : dirs) {
    for (int j : mags) {
      bool nonzero = false;
      double nrm2 = 0.0;
      for (int a = 0; a < d; ++a) {
        steps[static_cast<std::size_t>(a)] = static_cast<int>(std::llround(j * u[static_cast<std::size_t>(a)]));
        nonzero = nonzero || steps[static_cast<std::size_t>(a)] != 0;
        nrm2 += static_cast<double>(steps[static_cast<std::size_t>(a)]) * steps[static_cast<std::size_t>(a)];
      }
      if (!nonzero) continue;
      const double norm = sp * std::sqrt(nrm2);
      if (norm > t_last * (1.0 + 1e-12)) continue;
      dedup.emplace(steps, norm);
    }
  }
  std::vector<StepCandidate> out;
  out.reserve(dedup.size());
  for (auto& [st, nrm] : dedup) out.push_back(StepCandidate{nrm, st});
  std::sort(out.begin(), out.end(), [](const StepCandidate& a, const StepCandidate& b) {
    return a.norm < b.norm;
  });
  return out;
}

}  // namespace

std::size_t BoxGrid::size() const {
  std::size_t n = 1;
  for (int e : extent) n *= static_cast<std::size_t>(std::max(e, 0));
  return n;
}

bool BoxGrid::empty() const {
  for (int e : extent) {
    if (e <= 0) return true;
  }
  return extent.empty();
}

double BoxGrid::lq_norm(const Exponent& q) const {
  if (empty()) return 0.0;
  if (q.is_inf()) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::fabs(v));
    return m;
  }
  const double qv = q.value();
  double s = 0.0;
  if (qv == 1.0) {
    for (double v : values) s += std::fabs(v);
  } else if (qv == 2.0) {
    for (double v : values) s += v * v;
  } else {
    for (double v : values) {
      if (v != 0.0) s += std::pow(std::fabs(v), qv);
    }
  }
  return std::pow(s * std::pow(spacing, d), 1.0 / qv);
}

BoxGrid as_box(const GridFunction& f) {
  BoxGrid box;
  box.d = f.dim();
  box.extent.assign(static_cast<std::size_t>(f.dim()), f.resolution());
  box.spacing = f.spacing();
  box.values = f.values();
  return box;
}

BoxGrid corner_box(const GridFunction& f, const std::vector<int>& extent) {
  if (static_cast<int>(extent.size()) != f.dim()) {
    throw std::invalid_argument("corner_box: extent rank mismatch");
  }
  for (int e : extent) {
    if (e < 1 || e > f.resolution()) throw std::invalid_argument("corner_box: extent out of range");
  }
  BoxGrid box;
  box.d = f.dim();
  box.extent = extent;
  box.spacing = f.spacing();
  box.values.resize(box.size());
  std::vector<int> full_ext(static_cast<std::size_t>(f.dim()), f.resolution());
  const auto src_strides = row_major_strides(full_ext);
  const auto dst_strides = row_major_strides(box.extent);
  std::vector<int> idx(static_cast<std::size_t>(f.dim()), 0);
  for (std::size_t it = 0; it < box.values.size(); ++it) {
    std::size_t src = 0;
    for (int a = 0; a < f.dim(); ++a) src += static_cast<std::size_t>(idx[static_cast<std::size_t>(a)]) * src_strides[static_cast<std::size_t>(a)];
    box.values[it] = f.values()[src];
    for (int a = f.dim() - 1; a >= 0; --a) {
      if (++idx[static_cast<std::size_t>(a)] < extent[static_cast<std::size_t>(a)]) break;
      idx[static_cast<std::size_t>(a)] = 0;
    }
  }
  (void)dst_strides;
  return box;
}

BoxGrid corner_subsample(const GridFunction& f, int m) {
  if (m < 1) throw std::invalid_argument("corner_subsample: m must be >= 1");
  const int K = (f.resolution() - 1) / m;  // grid point m*K is still inside
  BoxGrid box;
  box.d = f.dim();
  box.extent.assign(static_cast<std::size_t>(f.dim()), K + 1);
  box.spacing = f.spacing();
  box.values.resize(box.size());
  std::vector<int> full_ext(static_cast<std::size_t>(f.dim()), f.resolution());
  const auto src_strides = row_major_strides(full_ext);
  std::vector<int> idx(static_cast<std::size_t>(f.dim()), 0);
  for (std::size_t it = 0; it < box.values.size(); ++it) {
    std::size_t src = 0;
    for (int a = 0; a < f.dim(); ++a) {
      src += static_cast<std::size_t>(idx[static_cast<std::size_t>(a)]) * static_cast<std::size_t>(m) *
             src_strides[static_cast<std::size_t>(a)];
    }
    box.values[it] = f.values()[src];
    for (int a = f.dim() - 1; a >= 0; --a) {
      if (++idx[static_cast<std::size_t>(a)] < box.extent[static_cast<std::size_t>(a)]) break;
      idx[static_cast<std::size_t>(a)] = 0;
    }
  }
  return box;
}

DifferenceField finite_difference(const GridFunction& f, const std::vector<double>& h, int k) {
  if (k < 1) throw std::invalid_argument("finite_difference: k must be >= 1");
  if (static_cast<int>(h.size()) != f.dim()) {
    throw std::invalid_argument("finite_difference: shift rank mismatch");
  }
  const int d = f.dim();
  const double sp = f.spacing();
  std::vector<int> steps(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) {
    steps[static_cast<std::size_t>(a)] = static_cast<int>(std::llround(h[static_cast<std::size_t>(a)] / sp));
  }

  DifferenceField out;
  out.steps = steps;
  out.grid.d = d;
  out.grid.spacing = sp;
  out.grid.extent.resize(static_cast<std::size_t>(d));
  out.origin.resize(static_cast<std::size_t>(d));
  bool empty = false;
  for (int a = 0; a < d; ++a) {
    const int st = steps[static_cast<std::size_t>(a)];
    const int ext = f.resolution() - k * std::abs(st);
    out.grid.extent[static_cast<std::size_t>(a)] = std::max(ext, 0);
    out.origin[static_cast<std::size_t>(a)] = st < 0 ? k * (-st) : 0;
    empty = empty || ext <= 0;
  }
  out.empty_domain = empty;
  if (empty) return out;

  const auto w = difference_weights(k);
  std::vector<int> full_ext(static_cast<std::size_t>(d), f.resolution());
  const auto strides = row_major_strides(full_ext);
  std::ptrdiff_t shift = 0;
  for (int a = 0; a < d; ++a) {
    shift += static_cast<std::ptrdiff_t>(steps[static_cast<std::size_t>(a)]) *
             static_cast<std::ptrdiff_t>(strides[static_cast<std::size_t>(a)]);
  }
  out.grid.values.resize(out.grid.size());
  const double* data = f.values().data();
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  for (std::size_t it = 0; it < out.grid.values.size(); ++it) {
    std::size_t flat = 0;
    for (int a = 0; a < d; ++a) {
      flat += static_cast<std::size_t>(out.origin[static_cast<std::size_t>(a)] + idx[static_cast<std::size_t>(a)]) *
              strides[static_cast<std::size_t>(a)];
    }
    double v = 0.0;
    for (int u = 0; u <= k; ++u) v += w[static_cast<std::size_t>(u)] * data[static_cast<std::ptrdiff_t>(flat) + u * shift];
    out.grid.values[it] = v;
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[static_cast<std::size_t>(a)] < out.grid.extent[static_cast<std::size_t>(a)]) break;
      idx[static_cast<std::size_t>(a)] = 0;
    }
  }
  return out;
}

std::vector<double> modulus_profile(const BoxGrid& f, int k, const Exponent& q,
                                    std::span<const double> ts, const ModulusOptions& opts) {
  if (k < 1) throw std::invalid_argument("modulus_profile: k must be >= 1");
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (ts[i] < ts[i - 1]) throw std::invalid_argument("modulus_profile: t grid must be ascending");
  }
  std::vector<double> profile(ts.size(), 0.0);
  if (ts.empty() || f.empty()) return profile;
  const auto w = difference_weights(k);
  const double sp = f.spacing;
  const double t_last = ts.back();
  double run = 0.0;

  if (f.d == 1) {
    const int ext = f.extent[0];
    const int j_domain = (ext - 1) / k;
    const int j_t = static_cast<int>(t_last / sp * (1.0 + 1e-12));
    const std::vector<int> shifts = shift_ladder(std::min(j_domain, j_t), opts);
    std::size_t si = 0;
    for (std::size_t ni = 0; ni < ts.size(); ++ni) {
      while (si < shifts.size() && shifts[si] * sp <= ts[ni] * (1.0 + 1e-12)) {
        const int j = shifts[si];
        double dn;
        if (q.is_inf()) {
          dn = sup_diff_1d(f.values.data(), ext, j, k, w.data());
        } else {
          const double qv = q.value();
          dn = std::pow(sumpow_diff_1d(f.values.data(), ext, j, k, w.data(), qv) * sp, 1.0 / qv);
        }
        run = std::max(run, dn);
        ++si;
      }
      profile[ni] = run;
    }
    return profile;
  }

  const auto candidates = direction_candidates(f, t_last, opts);
  std::size_t ci = 0;
  for (std::size_t ni = 0; ni < ts.size(); ++ni) {
    while (ci < candidates.size() && candidates[ci].norm <= ts[ni] * (1.0 + 1e-12)) {
      run = std::max(run, diff_norm_box(f, candidates[ci].steps, k, q, w));
      ++ci;
    }
    profile[ni] = run;
  }
  return profile;
}

double modulus_of_smoothness(const GridFunction& f, double t, int k, const Exponent& q,
                             const ModulusOptions& opts) {
  if (!(t > 0.0)) throw std::invalid_argument("modulus_of_smoothness: t must be positive");
  const BoxGrid box = as_box(f);
  const double ts[1] = {t};
  return modulus_profile(box, k, q, std::span<const double>(ts, 1), opts)[0];
}

BesovParams::BesovParams(double s_, Exponent r_, Exponent q_, int k_) : s(s_), r(r_), q(q_), k(k_) {
  if (!(s > 0.0)) throw std::invalid_argument("BesovParams: s must be positive");
  if (!(static_cast<double>(k) > s)) throw std::invalid_argument("BesovParams: need k > s");
}

BesovParams BesovParams::with_default_order(double s, Exponent r, Exponent q) {
  return BesovParams(s, r, q, static_cast<int>(std::floor(s)) + 1);
}

SeminormResult besov_seminorm(const GridFunction& f, const BesovParams& params,
                              const ModulusOptions& opts, int quad_nodes) {
  if (quad_nodes < 2) throw std::invalid_argument("besov_seminorm: need at least 2 quadrature nodes");
  const double t_min = f.spacing();
  const double t_max = params.k * std::sqrt(static_cast<double>(f.dim()));
  const int N = quad_nodes;
  std::vector<double> ts(static_cast<std::size_t>(N));
  std::vector<double> us(static_cast<std::size_t>(N));
  const double u0 = std::log(t_min), u1 = std::log(t_max);
  for (int i = 0; i < N; ++i) {
    us[static_cast<std::size_t>(i)] = u0 + (u1 - u0) * i / (N - 1);
    ts[static_cast<std::size_t>(i)] = std::exp(us[static_cast<std::size_t>(i)]);
  }
  const std::vector<double> omega = modulus_profile(as_box(f), params.k, params.q, ts, opts);

  SeminormResult res;
  if (params.r.is_inf()) {
    double best = 0.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < omega.size(); ++i) {
      const double v = std::pow(ts[i], -params.s) * omega[i];
      if (v > best) {
        best = v;
        arg = i;
      }
    }
    res.value = best;
    res.unresolved_small_scale = best > 0.0 && arg == 0;
    res.first_node_fraction = res.unresolved_small_scale ? 1.0 : 0.0;
    return res;
  }

  const double rv = params.r.value();
  const double sr = params.s * rv;
  std::vector<double> g(omega.size());
  for (std::size_t i = 0; i < omega.size(); ++i) {
    g[i] = omega[i] == 0.0 ? 0.0 : std::pow(omega[i], rv) * std::pow(ts[i], -sr);
  }
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    integral += 0.5 * (us[i + 1] - us[i]) * (g[i] + g[i + 1]);
  }
  // omega is constant past the domain diameter, so the tail integral of
  // omega(t_max)^r t^{-sr-1} is closed form
  const double tail = omega.back() == 0.0
                          ? 0.0
                          : std::pow(omega.back(), rv) / (sr * std::pow(t_max, sr));
  const double total = integral + tail;
  res.value = total <= 0.0 ? 0.0 : std::pow(total, 1.0 / rv);
  if (total > 0.0) {
    res.first_node_fraction = 0.5 * (us[1] - us[0]) * g[0] / total;
    res.unresolved_small_scale = res.first_node_fraction > 0.10;
  }
  return res;
}

double besov_norm(const GridFunction& f, const BesovParams& params, const ModulusOptions& opts) {
  return f.lq_norm(params.q) + besov_seminorm(f, params, opts).value;
}

namespace {

// stencil of the m-fold central difference along one axis: offsets m-2i,
// weights (-1)^i C(m,i) / (2h)^m
void axis_central_stencil(int m, double h, std::vector<int>& offs, std::vector<double>& ws) {
  offs.clear();
  ws.clear();
  double c = 1.0;
  const double denom = std::pow(2.0 * h, m);
  for (int i = 0; i <= m; ++i) {
    if (i > 0) c = c * (m - i + 1) / i;
    offs.push_back(m - 2 * i);
    ws.push_back((i % 2 == 0 ? c : -c) / denom);
  }
}

void enumerate_multi_indices(int d, int s, std::vector<int>& alpha, int axis,
                             const std::function<void(const std::vector<int>&)>& emit) {
  if (axis == d - 1) {
    alpha[static_cast<std::size_t>(axis)] = s;
    emit(alpha);
    return;
  }
  for (int v = 0; v <= s; ++v) {
    alpha[static_cast<std::size_t>(axis)] = v;
    enumerate_multi_indices(d, s - v, alpha, axis + 1, emit);
  }
}

double multinomial(int s, const std::vector<int>& alpha) {
  double num = 1.0;
  for (int i = 2; i <= s; ++i) num *= i;
  for (int a : alpha) {
    for (int i = 2; i <= a; ++i) num /= i;
  }
  return num;
}

}  // namespace

double sobolev_norm(const GridFunction& f, int s, const Exponent& q) {
  if (s < 1) throw std::invalid_argument("sobolev_norm: s must be a positive integer");
  const int d = f.dim();
  const int res = f.resolution();
  if (res < 2 * s + 2) {
    throw std::invalid_argument("sobolev_norm: resolution too low for derivative order s");
  }
  const double base = f.lq_norm(q);
  const double sp = f.spacing();

  // interior box [s, res-s) per axis fits every order-s stencil
  std::vector<int> full_ext(static_cast<std::size_t>(d), res);
  const auto strides = row_major_strides(full_ext);
  const int inner = res - 2 * s;
  std::size_t inner_count = 1;
  for (int a = 0; a < d; ++a) inner_count *= static_cast<std::size_t>(inner);

  const bool inf = q.is_inf();
  const double qv = inf ? 0.0 : q.value();
  double acc = 0.0;

  std::vector<int> alpha(static_cast<std::size_t>(d), 0);
  std::vector<std::ptrdiff_t> offs_flat;
  std::vector<double> ws_flat;
  const double* data = f.values().data();

  enumerate_multi_indices(d, s, alpha, 0, [&](const std::vector<int>& a_idx) {
    // tensor-product stencil for D^alpha
    offs_flat.assign(1, 0);
    ws_flat.assign(1, 1.0);
    std::vector<int> offs;
    std::vector<double> ws;
    for (int a = 0; a < d; ++a) {
      const int m = a_idx[static_cast<std::size_t>(a)];
      if (m == 0) continue;
      axis_central_stencil(m, sp, offs, ws);
      std::vector<std::ptrdiff_t> new_offs;
      std::vector<double> new_ws;
      new_offs.reserve(offs_flat.size() * offs.size());
      new_ws.reserve(offs_flat.size() * offs.size());
      for (std::size_t i = 0; i < offs_flat.size(); ++i) {
        for (std::size_t j = 0; j < offs.size(); ++j) {
          new_offs.push_back(offs_flat[i] + static_cast<std::ptrdiff_t>(offs[j]) *
                                                 static_cast<std::ptrdiff_t>(strides[static_cast<std::size_t>(a)]));
          new_ws.push_back(ws_flat[i] * ws[j]);
        }
      }
      offs_flat.swap(new_offs);
      ws_flat.swap(new_ws);
    }
    const double mult = multinomial(s, a_idx);

    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    for (std::size_t it = 0; it < inner_count; ++it) {
      std::size_t flat = 0;
      for (int a = 0; a < d; ++a) {
        flat += static_cast<std::size_t>(s + idx[static_cast<std::size_t>(a)]) * strides[static_cast<std::size_t>(a)];
      }
      double v = 0.0;
      for (std::size_t j = 0; j < offs_flat.size(); ++j) {
        v += ws_flat[j] * data[static_cast<std::ptrdiff_t>(flat) + offs_flat[j]];
      }
      if (inf) {
        acc = std::max(acc, std::fabs(v));
      } else if (qv == 1.0) {
        acc += mult * std::fabs(v);
      } else if (qv == 2.0) {
        acc += mult * v * v;
      } else if (v != 0.0) {
        acc += mult * std::pow(std::fabs(v), qv);
      }
      for (int a = d - 1; a >= 0; --a) {
        if (++idx[static_cast<std::size_t>(a)] < inner) break;
        idx[static_cast<std::size_t>(a)] = 0;
      }
    }
  });

  const double deriv = inf ? acc : std::pow(acc * std::pow(sp, d), 1.0 / qv);
  return base + deriv;
}

}  // namespace widthlab
