#pragma once

// Brute-force reference implementations, deliberately written without any
// code from the library.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using Rows = std::vector<std::vector<double>>;

inline double cosine(const std::vector<double>& u, const std::vector<double>& v) {
  double uu = 0, vv = 0, uv = 0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    uu += u[j] * u[j];
    vv += v[j] * v[j];
    uv += u[j] * v[j];
  }
  if (uu == 0 || vv == 0) return 0.0;
  return uv / (std::sqrt(uu) * std::sqrt(vv));
}

inline double acf(const Rows& rows, std::size_t lag) {
  const std::size_t n = rows.size();
  double s = 0;
  for (std::size_t i = 0; i + lag < n; ++i) s += cosine(rows[i], rows[i + lag]);
  return s / static_cast<double>(n - lag);
}

// |X_k| / M of the mean-subtracted values for k = 0..M/2.
inline std::vector<double> dft_magnitudes(const std::vector<double>& x) {
  const std::size_t m = x.size();
  double mean = 0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(m);
  const double pi = std::acos(-1.0);
  std::vector<double> out;
  for (std::size_t k = 0; k <= m / 2; ++k) {
    std::complex<double> acc = 0;
    for (std::size_t t = 0; t < m; ++t)
      acc += (x[t] - mean) * std::polar(1.0, -2.0 * pi * static_cast<double>(k * t % m) /
                                                  static_cast<double>(m));
    out.push_back(std::abs(acc) / static_cast<double>(m));
  }
  return out;
}

// y = intercept + slope * x
inline std::pair<double, double> ols(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {(sy - slope * sx) / n, slope};
}

inline std::vector<long double> softmax(const std::vector<double>& u, double t) {
  long double mx = u[0];
  for (double v : u) mx = std::max<long double>(mx, v);
  std::vector<long double> e;
  long double z = 0;
  for (double v : u) {
    e.push_back(std::exp((static_cast<long double>(v) - mx) / t));
    z += e.back();
  }
  for (auto& v : e) v /= z;
  return e;
}

inline Rows gaussian_rows(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> nd;
  Rows r(n, std::vector<double>(d));
  for (auto& row : r)
    for (auto& v : row) v = nd(g);
  return r;
}

inline std::vector<double> flatten(const Rows& rows) {
  std::vector<double> out;
  for (const auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

}  // namespace oracle
