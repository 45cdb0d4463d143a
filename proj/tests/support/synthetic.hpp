#pragma once

// Test-only fixtures and independent oracles. Nothing here calls into the
// code paths these helpers are used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "pansphere/raster.hpp"
#include "pansphere/sphere_geom.hpp"

namespace pansphere::testing {

/// Smooth function on the sphere: a handful of low-degree harmonics, so it
/// has no seam at the date line and no singularity at the poles.
inline double smooth_field(double x, double y, double z, int channel) {
  switch (channel % 3) {
    case 0: return 0.5 + 0.2 * x + 0.15 * y * z + 0.1 * std::sin(2.0 * (y + 0.5 * z));
    case 1: return 0.5 - 0.2 * z + 0.1 * x * y + 0.1 * std::cos(3.0 * x);
    default: return 0.45 + 0.15 * y + 0.2 * x * z - 0.05 * std::sin(2.5 * y);
  }
}

inline ErpImage smooth_panorama(int height, int channels = 3) {
  const ErpGrid grid = ErpGrid::with_height(height);
  ErpImage img(grid.height, grid.width, channels);
  for (int v = 0; v < grid.height; ++v) {
    for (int u = 0; u < grid.width; ++u) {
      const double theta = 2.0 * kPi * (u + 0.5) / grid.width - kPi;
      const double phi = kPi / 2.0 - kPi * (v + 0.5) / grid.height;
      const double x = std::cos(phi) * std::cos(theta);
      const double y = std::cos(phi) * std::sin(theta);
      const double z = std::sin(phi);
      for (int ch = 0; ch < channels; ++ch) img.pixels.at(v, u, ch) = smooth_field(x, y, z, ch);
    }
  }
  return img;
}

/// Band-limited field on the sphere: a sum of random plane waves
/// cos(k . p + phase) with |k| <= max_wavenumber, mapped into [0, 1]. Along a
/// great circle the highest component has max_wavenumber cycles.
inline ErpImage bandlimited_panorama(int height, double max_wavenumber = 24.0, int channels = 3,
                                     std::uint64_t seed = 17, int waves = 16) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  struct Wave {
    double k[3];
    double phase;
  };
  std::vector<std::vector<Wave>> per_channel(static_cast<std::size_t>(channels));
  for (auto& list : per_channel) {
    for (int i = 0; i < waves; ++i) {
      double d[3] = {n(rng), n(rng), n(rng)};
      const double r = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
      const double mag = max_wavenumber * std::sqrt(unit(rng));
      list.push_back({{mag * d[0] / r, mag * d[1] / r, mag * d[2] / r}, 2.0 * kPi * unit(rng)});
    }
  }
  const ErpGrid grid = ErpGrid::with_height(height);
  ErpImage img(grid.height, grid.width, channels);
  for (int v = 0; v < grid.height; ++v) {
    for (int u = 0; u < grid.width; ++u) {
      const double theta = 2.0 * kPi * (u + 0.5) / grid.width - kPi;
      const double phi = kPi / 2.0 - kPi * (v + 0.5) / grid.height;
      const double p[3] = {std::cos(phi) * std::cos(theta), std::cos(phi) * std::sin(theta),
                           std::sin(phi)};
      for (int ch = 0; ch < channels; ++ch) {
        double acc = 0.0;
        for (const Wave& w : per_channel[static_cast<std::size_t>(ch)]) {
          acc += std::cos(w.k[0] * p[0] + w.k[1] * p[1] + w.k[2] * p[2] + w.phase);
        }
        img.pixels.at(v, u, ch) = 0.5 + 0.5 * acc / waves;
      }
    }
  }
  return img;
}

/// Distance from the center of an axis-aligned box room to its walls along
/// each pixel direction, in meters.
inline DepthMap box_room_depth(int height, double hx = 4.0, double hy = 3.0, double hz = 1.5) {
  const ErpGrid grid = ErpGrid::with_height(height);
  DepthMap d(grid.height, grid.width, DepthUnits::Metric);
  for (int v = 0; v < grid.height; ++v) {
    for (int u = 0; u < grid.width; ++u) {
      const double theta = 2.0 * kPi * (u + 0.5) / grid.width - kPi;
      const double phi = kPi / 2.0 - kPi * (v + 0.5) / grid.height;
      const double dir[3] = {std::cos(phi) * std::cos(theta), std::cos(phi) * std::sin(theta),
                             std::sin(phi)};
      const double half[3] = {hx, hy, hz};
      double t = std::numeric_limits<double>::infinity();
      for (int k = 0; k < 3; ++k) {
        if (std::abs(dir[k]) > 1e-12) t = std::min(t, half[k] / std::abs(dir[k]));
      }
      d.values.at(v, u) = t;
    }
  }
  return d;
}

inline DepthMap random_depth(int rows, int cols, std::uint64_t seed, double lo = 0.5,
                             double hi = 10.0, DepthUnits units = DepthUnits::Metric) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  DepthMap d(rows, cols, units);
  for (auto& v : d.values.data()) v = dist(rng);
  return d;
}

/// Rows whose latitude is within `cap_deg` of a pole are excluded.
inline bool in_polar_cap(int v, int height, double cap_deg) {
  const double phi = 90.0 - 180.0 * (v + 0.5) / height;
  return std::abs(phi) > 90.0 - cap_deg;
}

/// PSNR against peak 1 over pixels valid in both images and outside the caps.
inline double psnr(const ErpImage& a, const ErpImage& b, double cap_deg = 0.0) {
  double sse = 0.0;
  std::size_t n = 0;
  for (int v = 0; v < a.rows(); ++v) {
    if (cap_deg > 0.0 && in_polar_cap(v, a.rows(), cap_deg)) continue;
    for (int u = 0; u < a.cols(); ++u) {
      if (!a.valid.at(v, u) || !b.valid.at(v, u)) continue;
      for (int ch = 0; ch < a.channels(); ++ch) {
        const double e = a.pixels.at(v, u, ch) - b.pixels.at(v, u, ch);
        sse += e * e;
      }
      n += static_cast<std::size_t>(a.channels());
    }
  }
  if (n == 0) return 0.0;
  const double mse = sse / static_cast<double>(n);
  return mse == 0.0 ? std::numeric_limits<double>::infinity() : 10.0 * std::log10(1.0 / mse);
}

/// Brute-force percentile: full sort, then linear interpolation at q (n - 1).
inline double oracle_percentile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto i = static_cast<std::size_t>(pos);
  if (i + 1 >= v.size()) return v.back();
  const double f = pos - static_cast<double>(i);
  return v[i] * (1.0 - f) + v[i + 1] * f;
}

struct OracleMetrics {
  double abs_rel = 0.0;
  double rmse = 0.0;
  double delta[3] = {0.0, 0.0, 0.0};
  std::size_t count = 0;
};

/// Per-pixel loop straight from the metric definitions.
inline OracleMetrics oracle_metrics(const std::vector<double>& pred, const std::vector<double>& gt) {
  OracleMetrics m;
  double sq = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (!(gt[i] > 0.0)) continue;
    m.abs_rel += std::abs(pred[i] - gt[i]) / gt[i];
    sq += (pred[i] - gt[i]) * (pred[i] - gt[i]);
    const double ratio = std::max(pred[i] / gt[i], gt[i] / pred[i]);
    if (ratio < 1.25) m.delta[0] += 1;
    if (ratio < 1.25 * 1.25) m.delta[1] += 1;
    if (ratio < 1.25 * 1.25 * 1.25) m.delta[2] += 1;
    ++m.count;
  }
  const double k = static_cast<double>(m.count);
  m.abs_rel /= k;
  m.rmse = std::sqrt(sq / k);
  for (double& d : m.delta) d /= k;
  return m;
}

}  // namespace pansphere::testing
