#include "pansphere/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace pansphere {
namespace {

int wrap_index(long long i, int n) noexcept {
  long long m = i % n;
  if (m < 0) m += n;
  return static_cast<int>(m);
}

int column(long long i, int n, HorizontalEdge edge) noexcept {
  return edge == HorizontalEdge::Wrap ? wrap_index(i, n)
                                      : static_cast<int>(std::clamp<long long>(i, 0, n - 1));
}

int row(long long i, int n) noexcept { return static_cast<int>(std::clamp<long long>(i, 0, n - 1)); }

}  // namespace

bool sample(const Plane& src, const Mask& valid, double u, double v, Interpolation mode,
            HorizontalEdge edge, std::span<double> out) noexcept {
  const int rows = src.rows();
  const int cols = src.cols();
  const int channels = src.channels();
  std::fill(out.begin(), out.end(), 0.0);
  if (rows == 0 || cols == 0 || !std::isfinite(u) || !std::isfinite(v)) return false;

  const int nr = row(static_cast<long long>(std::floor(v + 0.5)), rows);
  const int nc = column(static_cast<long long>(std::floor(u + 0.5)), cols, edge);
  if (valid.at(nr, nc) == 0) return false;

  if (mode == Interpolation::Nearest) {
    for (int ch = 0; ch < channels; ++ch) out[ch] = src.at(nr, nc, ch);
    return true;
  }

  const double fu = std::floor(u);
  const double fv = std::floor(v);
  const double wu = u - fu;
  const double wv = v - fv;
  const auto u0 = static_cast<long long>(fu);
  const auto v0 = static_cast<long long>(fv);
  const int c0 = column(u0, cols, edge);
  const int c1 = column(u0 + 1, cols, edge);
  const int r0 = row(v0, rows);
  const int r1 = row(v0 + 1, rows);

  const int rr[4] = {r0, r0, r1, r1};
  const int cc[4] = {c0, c1, c0, c1};
  const double ww[4] = {(1.0 - wu) * (1.0 - wv), wu * (1.0 - wv), (1.0 - wu) * wv, wu * wv};

  bool all_valid = true;
  for (int k = 0; k < 4; ++k) all_valid = all_valid && valid.at(rr[k], cc[k]) != 0;

  if (all_valid) {
    // Nested lerp is exact on constant neighbourhoods and never leaves the
    // neighbour value range.
    for (int ch = 0; ch < channels; ++ch) {
      const double top = std::lerp(src.at(r0, c0, ch), src.at(r0, c1, ch), wu);
      const double bottom = std::lerp(src.at(r1, c0, ch), src.at(r1, c1, ch), wu);
      out[ch] = std::lerp(top, bottom, wv);
    }
    return true;
  }

  double total = 0.0;
  for (int k = 0; k < 4; ++k) {
    if (ww[k] == 0.0 || valid.at(rr[k], cc[k]) == 0) continue;
    total += ww[k];
    for (int ch = 0; ch < channels; ++ch) out[ch] += ww[k] * src.at(rr[k], cc[k], ch);
  }
  if (total > 0.0) {
    for (int ch = 0; ch < channels; ++ch) {
      // Keep the renormalized mean inside the valid neighbour range.
      double lo = src.at(nr, nc, ch);
      double hi = lo;
      for (int k = 0; k < 4; ++k) {
        if (ww[k] == 0.0 || valid.at(rr[k], cc[k]) == 0) continue;
        lo = std::min(lo, src.at(rr[k], cc[k], ch));
        hi = std::max(hi, src.at(rr[k], cc[k], ch));
      }
      out[ch] = std::clamp(out[ch] / total, lo, hi);
    }
  } else {
    for (int ch = 0; ch < channels; ++ch) out[ch] = src.at(nr, nc, ch);
  }
  return true;
}

}  // namespace pansphere
