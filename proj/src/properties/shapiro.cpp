// Copyright 2026 The statsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Shapiro-Wilk per Royston's AS R94 approximation (complete samples only).
// W is the squared correlation between the order statistics and the
// normalized expected normal scores; the p-value comes from Royston's
// normalizing transform of 1 - W.

#include <algorithm>
#include <cmath>
#include <vector>

#include "common/error.hpp"
#include "properties/checks.hpp"
#include "stats/dist.hpp"

namespace statsel::props {

namespace {

double poly(const double* c, int n, double x) {
  double acc = c[n - 1];
  for (int i = n - 2; i >= 0; --i) acc = acc * x + c[i];
  return acc;
}

// Royston's polynomial corrections for the two largest coefficients.
constexpr double kC1[6] = {0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056};
constexpr double kC2[6] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
// Mean / sd of the normalizing transform, small-sample (4 <= n <= 11) ...
constexpr double kC3[4] = {0.5440, -0.39978, 0.025054, -0.0006714};
constexpr double kC4[4] = {1.3822, -0.77857, 0.062767, -0.0020322};
// ... and large-sample (n >= 12) branches.
constexpr double kC5[4] = {-1.5861, -0.31082, -0.083751, 0.0038915};
constexpr double kC6[3] = {-0.4803, -0.082676, 0.0030302};
constexpr double kG[2] = {-2.273, 0.459};

constexpr double kPi6 = 1.909859;   // 6/pi
constexpr double kStqr = 1.047198;  // asin(sqrt(3/4))

}  // namespace

CheckResult shapiro_wilk(std::span<const double> sample) {
  const std::size_t n = sample.size();
  if (n < 3) {
    throw Error(Errc::insufficient_data,
                "Shapiro-Wilk needs at least 3 observations");
  }
  if (n > 5000) {
    throw Error(Errc::insufficient_data,
                "Shapiro-Wilk approximation is calibrated for n <= 5000");
  }

  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  if (x.back() - x.front() <= 0.0) {
    throw Error(Errc::degenerate_sample, "sample has zero range");
  }

  const std::size_t half = n / 2;
  std::vector<double> a(half);
  const double an = static_cast<double>(n);

  if (n == 3) {
    a[0] = std::sqrt(0.5);
  } else {
    // Expected normal order statistics (Blom), then Royston's renormalization.
    double sum_m2 = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
      a[i] = stats::normal_quantile((static_cast<double>(i + 1) - 0.375) /
                                    (an + 0.25));
      sum_m2 += a[i] * a[i];
    }
    sum_m2 *= 2.0;
    const double rsn = 1.0 / std::sqrt(an);
    const double a1 = poly(kC1, 6, rsn) - a[0] / std::sqrt(sum_m2);

    std::size_t first_plain;
    double fac;
    if (n > 5) {
      const double a2 = -a[1] / std::sqrt(sum_m2) + poly(kC2, 6, rsn);
      fac = std::sqrt((sum_m2 - 2.0 * a[0] * a[0] - 2.0 * a[1] * a[1]) /
                      (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
      a[0] = a1;
      a[1] = a2;
      first_plain = 2;
    } else {
      fac = std::sqrt((sum_m2 - 2.0 * a[0] * a[0]) / (1.0 - 2.0 * a1 * a1));
      a[0] = a1;
      first_plain = 1;
    }
    for (std::size_t i = first_plain; i < half; ++i) a[i] = -a[i] / fac;
  }

  // W as the squared correlation between x and the antisymmetric weights.
  const double range = x.back() - x.front();
  double sx = 0.0;
  for (double v : x) sx += v / range;
  sx /= an;
  double ssa = 0.0, ssx = 0.0, sax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = n - 1 - i;
    double ai;
    if (i < j) ai = -a[i];
    else if (i > j) ai = a[j];
    else ai = 0.0;
    // weights sum to zero, so the weight mean is zero
    const double xs = x[i] / range - sx;
    ssa += ai * ai;
    ssx += xs * xs;
    sax += ai * xs;
  }
  const double ssassx = std::sqrt(ssa * ssx);
  const double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
  const double w = 1.0 - w1;

  if (n == 3) {
    const double p = kPi6 * (std::asin(std::sqrt(w)) - kStqr);
    return {w, std::clamp(p, 0.0, 1.0)};
  }

  double y = std::log(w1);
  double m, s;
  if (n <= 11) {
    const double gamma = poly(kG, 2, an);
    if (y >= gamma) return {w, 1e-19};  // W in the extreme lower tail
    y = -std::log(gamma - y);
    m = poly(kC3, 4, an);
    s = std::exp(poly(kC4, 4, an));
  } else {
    const double ln_n = std::log(an);
    m = poly(kC5, 4, ln_n);
    s = std::exp(poly(kC6, 3, ln_n));
  }
  const double z = (y - m) / s;
  return {w, stats::normal_sf(z)};
}

}  // namespace statsel::props
