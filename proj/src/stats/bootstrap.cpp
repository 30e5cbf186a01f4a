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

#include <algorithm>
#include <cmath>

#include "common/error.hpp"
#include "stats/describe.hpp"
#include "stats/rng.hpp"
#include "stats/tests.hpp"

namespace statsel::stats {

namespace {

// Percentile with linear interpolation on the sorted sample.
double percentile(std::vector<double>& v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= v.size()) return v.back();
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + frac * (v[lo + 1] - v[lo]);
}

double resample_mean(std::span<const double> sample, SplitMix64& rng) {
  const std::uint32_t n = static_cast<std::uint32_t>(sample.size());
  double s = 0.0;
  for (std::uint32_t i = 0; i < n; ++i) s += sample[rng.below(n)];
  return s / n;
}

}  // namespace

BootstrapOutcome bootstrap_ci(const std::vector<std::string>& labels,
                              const std::vector<std::vector<double>>& groups,
                              double level, std::size_t resamples,
                              std::uint64_t seed) {
  if (groups.empty()) {
    throw Error(Errc::insufficient_data, "bootstrap needs at least one group");
  }
  if (resamples < 1000) {
    throw Error(Errc::domain_error, "bootstrap needs at least 1000 resamples");
  }
  for (const auto& g : groups) {
    if (g.size() < 2) {
      throw Error(Errc::insufficient_data,
                  "bootstrap needs at least 2 observations per group");
    }
  }

  BootstrapOutcome out;
  out.level = level;
  out.resamples = resamples;
  out.seed = seed;

  const double q_lo = (1.0 - level) / 2.0;
  const double q_hi = 1.0 - q_lo;

  // Per-resample streams are derived from (seed, group, b), so the result is
  // independent of evaluation order.
  std::vector<std::vector<double>> boot_means(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    boot_means[g].resize(resamples);
    for (std::size_t b = 0; b < resamples; ++b) {
      SplitMix64 rng = stream_for(seed + 0x51D7 * g, b);
      boot_means[g][b] = resample_mean(groups[g], rng);
    }
  }

  for (std::size_t g = 0; g < groups.size(); ++g) {
    std::vector<double> means = boot_means[g];
    BootstrapGroup bg;
    bg.label = g < labels.size() ? labels[g] : std::to_string(g);
    bg.mean = mean(groups[g]);
    bg.ci = ConfidenceInterval{level, percentile(means, q_lo),
                               percentile(means, q_hi)};
    out.groups.push_back(std::move(bg));
  }

  if (groups.size() == 2) {
    std::vector<double> diffs(resamples);
    for (std::size_t b = 0; b < resamples; ++b) {
      diffs[b] = boot_means[0][b] - boot_means[1][b];
    }
    const double lo = percentile(diffs, q_lo);
    const double hi = percentile(diffs, q_hi);
    out.difference = ConfidenceInterval{level, lo, hi};
    out.significant = (lo > 0.0) || (hi < 0.0);
  }
  return out;
}

}  // namespace statsel::stats
