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

#ifndef STATSEL_STATS_RNG_HPP
#define STATSEL_STATS_RNG_HPP

#include <cstdint>

namespace statsel::stats {

// SplitMix64. Library distributions are implementation-defined, so resampled
// output would not be reproducible across toolchains; this generator is
// bit-exact everywhere and cheap enough for counter-based per-task seeding.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) by rejection-free multiply-shift (Lemire); the slight
  // bias is < 2^-32 for the n used here (resample indices).
  std::uint32_t below(std::uint32_t n) {
    return static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(next())) * n) >> 32);
  }

  // Uniform in [0, 1).
  double unit() { return (next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Derives an independent stream for task `index` under `seed`. Used by the
// bootstrap so resample b is reproducible regardless of evaluation order.
inline SplitMix64 stream_for(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mixer(seed ^ (0xA0761D6478BD642FULL * (index + 1)));
  return SplitMix64(mixer.next());
}

}  // namespace statsel::stats

#endif  // STATSEL_STATS_RNG_HPP
