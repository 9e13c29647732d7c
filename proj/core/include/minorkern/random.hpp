// Copyright 2026 The minorkern Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace minorkern {

// Philox4x32-10 counter-based generator. The key is the seed; the upper half
// of the counter holds a stream id, so draw i of a run uses stream i and
// results do not depend on how draws are scheduled across threads.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;

  Philox4x32(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        ctr_{0, 0, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)} {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    if (pos_ == 4) {
      block_ = round10(ctr_, key_);
      if (++ctr_[0] == 0) ++ctr_[1];
      pos_ = 0;
    }
    return block_[pos_++];
  }

  static std::array<std::uint32_t, 4> round10(std::array<std::uint32_t, 4> c,
                                              std::array<std::uint32_t, 2> k) {
    constexpr std::uint64_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
    constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
    for (int r = 0; r < 10; ++r) {
      const std::uint64_t p0 = kM0 * c[0];
      const std::uint64_t p1 = kM1 * c[2];
      c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0], static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1], static_cast<std::uint32_t>(p0)};
      k[0] += kW0;
      k[1] += kW1;
    }
    return c;
  }

 private:
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> ctr_;
  std::array<std::uint32_t, 4> block_{};
  int pos_ = 4;
};

// Variates for one draw. Purpose tags keep independent uses of the same
// (seed, draw) pair on disjoint streams.
class DrawRng {
 public:
  DrawRng(std::uint64_t seed, std::uint64_t draw, std::uint32_t tag = 0)
      : eng_(seed, (static_cast<std::uint64_t>(tag) << 48) ^ draw) {}

  double uniform() { return std::generate_canonical<double, 53>(eng_); }
  // Uniform on (0, 1).
  double open_uniform() {
    double u;
    do u = uniform(); while (u <= 0.0);
    return u;
  }
  double normal() { return normal_(eng_); }
  double exponential(double rate) { return -std::log(open_uniform()) / rate; }
  // P(k) = (1 - q) q^k.
  long geometric(double q) {
    if (q <= 0.0) return 0;
    return static_cast<long>(std::floor(std::log(open_uniform()) / std::log(q)));
  }
  Philox4x32& engine() { return eng_; }

 private:
  Philox4x32 eng_;
  std::normal_distribution<double> normal_;
};

}  // namespace minorkern
