// Copyright 2026 The qscovert Authors
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
#include <complex>
#include <cstdint>

namespace qscovert {

/// Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                          std::array<std::uint32_t, 2> key);

struct StreamSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
  std::uint64_t counter = 0;
};

// Stream layout:
//   key     = (lo32(master_seed), hi32(master_seed))
//   counter = (lo32(block), hi32(block), lo32(stream_id), hi32(stream_id))
//   block starts at spec.counter and increments once per four 32-bit words.
// Doubles take the top 53 bits of a 64-bit draw (hi word first).
// normal(): Box-Muller, r = sqrt(-2 log u1) with u1 in (0,1], angle 2 pi u2;
//   the cosine branch is returned first and the sine branch cached.
// complex_normal(): one (u1, u2) pair, modulus sqrt(-log u1), phase 2 pi u2,
//   so that E|z|^2 = 1.
// gamma(a): Marsaglia-Tsang squeeze for a >= 1; a < 1 uses gamma(a + 1) u^(1/a).
class RandomStream {
 public:
  explicit RandomStream(const StreamSpec& spec);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  double uniform();       // [0, 1)
  double uniform_pos();   // (0, 1]
  double normal();
  std::complex<double> complex_normal();
  double exponential();
  double gamma(double shape);
  double beta(double a, double b);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_id_;
  std::uint64_t block_;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

RandomStream derive_stream(const StreamSpec& spec);

enum class Purpose : std::uint64_t {
  kFading = 1,
  kKappa = 2,
  kOutage = 3,
  kTProduct = 4,
  kTProductCheck = 5,
  kConverse = 6,
  kConverseCheck = 7,
  kBetaTail = 8,
  kLink = 9,
  kWarden = 10,
  kCodebook = 11,
  kDerivative = 12,
};

/// stream_id = (purpose << 48) | trial.
StreamSpec trial_stream(std::uint64_t seed, Purpose purpose, std::uint64_t trial);

}  // namespace qscovert
