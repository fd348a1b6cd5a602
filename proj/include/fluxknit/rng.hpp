// Copyright 2026 The fluxknit authors
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

#pragma once

#include <cstdint>

namespace fluxknit {

// SplitMix64 step. Fixed constants so sequences are identical on every
// platform; std::uniform_real_distribution is deliberately not used.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a ^ (0x9e3779b97f4a7c15ULL * (b + 1));
    return splitmix64(s);
}

// One deterministic random stream, identified by (seed, stream index).
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : state_(mix64(seed, stream)) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    // Uniform double in [0, 1), 53 bits of entropy.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform() < p; }

  private:
    std::uint64_t state_;
};

// Hands out per-call streams derived from (seed, call sequence number), so
// every consumer of randomness is reproducible independently of the others.
class SeedSequence {
  public:
    explicit SeedSequence(std::uint64_t seed) : seed_(seed) {}

    RngStream stream() { return RngStream(seed_, next_++); }

    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
    std::uint64_t next_ = 0;
};

}  // namespace fluxknit
