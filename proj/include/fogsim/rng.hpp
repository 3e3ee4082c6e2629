// Copyright 2026 The fogsim Authors
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

#ifndef FOGSIM_RNG_HPP
#define FOGSIM_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace fogsim {

/// splitmix64 finalizer; used for seed derivation.
inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seeded random source with portable draw semantics.
///
/// All doubles are derived from raw mt19937_64 output with a fixed bit
/// mapping, so identical seeds give identical streams on every platform
/// and standard library. std::uniform_real_distribution is deliberately
/// not used (its output is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform()
    {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi)
    {
        return lo + (hi - lo) * uniform();
    }

    /// Uniform double in (0, hi): rejects the measure-zero draw at 0.
    double uniform_positive(double hi)
    {
        double v = 0.0;
        do {
            v = uniform(0.0, hi);
        } while (v <= 0.0);
        return v;
    }

    /// Uniform integer in [0, n).
    std::size_t index(std::size_t n)
    {
        return static_cast<std::size_t>(uniform() * static_cast<double>(n));
    }

    /// Fisher-Yates shuffle with this stream (std::shuffle is not portable).
    template <typename T>
    void shuffle(std::vector<T>& v)
    {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[index(i)]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace fogsim

#endif // FOGSIM_RNG_HPP
