// SPDX-License-Identifier: Apache-2.0
//
// evcm - eigen-domain MIMO channel simulator
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace evcm {

namespace detail {

inline std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t splitmix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace detail

// One independent random stream. Streams are derived from a single master
// seed by hashing a (tag, index) pair, so adding streams for one purpose
// (say, more vector elements at a larger N) never shifts the draws of any
// other stream. Uniform and Gaussian variates are produced with explicit
// arithmetic on raw mt19937_64 output, keeping traces reproducible across
// standard library implementations.
class RandomStream {
  public:
    RandomStream(std::uint64_t master_seed, std::string_view tag, std::uint64_t index = 0)
        : eng_(detail::splitmix(detail::splitmix(master_seed ^ detail::fnv1a(tag)) +
                                0x632be59bd9b4e019ULL * (index + 1)))
    {
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform()
    {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // Uniform in [0, 2*pi).
    double phase()
    {
        return uniform() * 2.0 * std::numbers::pi;
    }

    // Standard normal via Box-Muller (implementation-defined distributions
    // from <random> are avoided on purpose).
    double gaussian()
    {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform(); // (0, 1]
        double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::uint64_t raw() { return eng_(); }

  private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace evcm
