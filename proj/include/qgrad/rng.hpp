// Copyright 2026 The qgrad Authors
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

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "qgrad/errors.hpp"

namespace qgrad {

/**
 * Seedable random source with fully reproducible draws.
 *
 * The engine is std::mt19937_64, whose output sequence the C++ standard
 * specifies exactly. The value mappings below are hand-rolled because the
 * standard leaves <random> distributions implementation-defined, and seeded
 * runs must produce identical numbers everywhere.
 */
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    void seed(std::uint64_t s) { engine_.seed(s); }

    std::uint64_t next_u64() { return engine_(); }

    /** Uniform double in [0, 1) with 53 random bits. */
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /** Standard normal via the Box-Muller transform. */
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        // Guard the log against u1 == 0.
        double r = std::sqrt(-2.0 * std::log(u1 + 0x1.0p-60));
        double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    /**
     * Draws an index from a finite distribution by CDF inversion.
     * Probabilities must be non-negative and sum to 1 within 1e-9.
     */
    std::size_t categorical(const std::vector<double>& probs) {
        double total = 0.0;
        for (double p : probs) {
            if (p < -1e-12) {
                raise(ErrorKind::InvalidDistribution, "negative probability");
            }
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-9) {
            raise(ErrorKind::InvalidDistribution, "probabilities do not sum to 1");
        }
        double u = uniform() * total;
        double acc = 0.0;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            acc += probs[i];
            if (u < acc) {
                return i;
            }
        }
        return probs.size() - 1;
    }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace qgrad
