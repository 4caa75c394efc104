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

/**
 * @file qubit_device.hpp
 * Dense statevector simulator registered as "default.qubit".
 *
 * Index convention: wire 0 is the most significant bit of the basis index,
 * so on n wires the amplitude of |b_0 b_1 ... b_{n-1}> lives at index
 * sum_w b_w << (n-1-w). Gate matrices use the same convention locally:
 * the first wire a gate lists is the most significant bit of its local
 * index.
 */

#pragma once

#include <cmath>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "qgrad/device.hpp"
#include "qgrad/ops.hpp"
#include "qgrad/rng.hpp"
#include "qgrad/version.hpp"

namespace qgrad {

class QubitDevice final : public Device {
  public:
    explicit QubitDevice(const DeviceConfig& config)
        : Device(make_descriptor(), config), rng_(config.seed) {
        reset();
    }

    static DeviceDescriptor make_descriptor() {
        DeviceDescriptor d;
        d.name = "Default qubit simulator";
        d.short_name = "default.qubit";
        d.api_version = kApiVersion;
        d.version = kVersion;
        d.author = "The qgrad Authors";
        d.capabilities = {{"model", "qubit"}};
        return d;
    }

    const std::set<std::string>& operations() const override {
        static const std::set<std::string> ops = {
            "Hadamard", "PauliX", "PauliY",     "PauliZ",     "S",
            "T",        "CNOT",   "CZ",         "RX",         "RY",
            "RZ",       "Rot",    "PhaseShift", "BasisState", "QubitUnitary"};
        return ops;
    }

    const std::set<std::string>& observables() const override {
        static const std::set<std::string> obs = {"PauliX", "PauliY",   "PauliZ",
                                                  "Hadamard", "Hermitian", "Identity"};
        return obs;
    }

    std::unique_ptr<Device> clone() const override {
        DeviceConfig derived = config();
        derived.seed = next_derived_seed();
        return std::make_unique<QubitDevice>(derived);
    }

    void set_seed(std::uint64_t seed) override {
        Device::set_seed(seed);
        rng_ = Rng(seed);
    }

    /** Current statevector, length 2^wires. */
    const std::vector<Complex>& state() const { return state_; }

    std::vector<double> probability(const std::vector<Wire>& wires) override {
        return marginal_probability(wires);
    }

  protected:
    void reset() override {
        state_.assign(std::size_t{1} << num_wires(), Complex(0.0, 0.0));
        state_[0] = Complex(1.0, 0.0);
        samples_.clear();
    }

    void apply(const std::vector<GateApplication>& operations,
               const std::vector<GateApplication>& rotations) override {
        for (std::size_t i = 0; i < operations.size(); ++i) {
            const GateApplication& op = operations[i];
            if (op.name() == "BasisState") {
                if (i != 0) {
                    raise(ErrorKind::InvalidParameter,
                          "BasisState must be the first operation on the tape");
                }
                apply_basis_state(op);
            } else {
                apply_matrix(gate_matrix(op), op.wires());
            }
        }
        for (const GateApplication& op : rotations) {
            apply_matrix(gate_matrix(op), op.wires());
        }
    }

    void generate_samples() override {
        std::vector<double> probs = marginal_probability(all_wires());
        samples_.resize(shots());
        for (std::size_t s = 0; s < shots(); ++s) {
            samples_[s] = rng_.categorical(probs);
        }
    }

    ExecutionResult statistics(const std::vector<Measurement>& measurements) override {
        ExecutionResult result;
        result.entries.reserve(measurements.size());
        for (const Measurement& m : measurements) {
            const std::vector<Wire> wires = m.observable.wires();
            const std::vector<double> eigvals = m.observable.eigvals();
            ResultEntry entry;
            entry.kind = m.kind;
            if (m.kind == MeasurementKind::Sample || shots() > 0) {
                std::vector<double> values = mapped_samples(wires, eigvals);
                switch (m.kind) {
                case MeasurementKind::Expectation:
                    entry.data = {mean(values)};
                    break;
                case MeasurementKind::Variance:
                    entry.data = {variance(values)};
                    break;
                case MeasurementKind::Sample:
                    entry.data = std::move(values);
                    break;
                }
            } else {
                std::vector<double> probs = marginal_probability(wires);
                double ev = 0.0, ev2 = 0.0;
                for (std::size_t i = 0; i < probs.size(); ++i) {
                    ev += eigvals[i] * probs[i];
                    ev2 += eigvals[i] * eigvals[i] * probs[i];
                }
                entry.data = {m.kind == MeasurementKind::Expectation ? ev : ev2 - ev * ev};
            }
            result.entries.push_back(std::move(entry));
        }
        return result;
    }

  private:
    void apply_basis_state(const GateApplication& op) {
        std::fill(state_.begin(), state_.end(), Complex(0.0, 0.0));
        std::size_t index = 0;
        const std::vector<Param>& params = op.params();
        for (std::size_t j = 0; j < op.wires().size(); ++j) {
            std::size_t bit = static_cast<std::size_t>(std::llround(params[j].value));
            index |= bit << (num_wires() - 1 - op.wires()[j]);
        }
        state_[index] = Complex(1.0, 0.0);
    }

    void apply_matrix(const CMatrix& matrix, const std::vector<Wire>& wires) {
        const std::size_t n = num_wires();
        const std::size_t k = wires.size();
        const std::size_t local_dim = std::size_t{1} << k;

        std::size_t target_mask = 0;
        std::vector<std::size_t> offsets(local_dim, 0);
        for (std::size_t j = 0; j < k; ++j) {
            target_mask |= std::size_t{1} << (n - 1 - wires[j]);
        }
        for (std::size_t local = 0; local < local_dim; ++local) {
            std::size_t off = 0;
            for (std::size_t j = 0; j < k; ++j) {
                if ((local >> (k - 1 - j)) & 1) {
                    off |= std::size_t{1} << (n - 1 - wires[j]);
                }
            }
            offsets[local] = off;
        }

        std::vector<Complex> gathered(local_dim);
        for (std::size_t base = 0; base < state_.size(); ++base) {
            if (base & target_mask) {
                continue;
            }
            for (std::size_t i = 0; i < local_dim; ++i) {
                gathered[i] = state_[base | offsets[i]];
            }
            for (std::size_t i = 0; i < local_dim; ++i) {
                Complex acc(0.0, 0.0);
                for (std::size_t j = 0; j < local_dim; ++j) {
                    acc += matrix(i, j) * gathered[j];
                }
                state_[base | offsets[i]] = acc;
            }
        }
    }

    std::vector<Wire> all_wires() const {
        std::vector<Wire> wires(num_wires());
        for (std::size_t w = 0; w < wires.size(); ++w) {
            wires[w] = w;
        }
        return wires;
    }

    /** Marginal distribution over the listed wires, first listed = MSB. */
    std::vector<double> marginal_probability(const std::vector<Wire>& wires) const {
        const std::size_t n = num_wires();
        const std::size_t k = wires.size();
        std::vector<double> out(std::size_t{1} << k, 0.0);
        for (std::size_t g = 0; g < state_.size(); ++g) {
            double p = std::norm(state_[g]);
            if (p == 0.0) {
                continue;
            }
            out[local_index(g, wires, n, k)] += p;
        }
        return out;
    }

    static std::size_t local_index(std::size_t global, const std::vector<Wire>& wires,
                                   std::size_t n, std::size_t k) {
        std::size_t local = 0;
        for (std::size_t j = 0; j < k; ++j) {
            local |= ((global >> (n - 1 - wires[j])) & 1) << (k - 1 - j);
        }
        return local;
    }

    /** Eigenvalue observed by each stored sample for this observable. */
    std::vector<double> mapped_samples(const std::vector<Wire>& wires,
                                       const std::vector<double>& eigvals) const {
        std::vector<double> values(samples_.size());
        for (std::size_t s = 0; s < samples_.size(); ++s) {
            values[s] = eigvals[local_index(samples_[s], wires, num_wires(), wires.size())];
        }
        return values;
    }

    static double mean(const std::vector<double>& values) {
        double acc = 0.0;
        for (double v : values) {
            acc += v;
        }
        return acc / static_cast<double>(values.size());
    }

    static double variance(const std::vector<double>& values) {
        double mu = mean(values);
        double acc = 0.0;
        for (double v : values) {
            acc += (v - mu) * (v - mu);
        }
        return acc / static_cast<double>(values.size());
    }

    std::vector<Complex> state_;
    std::vector<std::size_t> samples_;
    Rng rng_;
};

/** Registers "default.qubit" exactly once per process. */
inline void ensure_default_qubit() {
    static const bool once = [] {
        DeviceRegistry::instance().register_device(
            QubitDevice::make_descriptor(),
            [](const DeviceConfig& config) { return std::make_unique<QubitDevice>(config); });
        return true;
    }();
    (void)once;
}

} // namespace qgrad
