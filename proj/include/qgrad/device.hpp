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
 * @file device.hpp
 * The device contract every backend implements, the canonical execution
 * pipeline, and the registry devices plug into.
 *
 * Executing a tape always proceeds through the same stages:
 *   1. check_validity     reject unsupported or malformed work up front
 *   2. apply              tape operations, then the measurements'
 *                         diagonalizing rotations
 *   3. generate_samples   only when shots > 0 or a Sample is requested
 *   4. statistics         one result entry per measurement
 */

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qgrad/core.hpp"
#include "qgrad/version.hpp"

namespace qgrad {

/** Identity and capability card a device presents to the registry. */
struct DeviceDescriptor {
    std::string name;        // human-readable
    std::string short_name;  // registry key, e.g. "default.qubit"
    std::string api_version; // framework API the device was written against
    std::string version;     // device release
    std::string author;
    /** Free-form capability map; "model" is required ("qubit" or "cv"). */
    std::map<std::string, std::string> capabilities;

    std::string capability(const std::string& key) const {
        auto it = capabilities.find(key);
        return it == capabilities.end() ? std::string() : it->second;
    }
};

/** Per-instance execution settings. shots == 0 selects exact statistics. */
struct DeviceConfig {
    std::size_t wires = 1;
    std::size_t shots = 0;
    std::uint64_t seed = 0x5eed;
};

/** One statistic: a scalar for Expectation/Variance, shots values for Sample. */
struct ResultEntry {
    MeasurementKind kind = MeasurementKind::Expectation;
    std::vector<double> data;

    double scalar() const {
        if (data.size() != 1) {
            raise(ErrorKind::ShapeMismatch, "result entry is not a scalar");
        }
        return data[0];
    }
};

struct ExecutionResult {
    std::vector<ResultEntry> entries;

    /** Scalar per entry; rejects Sample entries. */
    std::vector<double> scalars() const {
        std::vector<double> out;
        out.reserve(entries.size());
        for (const ResultEntry& e : entries) {
            out.push_back(e.scalar());
        }
        return out;
    }

    /** Flat concatenation of all entry data. */
    std::vector<double> flat() const {
        std::vector<double> out;
        for (const ResultEntry& e : entries) {
            out.insert(out.end(), e.data.begin(), e.data.end());
        }
        return out;
    }
};

namespace detail {

struct SemVer {
    long major = 0, minor = 0, patch = 0;
};

inline SemVer parse_semver(const std::string& text) {
    SemVer v;
    int part = 0;
    long value = 0;
    bool have_digit = false;
    for (char c : text) {
        if (c >= '0' && c <= '9') {
            value = value * 10 + (c - '0');
            have_digit = true;
        } else if (c == '.') {
            if (!have_digit || part > 2) {
                raise(ErrorKind::IncompatibleApiVersion, "malformed version " + text);
            }
            (part == 0 ? v.major : part == 1 ? v.minor : v.patch) = value;
            ++part;
            value = 0;
            have_digit = false;
        } else {
            raise(ErrorKind::IncompatibleApiVersion, "malformed version " + text);
        }
    }
    if (!have_digit || part > 2) {
        raise(ErrorKind::IncompatibleApiVersion, "malformed version " + text);
    }
    (part == 0 ? v.major : part == 1 ? v.minor : v.patch) = value;
    return v;
}

/** Same major line, and the requirement's minor must already exist. */
inline bool api_compatible(const std::string& required, const std::string& current) {
    SemVer req = parse_semver(required);
    SemVer cur = parse_semver(current);
    return req.major == cur.major && req.minor <= cur.minor;
}

} // namespace detail

/**
 * Abstract execution backend. Subclasses provide state handling (reset,
 * apply, sampling, statistics); the base class owns the pipeline, so every
 * device executes tapes through identical stages in identical order.
 */
class Device {
  public:
    Device(DeviceDescriptor descriptor, DeviceConfig config)
        : descriptor_(std::move(descriptor)), config_(config) {}

    Device(const Device&) = delete;
    Device& operator=(const Device&) = delete;
    virtual ~Device() = default;

    const DeviceDescriptor& descriptor() const { return descriptor_; }
    const DeviceConfig& config() const { return config_; }
    std::size_t num_wires() const { return config_.wires; }
    std::size_t shots() const { return config_.shots; }
    bool analytic() const { return config_.shots == 0; }
    std::uint64_t seed() const { return config_.seed; }

    /** Operation names this device can apply. */
    virtual const std::set<std::string>& operations() const = 0;
    /** Observable names this device can measure. */
    virtual const std::set<std::string>& observables() const = 0;

    /** Fresh instance with the same configuration and a derived seed. */
    virtual std::unique_ptr<Device> clone() const = 0;

    /** Re-seeds the device RNG. */
    virtual void set_seed(std::uint64_t seed) { config_.seed = seed; }

    /** Number of completed execute() calls. */
    std::size_t num_executions() const { return executions_; }

    /**
     * Rejects work the device cannot perform: too many wires, unsupported
     * operation or observable names, or sampling without shots.
     */
    virtual void check_validity(const QuantumTape& tape) const {
        if (tape.num_wires() > config_.wires) {
            raise(ErrorKind::TooManyWires, "tape needs " + std::to_string(tape.num_wires()) +
                                               " wires but device has " +
                                               std::to_string(config_.wires));
        }
        const std::set<std::string>& ops = operations();
        for (const GateApplication& op : tape.operations()) {
            if (!ops.count(op.name())) {
                raise(ErrorKind::UnsupportedOperation,
                      op.name() + " is not supported by " + descriptor_.short_name);
            }
        }
        const std::set<std::string>& obs = observables();
        for (const Measurement& m : tape.measurements()) {
            for (const ObsFactor& f : m.observable.factors()) {
                if (!obs.count(f.def->name)) {
                    raise(ErrorKind::UnsupportedObservable,
                          f.def->name + " is not supported by " + descriptor_.short_name);
                }
            }
            if (m.kind == MeasurementKind::Sample && analytic()) {
                raise(ErrorKind::SampleRequiresShots,
                      "sampling " + m.observable.name() + " requires shots > 0");
            }
        }
    }

    /** Runs the canonical pipeline on one tape. */
    ExecutionResult execute(const QuantumTape& tape) {
        check_validity(tape);
        reset();
        std::vector<GateApplication> rotations;
        for (const Measurement& m : tape.measurements()) {
            std::vector<GateApplication> gates = m.observable.diagonalizing_gates();
            rotations.insert(rotations.end(), gates.begin(), gates.end());
        }
        apply(tape.operations(), rotations);
        if (config_.shots > 0 || tape.has_sample()) {
            generate_samples();
        }
        ExecutionResult result = statistics(tape.measurements());
        ++executions_;
        return result;
    }

    /**
     * Marginal computational-basis distribution over the listed wires,
     * first listed wire most significant. Qubit-model devices implement it;
     * the default rejects.
     */
    virtual std::vector<double> probability(const std::vector<Wire>& wires) {
        (void)wires;
        raise(ErrorKind::InvalidParameter,
              descriptor_.short_name + " has no computational-basis probabilities");
    }

    /**
     * Optional backend-computed Jacobian of the tape's scalar statistics
     * with respect to the flattened trainable inputs referenced by the tape
     * parameters. Devices advertising capability "provides_jacobian" return
     * a (measurements x num_inputs) matrix; the default reports absence.
     */
    virtual std::optional<RMatrix> device_jacobian(const QuantumTape& tape,
                                                   std::size_t num_inputs) {
        (void)tape;
        (void)num_inputs;
        return std::nullopt;
    }

  protected:
    /** Returns the device to its initial state (ground or vacuum). */
    virtual void reset() = 0;
    /** Applies tape operations, then measurement rotations. */
    virtual void apply(const std::vector<GateApplication>& operations,
                       const std::vector<GateApplication>& rotations) = 0;
    /** Draws and stores this execution's sample batch. */
    virtual void generate_samples() = 0;
    /** Computes one result entry per measurement from state or samples. */
    virtual ExecutionResult statistics(const std::vector<Measurement>& measurements) = 0;

    /** Deterministic seed for the next clone of this device. */
    std::uint64_t next_derived_seed() const {
        std::uint64_t x = config_.seed + 0x9E3779B97F4A7C15ull * (++derived_seeds_);
        x ^= x >> 30;
        x *= 0xBF58476D1CE4E5B9ull;
        x ^= x >> 27;
        x *= 0x94D049BB133111EBull;
        x ^= x >> 31;
        return x;
    }

  private:
    DeviceDescriptor descriptor_;
    DeviceConfig config_;
    std::size_t executions_ = 0;
    mutable std::uint64_t derived_seeds_ = 0;
};

using DeviceFactory = std::function<std::unique_ptr<Device>(const DeviceConfig&)>;

/**
 * Process-wide catalogue of loadable devices, keyed by short name.
 * Registration checks name uniqueness; loading checks API compatibility.
 */
class DeviceRegistry {
  public:
    static DeviceRegistry& instance() {
        static DeviceRegistry registry;
        return registry;
    }

    void register_device(DeviceDescriptor descriptor, DeviceFactory factory) {
        std::lock_guard<std::mutex> lock(mutex_);
        if (entries_.count(descriptor.short_name)) {
            raise(ErrorKind::DuplicateShortName,
                  "a device named " + descriptor.short_name + " is already registered");
        }
        std::string key = descriptor.short_name;
        entries_[key] = Entry{std::move(descriptor), std::move(factory)};
    }

    std::unique_ptr<Device> load(const std::string& short_name, const DeviceConfig& config) const {
        Entry entry;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = entries_.find(short_name);
            if (it == entries_.end()) {
                raise(ErrorKind::UnknownDevice, "no device named " + short_name);
            }
            entry = it->second;
        }
        if (!detail::api_compatible(entry.descriptor.api_version, kApiVersion)) {
            raise(ErrorKind::IncompatibleApiVersion,
                  short_name + " requires API " + entry.descriptor.api_version +
                      " but this library provides " + kApiVersion);
        }
        return entry.factory(config);
    }

    std::vector<DeviceDescriptor> descriptors() const {
        std::lock_guard<std::mutex> lock(mutex_);
        std::vector<DeviceDescriptor> out;
        out.reserve(entries_.size());
        for (const auto& [name, entry] : entries_) {
            out.push_back(entry.descriptor);
        }
        return out;
    }

    bool has(const std::string& short_name) const {
        std::lock_guard<std::mutex> lock(mutex_);
        return entries_.count(short_name) > 0;
    }

  private:
    struct Entry {
        DeviceDescriptor descriptor;
        DeviceFactory factory;
    };

    DeviceRegistry() = default;

    mutable std::mutex mutex_;
    std::map<std::string, Entry> entries_;
};

} // namespace qgrad
