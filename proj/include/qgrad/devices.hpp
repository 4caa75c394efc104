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
 * @file devices.hpp
 * Convenience entry points that load devices by short name with the
 * built-in backends guaranteed to be registered first.
 */

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qgrad/device.hpp"
#include "qgrad/gaussian_device.hpp"
#include "qgrad/qubit_device.hpp"

namespace qgrad {

/** Registers every built-in backend; safe to call repeatedly. */
inline void ensure_builtin_devices() {
    ensure_default_qubit();
    ensure_default_gaussian();
}

/** Loads a registered device by short name. */
inline std::unique_ptr<Device> load_device(const std::string& short_name, std::size_t wires,
                                           std::size_t shots = 0,
                                           std::uint64_t seed = DeviceConfig{}.seed) {
    ensure_builtin_devices();
    DeviceConfig config;
    config.wires = wires;
    config.shots = shots;
    config.seed = seed;
    return DeviceRegistry::instance().load(short_name, config);
}

/** Descriptors for every registered device, built-ins included. */
inline std::vector<DeviceDescriptor> device_descriptors() {
    ensure_builtin_devices();
    return DeviceRegistry::instance().descriptors();
}

} // namespace qgrad
