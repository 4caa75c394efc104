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
 * @file templates.hpp
 * Pre-built circuit fragments: input embeddings, layered ansatz
 * architectures, parameter initializers, and a registry for user-defined
 * templates. Templates emit gate sequences for composition inside QNode
 * builders; they never touch a device themselves.
 */

#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "qgrad/core.hpp"
#include "qgrad/ops.hpp"
#include "qgrad/qnode.hpp"
#include "qgrad/rng.hpp"
#include "qgrad/tensor.hpp"

namespace qgrad {

enum class RotationAxis { X, Y, Z };

/**
 * One single-axis rotation per feature, feature i on wires[i]. Accepts
 * fewer features than wires (trailing wires stay untouched); more features
 * than wires is an error.
 */
inline std::vector<GateApplication> angle_embedding(const std::vector<Param>& features,
                                                    const std::vector<Wire>& wires,
                                                    RotationAxis axis = RotationAxis::X) {
    if (features.size() > wires.size()) {
        raise(ErrorKind::TooManyFeatures,
              std::to_string(features.size()) + " features do not fit on " +
                  std::to_string(wires.size()) + " wires");
    }
    const char* name =
        axis == RotationAxis::X ? "RX" : (axis == RotationAxis::Y ? "RY" : "RZ");
    std::vector<GateApplication> out;
    out.reserve(features.size());
    for (std::size_t i = 0; i < features.size(); ++i) {
        out.push_back(gate(name, {features[i]}, {wires[i]}));
    }
    return out;
}

inline std::vector<GateApplication> angle_embedding(const ParamTensor& features,
                                                    const std::vector<Wire>& wires,
                                                    RotationAxis axis = RotationAxis::X) {
    std::vector<Param> flat;
    flat.reserve(features.size());
    for (std::size_t i = 0; i < features.size(); ++i) {
        flat.push_back(features[i]);
    }
    return angle_embedding(flat, wires, axis);
}

/**
 * Layers of general single-qubit rotations followed by a CNOT ring whose
 * range varies with depth: layer l entangles wire i with wire
 * (i + r) mod W where r = (l mod (W - 1)) + 1. Weights have shape
 * (layers, wires, 3), one Rot parameter triple per wire per layer.
 */
inline std::vector<GateApplication> strongly_entangling_layers(const ParamTensor& weights,
                                                               const std::vector<Wire>& wires) {
    const std::size_t w = wires.size();
    if (w < 2) {
        raise(ErrorKind::ShapeMismatch, "strongly entangling layers need at least 2 wires");
    }
    const std::vector<std::size_t>& shape = weights.shape();
    if (shape.size() != 3 || shape[1] != w || shape[2] != 3) {
        raise(ErrorKind::ShapeMismatch,
              "weights must have shape (layers, " + std::to_string(w) + ", 3)");
    }
    const std::size_t layers = shape[0];
    std::vector<GateApplication> out;
    out.reserve(layers * 2 * w);
    for (std::size_t l = 0; l < layers; ++l) {
        for (std::size_t i = 0; i < w; ++i) {
            out.push_back(gate("Rot",
                               {weights.at({l, i, 0}), weights.at({l, i, 1}),
                                weights.at({l, i, 2})},
                               {wires[i]}));
        }
        const std::size_t r = (l % (w - 1)) + 1;
        for (std::size_t i = 0; i < w; ++i) {
            out.push_back(gate("CNOT", {wires[i], wires[(i + r) % w]}));
        }
    }
    return out;
}

/** Weight shape strongly_entangling_layers accepts for a given size. */
inline std::vector<std::size_t> strong_ent_layers_shape(std::size_t n_layers,
                                                        std::size_t n_wires) {
    return {n_layers, n_wires, 3};
}

/**
 * Uniformly random weights of shape (layers, wires, 3) in [low, high),
 * reproducible under seed.
 */
inline Tensor init_strong_ent_layers_uniform(std::size_t n_layers, std::size_t n_wires,
                                             std::uint64_t seed, double low = 0.0,
                                             double high = 2.0 * std::numbers::pi) {
    if (n_layers < 1 || n_wires < 1) {
        raise(ErrorKind::InvalidParameter, "layer and wire counts must be at least 1");
    }
    Tensor out = Tensor::zeros(strong_ent_layers_shape(n_layers, n_wires));
    Rng rng(seed);
    for (double& v : out.data()) {
        v = rng.uniform(low, high);
    }
    return out;
}

enum class TemplateKind { Embedding, Layers, Custom };

using TemplateFn = std::function<std::vector<GateApplication>(const std::vector<Param>&,
                                                              const std::vector<Wire>&)>;
using ParamShapeFn = std::function<std::vector<std::size_t>(std::size_t, std::size_t)>;

/**
 * A named, registered circuit fragment. Invoking it validates that every
 * emitted gate stays on the declared wires.
 */
struct TemplateSpec {
    std::string name;
    TemplateKind kind = TemplateKind::Custom;
    TemplateFn fn;
    /** Wires the fragment needs; kAnyWires accepts any count. */
    std::size_t wire_arity = kAnyWires;
    /** Weight shape for a (layers, wires) size, when parameterized. */
    ParamShapeFn param_shape;

    std::vector<GateApplication> operator()(const std::vector<Param>& params,
                                            const std::vector<Wire>& wires) const {
        std::vector<GateApplication> gates = fn(params, wires);
        std::set<Wire> declared(wires.begin(), wires.end());
        for (const GateApplication& g : gates) {
            for (Wire w : g.wires()) {
                if (!declared.count(w)) {
                    raise(ErrorKind::InvalidGateEmission,
                          "template " + name + " emitted " + g.name() + " on wire " +
                              std::to_string(w) + ", outside its declared wires");
                }
            }
        }
        return gates;
    }
};

/** Process-wide template registry. */
class TemplateRegistry {
  public:
    static TemplateRegistry& instance() {
        static TemplateRegistry registry;
        return registry;
    }

    TemplateSpec register_template(const std::string& name, TemplateFn fn,
                                   TemplateKind kind = TemplateKind::Custom) {
        TemplateSpec spec{name, kind, std::move(fn)};
        std::lock_guard<std::mutex> lock(mutex_);
        specs_[name] = spec;
        return spec;
    }

    TemplateSpec get(const std::string& name) const {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = specs_.find(name);
        if (it == specs_.end()) {
            raise(ErrorKind::InvalidParameter, "no template named " + name);
        }
        return it->second;
    }

  private:
    TemplateRegistry() = default;
    mutable std::mutex mutex_;
    std::map<std::string, TemplateSpec> specs_;
};

/** Registers a custom template and returns its validating wrapper. */
inline TemplateSpec register_template(const std::string& name, TemplateFn fn,
                                      TemplateKind kind = TemplateKind::Custom) {
    return TemplateRegistry::instance().register_template(name, std::move(fn), kind);
}

} // namespace qgrad
