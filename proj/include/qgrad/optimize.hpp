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
 * @file optimize.hpp
 * Gradient-based optimizers over lists of tensors.
 *
 * Every optimizer flattens its variables into one vector, applies its
 * update there, and restores the original structure, so tuples of
 * differently-shaped variables optimize as a unit. Update rules, with g
 * the gradient and eta the step size:
 *
 *   GD        p -= eta g
 *   Momentum  a = beta a + eta g;                    p -= a
 *   Nesterov  a = beta a + eta g(p - beta a);        p -= a
 *   Adagrad   s += g^2;                              p -= eta g / sqrt(s + eps)
 *   RMSProp   s = gamma s + (1 - gamma) g^2;         p -= eta g / sqrt(s + eps)
 *   Adam      m = b1 m + (1 - b1) g, v = b2 v + (1 - b2) g^2,
 *             mhat = m / (1 - b1^t), vhat = v / (1 - b2^t),
 *             p -= eta mhat / (sqrt(vhat) + eps)
 */

#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qgrad/autodiff.hpp"
#include "qgrad/tensor.hpp"

namespace qgrad {

enum class OptimizerKind { GD, Momentum, Nesterov, Adagrad, RMSProp, Adam };

inline const char* optimizer_kind_name(OptimizerKind kind) {
    switch (kind) {
    case OptimizerKind::GD:
        return "gd";
    case OptimizerKind::Momentum:
        return "momentum";
    case OptimizerKind::Nesterov:
        return "nesterov";
    case OptimizerKind::Adagrad:
        return "adagrad";
    case OptimizerKind::RMSProp:
        return "rmsprop";
    case OptimizerKind::Adam:
        return "adam";
    }
    return "gd";
}

inline OptimizerKind optimizer_kind_from_name(const std::string& name) {
    for (OptimizerKind kind :
         {OptimizerKind::GD, OptimizerKind::Momentum, OptimizerKind::Nesterov,
          OptimizerKind::Adagrad, OptimizerKind::RMSProp, OptimizerKind::Adam}) {
        if (name == optimizer_kind_name(kind)) {
            return kind;
        }
    }
    raise(ErrorKind::InvalidConfig, "unknown optimizer " + name);
}

struct OptimizerOptions {
    double stepsize = 0.01;
    double momentum = 0.9; // Momentum and Nesterov
    double decay = 0.9;    // RMSProp
    double beta1 = 0.9;    // Adam
    double beta2 = 0.999;  // Adam
    double eps = 1e-8;     // Adagrad, RMSProp, Adam
};

class Optimizer {
  public:
    explicit Optimizer(OptimizerKind kind, OptimizerOptions options = {})
        : kind_(kind), options_(options) {
        if (options_.stepsize <= 0.0) {
            raise(ErrorKind::InvalidParameter, "step size must be positive");
        }
    }

    OptimizerKind kind() const { return kind_; }
    const OptimizerOptions& options() const { return options_; }

    /** Drops all accumulated state, as if freshly constructed. */
    void reset() {
        velocity_.clear();
        accum_.clear();
        first_moment_.clear();
        second_moment_.clear();
        steps_ = 0;
    }

    /** One update of every variable. */
    std::vector<Tensor> step(const ad::CostFn& cost, const std::vector<Tensor>& params) {
        return update(cost, params, nullptr);
    }

    /** One update plus the cost at the pre-step variables. */
    std::pair<std::vector<Tensor>, double> step_and_cost(const ad::CostFn& cost,
                                                         const std::vector<Tensor>& params) {
        double value = 0.0;
        std::vector<Tensor> next = update(cost, params, &value);
        return {std::move(next), value};
    }

    /** Single-variable conveniences. */
    Tensor step(const ad::CostFn& cost, const Tensor& params) {
        return step(cost, std::vector<Tensor>{params})[0];
    }
    std::pair<Tensor, double> step_and_cost(const ad::CostFn& cost, const Tensor& params) {
        auto [next, value] = step_and_cost(cost, std::vector<Tensor>{params});
        return {std::move(next[0]), value};
    }

  private:
    std::vector<Tensor> update(const ad::CostFn& cost, const std::vector<Tensor>& params,
                               double* cost_out) {
        std::vector<double> flat = flatten(params);
        ensure_state(flat.size());

        std::vector<double> grads;
        if (kind_ == OptimizerKind::Nesterov) {
            std::vector<double> lookahead = flat;
            for (std::size_t i = 0; i < flat.size(); ++i) {
                lookahead[i] -= options_.momentum * velocity_[i];
            }
            grads = flatten(ad::grad(cost, unflatten(lookahead, params)));
            if (cost_out) {
                *cost_out = ad::value_and_grad(cost, params).value;
            }
        } else {
            ad::GradResult result = ad::value_and_grad(cost, params);
            grads = flatten(result.gradients);
            if (cost_out) {
                *cost_out = result.value;
            }
        }

        apply(flat, grads);
        return unflatten(flat, params);
    }

    void ensure_state(std::size_t n) {
        if (steps_ > 0 && velocity_.size() != n) {
            raise(ErrorKind::ShapeMismatch,
                  "variable size changed mid-optimization; call reset() first");
        }
        if (velocity_.size() != n) {
            velocity_.assign(n, 0.0);
            accum_.assign(n, 0.0);
            first_moment_.assign(n, 0.0);
            second_moment_.assign(n, 0.0);
        }
    }

    void apply(std::vector<double>& p, const std::vector<double>& g) {
        const double eta = options_.stepsize;
        ++steps_;
        switch (kind_) {
        case OptimizerKind::GD:
            for (std::size_t i = 0; i < p.size(); ++i) {
                p[i] -= eta * g[i];
            }
            break;
        case OptimizerKind::Momentum:
        case OptimizerKind::Nesterov:
            for (std::size_t i = 0; i < p.size(); ++i) {
                velocity_[i] = options_.momentum * velocity_[i] + eta * g[i];
                p[i] -= velocity_[i];
            }
            break;
        case OptimizerKind::Adagrad:
            for (std::size_t i = 0; i < p.size(); ++i) {
                accum_[i] += g[i] * g[i];
                p[i] -= eta * g[i] / std::sqrt(accum_[i] + options_.eps);
            }
            break;
        case OptimizerKind::RMSProp:
            for (std::size_t i = 0; i < p.size(); ++i) {
                accum_[i] = options_.decay * accum_[i] + (1.0 - options_.decay) * g[i] * g[i];
                p[i] -= eta * g[i] / std::sqrt(accum_[i] + options_.eps);
            }
            break;
        case OptimizerKind::Adam: {
            const double b1 = options_.beta1, b2 = options_.beta2;
            const double t = static_cast<double>(steps_);
            for (std::size_t i = 0; i < p.size(); ++i) {
                first_moment_[i] = b1 * first_moment_[i] + (1.0 - b1) * g[i];
                second_moment_[i] = b2 * second_moment_[i] + (1.0 - b2) * g[i] * g[i];
                double mhat = first_moment_[i] / (1.0 - std::pow(b1, t));
                double vhat = second_moment_[i] / (1.0 - std::pow(b2, t));
                p[i] -= eta * mhat / (std::sqrt(vhat) + options_.eps);
            }
            break;
        }
        }
    }

    OptimizerKind kind_;
    OptimizerOptions options_;
    std::vector<double> velocity_;
    std::vector<double> accum_;
    std::vector<double> first_moment_;
    std::vector<double> second_moment_;
    std::size_t steps_ = 0;
};

/** Optimizer of the named kind with the given step size. */
inline Optimizer make_optimizer(const std::string& name, double stepsize) {
    OptimizerOptions options;
    options.stepsize = stepsize;
    return Optimizer(optimizer_kind_from_name(name), options);
}

} // namespace qgrad
