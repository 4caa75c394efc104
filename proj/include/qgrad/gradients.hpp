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
 * @file gradients.hpp
 * Jacobians of tape statistics with respect to the flattened trainable
 * inputs, by parameter shift, finite differences, or a device-provided
 * Jacobian.
 *
 * Parameter shift differentiates one gate-parameter occurrence at a time:
 *   d f / d theta = sum_terms c * f(theta -> m * theta + s)
 * and the derivative with respect to input j sums occurrence derivatives
 * weighted by the occurrence's chain factor (its linear scale in j).
 * Finite differences instead shift every occurrence of input j at once, so
 * they remain valid when several occurrences share one input.
 *
 * Variance rows are differentiated through their first two moments:
 *   d Var[B] = d<B^2> - 2 <B> d<B>
 * using companion tapes that measure <B> and <B^2>; B^2 keeps B's
 * diagonalizing gates, name, and wires and squares its eigenvalues. An expectation-only tape
 * therefore costs exactly one forward plus two shifted executions per
 * analytic input.
 */

#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "qgrad/core.hpp"
#include "qgrad/device.hpp"

namespace qgrad {

enum class DiffMethod {
    Best,       // device Jacobian, else per-input analytic with FD fallback
    Analytic,   // parameter shift only; rejects ineligible inputs
    ForwardFD,  // (f(x + h) - f(x)) / h
    CenteredFD, // (f(x + h) - f(x - h)) / 2h
    Device,     // backend-provided Jacobian only
};

struct FDOptions {
    double step = 1e-7;
};

/** Step size tuned to exact versus shot-noise-limited evaluations. */
inline double default_fd_step(bool analytic_device) { return analytic_device ? 1e-7 : 0.1; }

namespace detail {

/** One gate parameter bound to a trainable input. */
struct ParamOccurrence {
    std::size_t op_index = 0;
    std::size_t slot = 0;
    int ref = -1;
    double scale = 1.0;
    GradMethod method = GradMethod::FiniteDiff;
    std::vector<ShiftTerm> terms;
};

inline std::vector<ParamOccurrence> scan_occurrences(const QuantumTape& tape) {
    std::vector<ParamOccurrence> occs;
    for (std::size_t i = 0; i < tape.operations().size(); ++i) {
        const GateApplication& op = tape.operations()[i];
        for (std::size_t s = 0; s < op.params().size(); ++s) {
            const Param& p = op.params()[s];
            if (p.ref < 0) {
                continue;
            }
            ParamOccurrence occ;
            occ.op_index = i;
            occ.slot = s;
            occ.ref = p.ref;
            occ.scale = p.scale;
            occ.method = op.def_ptr()->param_grad_method(s);
            if (op.def_ptr()->grad_recipe &&
                s < op.def_ptr()->grad_recipe->per_param.size() &&
                op.def_ptr()->grad_recipe->per_param[s]) {
                occ.terms = *op.def_ptr()->grad_recipe->per_param[s];
            } else {
                occ.terms = default_shift_terms();
            }
            occs.push_back(std::move(occ));
        }
    }
    return occs;
}

inline std::vector<double> execute_scalars(Device& device, const QuantumTape& tape) {
    return device.execute(tape).scalars();
}

/** Tape with every occurrence of input j moved by delta (times its scale). */
inline QuantumTape shift_input(const QuantumTape& tape,
                               const std::vector<ParamOccurrence>& occs, int input,
                               double delta) {
    QuantumTape shifted = tape;
    for (const ParamOccurrence& occ : occs) {
        if (occ.ref != input) {
            continue;
        }
        double value = shifted.operations()[occ.op_index].params()[occ.slot].value;
        shifted = shifted.with_operation_param(occ.op_index, occ.slot,
                                               value + occ.scale * delta);
    }
    return shifted;
}

/** Observable with the same eigenbasis whose eigenvalues are squared. */
inline Observable square_observable(const Observable& obs) {
    std::vector<ObsFactor> factors;
    for (const ObsFactor& f : obs.factors()) {
        // Keep the original name so device validity checks still accept it.
        ObservableDef def = *f.def;
        EigvalsFn base = f.def->eigvals_fn;
        def.eigvals_fn = [base](const ParamPack& pack) {
            std::vector<double> ev = base(pack);
            for (double& v : ev) {
                v *= v;
            }
            return ev;
        };
        def.cv_rep_fn = nullptr;
        ObsFactor nf = f;
        nf.def = std::make_shared<const ObservableDef>(std::move(def));
        factors.push_back(std::move(nf));
    }
    return Observable(std::move(factors));
}

/**
 * True when input j may be differentiated by parameter shift: every
 * occurrence supports it, and on the continuous-variable model the shift
 * rule only survives through expectations of first-order observables.
 */
inline bool analytic_eligible(const QuantumTape& tape,
                              const std::vector<ParamOccurrence>& occs, int input) {
    bool seen = false;
    for (const ParamOccurrence& occ : occs) {
        if (occ.ref != input) {
            continue;
        }
        seen = true;
        if (occ.method != GradMethod::Analytic) {
            return false;
        }
    }
    if (!seen) {
        return true; // constant column
    }
    for (const Measurement& m : tape.measurements()) {
        if (!m.observable.is_cv()) {
            continue;
        }
        if (m.kind != MeasurementKind::Expectation ||
            m.observable.cv_rep().order != CVOrder::First) {
            return false;
        }
    }
    return true;
}

} // namespace detail

/**
 * Jacobian of the tape's scalar statistics, shape (measurements x
 * num_inputs). Column j differentiates with respect to flattened input j.
 */
inline RMatrix tape_jacobian(Device& device, const QuantumTape& tape, std::size_t num_inputs,
                             DiffMethod method = DiffMethod::Best, FDOptions fd = {}) {
    if (tape.has_sample()) {
        raise(ErrorKind::NonDifferentiableMeasurement,
              "sample measurements have no Jacobian");
    }

    const std::size_t rows = tape.measurements().size();
    RMatrix jac(rows, num_inputs);

    if (method == DiffMethod::Device || method == DiffMethod::Best) {
        std::optional<RMatrix> dj = device.device_jacobian(tape, num_inputs);
        if (dj) {
            return *dj;
        }
        if (method == DiffMethod::Device) {
            raise(ErrorKind::DeviceJacobianUnsupported,
                  device.descriptor().short_name + " does not provide a Jacobian");
        }
    }

    std::vector<detail::ParamOccurrence> occs = detail::scan_occurrences(tape);

    std::vector<bool> analytic(num_inputs, false);
    if (method == DiffMethod::Best || method == DiffMethod::Analytic) {
        for (std::size_t j = 0; j < num_inputs; ++j) {
            analytic[j] = detail::analytic_eligible(tape, occs, static_cast<int>(j));
            if (!analytic[j] && method == DiffMethod::Analytic) {
                raise(ErrorKind::NotAnalyticallyDifferentiable,
                      "input " + std::to_string(j) +
                          " has no exact parameter-shift rule on this tape");
            }
        }
    }

    bool any_analytic = false, any_fd = false;
    for (std::size_t j = 0; j < num_inputs; ++j) {
        if (analytic[j]) {
            any_analytic = true;
        } else {
            any_fd = true;
        }
    }
    const bool forward_fd = method == DiffMethod::ForwardFD;

    // Analytic columns share companion tapes: one measuring first moments,
    // one measuring second moments (only built when variance rows exist).
    bool has_variance = false;
    for (const Measurement& m : tape.measurements()) {
        has_variance |= m.kind == MeasurementKind::Variance;
    }

    std::vector<double> e_base;
    QuantumTape t_mean = tape;
    QuantumTape t_sq = tape;
    if (any_analytic) {
        if (has_variance) {
            std::vector<Measurement> mean_meas = tape.measurements();
            std::vector<Measurement> sq_meas = tape.measurements();
            for (std::size_t m = 0; m < mean_meas.size(); ++m) {
                if (mean_meas[m].kind == MeasurementKind::Variance) {
                    mean_meas[m].kind = MeasurementKind::Expectation;
                    sq_meas[m].kind = MeasurementKind::Expectation;
                    sq_meas[m].observable = detail::square_observable(sq_meas[m].observable);
                }
            }
            t_mean = tape.with_measurements(std::move(mean_meas));
            t_sq = tape.with_measurements(std::move(sq_meas));
            e_base = detail::execute_scalars(device, t_mean);
        } else {
            e_base = detail::execute_scalars(device, tape);
        }
    }

    std::vector<double> f0;
    if (any_fd && forward_fd) {
        f0 = detail::execute_scalars(device, tape);
    }

    for (std::size_t j = 0; j < num_inputs; ++j) {
        const int input = static_cast<int>(j);
        if (analytic[j]) {
            std::vector<double> de(rows, 0.0), de2(rows, 0.0);
            bool touched = false;
            for (const detail::ParamOccurrence& occ : occs) {
                if (occ.ref != input) {
                    continue;
                }
                touched = true;
                double value = tape.operations()[occ.op_index].params()[occ.slot].value;
                for (const ShiftTerm& term : occ.terms) {
                    double shifted = term.multiplier * value + term.shift;
                    std::vector<double> fm = detail::execute_scalars(
                        device, t_mean.with_operation_param(occ.op_index, occ.slot, shifted));
                    for (std::size_t r = 0; r < rows; ++r) {
                        de[r] += occ.scale * term.coefficient * fm[r];
                    }
                    if (has_variance) {
                        std::vector<double> fs = detail::execute_scalars(
                            device, t_sq.with_operation_param(occ.op_index, occ.slot, shifted));
                        for (std::size_t r = 0; r < rows; ++r) {
                            de2[r] += occ.scale * term.coefficient * fs[r];
                        }
                    }
                }
            }
            if (!touched) {
                continue; // input never reaches this tape; column stays zero
            }
            for (std::size_t r = 0; r < rows; ++r) {
                if (tape.measurements()[r].kind == MeasurementKind::Variance) {
                    jac(r, j) = de2[r] - 2.0 * e_base[r] * de[r];
                } else {
                    jac(r, j) = de[r];
                }
            }
        } else {
            bool touched = false;
            for (const detail::ParamOccurrence& occ : occs) {
                touched |= occ.ref == input;
            }
            if (!touched) {
                continue;
            }
            const double h = fd.step;
            std::vector<double> hi =
                detail::execute_scalars(device, detail::shift_input(tape, occs, input, h));
            std::vector<double> lo =
                forward_fd ? f0
                           : detail::execute_scalars(device,
                                                     detail::shift_input(tape, occs, input, -h));
            const double denom = forward_fd ? h : 2.0 * h;
            for (std::size_t r = 0; r < rows; ++r) {
                jac(r, j) = (hi[r] - lo[r]) / denom;
            }
        }
    }
    return jac;
}

} // namespace qgrad
