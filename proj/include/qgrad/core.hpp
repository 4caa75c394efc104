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
 * @file core.hpp
 * Circuit intermediate representation: operation and observable definitions,
 * bound gate applications, measurements, and the quantum tape they form.
 *
 * A tape is an immutable value. Devices consume tapes; differentiation
 * produces shifted copies of them.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qgrad/errors.hpp"
#include "qgrad/linalg.hpp"

namespace qgrad {

/** Wire index. Wire 0 is the most significant bit of a basis-state index. */
using Wire = std::size_t;

/** Sentinel: the operation accepts any number of wires. */
inline constexpr std::size_t kAnyWires = 0;
/** Sentinel: the operation accepts any number of scalar parameters. */
inline constexpr std::size_t kAnyParams = std::numeric_limits<std::size_t>::max();

enum class ParamDomain {
    Natural, // non-negative integers, stored as reals
    Real,
    Array, // one matrix-valued parameter
    NoParams,
};

enum class GradMethod {
    Analytic,
    FiniteDiff,
    NonDifferentiable,
};

enum class MeasurementKind {
    Expectation,
    Variance,
    Sample,
};

/**
 * One term of a parameter-shift rule. A recipe with terms (c, a, s) states
 * that the partial derivative with respect to a gate parameter mu equals
 * the sum over terms of c * f(a * mu + s), where f re-evaluates the circuit
 * with only that parameter replaced.
 */
struct ShiftTerm {
    double coefficient;
    double multiplier;
    double shift;
};

/** The two-term rule that is exact for generators with two unique eigenvalues. */
inline std::vector<ShiftTerm> default_shift_terms() {
    return {{0.5, 1.0, std::numbers::pi / 2}, {-0.5, 1.0, -std::numbers::pi / 2}};
}

/**
 * Per-parameter shift rules for one operation. A missing entry (nullopt)
 * means the default two-term rule applies to that parameter.
 */
struct GradRecipe {
    std::vector<std::optional<std::vector<ShiftTerm>>> per_param;
};

/**
 * Scalar gate argument. `ref` links the argument to a flattened trainable
 * input of the surrounding function (-1 for constants), and `scale` records
 * the linear factor applied to that input, so derivatives can be chained
 * through decompositions that negate or rescale arguments.
 */
struct Param {
    double value = 0.0;
    int ref = -1;
    double scale = 1.0;

    Param() = default;
    Param(double v) : value(v) {}
    Param(int v) : value(static_cast<double>(v)) {}
    Param(double v, int r, double s = 1.0) : value(v), ref(r), scale(s) {}

    Param operator-() const { return Param(-value, ref, -scale); }
};

/** Scalar parameter values plus the optional matrix payload of a gate. */
struct ParamPack {
    std::vector<double> scalars;
    CMatrix array;
};

class GateApplication;
class Observable;

using MatrixFn = std::function<CMatrix(const ParamPack&)>;
using DecompositionFn =
    std::function<std::vector<GateApplication>(const std::vector<Param>&, const CMatrix&,
                                               const std::vector<Wire>&)>;
/** Local Heisenberg representation of a Gaussian gate on its own modes. */
using HeisenbergFn = std::function<RMatrix(const std::vector<double>&)>;
using GateValidateFn = std::function<void(const ParamPack&, const std::vector<Wire>&)>;

/**
 * Immutable description of an operation type: its arity, parameter domain,
 * differentiability, and the optional capabilities (matrix, decomposition,
 * phase-space action) devices and differentiators query.
 */
struct OperationDef {
    std::string name;
    std::size_t num_params = 0; // kAnyParams for variable
    std::size_t num_wires = 1;  // kAnyWires for variable
    ParamDomain par_domain = ParamDomain::NoParams;
    GradMethod grad_method = GradMethod::NonDifferentiable;
    std::optional<GradRecipe> grad_recipe;
    /** Per-parameter override of grad_method; empty means uniform. */
    std::vector<GradMethod> par_grad_methods;
    MatrixFn matrix_fn;
    DecompositionFn decomposition_fn;
    HeisenbergFn heisenberg_fn;
    GateValidateFn validate_fn;

    bool is_cv() const { return static_cast<bool>(heisenberg_fn); }

    GradMethod param_grad_method(std::size_t index) const {
        if (index < par_grad_methods.size()) {
            return par_grad_methods[index];
        }
        return grad_method;
    }
};

using OperationDefPtr = std::shared_ptr<const OperationDef>;

/**
 * An operation bound to concrete parameters and wires. Construction
 * validates arity, wire uniqueness, and the parameter domain; a bound
 * application is immutable except for shifted copies made via
 * `with_param_value`.
 */
class GateApplication {
  public:
    GateApplication(OperationDefPtr def, std::vector<Param> params, std::vector<Wire> wires)
        : GateApplication(std::move(def), std::move(params), CMatrix(), std::move(wires)) {}

    GateApplication(OperationDefPtr def, std::vector<Param> params, CMatrix array,
                    std::vector<Wire> wires)
        : def_(std::move(def)), params_(std::move(params)), array_(std::move(array)),
          wires_(std::move(wires)) {
        validate();
    }

    const OperationDef& def() const { return *def_; }
    const OperationDefPtr& def_ptr() const { return def_; }
    const std::string& name() const { return def_->name; }
    const std::vector<Param>& params() const { return params_; }
    const CMatrix& array_param() const { return array_; }
    const std::vector<Wire>& wires() const { return wires_; }

    std::vector<double> param_values() const {
        std::vector<double> out;
        out.reserve(params_.size());
        for (const Param& p : params_) {
            out.push_back(p.value);
        }
        return out;
    }

    ParamPack pack() const { return ParamPack{param_values(), array_}; }

    /** Copy with one scalar parameter replaced. Used by shift rules. */
    GateApplication with_param_value(std::size_t index, double value) const {
        GateApplication copy = *this;
        if (index >= copy.params_.size()) {
            raise(ErrorKind::InvalidParameter, "parameter index out of range");
        }
        copy.params_[index].value = value;
        return copy;
    }

  private:
    void validate() const {
        if (!def_) {
            raise(ErrorKind::InvalidParameter, "gate application without a definition");
        }
        const OperationDef& d = *def_;
        if (d.num_wires != kAnyWires && wires_.size() != d.num_wires) {
            raise(ErrorKind::ArityMismatch, d.name + " expects " + std::to_string(d.num_wires) +
                                                " wires, got " + std::to_string(wires_.size()));
        }
        if (wires_.empty()) {
            raise(ErrorKind::ArityMismatch, d.name + " applied to no wires");
        }
        std::set<Wire> unique(wires_.begin(), wires_.end());
        if (unique.size() != wires_.size()) {
            raise(ErrorKind::OverlappingWires, d.name + " applied to repeated wires");
        }
        switch (d.par_domain) {
        case ParamDomain::NoParams:
            if (!params_.empty() || array_.rows() != 0) {
                raise(ErrorKind::ArityMismatch, d.name + " takes no parameters");
            }
            break;
        case ParamDomain::Real:
        case ParamDomain::Natural:
            if (array_.rows() != 0) {
                raise(ErrorKind::ArityMismatch, d.name + " does not take a matrix parameter");
            }
            if (d.num_params != kAnyParams && params_.size() != d.num_params) {
                raise(ErrorKind::ArityMismatch,
                      d.name + " expects " + std::to_string(d.num_params) + " parameters, got " +
                          std::to_string(params_.size()));
            }
            if (d.par_domain == ParamDomain::Natural) {
                for (const Param& p : params_) {
                    double rounded = std::round(p.value);
                    if (p.value < -1e-9 || std::abs(p.value - rounded) > 1e-9) {
                        raise(ErrorKind::InvalidParameter,
                              d.name + " expects non-negative integer parameters");
                    }
                }
            }
            break;
        case ParamDomain::Array:
            if (!params_.empty()) {
                raise(ErrorKind::ArityMismatch, d.name + " takes only a matrix parameter");
            }
            if (array_.rows() == 0) {
                raise(ErrorKind::ArityMismatch, d.name + " requires a matrix parameter");
            }
            break;
        }
        if (d.validate_fn) {
            d.validate_fn(pack(), wires_);
        }
    }

    OperationDefPtr def_;
    std::vector<Param> params_;
    CMatrix array_;
    std::vector<Wire> wires_;
};

/** Order of a continuous-variable observable in the quadrature operators. */
enum class CVOrder {
    First,
    Second,
};

/**
 * Polynomial representation of a CV observable over the operator basis
 * (identity, x_0, p_0, x_1, p_1, ...) restricted to the observable's modes.
 * First order: expval = vec . (1, x, p, ...). Second order: expval is the
 * expectation of r^T mat r with r the same basis vector.
 */
struct CVObservableRep {
    CVOrder order = CVOrder::First;
    std::vector<double> vec; // length 1 + 2k
    RMatrix mat;             // (1 + 2k) x (1 + 2k), symmetric
};

struct ObservableDef;
using ObservableDefPtr = std::shared_ptr<const ObservableDef>;

using EigvalsFn = std::function<std::vector<double>(const ParamPack&)>;
using DiagonalizeFn =
    std::function<std::vector<GateApplication>(const ParamPack&, const std::vector<Wire>&)>;
using CVRepFn = std::function<CVObservableRep(const ParamPack&)>;

/**
 * Immutable description of an observable type. Qubit observables provide an
 * eigenvalue table plus gates that rotate their eigenbasis onto the
 * computational basis; CV observables provide a quadrature-polynomial
 * representation instead.
 */
struct ObservableDef {
    std::string name;
    std::size_t num_params = 0;
    std::size_t num_wires = 1; // kAnyWires for matrix-sized observables
    ParamDomain par_domain = ParamDomain::NoParams;
    EigvalsFn eigvals_fn;
    DiagonalizeFn diagonalizing_fn;
    MatrixFn matrix_fn;
    CVRepFn cv_rep_fn;
    GateValidateFn validate_fn;

    bool is_cv() const { return static_cast<bool>(cv_rep_fn); }
};

/** One factor of a (possibly tensor-product) observable, bound to wires. */
struct ObsFactor {
    ObservableDefPtr def;
    std::vector<double> params;
    CMatrix array;
    std::vector<Wire> wires;

    ParamPack pack() const { return ParamPack{params, array}; }
};

/**
 * A bound observable: one factor, or a tensor product of factors on
 * disjoint wires. Eigenvalues of a product are the Kronecker product of the
 * factor eigenvalues, indexed by the factor wire order.
 */
class Observable {
  public:
    Observable() = default;

    Observable(ObservableDefPtr def, std::vector<double> params, CMatrix array,
               std::vector<Wire> wires) {
        ObsFactor f{std::move(def), std::move(params), std::move(array), std::move(wires)};
        validate_factor(f);
        factors_.push_back(std::move(f));
    }

    explicit Observable(std::vector<ObsFactor> factors) : factors_(std::move(factors)) {
        if (factors_.empty()) {
            raise(ErrorKind::InvalidParameter, "observable with no factors");
        }
        for (const ObsFactor& f : factors_) {
            validate_factor(f);
        }
        check_disjoint();
    }

    const std::vector<ObsFactor>& factors() const { return factors_; }
    bool is_tensor() const { return factors_.size() > 1; }
    bool is_cv() const { return factors_.size() == 1 && factors_[0].def->is_cv(); }

    std::string name() const {
        std::string out;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (i > 0) {
                out += " x ";
            }
            out += factors_[i].def->name;
        }
        return out;
    }

    /** All wires the observable acts on, factor order preserved. */
    std::vector<Wire> wires() const {
        std::vector<Wire> out;
        for (const ObsFactor& f : factors_) {
            out.insert(out.end(), f.wires.begin(), f.wires.end());
        }
        return out;
    }

    /**
     * Eigenvalue table indexed by the joint computational-basis outcome of
     * `wires()`, first listed wire most significant.
     */
    std::vector<double> eigvals() const {
        std::vector<double> table{1.0};
        for (const ObsFactor& f : factors_) {
            if (!f.def->eigvals_fn) {
                raise(ErrorKind::InvalidParameter,
                      f.def->name + " has no eigenvalue table");
            }
            std::vector<double> part = f.def->eigvals_fn(f.pack());
            std::vector<double> next;
            next.reserve(table.size() * part.size());
            for (double t : table) {
                for (double p : part) {
                    next.push_back(t * p);
                }
            }
            table = std::move(next);
        }
        return table;
    }

    /** Gates that map the observable eigenbasis onto the computational basis. */
    std::vector<GateApplication> diagonalizing_gates() const {
        std::vector<GateApplication> gates;
        for (const ObsFactor& f : factors_) {
            if (!f.def->diagonalizing_fn) {
                continue;
            }
            std::vector<GateApplication> part = f.def->diagonalizing_fn(f.pack(), f.wires);
            gates.insert(gates.end(), part.begin(), part.end());
        }
        return gates;
    }

    /** Dense matrix of the observable on `wires()`, Kronecker factor order. */
    CMatrix matrix() const {
        CMatrix acc;
        for (const ObsFactor& f : factors_) {
            if (!f.def->matrix_fn) {
                raise(ErrorKind::NoMatrixAvailable, f.def->name + " has no matrix");
            }
            CMatrix part = f.def->matrix_fn(f.pack());
            acc = acc.rows() == 0 ? part : kron(acc, part);
        }
        return acc;
    }

    /** Quadrature-polynomial representation; single CV factors only. */
    CVObservableRep cv_rep() const {
        if (factors_.size() != 1 || !factors_[0].def->cv_rep_fn) {
            raise(ErrorKind::NotGaussian, name() + " has no quadrature representation");
        }
        return factors_[0].def->cv_rep_fn(factors_[0].pack());
    }

  private:
    static void validate_factor(const ObsFactor& f) {
        if (!f.def) {
            raise(ErrorKind::InvalidParameter, "observable without a definition");
        }
        const ObservableDef& d = *f.def;
        if (d.num_wires != kAnyWires && f.wires.size() != d.num_wires) {
            raise(ErrorKind::ArityMismatch, d.name + " expects " + std::to_string(d.num_wires) +
                                                " wires, got " + std::to_string(f.wires.size()));
        }
        if (f.wires.empty()) {
            raise(ErrorKind::ArityMismatch, d.name + " measured on no wires");
        }
        std::set<Wire> unique(f.wires.begin(), f.wires.end());
        if (unique.size() != f.wires.size()) {
            raise(ErrorKind::OverlappingWires, d.name + " measured on repeated wires");
        }
        if (d.par_domain == ParamDomain::Array) {
            if (f.array.rows() == 0) {
                raise(ErrorKind::ArityMismatch, d.name + " requires a matrix parameter");
            }
        } else if (d.num_params != kAnyParams && f.params.size() != d.num_params) {
            raise(ErrorKind::ArityMismatch, d.name + " expects " + std::to_string(d.num_params) +
                                                " parameters, got " +
                                                std::to_string(f.params.size()));
        }
        if (d.validate_fn) {
            d.validate_fn(f.pack(), f.wires);
        }
    }

    void check_disjoint() const {
        std::set<Wire> seen;
        for (const ObsFactor& f : factors_) {
            if (f.def->is_cv() && factors_.size() > 1) {
                raise(ErrorKind::InvalidParameter,
                      "tensor products of quadrature observables are not supported");
            }
            for (Wire w : f.wires) {
                if (!seen.insert(w).second) {
                    raise(ErrorKind::OverlappingWires,
                          "tensor factors act on overlapping wires");
                }
            }
        }
    }

    std::vector<ObsFactor> factors_;
};

/** Tensor product of observables on disjoint wires. */
inline Observable tensor_observable(const std::vector<Observable>& parts) {
    std::vector<ObsFactor> factors;
    for (const Observable& p : parts) {
        factors.insert(factors.end(), p.factors().begin(), p.factors().end());
    }
    return Observable(std::move(factors));
}

/** A statistic to extract after circuit execution. */
struct Measurement {
    MeasurementKind kind = MeasurementKind::Expectation;
    Observable observable;
};

/**
 * Immutable record of one circuit: the operation sequence, the terminal
 * measurements, and the wire count that bounds every index.
 */
class QuantumTape {
  public:
    QuantumTape() : num_wires_(0) {}

    QuantumTape(std::vector<GateApplication> operations, std::vector<Measurement> measurements,
                std::size_t num_wires)
        : operations_(std::move(operations)), measurements_(std::move(measurements)),
          num_wires_(num_wires) {}

    const std::vector<GateApplication>& operations() const { return operations_; }
    const std::vector<Measurement>& measurements() const { return measurements_; }
    std::size_t num_wires() const { return num_wires_; }

    bool has_sample() const {
        for (const Measurement& m : measurements_) {
            if (m.kind == MeasurementKind::Sample) {
                return true;
            }
        }
        return false;
    }

    /** Copy with operation `op_index`'s scalar parameter `slot` replaced. */
    QuantumTape with_operation_param(std::size_t op_index, std::size_t slot, double value) const {
        QuantumTape copy = *this;
        if (op_index >= copy.operations_.size()) {
            raise(ErrorKind::InvalidParameter, "operation index out of range");
        }
        copy.operations_[op_index] = copy.operations_[op_index].with_param_value(slot, value);
        return copy;
    }

    /** Copy with the measurement list replaced; operations are shared. */
    QuantumTape with_measurements(std::vector<Measurement> measurements) const {
        return QuantumTape(operations_, std::move(measurements), num_wires_);
    }

  private:
    std::vector<GateApplication> operations_;
    std::vector<Measurement> measurements_;
    std::size_t num_wires_;
};

/**
 * Validates and assembles a tape. Checks that every wire index is inside
 * [0, num_wires) and that measurement wire sets are pairwise disjoint, so
 * all statistics can be read from one terminal basis measurement.
 */
inline QuantumTape build_tape(std::vector<GateApplication> operations,
                              std::vector<Measurement> measurements, std::size_t num_wires) {
    auto check_wires = [&](const std::vector<Wire>& wires, const std::string& what) {
        for (Wire w : wires) {
            if (w >= num_wires) {
                raise(ErrorKind::WireOutOfRange, what + " uses wire " + std::to_string(w) +
                                                     " on a " + std::to_string(num_wires) +
                                                     "-wire circuit");
            }
        }
    };
    for (const GateApplication& op : operations) {
        check_wires(op.wires(), op.name());
    }
    std::set<Wire> measured;
    for (const Measurement& m : measurements) {
        std::vector<Wire> wires = m.observable.wires();
        check_wires(wires, m.observable.name());
        for (Wire w : wires) {
            if (!measured.insert(w).second) {
                raise(ErrorKind::OverlappingMeasurementWires,
                      "measurements share wire " + std::to_string(w));
            }
        }
    }
    return QuantumTape(std::move(operations), std::move(measurements), num_wires);
}

/** Dense matrix of a bound gate. */
inline CMatrix gate_matrix(const GateApplication& gate) {
    if (!gate.def().matrix_fn) {
        raise(ErrorKind::NoMatrixAvailable, gate.name() + " has no matrix form");
    }
    return gate.def().matrix_fn(gate.pack());
}

/** Decomposition of a bound gate into more elementary gates. */
inline std::vector<GateApplication> decompose(const GateApplication& gate) {
    if (!gate.def().decomposition_fn) {
        raise(ErrorKind::NoDecompositionAvailable, gate.name() + " has no decomposition");
    }
    return gate.def().decomposition_fn(gate.params(), gate.array_param(), gate.wires());
}

/** Diagonalizing gates of a bound observable. */
inline std::vector<GateApplication> diagonalizing_gates(const Observable& obs) {
    return obs.diagonalizing_gates();
}

/**
 * Rewrites a tape so every operation name is in `supported`, expanding
 * unsupported operations through their decompositions recursively.
 */
inline QuantumTape expand_tape(const QuantumTape& tape, const std::set<std::string>& supported) {
    std::vector<GateApplication> out;
    std::function<void(const GateApplication&, int)> expand = [&](const GateApplication& op,
                                                                  int depth) {
        if (supported.count(op.name())) {
            out.push_back(op);
            return;
        }
        if (!op.def().decomposition_fn || depth > 16) {
            raise(ErrorKind::UnsupportedOperation,
                  op.name() + " is not supported and has no usable decomposition");
        }
        for (const GateApplication& sub : decompose(op)) {
            expand(sub, depth + 1);
        }
    };
    for (const GateApplication& op : tape.operations()) {
        expand(op, 0);
    }
    return QuantumTape(std::move(out), tape.measurements(), tape.num_wires());
}

} // namespace qgrad
