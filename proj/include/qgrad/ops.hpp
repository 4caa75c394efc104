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
 * @file ops.hpp
 * Built-in qubit and continuous-variable operation and observable
 * definitions, plus the registry that custom definitions plug into.
 *
 * Conventions pinned here:
 *   RX(t) = exp(-i t X / 2), likewise RY and RZ.
 *   Rot(a, b, c) = RZ(c) RY(b) RZ(a).
 *   PhaseShift(p) = diag(1, exp(i p)).
 *   Global phase is not tracked.
 *   CV quadratures use hbar = 2 (x = a + a^dag, vacuum covariance = I).
 */

#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "qgrad/core.hpp"

namespace qgrad {

namespace detail {

inline CMatrix mat_hadamard() {
    const double s = 1.0 / std::numbers::sqrt2;
    return CMatrix{{s, s}, {s, -s}};
}

inline CMatrix mat_pauli_x() { return CMatrix{{0, 1}, {1, 0}}; }
inline CMatrix mat_pauli_y() {
    return CMatrix{{0, Complex(0, -1)}, {Complex(0, 1), 0}};
}
inline CMatrix mat_pauli_z() { return CMatrix{{1, 0}, {0, -1}}; }
inline CMatrix mat_s() { return CMatrix{{1, 0}, {0, Complex(0, 1)}}; }
inline CMatrix mat_t() {
    return CMatrix{{1, 0}, {0, std::polar(1.0, std::numbers::pi / 4)}};
}

inline CMatrix mat_rx(double t) {
    double c = std::cos(t / 2), s = std::sin(t / 2);
    return CMatrix{{c, Complex(0, -s)}, {Complex(0, -s), c}};
}

inline CMatrix mat_ry(double t) {
    double c = std::cos(t / 2), s = std::sin(t / 2);
    return CMatrix{{c, -s}, {s, c}};
}

inline CMatrix mat_rz(double t) {
    return CMatrix{{std::polar(1.0, -t / 2), 0}, {0, std::polar(1.0, t / 2)}};
}

inline CMatrix mat_phase_shift(double p) {
    return CMatrix{{1, 0}, {0, std::polar(1.0, p)}};
}

inline CMatrix mat_rot(double a, double b, double c) {
    return matmul(mat_rz(c), matmul(mat_ry(b), mat_rz(a)));
}

inline CMatrix mat_cnot() {
    return CMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
}

inline CMatrix mat_cz() {
    return CMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}};
}

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline void require_gate_matrix(const CMatrix& m, std::size_t wires, const std::string& name) {
    std::size_t dim = std::size_t{1} << wires;
    if (!m.square() || m.rows() != dim) {
        raise(ErrorKind::ArityMismatch, name + " matrix must be " + std::to_string(dim) + "x" +
                                            std::to_string(dim) + " for " +
                                            std::to_string(wires) + " wires");
    }
    if (!is_unitary(m, 1e-8)) {
        raise(ErrorKind::InvalidParameter, name + " matrix is not unitary");
    }
}

// Phase-space transformation blocks, basis (1, x_0, p_0[, x_1, p_1]).

inline RMatrix heis_displacement(double r, double phi) {
    RMatrix m = RMatrix::identity(3);
    m(1, 0) = 2.0 * r * std::cos(phi);
    m(2, 0) = 2.0 * r * std::sin(phi);
    return m;
}

inline RMatrix heis_rotation(double t) {
    RMatrix m = RMatrix::identity(3);
    m(1, 1) = std::cos(t);
    m(1, 2) = -std::sin(t);
    m(2, 1) = std::sin(t);
    m(2, 2) = std::cos(t);
    return m;
}

inline RMatrix heis_squeezing(double r, double phi) {
    double ch = std::cosh(r), sh = std::sinh(r);
    double cp = std::cos(phi), sp = std::sin(phi);
    RMatrix m = RMatrix::identity(3);
    m(1, 1) = ch - cp * sh;
    m(1, 2) = -sp * sh;
    m(2, 1) = -sp * sh;
    m(2, 2) = ch + cp * sh;
    return m;
}

inline RMatrix heis_quadratic_phase(double s) {
    RMatrix m = RMatrix::identity(3);
    m(2, 1) = s;
    return m;
}

inline RMatrix heis_beamsplitter(double t, double phi) {
    double ct = std::cos(t), st = std::sin(t);
    double cp = std::cos(phi), sp = std::sin(phi);
    RMatrix m = RMatrix::identity(5);
    m(1, 1) = ct;
    m(1, 3) = -st * cp;
    m(1, 4) = -st * sp;
    m(2, 2) = ct;
    m(2, 3) = st * sp;
    m(2, 4) = -st * cp;
    m(3, 1) = st * cp;
    m(3, 2) = -st * sp;
    m(3, 3) = ct;
    m(4, 1) = st * sp;
    m(4, 2) = st * cp;
    m(4, 4) = ct;
    return m;
}

inline RMatrix heis_two_mode_squeezing(double r, double phi) {
    double ch = std::cosh(r), sh = std::sinh(r);
    double cp = std::cos(phi), sp = std::sin(phi);
    RMatrix m = RMatrix::identity(5);
    m(1, 1) = ch;
    m(1, 3) = sh * cp;
    m(1, 4) = sh * sp;
    m(2, 2) = ch;
    m(2, 3) = sh * sp;
    m(2, 4) = -sh * cp;
    m(3, 1) = sh * cp;
    m(3, 2) = sh * sp;
    m(3, 3) = ch;
    m(4, 1) = sh * sp;
    m(4, 2) = -sh * cp;
    m(4, 4) = ch;
    return m;
}

/** Shift rule that is exact for expectations linear in the parameter. */
inline std::vector<ShiftTerm> linear_shift_terms(double s) {
    return {{0.5 / s, 1.0, s}, {-0.5 / s, 1.0, -s}};
}

/** Shift rule that is exact for expectations linear in exp(+-r). */
inline std::vector<ShiftTerm> sinh_shift_terms(double s) {
    double c = 0.5 / std::sinh(s);
    return {{c, 1.0, s}, {-c, 1.0, -s}};
}

} // namespace detail

/**
 * Process-wide registry of operation and observable definitions. Built-in
 * definitions are installed on first use and cannot be replaced; custom
 * definitions may be re-registered freely (latest wins).
 */
class OpRegistry {
  public:
    static OpRegistry& instance() {
        static OpRegistry registry;
        return registry;
    }

    OperationDefPtr operation(const std::string& name) const {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = ops_.find(name);
        if (it == ops_.end()) {
            raise(ErrorKind::UnknownOperation, "no operation named " + name);
        }
        return it->second;
    }

    ObservableDefPtr observable(const std::string& name) const {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = obs_.find(name);
        if (it == obs_.end()) {
            raise(ErrorKind::UnknownObservable, "no observable named " + name);
        }
        return it->second;
    }

    bool has_operation(const std::string& name) const {
        std::lock_guard<std::mutex> lock(mutex_);
        return ops_.count(name) > 0;
    }

    bool has_observable(const std::string& name) const {
        std::lock_guard<std::mutex> lock(mutex_);
        return obs_.count(name) > 0;
    }

    OperationDefPtr register_operation(OperationDef def) {
        std::lock_guard<std::mutex> lock(mutex_);
        if (builtin_ops_.count(def.name)) {
            raise(ErrorKind::InvalidParameter,
                  "cannot replace built-in operation " + def.name);
        }
        auto ptr = std::make_shared<const OperationDef>(std::move(def));
        ops_[ptr->name] = ptr;
        return ptr;
    }

    ObservableDefPtr register_observable(ObservableDef def) {
        std::lock_guard<std::mutex> lock(mutex_);
        if (builtin_obs_.count(def.name)) {
            raise(ErrorKind::InvalidParameter,
                  "cannot replace built-in observable " + def.name);
        }
        auto ptr = std::make_shared<const ObservableDef>(std::move(def));
        obs_[ptr->name] = ptr;
        return ptr;
    }

    std::vector<std::string> operation_names() const {
        std::lock_guard<std::mutex> lock(mutex_);
        std::vector<std::string> out;
        for (const auto& [name, def] : ops_) {
            out.push_back(name);
        }
        return out;
    }

  private:
    OpRegistry() {
        install_qubit_gates();
        install_cv_gates();
        install_observables();
        for (const auto& [name, def] : ops_) {
            builtin_ops_.insert(name);
        }
        for (const auto& [name, def] : obs_) {
            builtin_obs_.insert(name);
        }
    }

    void add_op(OperationDef def) {
        std::string key = def.name;
        ops_[key] = std::make_shared<const OperationDef>(std::move(def));
    }

    void add_obs(ObservableDef def) {
        std::string key = def.name;
        obs_[key] = std::make_shared<const ObservableDef>(std::move(def));
    }

    void install_qubit_gates() {
        auto fixed = [&](const std::string& name, std::size_t wires, CMatrix matrix) {
            OperationDef def;
            def.name = name;
            def.num_params = 0;
            def.num_wires = wires;
            def.par_domain = ParamDomain::NoParams;
            def.grad_method = GradMethod::NonDifferentiable;
            def.matrix_fn = [matrix](const ParamPack&) { return matrix; };
            add_op(std::move(def));
        };
        fixed("Hadamard", 1, detail::mat_hadamard());
        fixed("PauliX", 1, detail::mat_pauli_x());
        fixed("PauliY", 1, detail::mat_pauli_y());
        fixed("PauliZ", 1, detail::mat_pauli_z());
        fixed("S", 1, detail::mat_s());
        fixed("T", 1, detail::mat_t());
        fixed("CNOT", 2, detail::mat_cnot());
        fixed("CZ", 2, detail::mat_cz());

        auto rotation = [&](const std::string& name, std::size_t nparams, MatrixFn matrix_fn) {
            OperationDef def;
            def.name = name;
            def.num_params = nparams;
            def.num_wires = 1;
            def.par_domain = ParamDomain::Real;
            def.grad_method = GradMethod::Analytic;
            def.matrix_fn = std::move(matrix_fn);
            add_op(std::move(def));
        };
        rotation("RX", 1, [](const ParamPack& p) { return detail::mat_rx(p.scalars[0]); });
        rotation("RY", 1, [](const ParamPack& p) { return detail::mat_ry(p.scalars[0]); });
        rotation("RZ", 1, [](const ParamPack& p) { return detail::mat_rz(p.scalars[0]); });
        rotation("PhaseShift", 1,
                 [](const ParamPack& p) { return detail::mat_phase_shift(p.scalars[0]); });

        {
            OperationDef def;
            def.name = "Rot";
            def.num_params = 3;
            def.num_wires = 1;
            def.par_domain = ParamDomain::Real;
            def.grad_method = GradMethod::Analytic;
            def.matrix_fn = [](const ParamPack& p) {
                return detail::mat_rot(p.scalars[0], p.scalars[1], p.scalars[2]);
            };
            def.decomposition_fn = [](const std::vector<Param>& params, const CMatrix&,
                                      const std::vector<Wire>& wires) {
                OpRegistry& reg = OpRegistry::instance();
                return std::vector<GateApplication>{
                    GateApplication(reg.operation("RZ"), {params[0]}, wires),
                    GateApplication(reg.operation("RY"), {params[1]}, wires),
                    GateApplication(reg.operation("RZ"), {params[2]}, wires),
                };
            };
            add_op(std::move(def));
        }

        {
            OperationDef def;
            def.name = "BasisState";
            def.num_params = kAnyParams;
            def.num_wires = kAnyWires;
            def.par_domain = ParamDomain::Natural;
            def.grad_method = GradMethod::NonDifferentiable;
            def.validate_fn = [](const ParamPack& p, const std::vector<Wire>& wires) {
                if (p.scalars.size() != wires.size()) {
                    raise(ErrorKind::ArityMismatch,
                          "BasisState needs one bit per wire");
                }
                for (double b : p.scalars) {
                    if (b != 0.0 && b != 1.0) {
                        raise(ErrorKind::InvalidParameter, "BasisState bits must be 0 or 1");
                    }
                }
            };
            add_op(std::move(def));
        }

        {
            OperationDef def;
            def.name = "QubitUnitary";
            def.num_params = 0;
            def.num_wires = kAnyWires;
            def.par_domain = ParamDomain::Array;
            def.grad_method = GradMethod::FiniteDiff;
            def.matrix_fn = [](const ParamPack& p) { return p.array; };
            def.validate_fn = [](const ParamPack& p, const std::vector<Wire>& wires) {
                detail::require_gate_matrix(p.array, wires.size(), "QubitUnitary");
            };
            add_op(std::move(def));
        }
    }

    void install_cv_gates() {
        // Parameters marked FiniteDiff have no exact two-evaluation rule for
        // general Gaussian expectations; they are differentiated numerically.
        {
            OperationDef def;
            def.name = "Displacement";
            def.num_params = 2;
            def.num_wires = 1;
            def.par_domain = ParamDomain::Real;
            def.grad_method = GradMethod::Analytic;
            def.par_grad_methods = {GradMethod::Analytic, GradMethod::FiniteDiff};
            GradRecipe recipe;
            recipe.per_param = {detail::linear_shift_terms(0.1), std::nullopt};
            def.grad_recipe = std::move(recipe);
            def.heisenberg_fn = [](const std::vector<double>& p) {
                return detail::heis_displacement(p[0], p[1]);
            };
            add_op(std::move(def));
        }
        {
            OperationDef def;
            def.name = "Rotation";
            def.num_params = 1;
            def.num_wires = 1;
            def.par_domain = ParamDomain::Real;
            def.grad_method = GradMethod::Analytic;
            def.heisenberg_fn = [](const std::vector<double>& p) {
                return detail::heis_rotation(p[0]);
            };
            add_op(std::move(def));
        }
        {
            OperationDef def;
            def.name = "Squeezing";
            def.num_params = 2;
            def.num_wires = 1;
            def.par_domain = ParamDomain::Real;
            def.grad_method = GradMethod::Analytic;
            def.par_grad_methods = {GradMethod::Analytic, GradMethod::FiniteDiff};
            GradRecipe recipe;
            recipe.per_param = {detail::sinh_shift_terms(0.1), std::nullopt};
            def.grad_recipe = std::move(recipe);
            def.heisenberg_fn = [](const std::vector<double>& p) {
                return detail::heis_squeezing(p[0], p[1]);
            };
            add_op(std::move(def));
        }
        {
            OperationDef def;
            def.name = "Beamsplitter";
            def.num_params = 2;
            def.num_wires = 2;
            def.par_domain = ParamDomain::Real;
            def.grad_method = GradMethod::Analytic;
            def.par_grad_methods = {GradMethod::Analytic, GradMethod::FiniteDiff};
            def.heisenberg_fn = [](const std::vector<double>& p) {
                return detail::heis_beamsplitter(p[0], p[1]);
            };
            add_op(std::move(def));
        }
        {
            OperationDef def;
            def.name = "TwoModeSqueezing";
            def.num_params = 2;
            def.num_wires = 2;
            def.par_domain = ParamDomain::Real;
            def.grad_method = GradMethod::FiniteDiff;
            def.heisenberg_fn = [](const std::vector<double>& p) {
                return detail::heis_two_mode_squeezing(p[0], p[1]);
            };
            add_op(std::move(def));
        }
        {
            OperationDef def;
            def.name = "QuadraticPhase";
            def.num_params = 1;
            def.num_wires = 1;
            def.par_domain = ParamDomain::Real;
            def.grad_method = GradMethod::FiniteDiff;
            def.heisenberg_fn = [](const std::vector<double>& p) {
                return detail::heis_quadratic_phase(p[0]);
            };
            add_op(std::move(def));
        }
    }

    void install_observables() {
        auto simple = [&](const std::string& name, CMatrix matrix,
                          std::vector<double> eigvals,
                          std::function<std::vector<GateApplication>(const std::vector<Wire>&)>
                              diag) {
            ObservableDef def;
            def.name = name;
            def.num_params = 0;
            def.num_wires = 1;
            def.par_domain = ParamDomain::NoParams;
            def.matrix_fn = [matrix](const ParamPack&) { return matrix; };
            def.eigvals_fn = [eigvals](const ParamPack&) { return eigvals; };
            if (diag) {
                def.diagonalizing_fn = [diag](const ParamPack&, const std::vector<Wire>& wires) {
                    return diag(wires);
                };
            }
            add_obs(std::move(def));
        };

        simple("PauliZ", detail::mat_pauli_z(), {1.0, -1.0}, nullptr);
        {
            ObservableDef def;
            def.name = "Identity";
            def.num_params = 0;
            def.num_wires = 1;
            def.par_domain = ParamDomain::NoParams;
            def.matrix_fn = [](const ParamPack&) { return CMatrix::identity(2); };
            def.eigvals_fn = [](const ParamPack&) { return std::vector<double>{1.0, 1.0}; };
            // Constant observable on either model: value 1, zero variance.
            def.cv_rep_fn = [](const ParamPack&) {
                return CVObservableRep{CVOrder::First, {1.0, 0.0, 0.0}, RMatrix()};
            };
            add_obs(std::move(def));
        }
        simple("PauliX", detail::mat_pauli_x(), {1.0, -1.0}, [](const std::vector<Wire>& wires) {
            OpRegistry& reg = OpRegistry::instance();
            return std::vector<GateApplication>{
                GateApplication(reg.operation("Hadamard"), {}, wires)};
        });
        {
            ObservableDef def;
            def.name = "PauliY";
            def.num_wires = 1;
            def.par_domain = ParamDomain::NoParams;
            def.matrix_fn = [](const ParamPack&) { return detail::mat_pauli_y(); };
            def.eigvals_fn = [](const ParamPack&) { return std::vector<double>{1.0, -1.0}; };
            def.diagonalizing_fn = [](const ParamPack&, const std::vector<Wire>& wires) {
                OpRegistry& reg = OpRegistry::instance();
                return std::vector<GateApplication>{
                    GateApplication(reg.operation("PauliZ"), {}, wires),
                    GateApplication(reg.operation("S"), {}, wires),
                    GateApplication(reg.operation("Hadamard"), {}, wires)};
            };
            add_obs(std::move(def));
        }
        {
            ObservableDef def;
            def.name = "Hadamard";
            def.num_wires = 1;
            def.par_domain = ParamDomain::NoParams;
            def.matrix_fn = [](const ParamPack&) { return detail::mat_hadamard(); };
            def.eigvals_fn = [](const ParamPack&) { return std::vector<double>{1.0, -1.0}; };
            def.diagonalizing_fn = [](const ParamPack&, const std::vector<Wire>& wires) {
                OpRegistry& reg = OpRegistry::instance();
                return std::vector<GateApplication>{GateApplication(
                    reg.operation("RY"), {Param(-std::numbers::pi / 4)}, wires)};
            };
            add_obs(std::move(def));
        }
        {
            ObservableDef def;
            def.name = "Hermitian";
            def.num_params = 0;
            def.num_wires = kAnyWires;
            def.par_domain = ParamDomain::Array;
            def.matrix_fn = [](const ParamPack& p) { return p.array; };
            def.eigvals_fn = [](const ParamPack& p) {
                return hermitian_eigensystem(p.array).eigenvalues;
            };
            def.diagonalizing_fn = [](const ParamPack& p, const std::vector<Wire>& wires) {
                // Columns of V are eigenvectors; applying V^dag maps the
                // eigenbasis onto the computational basis in eigenvalue order.
                CMatrix v = hermitian_eigensystem(p.array).eigenvectors;
                OpRegistry& reg = OpRegistry::instance();
                return std::vector<GateApplication>{
                    GateApplication(reg.operation("QubitUnitary"), {}, adjoint(v), wires)};
            };
            def.validate_fn = [](const ParamPack& p, const std::vector<Wire>& wires) {
                std::size_t dim = std::size_t{1} << wires.size();
                if (!p.array.square() || p.array.rows() != dim) {
                    raise(ErrorKind::ArityMismatch,
                          "Hermitian matrix size does not match wire count");
                }
                if (!is_hermitian(p.array, 1e-8)) {
                    raise(ErrorKind::InvalidParameter, "Hermitian matrix is not Hermitian");
                }
            };
            add_obs(std::move(def));
        }

        // Continuous-variable observables, local basis (1, x, p).
        auto first_order = [&](const std::string& name, std::size_t nparams, CVRepFn rep) {
            ObservableDef def;
            def.name = name;
            def.num_params = nparams;
            def.num_wires = 1;
            def.par_domain = nparams == 0 ? ParamDomain::NoParams : ParamDomain::Real;
            def.cv_rep_fn = std::move(rep);
            add_obs(std::move(def));
        };
        first_order("X", 0, [](const ParamPack&) {
            return CVObservableRep{CVOrder::First, {0.0, 1.0, 0.0}, RMatrix()};
        });
        first_order("P", 0, [](const ParamPack&) {
            return CVObservableRep{CVOrder::First, {0.0, 0.0, 1.0}, RMatrix()};
        });
        first_order("QuadOperator", 1, [](const ParamPack& p) {
            return CVObservableRep{
                CVOrder::First, {0.0, std::cos(p.scalars[0]), std::sin(p.scalars[0])}, RMatrix()};
        });
        {
            ObservableDef def;
            def.name = "NumberOperator";
            def.num_wires = 1;
            def.par_domain = ParamDomain::NoParams;
            def.cv_rep_fn = [](const ParamPack&) {
                // n = (x^2 + p^2 - 2) / 4 under hbar = 2.
                RMatrix m(3, 3);
                m(0, 0) = -0.5;
                m(1, 1) = 0.25;
                m(2, 2) = 0.25;
                return CVObservableRep{CVOrder::Second, {}, m};
            };
            add_obs(std::move(def));
        }
        {
            ObservableDef def;
            def.name = "PolyXP";
            def.num_wires = kAnyWires;
            def.par_domain = ParamDomain::Array;
            def.cv_rep_fn = [](const ParamPack& p) {
                std::size_t n = p.array.rows();
                RMatrix m(n, n);
                for (std::size_t i = 0; i < n; ++i) {
                    for (std::size_t j = 0; j < n; ++j) {
                        m(i, j) = p.array(i, j).real();
                    }
                }
                return CVObservableRep{CVOrder::Second, {}, m};
            };
            def.validate_fn = [](const ParamPack& p, const std::vector<Wire>& wires) {
                std::size_t dim = 1 + 2 * wires.size();
                if (!p.array.square() || p.array.rows() != dim) {
                    raise(ErrorKind::ArityMismatch,
                          "PolyXP matrix must be (1 + 2 modes) square");
                }
                for (std::size_t i = 0; i < dim; ++i) {
                    for (std::size_t j = 0; j < dim; ++j) {
                        if (std::abs(p.array(i, j).imag()) > 1e-12 ||
                            std::abs(p.array(i, j) - p.array(j, i)) > 1e-9) {
                            raise(ErrorKind::InvalidParameter,
                                  "PolyXP matrix must be real symmetric");
                        }
                    }
                }
            };
            add_obs(std::move(def));
        }
    }

    mutable std::mutex mutex_;
    std::map<std::string, OperationDefPtr> ops_;
    std::map<std::string, ObservableDefPtr> obs_;
    std::set<std::string> builtin_ops_;
    std::set<std::string> builtin_obs_;
};

/** Binds a registered operation to parameters and wires. */
inline GateApplication gate(const std::string& name, std::vector<Param> params,
                            std::vector<Wire> wires) {
    return GateApplication(OpRegistry::instance().operation(name), std::move(params),
                           std::move(wires));
}

/** Binds a parameterless registered operation to wires. */
inline GateApplication gate(const std::string& name, std::vector<Wire> wires) {
    return gate(name, {}, std::move(wires));
}

/** Computational-basis state preparation from a bit string. */
inline GateApplication basis_state(const std::vector<int>& bits, std::vector<Wire> wires) {
    std::vector<Param> params;
    params.reserve(bits.size());
    for (int b : bits) {
        params.emplace_back(static_cast<double>(b));
    }
    return GateApplication(OpRegistry::instance().operation("BasisState"), std::move(params),
                           std::move(wires));
}

/** Arbitrary unitary applied to the given wires. */
inline GateApplication qubit_unitary(CMatrix matrix, std::vector<Wire> wires) {
    return GateApplication(OpRegistry::instance().operation("QubitUnitary"), {},
                           std::move(matrix), std::move(wires));
}

/** Binds a registered observable to wires. */
inline Observable observable(const std::string& name, std::vector<Wire> wires,
                             std::vector<double> params = {}) {
    return Observable(OpRegistry::instance().observable(name), std::move(params), CMatrix(),
                      std::move(wires));
}

/** Observable given by an explicit Hermitian matrix. */
inline Observable hermitian(CMatrix matrix, std::vector<Wire> wires) {
    return Observable(OpRegistry::instance().observable("Hermitian"), {}, std::move(matrix),
                      std::move(wires));
}

/** Second-order quadrature polynomial over the listed modes. */
inline Observable poly_xp(const RMatrix& coefficients, std::vector<Wire> wires) {
    CMatrix m(coefficients.rows(), coefficients.cols());
    for (std::size_t i = 0; i < coefficients.rows(); ++i) {
        for (std::size_t j = 0; j < coefficients.cols(); ++j) {
            m(i, j) = coefficients(i, j);
        }
    }
    return Observable(OpRegistry::instance().observable("PolyXP"), {}, std::move(m),
                      std::move(wires));
}

/** Expectation-value measurement of an observable. */
inline Measurement expval(Observable obs) {
    return Measurement{MeasurementKind::Expectation, std::move(obs)};
}

/** Variance measurement of an observable. */
inline Measurement variance(Observable obs) {
    return Measurement{MeasurementKind::Variance, std::move(obs)};
}

/** Per-shot eigenvalue samples of an observable. */
inline Measurement sample(Observable obs) {
    return Measurement{MeasurementKind::Sample, std::move(obs)};
}

} // namespace qgrad
