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
 * @file collections.hpp
 * Collections of independent QNodes evaluated as one vector-valued
 * function, lazy combinators over them, Pauli Hamiltonians, and the VQE
 * cost builder.
 *
 * Combinator trees (dot, sum, apply) are lazy: building one performs no
 * device execution; the quantum work happens when the composed function is
 * evaluated or recorded onto an autodiff tape. Parallel evaluation gives
 * each QNode its own device instance, so collections built by mapping one
 * device clone it per QNode.
 *
 * Hamiltonian text format: one term per line as `coefficient factors`,
 * factors being letter+wire Pauli tokens (`-0.2427 Z0 Z1`) or `I` for the
 * identity; `#` starts a comment; blank lines are ignored.
 */

#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qgrad/autodiff.hpp"
#include "qgrad/device.hpp"
#include "qgrad/linalg.hpp"
#include "qgrad/ops.hpp"
#include "qgrad/qnode.hpp"

namespace qgrad {

/** Circuit fragment shared by every QNode of a collection. */
using Ansatz = std::function<std::vector<GateApplication>(const std::vector<ParamTensor>&)>;

/** An ordered list of QNodes with mutually independent inputs. */
class QNodeCollection {
  public:
    QNodeCollection() = default;
    explicit QNodeCollection(std::vector<std::shared_ptr<QNode>> qnodes)
        : qnodes_(std::move(qnodes)) {}

    std::size_t size() const { return qnodes_.size(); }
    const QNode& at(std::size_t i) const { return *qnodes_.at(i); }
    const std::vector<std::shared_ptr<QNode>>& qnodes() const { return qnodes_; }

    /**
     * All QNode outputs, collection order. With parallel=true each QNode
     * runs on its own thread; results are ordered identically either way.
     */
    Tensor evaluate(const std::vector<Tensor>& args, bool parallel = false) const {
        std::vector<Tensor> outputs(qnodes_.size());
        if (parallel) {
            std::vector<std::thread> workers;
            std::vector<std::exception_ptr> errors(qnodes_.size());
            workers.reserve(qnodes_.size());
            for (std::size_t i = 0; i < qnodes_.size(); ++i) {
                workers.emplace_back([&, i] {
                    try {
                        outputs[i] = (*qnodes_[i])(args);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                });
            }
            for (std::thread& w : workers) {
                w.join();
            }
            for (const std::exception_ptr& e : errors) {
                if (e) {
                    std::rethrow_exception(e);
                }
            }
        } else {
            for (std::size_t i = 0; i < qnodes_.size(); ++i) {
                outputs[i] = (*qnodes_[i])(args);
            }
        }
        std::size_t total = 0;
        for (const Tensor& t : outputs) {
            total += t.size();
        }
        Tensor flat = Tensor::zeros({total});
        std::size_t off = 0;
        for (const Tensor& t : outputs) {
            for (std::size_t i = 0; i < t.size(); ++i) {
                flat.data()[off++] = t.data()[i];
            }
        }
        return flat;
    }

    /** Records every QNode onto the active autodiff tape, concatenated. */
    ad::Var record(const std::vector<ad::Var>& args) const {
        std::vector<ad::Var> parts;
        parts.reserve(qnodes_.size());
        for (const std::shared_ptr<QNode>& q : qnodes_) {
            parts.push_back(ad::qnode_call(*q, args));
        }
        return ad::pack(parts);
    }

  private:
    std::vector<std::shared_ptr<QNode>> qnodes_;
};

namespace detail {

inline std::shared_ptr<QNode> map_one(const Ansatz& ansatz, const Observable& obs,
                                      std::shared_ptr<Device> device) {
    std::size_t wires = device->num_wires();
    TapeBuilder builder = [ansatz, obs, wires](const std::vector<ParamTensor>& args,
                                               const Kwargs&) {
        return build_tape(ansatz(args), {expval(obs)}, wires);
    };
    return std::make_shared<QNode>(std::move(builder), std::move(device));
}

} // namespace detail

/**
 * One QNode per observable: the shared ansatz followed by that
 * observable's expectation. The single device is cloned per QNode so
 * parallel evaluation never shares simulator state.
 */
inline QNodeCollection map_ansatz(const Ansatz& ansatz,
                                  const std::vector<Observable>& observables,
                                  const std::shared_ptr<Device>& device) {
    std::vector<std::shared_ptr<QNode>> qnodes;
    qnodes.reserve(observables.size());
    for (const Observable& obs : observables) {
        qnodes.push_back(detail::map_one(ansatz, obs, device->clone()));
    }
    return QNodeCollection(std::move(qnodes));
}

/** As above with one explicit device per observable. */
inline QNodeCollection map_ansatz(const Ansatz& ansatz,
                                  const std::vector<Observable>& observables,
                                  const std::vector<std::shared_ptr<Device>>& devices) {
    if (observables.size() != devices.size()) {
        raise(ErrorKind::LengthMismatch,
              std::to_string(observables.size()) + " observables but " +
                  std::to_string(devices.size()) + " devices");
    }
    std::vector<std::shared_ptr<QNode>> qnodes;
    qnodes.reserve(observables.size());
    for (std::size_t i = 0; i < observables.size(); ++i) {
        qnodes.push_back(detail::map_one(ansatz, observables[i], devices[i]));
    }
    return QNodeCollection(std::move(qnodes));
}

namespace detail {

struct UnaryByName {
    double (*value)(double);
    ad::Var (*record)(const ad::Var&);
};

inline UnaryByName unary_by_name(const std::string& name) {
    if (name == "sin") {
        return {[](double x) { return std::sin(x); }, [](const ad::Var& v) { return ad::sin(v); }};
    }
    if (name == "cos") {
        return {[](double x) { return std::cos(x); }, [](const ad::Var& v) { return ad::cos(v); }};
    }
    if (name == "exp") {
        return {[](double x) { return std::exp(x); }, [](const ad::Var& v) { return ad::exp(v); }};
    }
    if (name == "square") {
        return {[](double x) { return x * x; }, [](const ad::Var& v) { return ad::square(v); }};
    }
    if (name == "neg") {
        return {[](double x) { return -x; }, [](const ad::Var& v) { return ad::neg(v); }};
    }
    raise(ErrorKind::InvalidParameter, "no autodiff primitive named " + name);
}

} // namespace detail

/**
 * Lazily composed function over a QNode collection. Constructing a node
 * performs no quantum evaluation; evaluate() and record() do.
 */
class HybridFunction {
  public:
    /** Leaf: the collection's output vector. */
    static HybridFunction wrap(QNodeCollection collection) {
        HybridFunction f;
        f.kind_ = Kind::Collection;
        f.collection_ = std::move(collection);
        return f;
    }

    std::size_t output_size() const {
        switch (kind_) {
        case Kind::Collection:
            return collection_.size();
        case Kind::Apply:
            return child_->output_size();
        case Kind::Dot:
        case Kind::Sum:
            return 1;
        }
        return 0;
    }

    Tensor evaluate(const std::vector<Tensor>& args, bool parallel = false) const {
        switch (kind_) {
        case Kind::Collection:
            return collection_.evaluate(args, parallel);
        case Kind::Apply: {
            Tensor inner = child_->evaluate(args, parallel);
            detail::UnaryByName fn = detail::unary_by_name(fn_name_);
            for (double& v : inner.data()) {
                v = fn.value(v);
            }
            return inner;
        }
        case Kind::Dot: {
            Tensor inner = child_->evaluate(args, parallel);
            double acc = 0.0;
            for (std::size_t i = 0; i < coeffs_.size(); ++i) {
                acc += coeffs_[i] * inner.data()[i];
            }
            return Tensor(acc);
        }
        case Kind::Sum: {
            Tensor inner = child_->evaluate(args, parallel);
            double acc = 0.0;
            for (double v : inner.data()) {
                acc += v;
            }
            return Tensor(acc);
        }
        }
        return Tensor(0.0);
    }

    /** Same composition on the active autodiff tape. */
    ad::Var record(const std::vector<ad::Var>& args) const {
        switch (kind_) {
        case Kind::Collection:
            return collection_.record(args);
        case Kind::Apply:
            return detail::unary_by_name(fn_name_).record(child_->record(args));
        case Kind::Dot: {
            Tensor c = Tensor::zeros({coeffs_.size()});
            for (std::size_t i = 0; i < coeffs_.size(); ++i) {
                c.data()[i] = coeffs_[i];
            }
            return ad::dot(ad::leaf(c), child_->record(args));
        }
        case Kind::Sum:
            return ad::sum(child_->record(args));
        }
        return ad::leaf(0.0);
    }

    /** Cost-function view for optimizers. */
    ad::CostFn cost_fn() const {
        HybridFunction self = *this;
        return [self](const std::vector<ad::Var>& args) { return self.record(args); };
    }

    friend HybridFunction apply(const std::string& fn_name, HybridFunction inner);
    friend HybridFunction dot(std::vector<double> coeffs, HybridFunction inner);
    friend HybridFunction sum(HybridFunction inner);

  private:
    enum class Kind { Collection, Apply, Dot, Sum };

    HybridFunction() = default;

    Kind kind_ = Kind::Collection;
    QNodeCollection collection_;
    std::shared_ptr<const HybridFunction> child_;
    std::vector<double> coeffs_;
    std::string fn_name_;
};

/** Elementwise named primitive over a composed function's outputs. */
inline HybridFunction apply(const std::string& fn_name, HybridFunction inner) {
    detail::unary_by_name(fn_name); // reject unknown names eagerly
    HybridFunction f;
    f.kind_ = HybridFunction::Kind::Apply;
    f.child_ = std::make_shared<const HybridFunction>(std::move(inner));
    f.fn_name_ = fn_name;
    return f;
}

inline HybridFunction apply(const std::string& fn_name, QNodeCollection collection) {
    return apply(fn_name, HybridFunction::wrap(std::move(collection)));
}

/** Weighted sum of a composed function's outputs; length-checked eagerly. */
inline HybridFunction dot(std::vector<double> coeffs, HybridFunction inner) {
    if (coeffs.size() != inner.output_size()) {
        raise(ErrorKind::LengthMismatch, std::to_string(coeffs.size()) +
                                             " coefficients for " +
                                             std::to_string(inner.output_size()) + " outputs");
    }
    HybridFunction f;
    f.kind_ = HybridFunction::Kind::Dot;
    f.child_ = std::make_shared<const HybridFunction>(std::move(inner));
    f.coeffs_ = std::move(coeffs);
    return f;
}

inline HybridFunction dot(std::vector<double> coeffs, QNodeCollection collection) {
    return dot(std::move(coeffs), HybridFunction::wrap(std::move(collection)));
}

/** Plain sum of a composed function's outputs. */
inline HybridFunction sum(HybridFunction inner) {
    HybridFunction f;
    f.kind_ = HybridFunction::Kind::Sum;
    f.child_ = std::make_shared<const HybridFunction>(std::move(inner));
    return f;
}

inline HybridFunction sum(QNodeCollection collection) {
    return sum(HybridFunction::wrap(std::move(collection)));
}

/** One Pauli operator bound to a wire. */
struct PauliFactor {
    char pauli = 'Z'; // 'X', 'Y', or 'Z'
    Wire wire = 0;
};

/** A Pauli word; empty means the identity. */
using PauliWord = std::vector<PauliFactor>;

struct Hamiltonian {
    std::vector<double> coeffs;
    std::vector<PauliWord> terms;

    /** Smallest wire count the Hamiltonian fits on. */
    std::size_t num_wires() const {
        std::size_t n = 1;
        for (const PauliWord& word : terms) {
            for (const PauliFactor& f : word) {
                n = std::max(n, f.wire + 1);
            }
        }
        return n;
    }
};

/** Parses the Hamiltonian text format; errors carry 1-based line numbers. */
inline Hamiltonian parse_hamiltonian(const std::string& text) {
    Hamiltonian h;
    std::istringstream stream(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        std::string prefix = "line " + std::to_string(line_no) + ": ";
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream tokens(line);
        std::string token;
        if (!(tokens >> token)) {
            continue;
        }
        double coeff = 0.0;
        try {
            std::size_t used = 0;
            coeff = std::stod(token, &used);
            if (used != token.size()) {
                throw std::invalid_argument(token);
            }
        } catch (const std::exception&) {
            raise(ErrorKind::ParseError, prefix + "bad coefficient '" + token + "'");
        }
        PauliWord word;
        std::set<Wire> used_wires;
        bool any_factor = false;
        while (tokens >> token) {
            any_factor = true;
            if (token == "I") {
                continue;
            }
            if (token.size() < 2 ||
                (token[0] != 'X' && token[0] != 'Y' && token[0] != 'Z')) {
                raise(ErrorKind::ParseError, prefix + "bad factor '" + token + "'");
            }
            for (std::size_t i = 1; i < token.size(); ++i) {
                if (!std::isdigit(static_cast<unsigned char>(token[i]))) {
                    raise(ErrorKind::ParseError, prefix + "bad factor '" + token + "'");
                }
            }
            Wire wire = static_cast<Wire>(std::stoul(token.substr(1)));
            if (!used_wires.insert(wire).second) {
                raise(ErrorKind::ParseError,
                      prefix + "wire " + std::to_string(wire) + " repeated in one term");
            }
            word.push_back(PauliFactor{token[0], wire});
        }
        if (!any_factor) {
            raise(ErrorKind::ParseError, prefix + "coefficient without factors");
        }
        h.coeffs.push_back(coeff);
        h.terms.push_back(std::move(word));
    }
    return h;
}

/** Renders a Hamiltonian back into the text format. */
inline std::string format_hamiltonian(const Hamiltonian& h) {
    std::ostringstream out;
    for (std::size_t i = 0; i < h.terms.size(); ++i) {
        char buffer[32];
        std::snprintf(buffer, sizeof(buffer), "%.17g", h.coeffs[i]);
        out << buffer;
        if (h.terms[i].empty()) {
            out << " I";
        } else {
            for (const PauliFactor& f : h.terms[i]) {
                out << ' ' << f.pauli << f.wire;
            }
        }
        out << '\n';
    }
    return out.str();
}

/** Measurable observable for one Pauli word; identity maps to wire 0. */
inline Observable word_observable(const PauliWord& word) {
    if (word.empty()) {
        return observable("Identity", {0});
    }
    std::vector<Observable> parts;
    parts.reserve(word.size());
    for (const PauliFactor& f : word) {
        const char* name = f.pauli == 'X' ? "PauliX" : (f.pauli == 'Y' ? "PauliY" : "PauliZ");
        parts.push_back(observable(name, {f.wire}));
    }
    return tensor_observable(parts);
}

/** Dense matrix of the Hamiltonian on `wires` qubits, wire 0 leftmost. */
inline CMatrix hamiltonian_matrix(const Hamiltonian& h, std::size_t wires) {
    const std::size_t dim = std::size_t{1} << wires;
    CMatrix total(dim, dim);
    for (std::size_t t = 0; t < h.terms.size(); ++t) {
        CMatrix term = CMatrix::identity(1);
        for (std::size_t w = 0; w < wires; ++w) {
            CMatrix factor = CMatrix::identity(2);
            for (const PauliFactor& f : h.terms[t]) {
                if (f.wire != w) {
                    continue;
                }
                factor = f.pauli == 'X' ? detail::mat_pauli_x()
                                        : (f.pauli == 'Y' ? detail::mat_pauli_y()
                                                          : detail::mat_pauli_z());
            }
            term = kron(term, factor);
        }
        term = scale(Complex(h.coeffs[t], 0.0), term);
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                total(i, j) += term(i, j);
            }
        }
    }
    return total;
}

/** Exact ground-state energy by dense diagonalization. */
inline double ground_energy(const Hamiltonian& h, std::size_t wires) {
    return min_eigenvalue(hamiltonian_matrix(h, wires));
}

inline double ground_energy(const Hamiltonian& h) { return ground_energy(h, h.num_wires()); }

/**
 * VQE cost: cost(params) = sum_i c_i <term_i> over the ansatz state. All
 * term QNodes share the one device and run sequentially; the construction
 * is numerically identical to dot(h.coeffs, map_ansatz(...)) but does not
 * clone the device.
 */
class VQECost {
  public:
    VQECost(const Ansatz& ansatz, Hamiltonian h, std::shared_ptr<Device> device)
        : h_(std::move(h)) {
        for (const PauliWord& word : h_.terms) {
            for (const PauliFactor& f : word) {
                if (f.wire >= device->num_wires()) {
                    raise(ErrorKind::UnsupportedObservable,
                          "Hamiltonian term uses wire " + std::to_string(f.wire) +
                              " but the device has " + std::to_string(device->num_wires()) +
                              " wires");
                }
            }
        }
        qnodes_.reserve(h_.terms.size());
        for (const PauliWord& word : h_.terms) {
            qnodes_.push_back(detail::map_one(ansatz, word_observable(word), device));
        }
    }

    const Hamiltonian& hamiltonian() const { return h_; }

    /** Records the cost onto the active autodiff tape. */
    ad::Var operator()(const std::vector<ad::Var>& args) const {
        std::vector<ad::Var> parts;
        parts.reserve(qnodes_.size());
        for (const std::shared_ptr<QNode>& q : qnodes_) {
            parts.push_back(ad::qnode_call(*q, args));
        }
        Tensor c = Tensor::zeros({h_.coeffs.size()});
        for (std::size_t i = 0; i < h_.coeffs.size(); ++i) {
            c.data()[i] = h_.coeffs[i];
        }
        return ad::dot(ad::leaf(c), ad::pack(parts));
    }

    /** Plain evaluation without a tape. */
    double value(const std::vector<Tensor>& args) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < qnodes_.size(); ++i) {
            acc += h_.coeffs[i] * (*qnodes_[i])(args).data()[0];
        }
        return acc;
    }

    ad::CostFn cost_fn() const {
        VQECost self = *this;
        return [self](const std::vector<ad::Var>& args) { return self(args); };
    }

  private:
    Hamiltonian h_;
    std::vector<std::shared_ptr<QNode>> qnodes_;
};

inline VQECost vqe_cost(const Ansatz& ansatz, Hamiltonian h, std::shared_ptr<Device> device) {
    return VQECost(ansatz, std::move(h), std::move(device));
}

} // namespace qgrad
