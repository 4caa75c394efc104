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
 * @file autodiff.hpp
 * Reverse-mode automatic differentiation over tensors, with quantum nodes
 * as first-class primitives.
 *
 * A thread-local tape records one node per primitive application. Backward
 * walks nodes in reverse creation order, so each node's adjoint is complete
 * before its parents receive contributions. A QNode call records a single
 * node whose vector-Jacobian product queries the quantum Jacobian; the
 * Jacobian is computed once per node and reused by every argument's
 * adjoint.
 *
 * Elementwise binaries broadcast a scalar against an array; the scalar's
 * adjoint then sums over the array positions it reached.
 */

#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgrad/qnode.hpp"
#include "qgrad/tensor.hpp"

namespace qgrad {
namespace ad {

namespace detail {

inline bool broadcastable(const Tensor& a, const Tensor& b) {
    return a.same_shape(b) || a.size() == 1 || b.size() == 1;
}

/** Elementwise map over two tensors, scalar operands broadcast. */
inline Tensor zip(const Tensor& a, const Tensor& b, double (*op)(double, double)) {
    if (!broadcastable(a, b)) {
        raise(ErrorKind::ShapeMismatch, "operand shapes are not broadcastable");
    }
    const Tensor& shaped = a.size() == 1 ? b : a;
    Tensor out = Tensor::zeros(shaped.shape());
    for (std::size_t i = 0; i < out.size(); ++i) {
        double x = a.data()[a.size() == 1 ? 0 : i];
        double y = b.data()[b.size() == 1 ? 0 : i];
        out.data()[i] = op(x, y);
    }
    return out;
}

inline Tensor map(const Tensor& a, double (*op)(double)) {
    Tensor out = Tensor::zeros(a.shape());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out.data()[i] = op(a.data()[i]);
    }
    return out;
}

/** Reduces an adjoint back to the shape of a possibly-broadcast operand. */
inline Tensor reduce_to(const Tensor& grad, const Tensor& like) {
    if (grad.same_shape(like)) {
        return grad;
    }
    if (like.size() != 1) {
        raise(ErrorKind::ShapeMismatch, "adjoint shape does not match operand");
    }
    double acc = 0.0;
    for (double g : grad.data()) {
        acc += g;
    }
    Tensor out = Tensor::zeros(like.shape());
    out.data()[0] = acc;
    return out;
}

inline void accumulate(Tensor& into, const Tensor& grad) {
    if (into.size() == 0) {
        into = grad;
        return;
    }
    for (std::size_t i = 0; i < into.size(); ++i) {
        into.data()[i] += grad.data()[i];
    }
}

} // namespace detail

class Tape;
Tape*& current_tape();

/** Handle to one tape node. Valid only while its tape is alive. */
class Var {
  public:
    Var() = default;
    Var(Tape* tape, std::size_t id) : tape_(tape), id_(id) {}

    Tape* tape() const { return tape_; }
    std::size_t id() const { return id_; }
    const Tensor& value() const;
    double scalar() const { return value().scalar(); }

  private:
    Tape* tape_ = nullptr;
    std::size_t id_ = 0;
};

using Vjp = std::function<Tensor(const Tensor&)>;

/**
 * Recording of one forward computation. Confined to the thread that
 * created it; install with a Context and differentiate with backward().
 */
class Tape {
  public:
    struct Node {
        Tensor value;
        std::vector<std::size_t> parents;
        std::vector<Vjp> vjps;
    };

    /** Installs a tape as the recording target for the current thread. */
    class Context {
      public:
        explicit Context(Tape& tape) : previous_(current_tape()) { current_tape() = &tape; }
        ~Context() { current_tape() = previous_; }
        Context(const Context&) = delete;
        Context& operator=(const Context&) = delete;

      private:
        Tape* previous_;
    };

    Var leaf(Tensor value) {
        nodes_.push_back(Node{std::move(value), {}, {}});
        return Var(this, nodes_.size() - 1);
    }

    Var node(Tensor value, std::vector<std::size_t> parents, std::vector<Vjp> vjps) {
        nodes_.push_back(Node{std::move(value), std::move(parents), std::move(vjps)});
        return Var(this, nodes_.size() - 1);
    }

    const Node& at(std::size_t id) const { return nodes_.at(id); }
    std::size_t size() const { return nodes_.size(); }

    /**
     * Adjoints of every node with respect to a scalar root. Entries of
     * nodes the root does not depend on are empty tensors.
     */
    std::vector<Tensor> backward(const Var& root) const {
        if (root.tape() != this) {
            raise(ErrorKind::InvalidParameter, "variable belongs to another tape");
        }
        if (nodes_.at(root.id()).value.size() != 1) {
            raise(ErrorKind::NonScalarCost, "backward needs a scalar root");
        }
        const Tensor untouched(std::vector<std::size_t>{0}, {});
        std::vector<Tensor> adjoints(nodes_.size(), untouched);
        adjoints[root.id()] = Tensor::zeros(nodes_[root.id()].value.shape());
        adjoints[root.id()].data()[0] = 1.0;
        for (std::size_t i = root.id() + 1; i-- > 0;) {
            if (adjoints[i].size() == 0) {
                continue;
            }
            const Node& n = nodes_[i];
            for (std::size_t p = 0; p < n.parents.size(); ++p) {
                Tensor contribution = n.vjps[p](adjoints[i]);
                detail::accumulate(adjoints[n.parents[p]], contribution);
            }
        }
        return adjoints;
    }

  private:
    std::vector<Node> nodes_;
};

inline Tape*& current_tape() {
    thread_local Tape* tape = nullptr;
    return tape;
}

inline const Tensor& Var::value() const { return tape_->at(id_).value; }

namespace detail {

inline Tape& active() {
    Tape* t = current_tape();
    if (!t) {
        raise(ErrorKind::InvalidParameter, "no tape is recording on this thread");
    }
    return *t;
}

} // namespace detail

/** Leaf holding a constant or input value. */
inline Var leaf(Tensor value) { return detail::active().leaf(std::move(value)); }
inline Var leaf(double value) { return leaf(Tensor(value)); }

inline Var binary(const Var& a, const Var& b, double (*op)(double, double), Vjp da, Vjp db) {
    Tape& t = detail::active();
    return t.node(detail::zip(a.value(), b.value(), op), {a.id(), b.id()},
                  {std::move(da), std::move(db)});
}

inline Var add(const Var& a, const Var& b) {
    Tensor va = a.value(), vb = b.value();
    return binary(
        a, b, [](double x, double y) { return x + y; },
        [va](const Tensor& g) { return detail::reduce_to(g, va); },
        [vb](const Tensor& g) { return detail::reduce_to(g, vb); });
}

inline Var sub(const Var& a, const Var& b) {
    Tensor va = a.value(), vb = b.value();
    return binary(
        a, b, [](double x, double y) { return x - y; },
        [va](const Tensor& g) { return detail::reduce_to(g, va); },
        [vb](const Tensor& g) {
            Tensor neg = detail::map(g, [](double x) { return -x; });
            return detail::reduce_to(neg, vb);
        });
}

inline Var mul(const Var& a, const Var& b) {
    Tensor va = a.value(), vb = b.value();
    return binary(
        a, b, [](double x, double y) { return x * y; },
        [va, vb](const Tensor& g) {
            return detail::reduce_to(detail::zip(g, vb, [](double x, double y) { return x * y; }),
                                     va);
        },
        [va, vb](const Tensor& g) {
            return detail::reduce_to(detail::zip(g, va, [](double x, double y) { return x * y; }),
                                     vb);
        });
}

inline Var div(const Var& a, const Var& b) {
    Tensor va = a.value(), vb = b.value();
    return binary(
        a, b, [](double x, double y) { return x / y; },
        [va, vb](const Tensor& g) {
            return detail::reduce_to(detail::zip(g, vb, [](double x, double y) { return x / y; }),
                                     va);
        },
        [va, vb](const Tensor& g) {
            Tensor ratio = detail::zip(va, vb, [](double x, double y) { return -x / (y * y); });
            return detail::reduce_to(detail::zip(g, ratio, [](double x, double y) { return x * y; }),
                                     vb);
        });
}

inline Var unary(const Var& a, double (*op)(double), std::function<double(double)> dop) {
    Tape& t = detail::active();
    Tensor va = a.value();
    return t.node(detail::map(va, op), {a.id()},
                  {[va, dop](const Tensor& g) {
                      Tensor out = Tensor::zeros(va.shape());
                      for (std::size_t i = 0; i < out.size(); ++i) {
                          out.data()[i] = g.data()[i] * dop(va.data()[i]);
                      }
                      return out;
                  }});
}

inline Var neg(const Var& a) {
    return unary(
        a, [](double x) { return -x; }, [](double) { return -1.0; });
}
inline Var sin(const Var& a) {
    return unary(
        a, [](double x) { return std::sin(x); }, [](double x) { return std::cos(x); });
}
inline Var cos(const Var& a) {
    return unary(
        a, [](double x) { return std::cos(x); }, [](double x) { return -std::sin(x); });
}
inline Var exp(const Var& a) {
    return unary(
        a, [](double x) { return std::exp(x); }, [](double x) { return std::exp(x); });
}
inline Var square(const Var& a) {
    return unary(
        a, [](double x) { return x * x; }, [](double x) { return 2.0 * x; });
}

/** Inner product of two equally-sized tensors; scalar result. */
inline Var dot(const Var& a, const Var& b) {
    Tensor va = a.value(), vb = b.value();
    if (va.size() != vb.size()) {
        raise(ErrorKind::ShapeMismatch, "dot operands differ in size");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) {
        acc += va.data()[i] * vb.data()[i];
    }
    Tape& t = detail::active();
    return t.node(Tensor(acc), {a.id(), b.id()},
                  {[va, vb](const Tensor& g) {
                       Tensor out = Tensor::zeros(va.shape());
                       for (std::size_t i = 0; i < out.size(); ++i) {
                           out.data()[i] = g.scalar() * vb.data()[i];
                       }
                       return out;
                   },
                   [va, vb](const Tensor& g) {
                       Tensor out = Tensor::zeros(vb.shape());
                       for (std::size_t i = 0; i < out.size(); ++i) {
                           out.data()[i] = g.scalar() * va.data()[i];
                       }
                       return out;
                   }});
}

inline Var sum(const Var& a) {
    Tensor va = a.value();
    double acc = 0.0;
    for (double v : va.data()) {
        acc += v;
    }
    Tape& t = detail::active();
    return t.node(Tensor(acc), {a.id()}, {[va](const Tensor& g) {
                      Tensor out = Tensor::zeros(va.shape());
                      for (std::size_t i = 0; i < out.size(); ++i) {
                          out.data()[i] = g.scalar();
                      }
                      return out;
                  }});
}

inline Var mean(const Var& a) {
    Tensor va = a.value();
    double acc = 0.0;
    for (double v : va.data()) {
        acc += v;
    }
    const double n = static_cast<double>(va.size());
    Tape& t = detail::active();
    return t.node(Tensor(acc / n), {a.id()}, {[va, n](const Tensor& g) {
                      Tensor out = Tensor::zeros(va.shape());
                      for (std::size_t i = 0; i < out.size(); ++i) {
                          out.data()[i] = g.scalar() / n;
                      }
                      return out;
                  }});
}

/** Element `index` of a tensor as a scalar variable. */
inline Var pick(const Var& a, std::size_t index) {
    Tensor va = a.value();
    if (index >= va.size()) {
        raise(ErrorKind::ShapeMismatch, "pick index out of range");
    }
    Tape& t = detail::active();
    return t.node(Tensor(va.data()[index]), {a.id()}, {[va, index](const Tensor& g) {
                      Tensor out = Tensor::zeros(va.shape());
                      out.data()[index] = g.scalar();
                      return out;
                  }});
}

/** Contiguous range [start, start + length) as a 1-D variable. */
inline Var slice(const Var& a, std::size_t start, std::size_t length) {
    Tensor va = a.value();
    if (start + length > va.size()) {
        raise(ErrorKind::ShapeMismatch, "slice range out of bounds");
    }
    Tensor value = Tensor::zeros({length});
    for (std::size_t i = 0; i < length; ++i) {
        value.data()[i] = va.data()[start + i];
    }
    Tape& t = detail::active();
    return t.node(std::move(value), {a.id()}, {[va, start, length](const Tensor& g) {
                      Tensor out = Tensor::zeros(va.shape());
                      for (std::size_t i = 0; i < length; ++i) {
                          out.data()[start + i] = g.data()[i];
                      }
                      return out;
                  }});
}

/** Concatenates scalar or 1-D variables into one 1-D variable. */
inline Var pack(const std::vector<Var>& parts) {
    std::size_t total = 0;
    for (const Var& p : parts) {
        total += p.value().size();
    }
    Tensor value = Tensor::zeros({total});
    std::vector<std::size_t> parents;
    std::vector<Vjp> vjps;
    std::size_t offset = 0;
    for (const Var& p : parts) {
        Tensor vp = p.value();
        for (std::size_t i = 0; i < vp.size(); ++i) {
            value.data()[offset + i] = vp.data()[i];
        }
        parents.push_back(p.id());
        std::size_t off = offset;
        vjps.push_back([vp, off](const Tensor& g) {
            Tensor out = Tensor::zeros(vp.shape());
            for (std::size_t i = 0; i < out.size(); ++i) {
                out.data()[i] = g.data()[off + i];
            }
            return out;
        });
        offset += vp.size();
    }
    Tape& t = detail::active();
    return t.node(std::move(value), std::move(parents), std::move(vjps));
}

inline Var operator+(const Var& a, const Var& b) { return add(a, b); }
inline Var operator-(const Var& a, const Var& b) { return sub(a, b); }
inline Var operator*(const Var& a, const Var& b) { return mul(a, b); }
inline Var operator/(const Var& a, const Var& b) { return div(a, b); }
inline Var operator-(const Var& a) { return neg(a); }
inline Var operator+(const Var& a, double b) { return add(a, leaf(b)); }
inline Var operator+(double a, const Var& b) { return add(leaf(a), b); }
inline Var operator-(const Var& a, double b) { return sub(a, leaf(b)); }
inline Var operator-(double a, const Var& b) { return sub(leaf(a), b); }
inline Var operator*(const Var& a, double b) { return mul(a, leaf(b)); }
inline Var operator*(double a, const Var& b) { return mul(leaf(a), b); }
inline Var operator/(const Var& a, double b) { return div(a, leaf(b)); }
inline Var operator/(double a, const Var& b) { return div(leaf(a), b); }

/**
 * Records a quantum circuit evaluation as one tape node. The node's value
 * is the flat statistics vector; its adjoint multiplies by the QNode
 * Jacobian, computed lazily on first use and shared by all arguments.
 * Tapes containing sample measurements evaluate forward but cannot be
 * differentiated.
 */
inline Var qnode_call(const QNode& qnode, const std::vector<Var>& args,
                      const Kwargs& kwargs = {}) {
    std::vector<Tensor> values;
    values.reserve(args.size());
    for (const Var& a : args) {
        values.push_back(a.value());
    }
    bool has_sample = qnode.construct_tape(values, kwargs).has_sample();

    std::vector<double> flat = qnode.execute(values, kwargs).flat();
    Tensor out = Tensor::zeros({flat.size()});
    for (std::size_t i = 0; i < flat.size(); ++i) {
        out.data()[i] = flat[i];
    }

    auto jac_cache = std::make_shared<std::optional<RMatrix>>();
    std::vector<std::size_t> parents;
    std::vector<Vjp> vjps;
    std::size_t offset = 0;
    for (std::size_t k = 0; k < args.size(); ++k) {
        parents.push_back(args[k].id());
        Tensor vk = values[k];
        std::size_t off = offset;
        vjps.push_back([&qnode, values, kwargs, jac_cache, vk, off, has_sample](const Tensor& g) {
            if (has_sample) {
                raise(ErrorKind::NonDifferentiableMeasurement,
                      "circuits with sample measurements cannot be differentiated");
            }
            if (!jac_cache->has_value()) {
                *jac_cache = qnode.jacobian(values, kwargs);
            }
            const RMatrix& jac = **jac_cache;
            Tensor out_grad = Tensor::zeros(vk.shape());
            for (std::size_t j = 0; j < vk.size(); ++j) {
                double acc = 0.0;
                for (std::size_t r = 0; r < jac.rows(); ++r) {
                    acc += g.data()[r] * jac(r, off + j);
                }
                out_grad.data()[j] = acc;
            }
            return out_grad;
        });
        offset += vk.size();
    }
    Tape& t = detail::active();
    return t.node(std::move(out), std::move(parents), std::move(vjps));
}

using CostFn = std::function<Var(const std::vector<Var>&)>;

struct GradResult {
    double value = 0.0;
    std::vector<Tensor> gradients;
};

/** Evaluates a scalar cost and its gradient for each argument. */
inline GradResult value_and_grad(const CostFn& cost, const std::vector<Tensor>& args) {
    Tape tape;
    Tape::Context context(tape);
    std::vector<Var> leaves;
    leaves.reserve(args.size());
    for (const Tensor& a : args) {
        leaves.push_back(tape.leaf(a));
    }
    Var result = cost(leaves);
    if (result.value().size() != 1) {
        raise(ErrorKind::NonScalarCost, "cost function must return a scalar");
    }
    std::vector<Tensor> adjoints = tape.backward(result);
    GradResult out;
    out.value = result.value().scalar();
    out.gradients.reserve(args.size());
    for (std::size_t k = 0; k < args.size(); ++k) {
        Tensor g = adjoints[leaves[k].id()];
        if (g.size() == 0) {
            g = Tensor::zeros(args[k].shape());
        }
        out.gradients.push_back(std::move(g));
    }
    return out;
}

/** Gradient of a scalar cost for each argument. */
inline std::vector<Tensor> grad(const CostFn& cost, const std::vector<Tensor>& args) {
    return value_and_grad(cost, args).gradients;
}

} // namespace ad
} // namespace qgrad
