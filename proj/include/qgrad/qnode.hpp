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
 * @file qnode.hpp
 * QNode: a circuit builder bound to a device, callable like a numeric
 * function and differentiable with respect to its positional arguments.
 *
 * The builder receives its positional arguments as ParamTensors whose
 * elements carry a reference to their flattened input position. Feeding
 * those elements into gate parameters is what makes the circuit
 * differentiable; keyword arguments stay plain tensors and are treated as
 * constants.
 */

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qgrad/core.hpp"
#include "qgrad/device.hpp"
#include "qgrad/gradients.hpp"
#include "qgrad/ops.hpp"
#include "qgrad/tensor.hpp"

namespace qgrad {

/** Tensor whose scalar elements are gate parameters with input references. */
class ParamTensor {
  public:
    ParamTensor() = default;

    /** Trainable tensor: element i refers to flattened input base + i. */
    ParamTensor(const Tensor& values, int base) : shape_(values.shape()) {
        data_.reserve(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            Param p(values.data()[i]);
            p.ref = base + static_cast<int>(i);
            data_.push_back(p);
        }
    }

    /** Constant tensor: no element is differentiated. */
    static ParamTensor constant(const Tensor& values) {
        ParamTensor t(values, 0);
        for (Param& p : t.data_) {
            p.ref = -1;
        }
        return t;
    }

    const std::vector<std::size_t>& shape() const { return shape_; }
    std::size_t size() const { return data_.size(); }

    const Param& operator[](std::size_t flat) const { return data_.at(flat); }

    const Param& at(const std::vector<std::size_t>& indices) const {
        if (indices.size() != shape_.size()) {
            raise(ErrorKind::ShapeMismatch, "index rank does not match tensor rank");
        }
        std::size_t off = 0;
        for (std::size_t d = 0; d < shape_.size(); ++d) {
            off = off * shape_[d] + indices[d];
        }
        return data_.at(off);
    }

    Tensor values() const {
        Tensor out = Tensor::zeros(shape_);
        for (std::size_t i = 0; i < data_.size(); ++i) {
            out.data()[i] = data_[i].value;
        }
        return out;
    }

  private:
    std::vector<std::size_t> shape_;
    std::vector<Param> data_;
};

using Kwargs = std::map<std::string, Tensor>;
using TapeBuilder =
    std::function<QuantumTape(const std::vector<ParamTensor>&, const Kwargs&)>;

/**
 * A quantum function: builds a tape from numeric arguments, runs it on its
 * device, and exposes the Jacobian of the scalar statistics with respect to
 * the flattened positional arguments.
 */
class QNode {
  public:
    QNode(TapeBuilder builder, std::shared_ptr<Device> device,
          DiffMethod diff_method = DiffMethod::Best)
        : builder_(std::move(builder)), device_(std::move(device)), diff_method_(diff_method) {
        fd_.step = default_fd_step(device_->analytic());
    }

    const std::shared_ptr<Device>& device() const { return device_; }
    DiffMethod diff_method() const { return diff_method_; }
    void set_diff_method(DiffMethod method) { diff_method_ = method; }
    const FDOptions& fd_options() const { return fd_; }
    void set_fd_options(FDOptions fd) { fd_ = fd; }

    /** Tape for these arguments, expanded to the device's gate set. */
    QuantumTape construct_tape(const std::vector<Tensor>& args, const Kwargs& kwargs = {}) const {
        std::vector<ParamTensor> traced;
        traced.reserve(args.size());
        int base = 0;
        for (const Tensor& a : args) {
            traced.emplace_back(a, base);
            base += static_cast<int>(a.size());
        }
        QuantumTape tape = builder_(traced, kwargs);
        return expand_tape(tape, device_->operations());
    }

    /** Executes and returns the full result, sample entries included. */
    ExecutionResult execute(const std::vector<Tensor>& args, const Kwargs& kwargs = {}) const {
        return device_->execute(construct_tape(args, kwargs));
    }

    /** Flat tensor of all statistics in measurement order. */
    Tensor operator()(const std::vector<Tensor>& args, const Kwargs& kwargs = {}) const {
        std::vector<double> flat = execute(args, kwargs).flat();
        Tensor out = Tensor::zeros({flat.size()});
        for (std::size_t i = 0; i < flat.size(); ++i) {
            out.data()[i] = flat[i];
        }
        return out;
    }

    /** Number of scalar statistics the tape produces for these arguments. */
    std::size_t num_outputs(const std::vector<Tensor>& args, const Kwargs& kwargs = {}) const {
        return construct_tape(args, kwargs).measurements().size();
    }

    /**
     * Jacobian matrix, shape (statistics x flattened inputs), where the
     * flattened inputs concatenate all positional arguments in order.
     */
    RMatrix jacobian(const std::vector<Tensor>& args, const Kwargs& kwargs = {}) const {
        std::size_t num_inputs = 0;
        for (const Tensor& a : args) {
            num_inputs += a.size();
        }
        return tape_jacobian(*device_, construct_tape(args, kwargs), num_inputs, diff_method_,
                             fd_);
    }

  private:
    TapeBuilder builder_;
    std::shared_ptr<Device> device_;
    DiffMethod diff_method_;
    FDOptions fd_;
};

} // namespace qgrad
