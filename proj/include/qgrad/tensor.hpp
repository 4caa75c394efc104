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

#pragma once

#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "qgrad/errors.hpp"

namespace qgrad {

/**
 * Dense real tensor with row-major (last index fastest) storage.
 *
 * Rank 0 is a scalar: empty shape, one element. Flattening a tensor is
 * defined as reading `data()` front to back, which matches depth-first
 * traversal of the nested-array view.
 */
class Tensor {
  public:
    Tensor() : shape_(), data_(1, 0.0) {}

    /** Scalar constructor. */
    Tensor(double value) : shape_(), data_(1, value) {}

    Tensor(std::vector<std::size_t> shape, std::vector<double> data)
        : shape_(std::move(shape)), data_(std::move(data)) {
        if (data_.size() != count(shape_)) {
            raise(ErrorKind::ShapeMismatch,
                  "tensor data size " + std::to_string(data_.size()) +
                      " does not match shape size " + std::to_string(count(shape_)));
        }
    }

    /** 1-D convenience constructor. */
    Tensor(std::initializer_list<double> values)
        : shape_{values.size()}, data_(values) {}

    static Tensor zeros(std::vector<std::size_t> shape) {
        std::size_t n = count(shape);
        return Tensor(std::move(shape), std::vector<double>(n, 0.0));
    }

    static std::size_t count(const std::vector<std::size_t>& shape) {
        return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                               [](std::size_t a, std::size_t b) { return a * b; });
    }

    const std::vector<std::size_t>& shape() const noexcept { return shape_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool is_scalar() const noexcept { return shape_.empty(); }

    const std::vector<double>& data() const noexcept { return data_; }
    std::vector<double>& data() noexcept { return data_; }

    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    double scalar() const {
        if (data_.size() != 1) {
            raise(ErrorKind::ShapeMismatch, "tensor with " + std::to_string(data_.size()) +
                                                " elements used as a scalar");
        }
        return data_[0];
    }

    /** Flat offset of a multi-index, row-major. */
    std::size_t offset(const std::vector<std::size_t>& index) const {
        if (index.size() != shape_.size()) {
            raise(ErrorKind::ShapeMismatch, "index rank does not match tensor rank");
        }
        std::size_t off = 0;
        for (std::size_t d = 0; d < shape_.size(); ++d) {
            if (index[d] >= shape_[d]) {
                raise(ErrorKind::ShapeMismatch, "tensor index out of bounds");
            }
            off = off * shape_[d] + index[d];
        }
        return off;
    }

    double at(const std::vector<std::size_t>& index) const { return data_[offset(index)]; }
    double& at(const std::vector<std::size_t>& index) { return data_[offset(index)]; }

    bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }

  private:
    std::vector<std::size_t> shape_;
    std::vector<double> data_;
};

/** Concatenates the flat contents of several tensors, depth-first per tensor. */
inline std::vector<double> flatten(const std::vector<Tensor>& tensors) {
    std::vector<double> flat;
    for (const Tensor& t : tensors) {
        flat.insert(flat.end(), t.data().begin(), t.data().end());
    }
    return flat;
}

/** Inverse of flatten: splits a flat vector back into the given shapes. */
inline std::vector<Tensor> unflatten(const std::vector<double>& flat,
                                     const std::vector<Tensor>& like) {
    std::size_t total = 0;
    for (const Tensor& t : like) {
        total += t.size();
    }
    if (flat.size() != total) {
        raise(ErrorKind::ShapeMismatch, "flat size does not match template shapes");
    }
    std::vector<Tensor> out;
    out.reserve(like.size());
    std::size_t pos = 0;
    for (const Tensor& t : like) {
        std::vector<double> chunk(flat.begin() + pos, flat.begin() + pos + t.size());
        pos += t.size();
        out.emplace_back(t.shape(), std::move(chunk));
    }
    return out;
}

} // namespace qgrad
