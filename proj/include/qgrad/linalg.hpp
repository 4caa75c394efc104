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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qgrad/errors.hpp"

namespace qgrad {

using Complex = std::complex<double>;

/** Dense complex matrix, row-major. Sized for gate and observable algebra. */
class CMatrix {
  public:
    CMatrix() : rows_(0), cols_(0) {}

    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}

    CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) {
            raise(ErrorKind::ShapeMismatch, "matrix data does not match dimensions");
        }
    }

    /** Row-major nested initializer, e.g. {{1, 0}, {0, 1}}. */
    CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) {
                raise(ErrorKind::ShapeMismatch, "ragged matrix initializer");
            }
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static CMatrix identity(std::size_t n) {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<Complex>& data() const noexcept { return data_; }
    std::vector<Complex>& data() noexcept { return data_; }

    bool operator==(const CMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<Complex> data_;
};

inline CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) {
        raise(ErrorKind::ShapeMismatch, "matmul dimension mismatch");
    }
    CMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            Complex aik = a(i, k);
            if (aik == Complex(0.0, 0.0)) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

inline CMatrix adjoint(const CMatrix& m) {
    CMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out(j, i) = std::conj(m(i, j));
        }
    }
    return out;
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

inline CMatrix scale(Complex factor, const CMatrix& m) {
    CMatrix out = m;
    for (Complex& v : out.data()) {
        v *= factor;
    }
    return out;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        raise(ErrorKind::ShapeMismatch, "matrix comparison dimension mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    }
    return worst;
}

inline bool is_unitary(const CMatrix& u, double tol = 1e-10) {
    if (!u.square()) {
        return false;
    }
    CMatrix prod = matmul(adjoint(u), u);
    return max_abs_diff(prod, CMatrix::identity(u.rows())) <= tol;
}

inline bool is_hermitian(const CMatrix& m, double tol = 1e-10) {
    return m.square() && max_abs_diff(m, adjoint(m)) <= tol;
}

/**
 * True when a == phase * b for some unit-modulus phase. Global phase is
 * unobservable, so gate identities are compared this way.
 */
inline bool equal_up_to_global_phase(const CMatrix& a, const CMatrix& b, double tol = 1e-10) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return false;
    }
    // Anchor the phase on the largest entry of b to avoid dividing by noise.
    std::size_t anchor = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < b.data().size(); ++i) {
        if (std::abs(b.data()[i]) > best) {
            best = std::abs(b.data()[i]);
            anchor = i;
        }
    }
    if (best <= tol) {
        return max_abs_diff(a, b) <= tol;
    }
    if (std::abs(a.data()[anchor]) < tol * best) {
        return false;
    }
    Complex phase = b.data()[anchor] / a.data()[anchor];
    if (std::abs(std::abs(phase) - 1.0) > tol) {
        return false;
    }
    return max_abs_diff(scale(phase, a), b) <= tol;
}

struct EigenSystem {
    std::vector<double> eigenvalues; // ascending
    CMatrix eigenvectors;            // columns, paired with eigenvalues
};

/** Eigendecomposition of a Hermitian matrix, eigenvalues ascending. */
inline EigenSystem hermitian_eigensystem(const CMatrix& m) {
    if (!m.square()) {
        raise(ErrorKind::ShapeMismatch, "eigendecomposition requires a square matrix");
    }
    const std::size_t n = m.rows();
    Eigen::MatrixXcd em(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            em(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(em);
    if (solver.info() != Eigen::Success) {
        raise(ErrorKind::InvalidParameter, "eigendecomposition failed to converge");
    }
    EigenSystem out;
    out.eigenvalues.resize(n);
    out.eigenvectors = CMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        out.eigenvalues[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
        for (std::size_t j = 0; j < n; ++j) {
            out.eigenvectors(i, j) =
                solver.eigenvectors()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return out;
}

/** Smallest eigenvalue of a Hermitian matrix. */
inline double min_eigenvalue(const CMatrix& m) {
    return hermitian_eigensystem(m).eigenvalues.front();
}

/** Dense real matrix, row-major. Used for phase-space transformations. */
class RMatrix {
  public:
    RMatrix() : rows_(0), cols_(0) {}

    RMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    RMatrix(std::initializer_list<std::initializer_list<double>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) {
                raise(ErrorKind::ShapeMismatch, "ragged matrix initializer");
            }
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static RMatrix identity(std::size_t n) {
        RMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const double& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<double>& data() const noexcept { return data_; }
    std::vector<double>& data() noexcept { return data_; }

  private:
    std::size_t rows_, cols_;
    std::vector<double> data_;
};

inline RMatrix matmul(const RMatrix& a, const RMatrix& b) {
    if (a.cols() != b.rows()) {
        raise(ErrorKind::ShapeMismatch, "matmul dimension mismatch");
    }
    RMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            double aik = a(i, k);
            if (aik == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

inline RMatrix transpose(const RMatrix& m) {
    RMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out(j, i) = m(i, j);
        }
    }
    return out;
}

inline std::vector<double> matvec(const RMatrix& m, const std::vector<double>& v) {
    if (m.cols() != v.size()) {
        raise(ErrorKind::ShapeMismatch, "matvec dimension mismatch");
    }
    std::vector<double> out(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out[i] += m(i, j) * v[j];
        }
    }
    return out;
}

inline double max_abs_diff(const RMatrix& a, const RMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        raise(ErrorKind::ShapeMismatch, "matrix comparison dimension mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    }
    return worst;
}

/**
 * Lower-triangular Cholesky factor of a symmetric positive definite matrix.
 * A tiny diagonal jitter keeps physically valid covariances that sit on the
 * uncertainty boundary factorizable.
 */
inline RMatrix cholesky_lower(const RMatrix& m, double jitter = 1e-12) {
    if (m.rows() != m.cols()) {
        raise(ErrorKind::ShapeMismatch, "cholesky requires a square matrix");
    }
    const std::size_t n = m.rows();
    Eigen::MatrixXd em(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            em(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                m(i, j) + (i == j ? jitter : 0.0);
        }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(em);
    if (llt.info() != Eigen::Success) {
        raise(ErrorKind::InvalidParameter, "covariance is not positive definite");
    }
    Eigen::MatrixXd l = llt.matrixL();
    RMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out(i, j) = l(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return out;
}

} // namespace qgrad
