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
 * @file gaussian_device.hpp
 * Gaussian continuous-variable simulator registered as "default.gaussian".
 *
 * State is a mean vector and covariance matrix over the quadratures
 * (x_0, p_0, x_1, p_1, ...) with hbar = 2, so the vacuum covariance is the
 * identity. Gates act through their Heisenberg representation: the local
 * (1 + 2k)-dimensional affine map splits into a symplectic block S and a
 * displacement d, embedded at the gate's modes, and then
 * means -> S means + d, cov -> S cov S^T.
 */

#pragma once

#include <cmath>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "qgrad/device.hpp"
#include "qgrad/ops.hpp"
#include "qgrad/rng.hpp"
#include "qgrad/version.hpp"

namespace qgrad {

class GaussianDevice final : public Device {
  public:
    explicit GaussianDevice(const DeviceConfig& config)
        : Device(make_descriptor(), config), rng_(config.seed) {
        reset();
    }

    static DeviceDescriptor make_descriptor() {
        DeviceDescriptor d;
        d.name = "Default Gaussian simulator";
        d.short_name = "default.gaussian";
        d.api_version = kApiVersion;
        d.version = kVersion;
        d.author = "The qgrad Authors";
        d.capabilities = {{"model", "cv"}};
        return d;
    }

    const std::set<std::string>& operations() const override {
        static const std::set<std::string> ops = {"Displacement",     "Rotation",
                                                  "Squeezing",        "Beamsplitter",
                                                  "TwoModeSqueezing", "QuadraticPhase"};
        return ops;
    }

    const std::set<std::string>& observables() const override {
        static const std::set<std::string> obs = {"X",       "P",      "QuadOperator",
                                                  "NumberOperator", "PolyXP", "Identity"};
        return obs;
    }

    std::unique_ptr<Device> clone() const override {
        DeviceConfig derived = config();
        derived.seed = next_derived_seed();
        return std::make_unique<GaussianDevice>(derived);
    }

    void set_seed(std::uint64_t seed) override {
        Device::set_seed(seed);
        rng_ = Rng(seed);
    }

    /** Quadrature means (x_0, p_0, ...). */
    const std::vector<double>& means() const { return means_; }
    /** Quadrature covariance matrix. */
    const RMatrix& cov() const { return cov_; }

  protected:
    void reset() override {
        means_.assign(2 * num_wires(), 0.0);
        cov_ = RMatrix::identity(2 * num_wires());
        samples_.clear();
    }

    void apply(const std::vector<GateApplication>& operations,
               const std::vector<GateApplication>& rotations) override {
        for (const GateApplication& op : operations) {
            apply_gate(op);
        }
        for (const GateApplication& op : rotations) {
            apply_gate(op);
        }
    }

    void generate_samples() override {
        const std::size_t dim = 2 * num_wires();
        RMatrix chol = cholesky_lower(cov_);
        samples_.assign(shots(), std::vector<double>(dim));
        std::vector<double> z(dim);
        for (std::size_t s = 0; s < shots(); ++s) {
            for (double& v : z) {
                v = rng_.normal();
            }
            for (std::size_t i = 0; i < dim; ++i) {
                double acc = means_[i];
                for (std::size_t j = 0; j <= i; ++j) {
                    acc += chol(i, j) * z[j];
                }
                samples_[s][i] = acc;
            }
        }
    }

    ExecutionResult statistics(const std::vector<Measurement>& measurements) override {
        ExecutionResult result;
        result.entries.reserve(measurements.size());
        for (const Measurement& m : measurements) {
            CVObservableRep rep = m.observable.cv_rep();
            std::vector<std::size_t> pos = quad_positions(m.observable.wires());
            ResultEntry entry;
            entry.kind = m.kind;
            switch (m.kind) {
            case MeasurementKind::Expectation:
                entry.data = {shots() > 0 ? sampled_mean(rep, pos)
                                          : analytic_expectation(rep, pos)};
                break;
            case MeasurementKind::Variance:
                // Sample variance of a second-order polynomial misses the
                // operator-ordering contribution, so that case stays analytic.
                if (shots() > 0 && rep.order == CVOrder::First) {
                    entry.data = {sampled_variance(rep, pos)};
                } else {
                    entry.data = {analytic_variance(rep, pos)};
                }
                break;
            case MeasurementKind::Sample:
                if (rep.order != CVOrder::First) {
                    raise(ErrorKind::UnsupportedObservable,
                          "cannot sample second-order observable " + m.observable.name());
                }
                entry.data.resize(samples_.size());
                for (std::size_t s = 0; s < samples_.size(); ++s) {
                    entry.data[s] = sample_value(rep, pos, samples_[s]);
                }
                break;
            }
            result.entries.push_back(std::move(entry));
        }
        return result;
    }

  private:
    void apply_gate(const GateApplication& op) {
        if (!op.def_ptr()->heisenberg_fn) {
            raise(ErrorKind::NotGaussian, op.name() + " has no Heisenberg representation");
        }
        RMatrix local = op.def_ptr()->heisenberg_fn(op.param_values());
        std::vector<std::size_t> pos = quad_positions(op.wires());
        const std::size_t dim = 2 * num_wires();

        RMatrix s = RMatrix::identity(dim);
        std::vector<double> d(dim, 0.0);
        for (std::size_t i = 0; i < pos.size(); ++i) {
            d[pos[i]] = local(1 + i, 0);
            for (std::size_t j = 0; j < pos.size(); ++j) {
                s(pos[i], pos[j]) = local(1 + i, 1 + j);
            }
        }

        std::vector<double> new_means = matvec(s, means_);
        for (std::size_t i = 0; i < dim; ++i) {
            new_means[i] += d[i];
        }
        means_ = std::move(new_means);
        cov_ = matmul(matmul(s, cov_), transpose(s));
    }

    /** Global quadrature positions of the listed wires, listed order. */
    std::vector<std::size_t> quad_positions(const std::vector<Wire>& wires) const {
        std::vector<std::size_t> pos;
        pos.reserve(2 * wires.size());
        for (Wire w : wires) {
            pos.push_back(2 * w);
            pos.push_back(2 * w + 1);
        }
        return pos;
    }

    std::vector<double> local_means(const std::vector<std::size_t>& pos) const {
        std::vector<double> mu(pos.size());
        for (std::size_t i = 0; i < pos.size(); ++i) {
            mu[i] = means_[pos[i]];
        }
        return mu;
    }

    RMatrix local_cov(const std::vector<std::size_t>& pos) const {
        RMatrix sigma(pos.size(), pos.size());
        for (std::size_t i = 0; i < pos.size(); ++i) {
            for (std::size_t j = 0; j < pos.size(); ++j) {
                sigma(i, j) = cov_(pos[i], pos[j]);
            }
        }
        return sigma;
    }

    double analytic_expectation(const CVObservableRep& rep,
                                const std::vector<std::size_t>& pos) const {
        std::vector<double> mu = local_means(pos);
        if (rep.order == CVOrder::First) {
            double acc = rep.vec[0];
            for (std::size_t i = 0; i < mu.size(); ++i) {
                acc += rep.vec[1 + i] * mu[i];
            }
            return acc;
        }
        RMatrix sigma = local_cov(pos);
        double acc = rep.mat(0, 0);
        for (std::size_t i = 0; i < mu.size(); ++i) {
            acc += 2.0 * rep.mat(0, 1 + i) * mu[i];
        }
        for (std::size_t i = 0; i < mu.size(); ++i) {
            for (std::size_t j = 0; j < mu.size(); ++j) {
                acc += rep.mat(1 + i, 1 + j) * (sigma(i, j) + mu[i] * mu[j]);
            }
        }
        return acc;
    }

    double analytic_variance(const CVObservableRep& rep,
                             const std::vector<std::size_t>& pos) const {
        std::vector<double> mu = local_means(pos);
        RMatrix sigma = local_cov(pos);
        const std::size_t k = mu.size();
        if (rep.order == CVOrder::First) {
            double acc = 0.0;
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = 0; j < k; ++j) {
                    acc += rep.vec[1 + i] * sigma(i, j) * rep.vec[1 + j];
                }
            }
            return acc;
        }

        // For H = c + b.r + r^T A r (symmetrized), on a Gaussian state:
        //   Var H = b^T S b + 4 mu^T A S b + 2 Tr(A S A S)
        //         + 2 Tr(A W A W) + 4 mu^T A S A mu
        // with S the covariance and W the symplectic form; the W term is the
        // operator-ordering contribution absent from the classical moment.
        RMatrix a(k, k);
        std::vector<double> b(k);
        for (std::size_t i = 0; i < k; ++i) {
            b[i] = 2.0 * rep.mat(0, 1 + i);
            for (std::size_t j = 0; j < k; ++j) {
                a(i, j) = rep.mat(1 + i, 1 + j);
            }
        }
        RMatrix omega(k, k);
        for (std::size_t m = 0; m + 1 < k; m += 2) {
            omega(m, m + 1) = 1.0;
            omega(m + 1, m) = -1.0;
        }

        std::vector<double> sb = matvec(sigma, b);
        std::vector<double> amu = matvec(a, mu);
        RMatrix as = matmul(a, sigma);
        RMatrix aw = matmul(a, omega);

        double var = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            var += b[i] * sb[i];
            var += 4.0 * amu[i] * sb[i];
        }
        std::vector<double> s_amu = matvec(sigma, amu);
        for (std::size_t i = 0; i < k; ++i) {
            var += 4.0 * amu[i] * s_amu[i];
        }
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                var += 2.0 * as(i, j) * as(j, i);
                var += 2.0 * aw(i, j) * aw(j, i);
            }
        }
        return var;
    }

    double sample_value(const CVObservableRep& rep, const std::vector<std::size_t>& pos,
                        const std::vector<double>& sample) const {
        if (rep.order == CVOrder::First) {
            double acc = rep.vec[0];
            for (std::size_t i = 0; i < pos.size(); ++i) {
                acc += rep.vec[1 + i] * sample[pos[i]];
            }
            return acc;
        }
        double acc = rep.mat(0, 0);
        for (std::size_t i = 0; i < pos.size(); ++i) {
            acc += 2.0 * rep.mat(0, 1 + i) * sample[pos[i]];
            for (std::size_t j = 0; j < pos.size(); ++j) {
                acc += rep.mat(1 + i, 1 + j) * sample[pos[i]] * sample[pos[j]];
            }
        }
        return acc;
    }

    double sampled_mean(const CVObservableRep& rep, const std::vector<std::size_t>& pos) const {
        double acc = 0.0;
        for (const std::vector<double>& s : samples_) {
            acc += sample_value(rep, pos, s);
        }
        return acc / static_cast<double>(samples_.size());
    }

    double sampled_variance(const CVObservableRep& rep,
                            const std::vector<std::size_t>& pos) const {
        double mu = sampled_mean(rep, pos);
        double acc = 0.0;
        for (const std::vector<double>& s : samples_) {
            double v = sample_value(rep, pos, s) - mu;
            acc += v * v;
        }
        return acc / static_cast<double>(samples_.size());
    }

    std::vector<double> means_;
    RMatrix cov_;
    std::vector<std::vector<double>> samples_;
    Rng rng_;
};

/** Registers "default.gaussian" exactly once per process. */
inline void ensure_default_gaussian() {
    static const bool once = [] {
        DeviceRegistry::instance().register_device(
            GaussianDevice::make_descriptor(),
            [](const DeviceConfig& config) { return std::make_unique<GaussianDevice>(config); });
        return true;
    }();
    (void)once;
}

} // namespace qgrad
