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

// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line
// with its measured error, its pinned tolerance, and its runtime; the
// process exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "support/test_helpers.hpp"

using namespace qgrad;
using qgrad_test::make_gaussian;
using qgrad_test::make_qubit;

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.2e", v);
    return buffer;
}

/** The two-angle rotation circuit: RX(a) RY(b) on one wire, <Z>. */
QNode rotation_qnode(std::shared_ptr<Device> dev) {
    return QNode(
        [](const std::vector<ParamTensor>& args, const Kwargs&) {
            return build_tape({gate("RX", {args[0][0]}, {0}), gate("RY", {args[1][0]}, {0})},
                              {expval(observable("PauliZ", {0}))}, 1);
        },
        std::move(dev));
}

// 1. Device output equals cos(a) cos(b) within 1e-10 on a 10x10 grid.
Outcome closed_form_expectation() {
    QNode qnode = rotation_qnode(make_qubit(1));
    double max_err = 0.0;
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            double a = kTau * i / 10.0, b = kTau * j / 10.0;
            double got = qnode({Tensor(a), Tensor(b)})[0];
            max_err = std::max(max_err, std::abs(got - std::cos(a) * std::cos(b)));
        }
    }
    return {max_err < 1e-10, "max |error| " + fmt(max_err) + " (tol 1e-10)"};
}

// 2. Shift gradients equal (-sin a cos b, -cos a sin b) within 1e-10 and
//    centered differences (step 1e-6) within 1e-6, grid-wide.
Outcome shift_rule_exactness() {
    QNode analytic = rotation_qnode(make_qubit(1));
    analytic.set_diff_method(DiffMethod::Analytic);
    QNode centered = rotation_qnode(make_qubit(1));
    centered.set_diff_method(DiffMethod::CenteredFD);
    centered.set_fd_options(FDOptions{1e-6});

    double max_closed = 0.0, max_fd = 0.0;
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            double a = kTau * i / 10.0, b = kTau * j / 10.0;
            std::vector<Tensor> args{Tensor(a), Tensor(b)};
            RMatrix jac = analytic.jacobian(args);
            max_closed = std::max(max_closed,
                                  std::abs(jac(0, 0) - (-std::sin(a) * std::cos(b))));
            max_closed = std::max(max_closed,
                                  std::abs(jac(0, 1) - (-std::cos(a) * std::sin(b))));
            RMatrix fd = centered.jacobian(args);
            max_fd = std::max(max_fd, qgrad_test::matrix_diff(jac, fd));
        }
    }
    bool pass = max_closed < 1e-10 && max_fd < 1e-6;
    return {pass, "closed-form dev " + fmt(max_closed) + " (tol 1e-10), fd dev " +
                      fmt(max_fd) + " (tol 1e-6)"};
}

// 3. One Jacobian of a k-parameter circuit runs exactly 1 + 2k executions.
Outcome evaluation_count() {
    auto dev = make_qubit(2);
    for (std::size_t k : {2u, 3u}) {
        std::vector<GateApplication> ops;
        const char* names[] = {"RX", "RY", "RZ"};
        for (std::size_t p = 0; p < k; ++p) {
            ops.push_back(gate(names[p % 3], {Param(0.3 + 0.1 * p, static_cast<int>(p))},
                               {static_cast<Wire>(p % 2)}));
        }
        QuantumTape tape = build_tape(ops, {expval(observable("PauliZ", {0}))}, 2);
        std::size_t before = dev->num_executions();
        tape_jacobian(*dev, tape, k, DiffMethod::Analytic);
        std::size_t used = dev->num_executions() - before;
        if (used != 1 + 2 * k) {
            return {false, "k=" + std::to_string(k) + " used " + std::to_string(used) +
                               " executions, expected " + std::to_string(1 + 2 * k)};
        }
    }
    return {true, "1 + 2k executions for k = 2 and k = 3"};
}

// 4. Shot-mean variance over 200 repetitions matches Var/R within [0.7, 1.4]
//    for the Hadamard <Z> estimator (Var = 1).
Outcome estimator_statistics() {
    std::ostringstream detail;
    bool pass = true;
    for (std::size_t shots : {100u, 1000u, 10000u}) {
        auto dev = make_qubit(1, shots, 0x5eed + shots);
        QuantumTape tape = build_tape({gate("Hadamard", {}, {0})},
                                      {expval(observable("PauliZ", {0}))}, 1);
        const int reps = 200;
        std::vector<double> means;
        means.reserve(reps);
        for (int r = 0; r < reps; ++r) {
            means.push_back(dev->execute(tape).flat()[0]);
        }
        double mean = 0.0;
        for (double m : means) {
            mean += m;
        }
        mean /= reps;
        double var = 0.0;
        for (double m : means) {
            var += (m - mean) * (m - mean);
        }
        var /= reps - 1;
        double ratio = var * static_cast<double>(shots); // exact Var[Z] is 1
        pass = pass && ratio >= 0.7 && ratio <= 1.4;
        detail << (shots == 100 ? "" : ", ") << "R=" << shots << " ratio " << fmt(ratio);
    }
    return {pass, detail.str() + " (window [0.7, 1.4])"};
}

// 5. Two-input, two-expectation QNode gives a 2x2 Jacobian; a two-input
//    scalar QNode gives a length-2 gradient.
Outcome jacobian_shape() {
    QNode pair = qgrad_test::make_recipe_qnode(make_qubit(2));
    RMatrix jac = pair.jacobian({Tensor(0.2), Tensor(0.4)});
    bool shape_ok = jac.rows() == 2 && jac.cols() == 2;

    QNode scalar = rotation_qnode(make_qubit(1));
    ad::GradResult r = ad::value_and_grad(
        [&scalar](const std::vector<ad::Var>& v) {
            return ad::pick(ad::qnode_call(scalar, v), 0);
        },
        {Tensor(0.2), Tensor(0.4)});
    bool grad_ok = r.gradients.size() == 2 && r.gradients[0].size() == 1 &&
                   r.gradients[1].size() == 1;
    return {shape_ok && grad_ok,
            std::string("jacobian ") + std::to_string(jac.rows()) + "x" +
                std::to_string(jac.cols()) + ", gradient length " +
                std::to_string(r.gradients.size())};
}

// 6. Gradient descent (step 0.4) from (0.011, 0.012) drives <Z> below
//    -0.999 within 100 steps.
Outcome qubit_flip_optimization() {
    QNode qnode = rotation_qnode(make_qubit(1));
    ad::CostFn cost = [&qnode](const std::vector<ad::Var>& v) {
        return ad::pick(ad::qnode_call(qnode, v), 0);
    };
    Optimizer opt = make_optimizer("gd", 0.4);
    std::vector<Tensor> params{Tensor(0.011), Tensor(0.012)};
    for (int s = 1; s <= 100; ++s) {
        params = opt.step(cost, params);
        double value = qnode(params)[0];
        if (value < -0.999) {
            return {true, "cost " + fmt(value) + " after " + std::to_string(s) + " steps"};
        }
    }
    return {false, "cost " + fmt(qnode(params)[0]) + " after 100 steps (needs < -0.999)"};
}

// 7. VQE on the two-qubit fixture lands within 1e-3 of the dense ground
//    energy, and the fused cost matches map+dot within 1e-12.
Outcome vqe_oracle() {
    std::string text = qgrad_test::read_fixture("toy2q.txt");
    RunConfig cfg; // demo defaults: adam, step 0.1, 200 steps, seed 42
    Trace trace = run_vqe(cfg, text);
    double ground = std::stod(trace.config.at("ground_energy"));
    double final_energy = trace.rows.back()[1];
    double gap = std::abs(final_energy - ground);

    Hamiltonian h = parse_hamiltonian(text);
    Ansatz ansatz = [](const std::vector<ParamTensor>& args) {
        return strongly_entangling_layers(args[0], {0, 1});
    };
    std::vector<Tensor> params{init_strong_ent_layers_uniform(2, 2, 7)};
    double fused = VQECost(ansatz, h, make_qubit(2)).value(params);
    std::vector<Observable> observables;
    for (const PauliWord& word : h.terms) {
        observables.push_back(word_observable(word));
    }
    HybridFunction mapped =
        dot(h.coeffs, HybridFunction::wrap(map_ansatz(ansatz, observables, make_qubit(2))));
    double split = mapped.evaluate(params).scalar();
    double agreement = std::abs(fused - split);

    bool pass = gap < 1e-3 && agreement < 1e-12;
    return {pass, "energy gap " + fmt(gap) + " (tol 1e-3), fused-vs-mapped " +
                      fmt(agreement) + " (tol 1e-12)"};
}

// 8. Fifty random hybrid programs match centered differences within 1e-5
//    relative error.
Outcome hybrid_gradients() {
    Rng rng(4242);
    auto dev = make_qubit(2);
    QNode qnode = qgrad_test::make_recipe_qnode(dev);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        qgrad_test::HybridRecipe recipe = qgrad_test::random_recipe(rng);
        std::vector<Tensor> args;
        for (std::size_t k = 0; k < recipe.n_args; ++k) {
            args.emplace_back(rng.uniform(-1.0, 1.0));
        }
        ad::CostFn cost = qgrad_test::recipe_cost(recipe, qnode);
        ad::GradResult r = ad::value_and_grad(cost, args);
        std::vector<Tensor> fd = qgrad_test::fd_gradients(cost, args, 1e-6);
        for (std::size_t k = 0; k < args.size(); ++k) {
            for (std::size_t i = 0; i < args[k].size(); ++i) {
                double got = r.gradients[k].data()[i];
                double want = fd[k].data()[i];
                worst = std::max(worst,
                                 std::abs(got - want) / std::max(1.0, std::abs(want)));
            }
        }
    }
    return {worst < 1e-5, "50 programs, worst relative deviation " + fmt(worst) +
                              " (tol 1e-5)"};
}

// 9. Symplectic and uncertainty invariants over 100 random depth-10
//    Gaussian circuits; analytic CV gradients match FD within 1e-6.
Outcome gaussian_invariants() {
    Rng rng(90210);
    const std::size_t modes = 3;
    RMatrix omega = qgrad_test::symplectic_form(modes);
    auto dev = make_gaussian(modes);
    double max_symplectic = 0.0, min_eig = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<GateApplication> ops = qgrad_test::random_cv_circuit(rng, modes, 10);
        for (const GateApplication& g : ops) {
            std::vector<double> values;
            for (const Param& p : g.params()) {
                values.push_back(p.value);
            }
            RMatrix s = qgrad_test::symplectic_block(g.name(), values);
            RMatrix local_omega = qgrad_test::symplectic_form(g.wires().size());
            RMatrix lhs = matmul(matmul(s, local_omega), transpose(s));
            max_symplectic = std::max(max_symplectic,
                                      qgrad_test::matrix_diff(lhs, local_omega));
        }
        dev->execute(build_tape(ops, {expval(observable("X", {0}))}, modes));
        const RMatrix& cov = dynamic_cast<const GaussianDevice&>(*dev).cov();
        CMatrix c(2 * modes, 2 * modes);
        for (std::size_t i = 0; i < 2 * modes; ++i) {
            for (std::size_t j = 0; j < 2 * modes; ++j) {
                c(i, j) = Complex(cov(i, j), omega(i, j));
            }
        }
        std::vector<double> eigs = hermitian_eigensystem(c).eigenvalues;
        min_eig = std::min(min_eig, eigs.front());
    }
    bool invariants_ok = max_symplectic < 1e-8 && min_eig > -1e-8;

    // Analytic-slot gradients against centered differences.
    double max_grad_dev = 0.0;
    auto gdev = make_gaussian(2);
    struct AnalyticGate {
        const char* name;
        std::size_t extra_params;
        std::size_t wires;
    };
    const AnalyticGate menu[] = {
        {"Displacement", 1, 1}, {"Rotation", 0, 1}, {"Squeezing", 1, 1},
        {"Beamsplitter", 1, 2}};
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<GateApplication> ops;
        ops.push_back(gate("Displacement", {Param(0.4), Param(0.2)}, {0}));
        ops.push_back(gate("Displacement", {Param(-0.3), Param(0.1)}, {1}));
        int refs = 0;
        for (int d = 0; d < 4; ++d) {
            const AnalyticGate& g = menu[static_cast<std::size_t>(rng.uniform() * 4.0)];
            std::vector<Param> params{Param(rng.uniform(-0.6, 0.6), refs++)};
            for (std::size_t e = 0; e < g.extra_params; ++e) {
                params.emplace_back(rng.uniform(-0.5, 0.5)); // constant slot
            }
            std::vector<Wire> wires{static_cast<Wire>(rng.uniform() * 2.0)};
            if (g.wires == 2) {
                wires = {0, 1};
            }
            ops.push_back(gate(g.name, params, wires));
        }
        QuantumTape tape = build_tape(
            ops, {expval(observable("X", {0})), expval(observable("P", {1}))}, 2);
        RMatrix analytic =
            tape_jacobian(*gdev, tape, static_cast<std::size_t>(refs), DiffMethod::Analytic);
        RMatrix fd = tape_jacobian(*gdev, tape, static_cast<std::size_t>(refs),
                                   DiffMethod::CenteredFD, FDOptions{1e-6});
        max_grad_dev = std::max(max_grad_dev, qgrad_test::matrix_diff(analytic, fd));
    }
    bool grads_ok = max_grad_dev < 1e-6;
    return {invariants_ok && grads_ok,
            "symplectic dev " + fmt(max_symplectic) + ", min eig(cov + i omega) " +
                fmt(min_eig) + " (tol 1e-8), gradient dev " + fmt(max_grad_dev) +
                " (tol 1e-6)"};
}

// 10. First three iterates of all six optimizers on f(mu) = mu^2 match the
//     hand-derived table within 1e-9.
Outcome optimizer_oracle() {
    struct Row {
        OptimizerKind kind;
        double mu1, mu2, mu3;
    };
    const Row table[] = {
        {OptimizerKind::GD, 0.97999999999999998, 0.96040000000000003, 0.94119200000000003},
        {OptimizerKind::Momentum, 0.97999999999999998, 0.94240000000000002,
         0.88971200000000006},
        {OptimizerKind::Nesterov, 0.97999999999999998, 0.94275999999999993,
         0.89105911999999998},
        {OptimizerKind::Adagrad, 0.99000000001249999, 0.98296455403769545,
         0.97723793950888771},
        {OptimizerKind::RMSProp, 0.96837722379360092, 0.94578802527476147,
         0.92705309841679140},
        {OptimizerKind::Adam, 0.99000000005000000, 0.98000274599614745,
         0.97001009937839999},
    };
    ad::CostFn cost = [](const std::vector<ad::Var>& v) { return ad::square(v[0]); };
    double worst = 0.0;
    for (const Row& row : table) {
        Optimizer opt(row.kind);
        Tensor mu(1.0);
        for (double expected : {row.mu1, row.mu2, row.mu3}) {
            mu = opt.step(cost, mu);
            worst = std::max(worst, std::abs(mu.scalar() - expected));
        }
    }
    return {worst < 1e-9, "worst iterate deviation " + fmt(worst) + " (tol 1e-9)"};
}

// 11. The execution pipeline runs validity, reset, apply, sampling,
//     statistics in that exact order.
Outcome pipeline_conformance() {
    DeviceConfig config;
    config.wires = 2;
    config.shots = 5;
    qgrad_test::RecordingDevice sampled(config);
    QuantumTape tape = build_tape({gate("Hadamard", {}, {0}), gate("PauliX", {}, {1})},
                                  {expval(observable("PauliX", {0})),
                                   sample(observable("PauliZ", {1}))},
                                  2);
    sampled.execute(tape);
    const std::vector<std::string> want{"check_validity", "reset", "apply",
                                        "generate_samples", "statistics"};
    if (sampled.calls != want) {
        std::string got;
        for (const std::string& c : sampled.calls) {
            got += (got.empty() ? "" : " -> ") + c;
        }
        return {false, "sampled order was " + got};
    }
    if (sampled.last_operations.size() != 2 || sampled.last_rotations.size() != 1 ||
        sampled.last_rotations[0].name() != "Hadamard") {
        return {false, "operations or diagonalizing rotations not forwarded to apply"};
    }

    DeviceConfig exact_config;
    exact_config.wires = 2;
    qgrad_test::RecordingDevice exact(exact_config);
    exact.execute(build_tape({gate("PauliX", {}, {0})},
                             {expval(observable("PauliZ", {0}))}, 2));
    const std::vector<std::string> want_exact{"check_validity", "reset", "apply",
                                              "statistics"};
    if (exact.calls != want_exact) {
        return {false, "exact mode must skip sample generation"};
    }
    return {true, "validity -> reset -> apply -> samples -> statistics, exact mode skips "
                  "sampling"};
}

} // namespace

int main() {
    struct Criterion {
        const char* label;
        double time_limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"closed-form expectation grid", 1.0, closed_form_expectation},
        {"parameter-shift exactness", 1.0, shift_rule_exactness},
        {"jacobian evaluation count", 10.0, evaluation_count},
        {"estimator shot-noise scaling", 30.0, estimator_statistics},
        {"jacobian and gradient shapes", 10.0, jacobian_shape},
        {"qubit-flip optimization", 5.0, qubit_flip_optimization},
        {"vqe ground-energy oracle", 60.0, vqe_oracle},
        {"hybrid gradients vs fd oracle", 60.0, hybrid_gradients},
        {"gaussian invariants and gradients", 10.0, gaussian_invariants},
        {"optimizer iterate oracle", 10.0, optimizer_oracle},
        {"device pipeline conformance", 10.0, pipeline_conformance},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const Criterion& c = criteria[i];
        auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("raised: ") + e.what()};
        }
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_time = seconds <= c.time_limit_s;
        bool pass = outcome.pass && in_time;
        failures += pass ? 0 : 1;
        std::printf("[%s] %2zu. %s: %s [%.2f s, limit %.0f s]\n", pass ? "PASS" : "FAIL",
                    i + 1, c.label, outcome.detail.c_str(), seconds, c.time_limit_s);
        if (!in_time && outcome.pass) {
            std::printf("       exceeded its runtime limit\n");
        }
    }
    std::printf("acceptance: %zu/%zu criteria passed\n", criteria.size() - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
