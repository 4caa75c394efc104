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

#include <cmath>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "support/test_helpers.hpp"

using namespace qgrad;
using qgrad_test::error_kind_of;
using qgrad_test::make_qubit;
using qgrad_test::read_fixture;

namespace {

/** Angle embedding plus one entangling layer over two wires. */
const Ansatz kTwoWireAnsatz = [](const std::vector<ParamTensor>& args) {
    std::vector<GateApplication> ops = angle_embedding(args[0], {0, 1});
    ops.push_back(gate("CNOT", {}, {0, 1}));
    return ops;
};

std::vector<Tensor> two_angles() { return {Tensor({2}, {0.4, -0.7})}; }

std::string parse_error_message(const std::string& text) {
    try {
        parse_hamiltonian(text);
    } catch (const Error& e) {
        REQUIRE(e.kind() == ErrorKind::ParseError);
        return e.what();
    }
    FAIL("expected a parse error");
    return "";
}

} // namespace

TEST_CASE("mapping an ansatz over observables yields one qnode per observable") {
    auto dev = make_qubit(2);
    std::vector<Observable> observables{observable("PauliZ", {0}), observable("PauliZ", {1}),
                                        observable("PauliX", {0})};
    QNodeCollection collection = map_ansatz(kTwoWireAnsatz, observables, dev);
    REQUIRE(collection.size() == 3);

    Tensor out = collection.evaluate(two_angles());
    REQUIRE(out.size() == 3);
    // <Z0> = cos a, <Z1> = cos a cos b after the CNOT, <X0> = 0.
    REQUIRE(std::abs(out.data()[0] - std::cos(0.4)) < 1e-12);
    REQUIRE(std::abs(out.data()[1] - std::cos(0.4) * std::cos(-0.7)) < 1e-12);
    REQUIRE(std::abs(out.data()[2]) < 1e-12);

    // The shared-device overload clones: the original device never runs.
    REQUIRE(dev->num_executions() == 0);
}

TEST_CASE("the device-list overload pairs devices with observables") {
    auto d0 = make_qubit(2);
    auto d1 = make_qubit(2);
    std::vector<Observable> observables{observable("PauliZ", {0}), observable("PauliZ", {1})};

    REQUIRE(error_kind_of([&] {
        map_ansatz(kTwoWireAnsatz, observables, std::vector<std::shared_ptr<Device>>{d0});
    }) == ErrorKind::LengthMismatch);

    QNodeCollection collection =
        map_ansatz(kTwoWireAnsatz, observables, std::vector<std::shared_ptr<Device>>{d0, d1});
    // Construction is lazy: nothing executes until evaluate().
    REQUIRE(d0->num_executions() == 0);
    REQUIRE(d1->num_executions() == 0);
    collection.evaluate(two_angles());
    REQUIRE(d0->num_executions() == 1);
    REQUIRE(d1->num_executions() == 1);
}

TEST_CASE("parallel evaluation matches sequential bitwise") {
    auto dev = make_qubit(2);
    std::vector<Observable> observables{
        observable("PauliZ", {0}), observable("PauliX", {1}), observable("PauliY", {0}),
        tensor_observable({observable("PauliZ", {0}), observable("PauliZ", {1})})};
    Ansatz ansatz = [](const std::vector<ParamTensor>& args) {
        std::vector<GateApplication> ops = angle_embedding(args[0], {0, 1});
        for (GateApplication& g :
             strongly_entangling_layers(ParamTensor(args[1].values(), 2), {0, 1})) {
            ops.push_back(std::move(g));
        }
        return ops;
    };
    QNodeCollection collection = map_ansatz(ansatz, observables, dev);
    std::vector<Tensor> args{Tensor({2}, {0.3, 1.1}),
                             init_strong_ent_layers_uniform(2, 2, 5, -1.0, 1.0)};
    Tensor sequential = collection.evaluate(args, false);
    Tensor parallel = collection.evaluate(args, true);
    REQUIRE(sequential.data() == parallel.data());
}

TEST_CASE("worker exceptions surface from parallel evaluation") {
    auto dev = make_qubit(2);
    Ansatz rogue = [](const std::vector<ParamTensor>&) {
        return std::vector<GateApplication>{gate("PauliX", {}, {5})};
    };
    QNodeCollection collection =
        map_ansatz(rogue, {observable("PauliZ", {0})}, dev);
    REQUIRE(error_kind_of([&] { collection.evaluate({}, true); }) ==
            ErrorKind::WireOutOfRange);
}

TEST_CASE("hybrid compositions stay lazy until evaluated") {
    auto d0 = make_qubit(2);
    auto d1 = make_qubit(2);
    std::vector<Observable> observables{observable("PauliZ", {0}), observable("PauliZ", {1})};
    QNodeCollection collection =
        map_ansatz(kTwoWireAnsatz, observables, std::vector<std::shared_ptr<Device>>{d0, d1});

    HybridFunction tree = dot({0.5, -2.0}, apply("sin", HybridFunction::wrap(collection)));
    REQUIRE(tree.output_size() == 1);
    REQUIRE(d0->num_executions() == 0);
    REQUIRE(d1->num_executions() == 0);

    std::vector<Tensor> args = two_angles();
    Tensor raw = collection.evaluate(args);
    double expected = 0.5 * std::sin(raw.data()[0]) - 2.0 * std::sin(raw.data()[1]);
    REQUIRE(std::abs(tree.evaluate(args).scalar() - expected) < 1e-12);

    HybridFunction total = sum(apply("square", HybridFunction::wrap(collection)));
    double squares = raw.data()[0] * raw.data()[0] + raw.data()[1] * raw.data()[1];
    REQUIRE(std::abs(total.evaluate(args).scalar() - squares) < 1e-12);
}

TEST_CASE("hybrid composition errors are raised at construction") {
    auto dev = make_qubit(2);
    QNodeCollection collection =
        map_ansatz(kTwoWireAnsatz, {observable("PauliZ", {0}), observable("PauliZ", {1})}, dev);
    REQUIRE(error_kind_of([&] { apply("tan", HybridFunction::wrap(collection)); }) ==
            ErrorKind::InvalidParameter);
    REQUIRE(error_kind_of([&] {
        dot({1.0, 2.0, 3.0}, HybridFunction::wrap(collection));
    }) == ErrorKind::LengthMismatch);
}

TEST_CASE("recorded compositions differentiate like their evaluations") {
    auto dev = make_qubit(2);
    QNodeCollection collection =
        map_ansatz(kTwoWireAnsatz, {observable("PauliZ", {0}), observable("PauliZ", {1})}, dev);
    HybridFunction tree = dot({0.7, 1.3}, apply("sin", HybridFunction::wrap(collection)));

    std::vector<Tensor> args = two_angles();
    ad::GradResult r = ad::value_and_grad(tree.cost_fn(), args);
    REQUIRE(std::abs(r.value - tree.evaluate(args).scalar()) < 1e-12);
    std::vector<Tensor> fd = qgrad_test::fd_gradients(tree.cost_fn(), args, 1e-6);
    for (std::size_t i = 0; i < 2; ++i) {
        REQUIRE(std::abs(r.gradients[0].data()[i] - fd[0].data()[i]) < 1e-6);
    }
}

TEST_CASE("gradients flow linearly through weighted sums") {
    auto dev = make_qubit(2);
    std::vector<Observable> observables{observable("PauliZ", {0}), observable("PauliZ", {1})};
    QNodeCollection collection = map_ansatz(kTwoWireAnsatz, observables, dev);
    std::vector<double> coeffs{0.9, -1.7};
    HybridFunction tree = dot(coeffs, HybridFunction::wrap(collection));

    std::vector<Tensor> args = two_angles();
    ad::GradResult combined = ad::value_and_grad(tree.cost_fn(), args);

    // Differentiate each member alone and combine by hand.
    Tensor manual = Tensor::zeros({2});
    for (std::size_t i = 0; i < observables.size(); ++i) {
        const QNode& qnode = collection.at(i);
        ad::GradResult single = ad::value_and_grad(
            [&qnode](const std::vector<ad::Var>& v) { return ad::sum(ad::qnode_call(qnode, v)); },
            args);
        for (std::size_t j = 0; j < 2; ++j) {
            manual.data()[j] += coeffs[i] * single.gradients[0].data()[j];
        }
    }
    for (std::size_t j = 0; j < 2; ++j) {
        REQUIRE(std::abs(combined.gradients[0].data()[j] - manual.data()[j]) < 1e-8);
    }
}

TEST_CASE("hamiltonian text round-trips through parse and format") {
    std::string text = read_fixture("toy2q.txt");
    Hamiltonian h = parse_hamiltonian(text);
    REQUIRE(h.coeffs.size() == 6);
    REQUIRE(h.num_wires() == 2);

    Hamiltonian again = parse_hamiltonian(format_hamiltonian(h));
    REQUIRE(again.coeffs == h.coeffs);
    REQUIRE(again.terms.size() == h.terms.size());
    for (std::size_t i = 0; i < h.terms.size(); ++i) {
        REQUIRE(again.terms[i].size() == h.terms[i].size());
        for (std::size_t j = 0; j < h.terms[i].size(); ++j) {
            REQUIRE(again.terms[i][j].pauli == h.terms[i][j].pauli);
            REQUIRE(again.terms[i][j].wire == h.terms[i][j].wire);
        }
    }

    // Comments and blank lines vanish; identity terms read as empty words.
    Hamiltonian sparse = parse_hamiltonian("# header\n\n0.25 I\n-1.5 Z0 X2\n");
    REQUIRE(sparse.coeffs == std::vector<double>{0.25, -1.5});
    REQUIRE(sparse.terms[0].empty());
    REQUIRE(sparse.terms[1].size() == 2);
    REQUIRE(sparse.num_wires() == 3);
}

TEST_CASE("parse errors carry one-based line numbers") {
    REQUIRE(parse_error_message("nope Z0\n").find("line 1: bad coefficient 'nope'") !=
            std::string::npos);
    REQUIRE(parse_error_message("# ok\n\n0.5 Q0\n").find("line 3: bad factor 'Q0'") !=
            std::string::npos);
    REQUIRE(parse_error_message("0.5 Z\n").find("bad factor 'Z'") != std::string::npos);
    REQUIRE(parse_error_message("0.5 Z1x\n").find("bad factor 'Z1x'") != std::string::npos);
    REQUIRE(parse_error_message("0.5 Z0 X0\n").find("line 1: wire 0 repeated in one term") !=
            std::string::npos);
    REQUIRE(parse_error_message("0.5\n").find("line 1: coefficient without factors") !=
            std::string::npos);
}

TEST_CASE("pauli words become measurable observables") {
    Observable identity = word_observable({});
    REQUIRE(identity.factors().size() == 1);
    REQUIRE(identity.factors()[0].def->name == "Identity");

    Observable zz = word_observable({PauliFactor{'Z', 0}, PauliFactor{'X', 3}});
    REQUIRE(zz.factors().size() == 2);
    REQUIRE(zz.factors()[0].def->name == "PauliZ");
    REQUIRE(zz.factors()[1].def->name == "PauliX");
    REQUIRE(zz.factors()[1].wires == std::vector<Wire>{3});
}

TEST_CASE("dense hamiltonian matrices put wire zero on the left") {
    CMatrix z0 = hamiltonian_matrix(parse_hamiltonian("0.5 Z0\n"), 2);
    for (std::size_t i = 0; i < 4; ++i) {
        double expected = i < 2 ? 0.5 : -0.5;
        REQUIRE(std::abs(z0(i, i) - Complex(expected, 0.0)) < 1e-15);
    }

    CMatrix xx = hamiltonian_matrix(parse_hamiltonian("1.0 X0 X1\n"), 2);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            double expected = (i + j == 3) ? 1.0 : 0.0;
            REQUIRE(std::abs(xx(i, j) - Complex(expected, 0.0)) < 1e-15);
        }
    }
}

TEST_CASE("dense diagonalization pins known ground energies") {
    REQUIRE(std::abs(ground_energy(parse_hamiltonian(read_fixture("toy2q.txt"))) -
                     (-0.9602325267042626)) < 1e-12);
    REQUIRE(std::abs(ground_energy(parse_hamiltonian("0.5 Z0\n0.5 Z1\n0.8 X0 X1\n")) -
                     (-1.2806248474865698)) < 1e-12);
    REQUIRE(std::abs(ground_energy(parse_hamiltonian("0.3 X0\n0.4 Z0\n")) - (-0.5)) < 1e-12);
}

namespace {

/** Two entangling layers over two wires; one weight tensor argument. */
const Ansatz kVqeAnsatz = [](const std::vector<ParamTensor>& args) {
    return strongly_entangling_layers(args[0], {0, 1});
};

} // namespace

TEST_CASE("the fused expectation cost matches the mapped collection") {
    Hamiltonian h = parse_hamiltonian(read_fixture("toy2q.txt"));
    auto shared = make_qubit(2);
    VQECost vqe(kVqeAnsatz, h, shared);
    REQUIRE(shared->num_executions() == 0); // construction stays lazy

    std::vector<Tensor> args{init_strong_ent_layers_uniform(2, 2, 21, -1.0, 1.0)};
    double fused = vqe.value(args);
    REQUIRE(shared->num_executions() == h.terms.size());

    std::vector<Observable> observables;
    for (const PauliWord& word : h.terms) {
        observables.push_back(word_observable(word));
    }
    QNodeCollection mapped = map_ansatz(kVqeAnsatz, observables, make_qubit(2));
    HybridFunction tree = dot(h.coeffs, HybridFunction::wrap(mapped));
    REQUIRE(std::abs(fused - tree.evaluate(args).scalar()) < 1e-12);

    // The recorded costs and their gradients agree too.
    ad::GradResult a = ad::value_and_grad(vqe.cost_fn(), args);
    ad::GradResult b = ad::value_and_grad(tree.cost_fn(), args);
    REQUIRE(std::abs(a.value - b.value) < 1e-12);
    for (std::size_t i = 0; i < args[0].size(); ++i) {
        REQUIRE(std::abs(a.gradients[0].data()[i] - b.gradients[0].data()[i]) < 1e-12);
    }
    REQUIRE(std::abs(a.value - fused) < 1e-12);
}

TEST_CASE("the expectation cost is linear in the coefficients") {
    Hamiltonian h = parse_hamiltonian("0.5 Z0\n0.5 Z1\n0.8 X0 X1\n");
    Hamiltonian doubled = h;
    for (double& c : doubled.coeffs) {
        c *= 2.0;
    }
    std::vector<Tensor> args{init_strong_ent_layers_uniform(1, 2, 3, -1.0, 1.0)};
    double base = VQECost(kVqeAnsatz, h, make_qubit(2)).value(args);
    double twice = VQECost(kVqeAnsatz, doubled, make_qubit(2)).value(args);
    REQUIRE(std::abs(twice - 2.0 * base) < 1e-12);
}

TEST_CASE("hamiltonian terms must fit on the cost's device") {
    Hamiltonian wide = parse_hamiltonian("1.0 Z0 Z3\n");
    REQUIRE(error_kind_of([&] { VQECost(kVqeAnsatz, wide, make_qubit(2)); }) ==
            ErrorKind::UnsupportedObservable);
}
