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

// Command-line front end: lists devices and runs the optimization demos,
// writing traces to stdout or a file. Exit codes: 0 success, 1 validation
// error (bad flags or config), 2 runtime error.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qgrad/qgrad.hpp"

namespace {

struct CliOptions {
    qgrad::RunConfig config;
    std::string hamiltonian_file;
    std::string data_file;
};

void emit(const qgrad::Trace& trace, const qgrad::RunConfig& config) {
    std::string text = qgrad::emit_trace(trace, config.format);
    if (config.out.empty()) {
        std::cout << text;
    } else {
        qgrad::write_text_file(config.out, text);
        std::cout << "trace written to " << config.out << "\n";
    }
    auto it = trace.config.find("ground_energy");
    if (it != trace.config.end()) {
        std::cout << "ground energy (dense diagonalization): " << it->second << "\n";
    }
}

void add_run_flags(CLI::App* cmd, CliOptions& opts) {
    cmd->add_option("--device", opts.config.device, "device short name")
        ->default_val("default.qubit");
    cmd->add_option("--shots", opts.config.shots,
                    "samples per evaluation; 0 means exact statistics");
    cmd->add_option("--seed", opts.config.seed, "random seed");
    cmd->add_option("--steps", opts.config.steps, "optimization steps (demo default if unset)");
    cmd->add_option("--lr", opts.config.lr, "learning rate (demo default if unset)");
    cmd->add_option("--optimizer", opts.config.optimizer,
                    "gd|momentum|nesterov|adagrad|rmsprop|adam (demo default if unset)");
    cmd->add_option("--out", opts.config.out, "output file; stdout if unset");
    cmd->add_option("--format", opts.config.format, "trace format: csv or json")
        ->default_val("csv");
}

int list_devices() {
    for (const qgrad::DeviceDescriptor& d : qgrad::device_descriptors()) {
        std::cout << d.short_name << "\t" << d.name << "\t(model: " << d.capability("model")
                  << ", version " << d.version << ")\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qgrad: variational quantum circuits with automatic differentiation"};
    app.require_subcommand(1);

    CliOptions opts;

    CLI::App* devices = app.add_subcommand("devices", "list registered devices");

    CLI::App* run = app.add_subcommand("run", "run a demo and emit its optimization trace");
    run->require_subcommand(1);

    CLI::App* rotation =
        run->add_subcommand("qubit-rotation", "optimize two rotation angles to flip a qubit");
    add_run_flags(rotation, opts);

    CLI::App* vqe = run->add_subcommand("vqe", "variational eigensolver on a Pauli Hamiltonian");
    vqe->add_option("--hamiltonian", opts.hamiltonian_file, "Hamiltonian text file")
        ->required();
    add_run_flags(vqe, opts);

    CLI::App* classifier =
        run->add_subcommand("classifier", "variational classifier on a labeled CSV dataset");
    classifier->add_option("--data", opts.data_file, "CSV dataset: features then a +-1 label")
        ->required();
    add_run_flags(classifier, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (devices->parsed()) {
            return list_devices();
        }
        if (rotation->parsed()) {
            emit(qgrad::run_qubit_rotation(opts.config), opts.config);
            return 0;
        }
        if (vqe->parsed()) {
            emit(qgrad::run_vqe(opts.config, qgrad::read_text_file(opts.hamiltonian_file)),
                 opts.config);
            return 0;
        }
        if (classifier->parsed()) {
            emit(qgrad::run_classifier(opts.config, qgrad::read_text_file(opts.data_file)),
                 opts.config);
            return 0;
        }
    } catch (const qgrad::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
        case qgrad::ErrorKind::InvalidConfig:
            return 1;
        default:
            return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
