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

// Rotates one qubit from |0> to |1> by gradient descent on <Z>.
// Usage: qubit_rotation [steps]

#include <iostream>
#include <string>

#include "qgrad/qgrad.hpp"

int main(int argc, char** argv) {
    qgrad::RunConfig config;
    config.demo = "qubit-rotation";
    if (argc > 1) {
        config.steps = std::stoul(argv[1]);
    }
    qgrad::Trace trace = qgrad::run_qubit_rotation(config);
    std::cout << qgrad::emit_trace(trace, "csv");
    return 0;
}
