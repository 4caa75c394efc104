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

// Trains a variational classifier on a labeled CSV dataset.
// Usage: hybrid_classifier [steps] [data-file]

#include <iostream>
#include <string>

#include "qgrad/qgrad.hpp"

int main(int argc, char** argv) {
    qgrad::RunConfig config;
    config.demo = "classifier";
    if (argc > 1) {
        config.steps = std::stoul(argv[1]);
    }
    std::string file = argc > 2 ? argv[2] : std::string(QGRAD_DEMO_DATA_DIR "/points.csv");
    qgrad::Trace trace = qgrad::run_classifier(config, qgrad::read_text_file(file));
    std::cout << qgrad::emit_trace(trace, "csv");
    return 0;
}
