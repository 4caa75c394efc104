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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "support/test_helpers.hpp"

using namespace qgrad;
using qgrad_test::error_kind_of;
using qgrad_test::read_fixture;

namespace {

Trace sample_trace() {
    Trace trace;
    trace.config = {{"demo", "unit"}, {"seed", "42"}};
    trace.columns = {"step", "value", "extra"};
    trace.rows = {{0.0, 1.0 / 3.0, -0.9602325267042626},
                  {1.0, 0.1 + 0.2, 1e-300},
                  {2.0, -0.0, 12345.678901234567}};
    return trace;
}

} // namespace

TEST_CASE("traces round-trip exactly through both formats") {
    Trace trace = sample_trace();
    REQUIRE(parse_trace(emit_trace(trace, "csv"), "csv") == trace);
    REQUIRE(parse_trace(emit_trace(trace, "json"), "json") == trace);

    REQUIRE(error_kind_of([&] { emit_trace(trace, "xml"); }) == ErrorKind::InvalidConfig);
    REQUIRE(error_kind_of([&] { parse_trace("", "xml"); }) == ErrorKind::InvalidConfig);
}

TEST_CASE("trace parsing reports structural problems") {
    REQUIRE(error_kind_of([] { parse_csv("# noequals\nstep\n"); }) == ErrorKind::ParseError);
    REQUIRE(error_kind_of([] { parse_csv("step,cost\n1.0\n"); }) == ErrorKind::ParseError);
    REQUIRE(error_kind_of([] { parse_csv("step\nabc\n"); }) == ErrorKind::ParseError);
    REQUIRE(error_kind_of([] { parse_csv("# a=b\n"); }) == ErrorKind::ParseError);
    REQUIRE(error_kind_of([] { parse_json("{not json"); }) == ErrorKind::ParseError);
    REQUIRE(error_kind_of([] { parse_json("{\"columns\": []}"); }) == ErrorKind::ParseError);
}

TEST_CASE("run configurations are validated") {
    RunConfig cfg;
    REQUIRE(error_kind_of([&] { cfg.validate(); }) == ErrorKind::InvalidConfig); // steps 0
    cfg.steps = 5;
    cfg.format = "xml";
    REQUIRE(error_kind_of([&] { cfg.validate(); }) == ErrorKind::InvalidConfig);
    cfg.format = "json";
    cfg.validate();

    auto provenance = cfg.provenance();
    for (const char* key : {"demo", "device", "shots", "seed", "steps", "lr", "optimizer",
                            "format"}) {
        REQUIRE(provenance.count(key) == 1);
    }
}

TEST_CASE("dataset parsing enforces the csv contract") {
    Dataset data = parse_dataset("# comment\n0.5,-0.25,1\n-0.5,0.25,-1\n");
    REQUIRE(data.features.size() == 2);
    REQUIRE(data.num_features() == 2);
    REQUIRE(data.labels == std::vector<double>{1.0, -1.0});

    REQUIRE(error_kind_of([] { parse_dataset("0.5,0.5\n"); }) == ErrorKind::InvalidConfig);
    REQUIRE(error_kind_of([] { parse_dataset("0.5,1\n0.5,0.5,-1\n"); }) ==
            ErrorKind::InvalidConfig);
    REQUIRE(error_kind_of([] { parse_dataset("# nothing\n"); }) == ErrorKind::InvalidConfig);
    REQUIRE(error_kind_of([] { parse_dataset("1,2,3,4,5,1\n"); }) == ErrorKind::InvalidConfig);
    REQUIRE(error_kind_of([] { parse_dataset("0.5\n"); }) == ErrorKind::InvalidConfig);
    REQUIRE(error_kind_of([] { parse_dataset("abc,1\n"); }) == ErrorKind::ParseError);

    try {
        parse_dataset("0.5,1\nbad,-1\n");
        FAIL("expected a parse error");
    } catch (const Error& e) {
        REQUIRE(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("the qubit rotation demo descends and reproduces bitwise") {
    RunConfig cfg;
    cfg.steps = 5;
    Trace trace = run_qubit_rotation(cfg);
    REQUIRE(trace.columns == std::vector<std::string>{"step", "phi1", "phi2", "cost"});
    REQUIRE(trace.rows.size() == 6);
    REQUIRE(trace.rows.front()[0] == 0.0);
    REQUIRE(trace.rows.back()[0] == 5.0);
    REQUIRE(trace.rows.back()[3] < trace.rows.front()[3]);
    REQUIRE(trace.config.at("steps") == "5");
    REQUIRE(trace.config.at("optimizer") == "gd");

    REQUIRE(run_qubit_rotation(cfg) == trace);
}

TEST_CASE("the vqe demo reports the dense ground energy and descends") {
    RunConfig cfg;
    cfg.steps = 25;
    std::string text = read_fixture("toy2q.txt");
    Trace trace = run_vqe(cfg, text);
    REQUIRE(trace.columns == std::vector<std::string>{"step", "energy"});
    REQUIRE(trace.rows.size() == 26);
    REQUIRE(trace.rows.back()[1] < trace.rows.front()[1]);
    double ground = std::stod(trace.config.at("ground_energy"));
    REQUIRE(std::abs(ground - (-0.9602325267042626)) < 1e-12);
    // Every energy stays above the true minimum.
    for (const std::vector<double>& row : trace.rows) {
        REQUIRE(row[1] > ground - 1e-9);
    }

    RunConfig again;
    again.steps = 10;
    REQUIRE(run_vqe(again, text) == run_vqe(again, text));
}

TEST_CASE("the classifier demo reduces its training loss") {
    RunConfig cfg;
    cfg.steps = 6;
    Trace trace = run_classifier(cfg, read_fixture("separable.csv"));
    REQUIRE(trace.columns == std::vector<std::string>{"step", "loss", "accuracy"});
    REQUIRE(trace.rows.size() == 7);
    REQUIRE(trace.rows.back()[1] < trace.rows.front()[1]);
    for (const std::vector<double>& row : trace.rows) {
        REQUIRE(row[2] >= 0.0);
        REQUIRE(row[2] <= 1.0);
    }
}

TEST_CASE("text files round-trip and missing paths raise io errors") {
    namespace fs = std::filesystem;
    fs::path path = fs::temp_directory_path() / "qgrad_trace_roundtrip.csv";
    Trace trace = sample_trace();
    write_text_file(path.string(), emit_trace(trace, "csv"));
    REQUIRE(parse_trace(read_text_file(path.string()), "csv") == trace);
    fs::remove(path);

    REQUIRE(error_kind_of([] { read_text_file("/nonexistent/qgrad.txt"); }) ==
            ErrorKind::IoError);
    REQUIRE(error_kind_of([&] {
        write_text_file("/nonexistent/qgrad out.txt", "x");
    }) == ErrorKind::IoError);
}

#ifdef QGRAD_CLI_PATH

namespace {

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    std::string command = std::string(QGRAD_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult result;
    char buffer[4096];
    std::size_t n = 0;
    while ((n = std::fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
        result.out.append(buffer, n);
    }
    int status = pclose(pipe);
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string fixture_path(const std::string& name) {
    return std::string(QGRAD_FIXTURE_DIR) + "/" + name;
}

} // namespace

TEST_CASE("the cli lists the built-in devices") {
    CliResult r = run_cli("devices");
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("default.qubit") != std::string::npos);
    REQUIRE(r.out.find("default.gaussian") != std::string::npos);
}

TEST_CASE("the cli streams csv traces to stdout") {
    CliResult r = run_cli("run qubit-rotation --steps 3");
    REQUIRE(r.code == 0);
    Trace trace = parse_trace(r.out, "csv");
    REQUIRE(trace.rows.size() == 4);
    REQUIRE(trace.config.at("demo") == "qubit-rotation");
}

TEST_CASE("the cli writes json traces to a file") {
    namespace fs = std::filesystem;
    fs::path path = fs::temp_directory_path() / "qgrad_cli_out.json";
    CliResult r =
        run_cli("run qubit-rotation --steps 3 --format json --out " + path.string());
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("trace written to") != std::string::npos);
    Trace trace = parse_trace(read_text_file(path.string()), "json");
    REQUIRE(trace.rows.size() == 4);
    fs::remove(path);
}

TEST_CASE("the cli runs vqe against a hamiltonian file") {
    CliResult r = run_cli("run vqe --steps 2 --hamiltonian " + fixture_path("toy2q.txt"));
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("ground energy (dense diagonalization):") != std::string::npos);
}

TEST_CASE("the cli distinguishes usage errors from runtime errors") {
    REQUIRE(run_cli("run qubit-rotation --bogus").code == 1);
    REQUIRE(run_cli("run vqe --steps 2").code == 1);             // missing required flag
    REQUIRE(run_cli("run qubit-rotation --steps 2 --optimizer warp").code == 1);
    REQUIRE(run_cli("run qubit-rotation --steps 2 --format xml").code == 1);
    REQUIRE(run_cli("run vqe --steps 2 --hamiltonian /nonexistent/h.txt").code == 2);
    REQUIRE(run_cli("run classifier --steps 2 --data /nonexistent/points.csv").code == 2);
    // A Hamiltonian file is not a dataset: rejected as configuration, not runtime.
    REQUIRE(run_cli("run classifier --steps 2 --data " + fixture_path("toy2q.txt")).code == 1);
}

#endif // QGRAD_CLI_PATH
