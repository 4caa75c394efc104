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
 * @file demos.hpp
 * Reproducible optimization demos and their machine-readable traces.
 *
 * A trace is a small table: provenance key/value pairs, column names, and
 * numeric rows. Both serializations (csv, json) round-trip exactly; csv
 * prints doubles with %.17g, which preserves every bit.
 *
 * Demo trace rows always describe the state AFTER the step of their row
 * index, with row 0 holding the initial state.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qgrad/collections.hpp"
#include "qgrad/devices.hpp"
#include "qgrad/optimize.hpp"
#include "qgrad/templates.hpp"

namespace qgrad {

struct Trace {
    std::map<std::string, std::string> config;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    bool operator==(const Trace&) const = default;
};

namespace detail {

inline std::string format_double(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

inline double parse_double(const std::string& text, const std::string& context) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument(text);
        }
        return v;
    } catch (const std::exception&) {
        raise(ErrorKind::ParseError, context + ": bad number '" + text + "'");
    }
}

inline std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string token;
    std::istringstream stream(line);
    while (std::getline(stream, token, sep)) {
        out.push_back(token);
    }
    if (!line.empty() && line.back() == sep) {
        out.push_back("");
    }
    return out;
}

} // namespace detail

inline std::string emit_csv(const Trace& trace) {
    std::ostringstream out;
    for (const auto& [key, value] : trace.config) {
        out << "# " << key << '=' << value << '\n';
    }
    for (std::size_t c = 0; c < trace.columns.size(); ++c) {
        out << (c ? "," : "") << trace.columns[c];
    }
    out << '\n';
    for (const std::vector<double>& row : trace.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << detail::format_double(row[c]);
        }
        out << '\n';
    }
    return out.str();
}

inline Trace parse_csv(const std::string& text) {
    Trace trace;
    std::istringstream stream(text);
    std::string line;
    std::size_t line_no = 0;
    bool have_columns = false;
    while (std::getline(stream, line)) {
        ++line_no;
        std::string context = "line " + std::to_string(line_no);
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            std::string body = line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1);
            std::size_t eq = body.find('=');
            if (eq == std::string::npos) {
                raise(ErrorKind::ParseError, context + ": header without '='");
            }
            trace.config[body.substr(0, eq)] = body.substr(eq + 1);
            continue;
        }
        if (!have_columns) {
            trace.columns = detail::split(line, ',');
            have_columns = true;
            continue;
        }
        std::vector<std::string> cells = detail::split(line, ',');
        if (cells.size() != trace.columns.size()) {
            raise(ErrorKind::ParseError, context + ": expected " +
                                             std::to_string(trace.columns.size()) + " cells");
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const std::string& cell : cells) {
            row.push_back(detail::parse_double(cell, context));
        }
        trace.rows.push_back(std::move(row));
    }
    if (!have_columns) {
        raise(ErrorKind::ParseError, "missing column row");
    }
    return trace;
}

inline std::string emit_json(const Trace& trace) {
    nlohmann::json j;
    j["config"] = trace.config;
    j["columns"] = trace.columns;
    j["rows"] = trace.rows;
    return j.dump(2) + "\n";
}

inline Trace parse_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorKind::ParseError, std::string("invalid json: ") + e.what());
    }
    try {
        Trace trace;
        trace.config = j.at("config").get<std::map<std::string, std::string>>();
        trace.columns = j.at("columns").get<std::vector<std::string>>();
        trace.rows = j.at("rows").get<std::vector<std::vector<double>>>();
        return trace;
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorKind::ParseError, std::string("trace schema mismatch: ") + e.what());
    }
}

inline std::string emit_trace(const Trace& trace, const std::string& format) {
    if (format == "csv") {
        return emit_csv(trace);
    }
    if (format == "json") {
        return emit_json(trace);
    }
    raise(ErrorKind::InvalidConfig, "unknown trace format " + format);
}

inline Trace parse_trace(const std::string& text, const std::string& format) {
    if (format == "csv") {
        return parse_csv(text);
    }
    if (format == "json") {
        return parse_json(text);
    }
    raise(ErrorKind::InvalidConfig, "unknown trace format " + format);
}

/** Writes rendered trace text to a file. */
inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        raise(ErrorKind::IoError, "cannot open " + path + " for writing");
    }
    out << text;
    if (!out) {
        raise(ErrorKind::IoError, "failed writing " + path);
    }
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        raise(ErrorKind::IoError, "cannot open " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

/** Settings shared by all demos. Zeroed fields take per-demo defaults. */
struct RunConfig {
    std::string demo;
    std::string device = "default.qubit";
    std::size_t shots = 0;
    std::uint64_t seed = 42;
    std::size_t steps = 0;
    double lr = 0.0;
    std::string optimizer;
    std::string out;
    std::string format = "csv";

    void validate() const {
        if (steps < 1) {
            raise(ErrorKind::InvalidConfig, "steps must be at least 1");
        }
        if (format != "csv" && format != "json") {
            raise(ErrorKind::InvalidConfig, "format must be csv or json");
        }
    }

    std::map<std::string, std::string> provenance() const {
        return {
            {"demo", demo},
            {"device", device},
            {"shots", std::to_string(shots)},
            {"seed", std::to_string(seed)},
            {"steps", std::to_string(steps)},
            {"lr", detail::format_double(lr)},
            {"optimizer", optimizer},
            {"format", format},
        };
    }
};

namespace detail {

/** Fills unset config fields with a demo's defaults and validates. */
inline RunConfig resolve_config(RunConfig cfg, const std::string& demo, std::size_t steps,
                                double lr, const std::string& optimizer) {
    cfg.demo = demo;
    if (cfg.steps == 0) {
        cfg.steps = steps;
    }
    if (cfg.lr == 0.0) {
        cfg.lr = lr;
    }
    if (cfg.optimizer.empty()) {
        cfg.optimizer = optimizer;
    }
    cfg.validate();
    return cfg;
}

} // namespace detail

/**
 * Optimizes the two-angle qubit-rotation circuit RX, RY with expval of
 * PauliZ from (0.011, 0.012). Defaults: gradient descent, step 0.4, 100
 * steps. Trace columns: step, phi1, phi2, cost.
 */
inline Trace run_qubit_rotation(RunConfig cfg) {
    cfg = detail::resolve_config(std::move(cfg), "qubit-rotation", 100, 0.4, "gd");

    auto device = std::shared_ptr<Device>(load_device(cfg.device, 1, cfg.shots, cfg.seed));
    QNode qnode(
        [](const std::vector<ParamTensor>& args, const Kwargs&) {
            return build_tape({gate("RX", {args[0][0]}, {0}), gate("RY", {args[0][1]}, {0})},
                              {expval(observable("PauliZ", {0}))}, 1);
        },
        device);

    ad::CostFn cost = [&qnode](const std::vector<ad::Var>& args) {
        return ad::pick(ad::qnode_call(qnode, args), 0);
    };
    auto evaluate = [&qnode](const Tensor& params) { return qnode({params}).data()[0]; };

    Optimizer optimizer = make_optimizer(cfg.optimizer, cfg.lr);
    Tensor params{0.011, 0.012};

    Trace trace;
    trace.config = cfg.provenance();
    trace.columns = {"step", "phi1", "phi2", "cost"};
    trace.rows.push_back({0.0, params.data()[0], params.data()[1], evaluate(params)});
    for (std::size_t s = 1; s <= cfg.steps; ++s) {
        params = optimizer.step(cost, params);
        trace.rows.push_back(
            {static_cast<double>(s), params.data()[0], params.data()[1], evaluate(params)});
    }
    return trace;
}

/**
 * Optimizes a strongly-entangling ansatz against a Pauli Hamiltonian.
 * Defaults: Adam, step 0.1, 200 steps, 2 layers. Trace columns: step,
 * energy; config carries the dense-diagonalization ground energy when the
 * Hamiltonian fits 10 wires or fewer.
 */
inline Trace run_vqe(RunConfig cfg, const std::string& hamiltonian_text) {
    cfg = detail::resolve_config(std::move(cfg), "vqe", 200, 0.1, "adam");

    Hamiltonian h = parse_hamiltonian(hamiltonian_text);
    const std::size_t wires = std::max<std::size_t>(2, h.num_wires());
    const std::size_t layers = 2;

    auto device = std::shared_ptr<Device>(load_device(cfg.device, wires, cfg.shots, cfg.seed));
    std::vector<Wire> all_wires(wires);
    for (std::size_t w = 0; w < wires; ++w) {
        all_wires[w] = w;
    }
    Ansatz ansatz = [all_wires](const std::vector<ParamTensor>& args) {
        return strongly_entangling_layers(args[0], all_wires);
    };
    VQECost cost(ansatz, h, device);

    Optimizer optimizer = make_optimizer(cfg.optimizer, cfg.lr);
    Tensor params = init_strong_ent_layers_uniform(layers, wires, cfg.seed);

    Trace trace;
    trace.config = cfg.provenance();
    if (wires <= 10) {
        trace.config["ground_energy"] = detail::format_double(ground_energy(h, wires));
    } else {
        trace.config["ground_energy"] = "skipped: oracle limited to 10 wires";
    }
    trace.columns = {"step", "energy"};
    trace.rows.push_back({0.0, cost.value({params})});
    ad::CostFn fn = cost.cost_fn();
    for (std::size_t s = 1; s <= cfg.steps; ++s) {
        params = optimizer.step(fn, std::vector<Tensor>{params})[0];
        trace.rows.push_back({static_cast<double>(s), cost.value({params})});
    }
    return trace;
}

/** Parsed supervised dataset: feature rows plus +-1 labels. */
struct Dataset {
    std::vector<std::vector<double>> features;
    std::vector<double> labels;

    std::size_t num_features() const { return features.empty() ? 0 : features[0].size(); }
};

/** Parses `f1,...,fk,label` CSV rows; labels must be exactly -1 or +1. */
inline Dataset parse_dataset(const std::string& text) {
    Dataset data;
    std::istringstream stream(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        std::string context = "line " + std::to_string(line_no);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::vector<std::string> cells = detail::split(line, ',');
        if (cells.size() < 2) {
            raise(ErrorKind::InvalidConfig,
                  context + ": need at least one feature and a label");
        }
        std::vector<double> row;
        row.reserve(cells.size() - 1);
        for (std::size_t c = 0; c + 1 < cells.size(); ++c) {
            row.push_back(detail::parse_double(cells[c], context));
        }
        double label = detail::parse_double(cells.back(), context);
        if (label != 1.0 && label != -1.0) {
            raise(ErrorKind::InvalidConfig, context + ": labels must be -1 or +1");
        }
        if (!data.features.empty() && row.size() != data.num_features()) {
            raise(ErrorKind::InvalidConfig, context + ": inconsistent feature count");
        }
        data.features.push_back(std::move(row));
        data.labels.push_back(label);
    }
    if (data.features.empty()) {
        raise(ErrorKind::InvalidConfig, "dataset is empty");
    }
    if (data.num_features() > 4) {
        raise(ErrorKind::InvalidConfig, "at most 4 features are supported");
    }
    return data;
}

/**
 * Variational classifier: angle-embedded features, strongly-entangling
 * layers, expval of PauliZ on wire 0 plus a trainable bias, squared loss.
 * Defaults: Adam, step 0.1, 200 steps, 2 layers. Trace columns: step,
 * loss, accuracy.
 */
inline Trace run_classifier(RunConfig cfg, const std::string& dataset_text) {
    cfg = detail::resolve_config(std::move(cfg), "classifier", 200, 0.1, "adam");

    Dataset data = parse_dataset(dataset_text);
    const std::size_t wires = std::max<std::size_t>(2, data.num_features());
    const std::size_t layers = 2;

    auto device = std::shared_ptr<Device>(load_device(cfg.device, wires, cfg.shots, cfg.seed));
    std::vector<Wire> all_wires(wires);
    for (std::size_t w = 0; w < wires; ++w) {
        all_wires[w] = w;
    }

    QNode qnode(
        [all_wires](const std::vector<ParamTensor>& args, const Kwargs& kwargs) {
            std::vector<GateApplication> ops =
                angle_embedding(ParamTensor::constant(kwargs.at("x")), all_wires);
            std::vector<GateApplication> ansatz = strongly_entangling_layers(args[0], all_wires);
            ops.insert(ops.end(), ansatz.begin(), ansatz.end());
            return build_tape(std::move(ops), {expval(observable("PauliZ", {0}))},
                              all_wires.size());
        },
        device);

    auto feature_tensor = [&](std::size_t i) {
        return Tensor({data.features[i].size()}, data.features[i]);
    };
    auto model_value = [&](const Tensor& weights, double bias, std::size_t i) {
        return qnode({weights}, {{"x", feature_tensor(i)}}).data()[0] + bias;
    };

    ad::CostFn loss_fn = [&](const std::vector<ad::Var>& args) {
        std::vector<ad::Var> errors;
        errors.reserve(data.features.size());
        for (std::size_t i = 0; i < data.features.size(); ++i) {
            ad::Var prediction =
                ad::pick(ad::qnode_call(qnode, {args[0]}, {{"x", feature_tensor(i)}}), 0) +
                args[1];
            errors.push_back(ad::square(prediction - data.labels[i]));
        }
        return ad::mean(ad::pack(errors));
    };

    auto metrics = [&](const Tensor& weights, double bias) {
        double loss = 0.0, correct = 0.0;
        for (std::size_t i = 0; i < data.features.size(); ++i) {
            double prediction = model_value(weights, bias, i);
            double err = prediction - data.labels[i];
            loss += err * err;
            double sign = prediction < 0.0 ? -1.0 : 1.0;
            correct += sign == data.labels[i] ? 1.0 : 0.0;
        }
        const double n = static_cast<double>(data.features.size());
        return std::pair<double, double>{loss / n, correct / n};
    };

    Optimizer optimizer = make_optimizer(cfg.optimizer, cfg.lr);
    std::vector<Tensor> params{init_strong_ent_layers_uniform(layers, wires, cfg.seed),
                               Tensor(0.0)};

    Trace trace;
    trace.config = cfg.provenance();
    trace.columns = {"step", "loss", "accuracy"};
    auto [loss0, acc0] = metrics(params[0], params[1].scalar());
    trace.rows.push_back({0.0, loss0, acc0});
    for (std::size_t s = 1; s <= cfg.steps; ++s) {
        params = optimizer.step(loss_fn, params);
        auto [loss, acc] = metrics(params[0], params[1].scalar());
        trace.rows.push_back({static_cast<double>(s), loss, acc});
    }
    return trace;
}

} // namespace qgrad
