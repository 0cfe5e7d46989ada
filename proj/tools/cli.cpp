// Copyright 2026 The qbatch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "qbatch/batch/plan.hpp"
#include "qbatch/bytecode/serialize.hpp"
#include "qbatch/bytecode/table.hpp"
#include "qbatch/ctrlsim/control_system.hpp"
#include "qbatch/ctrlsim/report_json.hpp"
#include "qbatch/error.hpp"
#include "qbatch/hash.hpp"
#include "qbatch/lang/parser.hpp"
#include "qbatch/lang/transform.hpp"
#include "qbatch/version.hpp"
#include "qbatch/vqe/vqe.hpp"

namespace qbatch::cli {
namespace {

using ojson = nlohmann::ordered_json;

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot read " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_atomic(const std::string &path, const std::string &content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorKind::IoError, "cannot write " + tmp);
        }
        out << content;
        if (!out.flush()) {
            throw Error(ErrorKind::IoError, "cannot write " + tmp);
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorKind::IoError, "cannot rename " + tmp + " to " + path);
    }
}

void emit(const ojson &j, const std::string &path, std::ostream &out) {
    std::string text = j.dump(2) + "\n";
    if (path.empty()) {
        out << text;
    } else {
        write_atomic(path, text);
    }
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

ojson fingerprint(const std::string &path, const std::string &content) {
    return ojson{{"path", path}, {"fnv1a", hex64(fnv1a(content))}};
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t> &flag) {
    if (flag) {
        return *flag;
    }
    if (const char *env = std::getenv("QBATCH_SEED")) {
        char *end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') {
            throw Error(ErrorKind::ValidationError, std::string("QBATCH_SEED is not an integer: ") + env);
        }
        return v;
    }
    return 0;
}

struct Library {
    pulse::GateLibrary lib = pulse::GateLibrary::standard();
    ojson input = "standard";
};

Library load_library(const std::string &path) {
    Library out;
    if (!path.empty()) {
        std::string text = read_file(path);
        out.lib = pulse::GateLibrary::parse(text);
        out.input = fingerprint(path, text);
    }
    return out;
}

struct HardwareFlags {
    double latency = 2.0;
    double compile_time = 0.05;
    double upload_rate = 1e6;
    std::size_t buffer = 4096;
    std::size_t stream = 4;
    bool no_pulse_time = false;
    bool wall = false;

    void add(CLI::App *app) {
        app->add_option("--latency", latency, "Communication latency per step in seconds")->capture_default_str();
        app->add_option("--compile-time", compile_time, "Seconds per compiled unit")->capture_default_str();
        app->add_option("--upload-rate", upload_rate, "Upload rate in words per second (inf for free uploads)")
            ->capture_default_str();
        app->add_option("--buffer", buffer, "On-chip buffer capacity in words")->capture_default_str();
        app->add_option("--stream-capacity", stream, "Compilation lookahead in units")->capture_default_str();
        app->add_flag("--no-pulse-time", no_pulse_time, "Do not charge pulse durations to the clock");
        app->add_flag("--wall-clock", wall, "Sleep for every simulated cost");
    }

    ctrlsim::HardwareConfig config() const {
        ctrlsim::HardwareConfig c;
        c.comm_latency_s = latency;
        c.compile_time_s = compile_time;
        c.upload_rate_words_per_s = upload_rate;
        c.buffer_capacity_words = buffer;
        c.stream_capacity = stream;
        c.include_pulse_time = !no_pulse_time;
        c.clock = wall ? ctrlsim::ClockMode::Wall : ctrlsim::ClockMode::Simulated;
        c.validate();
        return c;
    }
};

std::optional<ctrlsim::DriftModel> parse_drift(const std::string &spec) {
    if (spec == "off") {
        return std::nullopt;
    }
    if (spec == "on" || spec == "linear") {
        return ctrlsim::DriftModel{};
    }
    if (spec == "walk") {
        ctrlsim::DriftModel d;
        d.kind = ctrlsim::DriftModel::Kind::RandomWalk;
        return d;
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(spec));
    } catch (const nlohmann::json::parse_error &e) {
        throw Error(ErrorKind::ValidationError, "drift file " + spec + " is not valid JSON");
    }
    return ctrlsim::drift_from_json(j);
}

ojson drift_json(const std::optional<ctrlsim::DriftModel> &d) {
    return d ? ojson(ctrlsim::to_json(*d)) : ojson(nullptr);
}

ojson header(const char *command) {
    ojson j;
    j["tool"] = "qbatch";
    j["version"] = kVersion;
    j["command"] = command;
    return j;
}

lang::Program parse_program(const std::string &source, const pulse::GateLibrary &lib) {
    return lang::parse(source, lib.signatures());
}

ojson error_json(const Error &e) {
    ojson j;
    j["kind"] = std::string(to_string(e.kind()));
    if (e.pos()) {
        j["line"] = e.pos()->line;
        j["column"] = e.pos()->column;
    }
    j["message"] = e.detail();
    return j;
}

ojson values_json(const lang::ValueMap &values) {
    ojson j = ojson::object();
    for (const auto &[k, v] : values) {
        if (v.is_integer()) {
            j[k] = v.as_integer();
        } else {
            j[k] = v.as_double();
        }
    }
    return j;
}

ojson plan_json(const batch::BatchPlan &plan) {
    ojson j;
    j["mode"] = std::string(batch::to_string(plan.mode));
    j["subcircuits"] = plan.subcircuits.size();
    j["rows"] = plan.rows;
    j["shots"] = plan.shots;
    j["seed"] = plan.seed;
    j["accounting"] = ctrlsim::to_json(plan.accounting);
    ojson runs = ojson::array();
    for (const auto &r : plan.runs) {
        runs.push_back(ojson{{"subcircuit", plan.subcircuits[r.subcircuit].index},
                             {"row", r.row},
                             {"seed", r.seed},
                             {"values", values_json(r.values)}});
    }
    j["runs"] = std::move(runs);
    ojson steps = ojson::array();
    for (const auto &s : plan.steps) {
        steps.push_back(s);
    }
    j["steps"] = std::move(steps);
    return j;
}

// ---- subcommands ---------------------------------------------------------

int cmd_check(const std::vector<std::string> &files, const Library &lib, std::ostream &out, std::ostream &err) {
    ojson results = ojson::array();
    int code = 0;
    for (const auto &f : files) {
        ojson r;
        r["file"] = f;
        try {
            lang::Program p = parse_program(read_file(f), lib.lib);
            r["ok"] = true;
            r["qubits"] = p.num_qubits();
            r["lets"] = p.lets.size();
            r["macros"] = p.macros.size();
            r["subcircuits"] = lang::compile_subcircuits(p).size();
        } catch (const Error &e) {
            if (!is_validation_error(e.kind())) {
                throw;
            }
            r["ok"] = false;
            r["error"] = error_json(e);
            err << f << ": " << e.what() << "\n";
            code = 1;
        }
        results.push_back(std::move(r));
    }
    ojson j = header("check");
    j["files"] = std::move(results);
    emit(j, "", out);
    return code;
}

int cmd_compile(const std::vector<std::string> &files, const Library &lib, const std::string &out_path,
                const std::string &hexdump_path, std::ostream &out, std::ostream &err) {
    bytecode::Compiler compiler(lib.lib);
    bytecode::GateDataTable table;
    std::vector<bytecode::BytecodeUnit> units;
    ojson per_file = ojson::array();
    int next_index = 0;
    for (const auto &f : files) {
        std::string text = read_file(f);
        lang::Program p = parse_program(text, lib.lib);
        std::size_t before = table.size();
        ojson file_units = ojson::array();
        for (auto sc : lang::compile_subcircuits(p)) {
            sc.index = next_index++;
            units.push_back(compiler.compile(sc, table));
            const auto &u = units.back();
            file_units.push_back(ojson{{"subcircuit", u.subcircuit_index},
                                       {"sequence", u.sequence.size()},
                                       {"words", u.total_words()},
                                       {"slots", u.slots.size()},
                                       {"lets", u.lets()}});
        }
        ojson fj = fingerprint(f, text);
        fj["new_entries"] = table.size() - before;
        fj["units"] = std::move(file_units);
        per_file.push_back(std::move(fj));
    }
    auto table_bytes = bytecode::serialize_table(table);
    auto batch_bytes = bytecode::serialize_batch(table, units);
    std::size_t unit_words = 0;
    for (const auto &u : units) {
        unit_words += u.total_words();
    }
    ojson j = header("compile");
    j["gates"] = lib.input;
    j["files"] = std::move(per_file);
    j["compilations"] = compiler.compilations();
    j["table"] = ojson{{"entries", table.size()}, {"words", table.size_words()}, {"bytes", table_bytes.size()}};
    j["units"] = units.size();
    j["unit_words"] = unit_words;
    j["bytecode_bytes"] = batch_bytes.size();
    j["bytecode_fnv1a"] =
        hex64(fnv1a(std::string_view(reinterpret_cast<const char *>(batch_bytes.data()), batch_bytes.size())));
    if (!out_path.empty()) {
        write_atomic(out_path, std::string(batch_bytes.begin(), batch_bytes.end()));
    }
    if (!hexdump_path.empty()) {
        write_atomic(hexdump_path, bytecode::hexdump(batch_bytes));
    }
    emit(j, "", out);
    err << "compiled " << units.size() << " units, table " << table.size() << " entries (" << table.size_words()
        << " words)\n";
    return 0;
}

struct RunArgs {
    std::string file;
    std::string overrides;
    std::string mode = "combined";
    int shots = 1000;
    std::optional<std::uint64_t> seed;
    std::string drift = "off";
    std::string report;
    HardwareFlags hw;
};

struct Prepared {
    ojson inputs;
    lang::Program program;
    batch::OverrideSet overrides;
    batch::Mode mode;
    std::uint64_t seed;
};

Prepared prepare(const RunArgs &a, const Library &lib) {
    Prepared p;
    std::string text = read_file(a.file);
    p.inputs["program"] = fingerprint(a.file, text);
    p.inputs["gates"] = lib.input;
    p.program = parse_program(text, lib.lib);
    if (!a.overrides.empty()) {
        std::string ov = read_file(a.overrides);
        p.inputs["overrides"] = fingerprint(a.overrides, ov);
        p.overrides = batch::OverrideSet::parse(ov);
    }
    p.mode = batch::parse_mode(a.mode);
    p.seed = resolve_seed(a.seed);
    return p;
}

int cmd_batch(const RunArgs &a, const Library &lib, std::ostream &out) {
    Prepared p = prepare(a, lib);
    batch::BatchPlan plan = batch::plan(p.program, p.overrides, p.mode, lib.lib, {a.shots, p.seed});
    ojson j = header("batch");
    j["inputs"] = p.inputs;
    j["plan"] = plan_json(plan);
    emit(j, a.report, out);
    return 0;
}

int cmd_run(const RunArgs &a, const Library &lib, std::ostream &out, std::ostream &err) {
    Prepared p = prepare(a, lib);
    auto hw = a.hw.config();
    auto drift = parse_drift(a.drift);
    batch::BatchPlan plan = batch::plan(p.program, p.overrides, p.mode, lib.lib, {a.shots, p.seed});
    ctrlsim::ControlSystem system(hw, drift, mix_seed(p.seed ^ 0x6472696674ULL));
    ctrlsim::ExecutionReport report = system.execute(plan);
    ojson j = header("run");
    j["config"] = ojson{{"mode", std::string(batch::to_string(p.mode))},
                        {"shots", a.shots},
                        {"seed", p.seed},
                        {"overrides", p.overrides.to_json()},
                        {"hardware", ctrlsim::to_json(hw)},
                        {"drift", drift_json(drift)}};
    j["inputs"] = p.inputs;
    j["plan_accounting"] = ctrlsim::to_json(plan.accounting);
    j["report"] = ctrlsim::to_json(report);
    emit(j, a.report, out);
    err << report.runs.size() << " runs in " << report.steps.communication_steps << " communication steps, "
        << report.elapsed_s << " s simulated\n";
    return 0;
}

struct VqeArgs {
    std::string hamiltonian;
    int iters = 18;
    int shots = 1000;
    std::string mode = "batched";
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string plot;
    std::string drift = "off";
    double theta0 = 0.5;
    std::optional<double> reference;
    HardwareFlags hw;
};

int cmd_vqe(const VqeArgs &a, const Library &lib, std::ostream &out, std::ostream &err) {
    std::string text = read_file(a.hamiltonian);
    auto h = vqe::PauliHamiltonian::parse(text);
    vqe::VqeConfig c;
    c.mode = batch::parse_mode(a.mode);
    c.shots = a.shots;
    c.seed = resolve_seed(a.seed);
    c.optimizer.budget = a.iters;
    c.optimizer.theta0 = a.theta0;
    c.hardware = a.hw.config();
    c.drift = parse_drift(a.drift);
    c.library = lib.lib;
    vqe::VqeResult r = vqe::optimize(h, c);

    ojson j = header("vqe");
    j["config"] = ojson{{"mode", std::string(batch::to_string(c.mode))},
                        {"iterations", a.iters},
                        {"shots", a.shots},
                        {"seed", c.seed},
                        {"theta0", a.theta0},
                        {"hardware", ctrlsim::to_json(c.hardware)},
                        {"drift", drift_json(c.drift)}};
    j["inputs"] = ojson{{"hamiltonian", fingerprint(a.hamiltonian, text)}, {"gates", lib.input}};
    ojson res;
    res["status"] = std::string(vqe::to_string(r.status));
    res["best"] = ojson{{"theta", r.best.theta}, {"energy", r.best.energy}, {"stderr", r.best.stderr_}};
    res["steps"] = ctrlsim::to_json(r.steps);
    res["cost"] = ctrlsim::to_json(r.cost);
    res["elapsed_s"] = r.elapsed_s;
    res["mean_ms_error"] = r.mean_ms_error;
    res["max_ms_error"] = r.max_ms_error;
    res["final_ms_error"] = r.final_ms_error;
    ojson iters = ojson::array();
    for (const auto &it : r.history) {
        iters.push_back(ojson{{"iteration", it.iteration},
                              {"theta", it.theta},
                              {"energy", it.energy},
                              {"stderr", it.stderr_},
                              {"best_energy", it.best_energy},
                              {"communication_steps", it.steps.communication_steps},
                              {"clock_s", it.clock_s},
                              {"mean_ms_error", it.mean_ms_error}});
    }
    res["iterations"] = std::move(iters);
    j["result"] = std::move(res);
    emit(j, a.out, out);
    if (!a.plot.empty()) {
        write_atomic(a.plot, energy_plot_svg(r, a.reference.value_or(std::numeric_limits<double>::quiet_NaN())));
    }
    err << r.history.size() << " iterations (" << vqe::to_string(r.status) << "), best E = " << r.best.energy
        << " at theta = " << r.best.theta << ", " << r.steps.communication_steps << " communication steps, "
        << r.elapsed_s << " s simulated\n";
    return 0;
}

int cmd_report(const std::string &file, std::ostream &out, std::ostream &err) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(file));
    } catch (const nlohmann::json::parse_error &e) {
        throw Error(ErrorKind::ValidationError, file + " is not valid JSON");
    }
    if (!j.is_object() || j.value("tool", "") != "qbatch" || !j.contains("command")) {
        throw Error(ErrorKind::ValidationError, file + " is not a qbatch report");
    }
    ojson s = header("report");
    std::string command = j.at("command").get<std::string>();
    s["source"] = ojson{{"path", file}, {"command", command}};
    if (command == "run" && j.contains("report")) {
        const auto &r = j.at("report");
        s["mode"] = r.at("mode");
        s["runs"] = r.at("runs").size();
        s["steps"] = r.at("steps");
        s["elapsed_s"] = r.at("elapsed_s");
        s["buffer_high_water_words"] = r.at("buffer_high_water_words");
        err << command << ": " << r.at("runs").size() << " runs, " << r.at("steps").at("communication_steps")
            << " steps, " << r.at("elapsed_s") << " s\n";
    } else if (command == "vqe" && j.contains("result")) {
        const auto &r = j.at("result");
        s["mode"] = j.at("config").at("mode");
        s["status"] = r.at("status");
        s["best"] = r.at("best");
        s["steps"] = r.at("steps");
        s["elapsed_s"] = r.at("elapsed_s");
        s["iterations"] = r.at("iterations").size();
        err << command << ": best E = " << r.at("best").at("energy") << ", " << r.at("steps").at("communication_steps")
            << " steps, " << r.at("elapsed_s") << " s\n";
    } else if (command == "batch" && j.contains("plan")) {
        const auto &p = j.at("plan");
        s["mode"] = p.at("mode");
        s["runs"] = p.at("runs").size();
        s["accounting"] = p.at("accounting");
        err << command << ": " << p.at("runs").size() << " runs, " << p.at("accounting").at("communication_steps")
            << " steps\n";
    } else {
        throw Error(ErrorKind::ValidationError, "no summary for '" + command + "' reports");
    }
    emit(s, "", out);
    return 0;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"qbatch: batched circuit compilation and execution on a simulated trapped-ion backend"};
    app.name("qbatch");
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    std::string gates;
    app.add_option("--gates", gates, "Gate pulse file (default: built-in standard library)")
        ->check(CLI::ExistingFile);

    std::vector<std::string> check_files;
    auto *check = app.add_subcommand("check", "Parse and validate programs");
    check->add_option("files", check_files, "Program files")->required()->check(CLI::ExistingFile);

    std::vector<std::string> compile_files;
    std::string bytecode_out, hexdump_out;
    auto *compile = app.add_subcommand("compile", "Compile programs into one bytecode batch");
    compile->add_option("files", compile_files, "Program files")->required()->check(CLI::ExistingFile);
    compile->add_option("--out", bytecode_out, "Write the binary bytecode here");
    compile->add_option("--hexdump", hexdump_out, "Write a hexdump of the bytecode here");

    RunArgs run_args, batch_args;
    auto add_run_flags = [](CLI::App *cmd, RunArgs &a) {
        cmd->add_option("file", a.file, "Program file")->required()->check(CLI::ExistingFile);
        cmd->add_option("--overrides", a.overrides, "Override JSON file")->check(CLI::ExistingFile);
        cmd->add_option("--mode", a.mode, "unbatched | index | override | combined | batched")
            ->capture_default_str();
        cmd->add_option("--shots", a.shots, "Shots per run, 0 for exact probabilities")->capture_default_str();
        cmd->add_option("--seed", a.seed, "Seed (falls back to QBATCH_SEED, then 0)");
    };
    auto *run_cmd = app.add_subcommand("run", "Plan and execute a program");
    add_run_flags(run_cmd, run_args);
    run_cmd->add_option("--drift", run_args.drift, "off | on | walk | drift JSON file")->capture_default_str();
    run_cmd->add_option("--report", run_args.report, "Write the report here instead of stdout");
    run_args.hw.add(run_cmd);
    auto *batch_cmd = app.add_subcommand("batch", "Print the batch plan without executing it");
    add_run_flags(batch_cmd, batch_args);
    batch_cmd->add_option("--report", batch_args.report, "Write the plan here instead of stdout");

    VqeArgs vqe_args;
    auto *vqe_cmd = app.add_subcommand("vqe", "Run the two-qubit VQE loop");
    vqe_cmd->add_option("--hamiltonian", vqe_args.hamiltonian, "Hamiltonian JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    vqe_cmd->add_option("--iters", vqe_args.iters, "Iteration budget")->capture_default_str();
    vqe_cmd->add_option("--shots", vqe_args.shots, "Shots per projection, 0 for exact")->capture_default_str();
    vqe_cmd->add_option("--mode", vqe_args.mode, "batched | unbatched | override | combined")
        ->capture_default_str();
    vqe_cmd->add_option("--seed", vqe_args.seed, "Seed (falls back to QBATCH_SEED, then 0)");
    vqe_cmd->add_option("--out", vqe_args.out, "Write results here instead of stdout");
    vqe_cmd->add_option("--plot", vqe_args.plot, "Write an SVG energy chart here");
    vqe_cmd->add_option("--reference", vqe_args.reference, "Reference energy drawn on the chart");
    vqe_cmd->add_option("--drift", vqe_args.drift, "off | on | walk | drift JSON file")->capture_default_str();
    vqe_cmd->add_option("--theta0", vqe_args.theta0, "Initial angle")->capture_default_str();
    vqe_args.hw.add(vqe_cmd);

    std::string report_file;
    auto *report_cmd = app.add_subcommand("report", "Summarize a report written by run, batch or vqe");
    report_cmd->add_option("file", report_file, "Report JSON")->required()->check(CLI::ExistingFile);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        Library lib = load_library(gates);
        if (*check) {
            return cmd_check(check_files, lib, out, err);
        }
        if (*compile) {
            return cmd_compile(compile_files, lib, bytecode_out, hexdump_out, out, err);
        }
        if (*run_cmd) {
            return cmd_run(run_args, lib, out, err);
        }
        if (*batch_cmd) {
            return cmd_batch(batch_args, lib, out);
        }
        if (*vqe_cmd) {
            return cmd_vqe(vqe_args, lib, out, err);
        }
        if (*report_cmd) {
            return cmd_report(report_file, out, err);
        }
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return is_validation_error(e.kind()) ? 1 : 2;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace qbatch::cli
