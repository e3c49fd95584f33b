// Copyright 2026 The qladder Authors
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

// Command-line front end: build ansatz circuits, rewrite them into their
// shallow non-unitary form, verify the register-channel equivalence exactly,
// evaluate error budgets and fidelity-bound sweeps, prepare Burgers target
// states and run the variational trainer.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qladder/ansatz.hpp"
#include "qladder/burgers.hpp"
#include "qladder/json_io.hpp"
#include "qladder/manifest.hpp"
#include "qladder/noise.hpp"
#include "qladder/rewrite.hpp"
#include "qladder/simulator.hpp"
#include "qladder/train.hpp"

namespace {

using namespace qladder;

struct GlobalOpts {
    std::uint64_t seed = 12345;
    std::uint32_t threads = default_threads();
    std::vector<std::string> argv;
};

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

class ManifestScope {
public:
    ManifestScope(const GlobalOpts& g, std::string command)
        : start_(std::chrono::steady_clock::now()) {
        manifest_.command = std::move(command);
        manifest_.arguments = g.argv;
        manifest_.seed = g.seed;
    }
    void input(const std::string& path) { manifest_.input_files.push_back(path); }
    void output(const std::string& path) { manifest_.output_files.push_back(path); }
    ~ManifestScope() {
        if (manifest_.output_files.empty()) return;
        manifest_.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        manifest_.write(manifest_.output_files.front() + ".manifest.json");
    }

private:
    RunManifest manifest_;
    std::chrono::steady_clock::time_point start_;
};

CoreKind core_from_int(int k) {
    switch (k) {
        case 1: return CoreKind::Core1;
        case 2: return CoreKind::Core2;
        case 3: return CoreKind::Core3;
    }
    throw CLI::ValidationError("--core must be 1, 2 or 3");
}

AnsatzForm form_from_string(const std::string& s) {
    if (s == "unitary") return AnsatzForm::Unitary;
    if (s == "nonunitary") return AnsatzForm::NonUnitary;
    if (s == "deferred") return AnsatzForm::Deferred;
    throw CLI::ValidationError("--form must be unitary, nonunitary or deferred");
}

// ---------------------------------------------------------------------------
// ansatz build
// ---------------------------------------------------------------------------

struct AnsatzArgs {
    int core = 1;
    std::uint32_t qubits = 4;
    std::uint32_t layers = 1;
    std::string form = "unitary";
    std::string rotations = "y";
    std::string out = "circuit.json";
};

struct CoreArgs {
    int core = 1;
    std::uint32_t qubits = 4;
    std::string out = "core.json";
};

int run_ansatz_core(const GlobalOpts& g, const CoreArgs& a) {
    ManifestScope scope(g, "ansatz core");
    const Circuit c = build_core(core_from_int(a.core), a.qubits);
    save_json_file(a.out, circuit_to_json(c));
    scope.output(a.out);
    std::cout << "wrote " << a.out << ": " << c.count(InstrKind::Cx) << " cx gates\n";
    return 0;
}

int run_ansatz_build(const GlobalOpts& g, const AnsatzArgs& a) {
    ManifestScope scope(g, "ansatz build");
    AnsatzSpec spec;
    spec.n = a.qubits;
    spec.layers = a.layers;
    spec.core = core_from_int(a.core);
    spec.form = form_from_string(a.form);
    spec.rotations = a.rotations == "xyz" ? RotationSet::TripleXYZ : RotationSet::SingleY;
    const Circuit c = build_ansatz(spec);
    save_json_file(a.out, circuit_to_json(c));
    scope.output(a.out);
    std::cout << "wrote " << a.out << ": " << c.qubits.size() << " qubits, "
              << c.instructions.size() << " instructions, " << c.parameter_count
              << " parameters\n";
    return 0;
}

// ---------------------------------------------------------------------------
// rewrite
// ---------------------------------------------------------------------------

struct RewriteArgs {
    std::string in;
    std::string variant = "plus-x";
    bool keep_ends = true;
    bool deferred = false;
    std::string out = "rewritten.json";
    std::string report;
};

json report_to_json(const RewriteReport& r) {
    json events = json::array();
    for (const auto& e : r.events) {
        static const char* names[] = {"free-pass", "spawn", "block", "cancel"};
        events.push_back({{"kind", names[static_cast<int>(e.kind)]},
                          {"pauli", e.pauli == PauliKind::X ? "x" : "z"},
                          {"qubit", e.qubit},
                          {"bit", e.bit}});
    }
    return json{{"substituted_gates", r.substituted_gates},
                {"aux_added", r.aux_added},
                {"conditionals_added", r.conditionals_added},
                {"commutation_events", events},
                {"classical_corrections", r.classical_corrections}};
}

int run_rewrite(const GlobalOpts& g, const RewriteArgs& a) {
    ManifestScope scope(g, "rewrite");
    scope.input(a.in);
    Circuit c = circuit_from_json(load_json_file(a.in));
    const PrimitiveVariant variant =
        a.variant == "zero-z" ? PrimitiveVariant::ZeroZ : PrimitiveVariant::PlusX;

    RewriteReport report;
    if (c.count(InstrKind::Measure) == 0) {
        auto [rewritten, rep] = rewrite_ladder(c, variant, a.keep_ends);
        c = std::move(rewritten);
        report = std::move(rep);
    } else if (!a.deferred) {
        throw std::invalid_argument(
            "input already contains measurements; pass --deferred to push them to the end");
    }
    if (a.deferred) {
        auto [deferred, rep] = rewrite_deferred(c);
        c = std::move(deferred);
        report.classical_corrections = rep.classical_corrections;
    }
    save_json_file(a.out, circuit_to_json(c));
    scope.output(a.out);
    if (!a.report.empty()) {
        save_json_file(a.report, report_to_json(report));
        scope.output(a.report);
    }
    std::cout << "wrote " << a.out << ": " << c.count(InstrKind::Cx) << " cx, "
              << c.count(InstrKind::Measure) << " measure, " << c.count(InstrKind::Init)
              << " init, " << c.count(InstrKind::Conditional) << " conditional\n";
    return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string a;
    std::string b;
    std::uint32_t trials = 100;
    std::vector<double> params;
    std::string out;
};

int run_verify(const GlobalOpts& g, const VerifyArgs& v) {
    ManifestScope scope(g, "verify");
    scope.input(v.a);
    scope.input(v.b);
    const Circuit ca = circuit_from_json(load_json_file(v.a));
    const Circuit cb = circuit_from_json(load_json_file(v.b));
    const auto report = channel_equivalent(ca, cb, v.trials, g.seed, v.params, g.threads);
    const json j{{"equivalent", report.equivalent},
                 {"worst_infidelity", report.worst_infidelity},
                 {"inputs_checked", report.inputs_checked},
                 {"branches_checked", report.branches_checked},
                 {"worst_input", report.worst_input},
                 {"tolerance", EquivalenceReport::kTolerance}};
    std::cout << j.dump(2) << "\n";
    if (!v.out.empty()) {
        save_json_file(v.out, j);
        scope.output(v.out);
    }
    return report.equivalent ? 0 : 1;
}

// ---------------------------------------------------------------------------
// budget
// ---------------------------------------------------------------------------

struct BudgetArgs {
    int core = 1;
    std::string form = "unitary";
    std::uint32_t qubits = 0;
    std::string in;
    std::string out;
};

json budget_to_json(const ErrorBudget& b) {
    return json{{"cx_depth", b.cx_depth}, {"t_idle", b.t_idle},   {"n_cx", b.n_cx},
                {"n_meas", b.n_meas},     {"n_in", b.n_in},       {"n_con", b.n_con}};
}

int run_budget(const GlobalOpts& g, const BudgetArgs& a) {
    ManifestScope scope(g, "budget");
    json j;
    if (!a.in.empty()) {
        scope.input(a.in);
        const Circuit c = circuit_from_json(load_json_file(a.in));
        j = budget_to_json(budget_from_schedule(c));
        j["source"] = "schedule";
    } else {
        if (a.qubits == 0) throw CLI::ValidationError("budget needs --qubits or --in");
        const CircuitForm form =
            a.form == "unitary" ? CircuitForm::Unitary : CircuitForm::NonUnitary;
        j = budget_to_json(budget_closed_form(core_from_int(a.core), form, a.qubits));
        j["source"] = "closed-form";
    }
    std::cout << j.dump(2) << "\n";
    if (!a.out.empty()) {
        save_json_file(a.out, j);
        scope.output(a.out);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// sweep grid | sweep lines
// ---------------------------------------------------------------------------

struct SweepGridArgs {
    int core = 1;
    std::uint32_t qubits = 50;
    double p_idle_lo = 1e-5, p_idle_hi = 1e-3;
    double p_cx_lo = 1e-4, p_cx_hi = 1e-2;
    std::uint32_t resolution = 25;
    std::string out = "sweep.csv";
};

std::string grid_csv(const std::vector<GridCell>& grid) {
    std::string csv = "p_idle,p_cx,f_unitary,f_nonunitary,delta_f\n";
    for (const auto& c : grid)
        csv += fmt_double(c.p_idle) + "," + fmt_double(c.p_cx) + "," + fmt_double(c.f_unitary) +
               "," + fmt_double(c.f_nonunitary) + "," + fmt_double(c.delta_f) + "\n";
    return csv;
}

int run_sweep_grid(const GlobalOpts& g, const SweepGridArgs& a) {
    ManifestScope scope(g, "sweep grid");
    const auto grid = sweep_grid(core_from_int(a.core), a.qubits, a.p_idle_lo, a.p_idle_hi,
                                 a.p_cx_lo, a.p_cx_hi, a.resolution);
    write_file(a.out, grid_csv(grid));
    scope.output(a.out);
    std::cout << "wrote " << a.out << " (" << grid.size() << " cells)\n";
    return 0;
}

struct SweepLinesArgs {
    int core = 1;
    std::uint32_t n_lo = 4, n_hi = 200;
    double p_idle = -1.0, p_cx = -1.0;  // unset selects the default nine pairs
    std::string out = "lines.csv";
};

std::string lines_csv_single(const std::vector<LinePoint>& pts) {
    std::string csv = "n,delta_f\n";
    for (const auto& p : pts) csv += std::to_string(p.n) + "," + fmt_double(p.delta_f) + "\n";
    return csv;
}

std::string lines_csv_multi(const std::vector<LinePoint>& pts) {
    std::string csv = "n,p_idle,p_cx,delta_f,aux_qubits\n";
    for (const auto& p : pts)
        csv += std::to_string(p.n) + "," + fmt_double(p.p_idle) + "," + fmt_double(p.p_cx) + "," +
               fmt_double(p.delta_f) + "," + std::to_string(p.aux_qubits) + "\n";
    return csv;
}

int run_sweep_lines(const GlobalOpts& g, const SweepLinesArgs& a) {
    ManifestScope scope(g, "sweep lines");
    const CoreKind core = core_from_int(a.core);
    const bool single = a.p_idle > 0.0 && a.p_cx > 0.0;
    const auto pairs = single ? std::vector<std::pair<double, double>>{{a.p_idle, a.p_cx}}
                              : default_probability_pairs();
    const auto pts = sweep_lines(core, a.n_lo, a.n_hi, pairs);
    write_file(a.out, single ? lines_csv_single(pts) : lines_csv_multi(pts));
    scope.output(a.out);
    std::cout << "wrote " << a.out << "; auxiliary qubits per register count: "
              << (core == CoreKind::Core3 ? "2n-6" : "n-3") << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// burgers
// ---------------------------------------------------------------------------

struct BurgersArgs {
    std::string init = "gaussian";
    double nu = 10.0;
    double t = 0.083;
    std::uint32_t qubits = 4;
    double dt = 0.0;
    std::uint32_t refine = 4;
    std::string scheme = "central";
    double center = 0.5, width = 0.1, amplitude = 1.0, wavenumber = 1.0;
    std::string out = "state.json";
};

int run_burgers(const GlobalOpts& g, const BurgersArgs& a) {
    ManifestScope scope(g, "burgers");
    BurgersConfig cfg;
    cfg.nu = a.nu;
    cfg.t_final = a.t;
    cfg.grid_points = 1u << a.qubits;
    cfg.dt = a.dt;
    cfg.refine = a.refine;
    cfg.scheme = a.scheme == "upwind" ? BurgersScheme::Upwind : BurgersScheme::ConservativeCentral;
    cfg.profile = a.init == "sin" ? InitProfile::sinusoidal(a.wavenumber, a.amplitude)
                                  : InitProfile::gaussian(a.center, a.width, a.amplitude);
    const GridField field = evolve(cfg);
    const StateVector state = encode_state(field);
    save_json_file(a.out, state_to_json(state));
    scope.output(a.out);
    std::cout << "wrote " << a.out << " (" << state.dim() << " amplitudes, t=" << a.t << ")\n";
    return 0;
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

struct TrainArgs {
    std::string target;
    int core = 1;
    std::string form = "nonunitary";
    std::uint32_t layers = 5;
    std::uint32_t iters = 10000;
    std::uint32_t restarts = 5;
    std::string optimizer = "quasi-newton";
    std::string out = "result.json";
};

json train_result_to_json(const TrainResult& r) {
    return json{{"final_infidelity", r.final_infidelity},
                {"iterations", r.iterations},
                {"best_params", r.best_params},
                {"infidelity_history", r.infidelity_history}};
}

int run_train(const GlobalOpts& g, const TrainArgs& a) {
    ManifestScope scope(g, "train");
    scope.input(a.target);
    const StateVector target = state_from_json(load_json_file(a.target));

    std::uint32_t n = 0;
    while ((std::size_t{1} << n) < target.dim()) ++n;

    TrainConfig cfg;
    cfg.ansatz.n = n;
    cfg.ansatz.layers = a.layers;
    cfg.ansatz.core = core_from_int(a.core);
    cfg.ansatz.form = form_from_string(a.form);
    cfg.target = target;
    cfg.max_iterations = a.iters;
    cfg.restarts = a.restarts;
    cfg.seed = g.seed;
    cfg.threads = g.threads;
    cfg.optimizer = a.optimizer == "momentum" ? OptimizerKind::GradientDescentMomentum
                                              : OptimizerKind::QuasiNewton;
    const TrainResult result = train(cfg);
    save_json_file(a.out, train_result_to_json(result));
    scope.output(a.out);
    std::cout << "final infidelity " << fmt_double(result.final_infidelity) << " after "
              << result.iterations << " iterations\n";
    return 0;
}

// ---------------------------------------------------------------------------
// reproduce
// ---------------------------------------------------------------------------

struct ReproduceArgs {
    std::string target;
    std::string out_dir = ".";
};

int run_reproduce(const GlobalOpts& g, const ReproduceArgs& a) {
    namespace fs = std::filesystem;
    fs::create_directories(a.out_dir);
    auto path = [&](const std::string& name) { return (fs::path(a.out_dir) / name).string(); };

    if (a.target == "table1") {
        ManifestScope scope(g, "reproduce table1");
        std::string csv = "core,form,n,cx_depth,t_idle,n_cx,n_meas,n_in,n_con\n";
        for (auto core : {CoreKind::Core1, CoreKind::Core2, CoreKind::Core3}) {
            for (auto form : {CircuitForm::Unitary, CircuitForm::NonUnitary}) {
                for (std::uint64_t n : {4, 5, 10, 50}) {
                    const auto b = budget_closed_form(core, form, n);
                    csv += to_string(core) + "," +
                           (form == CircuitForm::Unitary ? "unitary" : "nonunitary") + "," +
                           std::to_string(n) + "," + std::to_string(b.cx_depth) + "," +
                           std::to_string(b.t_idle) + "," + std::to_string(b.n_cx) + "," +
                           std::to_string(b.n_meas) + "," + std::to_string(b.n_in) + "," +
                           std::to_string(b.n_con) + "\n";
                }
            }
        }
        write_file(path("table1.csv"), csv);
        scope.output(path("table1.csv"));
        std::cout << "wrote " << path("table1.csv") << "\n";
        return 0;
    }

    if (a.target == "fig3") {
        ManifestScope scope(g, "reproduce fig3");
        const auto grid = sweep_grid(CoreKind::Core1, 50, 1e-5, 1e-3, 1e-4, 1e-2, 25);
        write_file(path("fig3_grid.csv"), grid_csv(grid));
        scope.output(path("fig3_grid.csv"));
        const auto lines = sweep_lines(CoreKind::Core1, 4, 200, default_probability_pairs());
        write_file(path("fig3_lines.csv"), lines_csv_multi(lines));
        scope.output(path("fig3_lines.csv"));
        std::cout << "wrote " << path("fig3_grid.csv") << " and " << path("fig3_lines.csv")
                  << "\n";
        return 0;
    }

    if (a.target == "fig5") {
        ManifestScope scope(g, "reproduce fig5");
        for (auto core : {CoreKind::Core2, CoreKind::Core3}) {
            const auto lines = sweep_lines(core, 4, 200, default_probability_pairs());
            const std::string file = path("fig5_" + to_string(core) + ".csv");
            write_file(file, lines_csv_multi(lines));
            scope.output(file);
            std::cout << "wrote " << file << "\n";
        }
        return 0;
    }

    if (a.target == "table2") {
        ManifestScope scope(g, "reproduce table2");
        std::string csv = "state,layer_1,layer_2,layer_3,layer_4,layer_5\n";
        for (int state_id : {1, 2, 3}) {
            const StateVector target = encode_state(evolve(benchmark_config(state_id, 4)));
            TrainConfig cfg;
            cfg.ansatz = {
                .n = 4, .layers = 1, .core = CoreKind::Core1, .form = AnsatzForm::NonUnitary};
            cfg.target = target;
            cfg.restarts = 5;
            cfg.max_iterations = 10000;
            cfg.seed = g.seed + static_cast<std::uint64_t>(state_id);
            cfg.threads = g.threads;
            const auto table = layer_sweep(cfg, 1, 5);
            csv += "state" + std::to_string(state_id);
            for (const auto& [layers, result] : table)
                csv += "," + fmt_double(result.final_infidelity);
            csv += "\n";
            std::cout << "state " << state_id << " done\n";
        }
        write_file(path("table2.csv"), csv);
        scope.output(path("table2.csv"));
        std::cout << "wrote " << path("table2.csv") << "\n";
        return 0;
    }

    throw CLI::ValidationError("reproduce target must be fig3, fig5, table1 or table2");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qladder: depth rewriting, verification and noise budgeting for "
                 "ladder-structured variational circuits"};
    app.require_subcommand(1);

    GlobalOpts g;
    for (int i = 0; i < argc; ++i) g.argv.emplace_back(argv[i]);
    app.add_option("--seed", g.seed, "global random seed")->capture_default_str();
    app.add_option("--threads", g.threads, "worker thread cap")->capture_default_str();

    auto* ansatz = app.add_subcommand("ansatz", "ansatz circuit construction");
    ansatz->require_subcommand(1);
    AnsatzArgs ansatz_args;

    CoreArgs core_args;
    auto* ansatz_core = ansatz->add_subcommand("core", "emit a bare core circuit");
    ansatz_core->add_option("--core", core_args.core, "core circuit (1, 2 or 3)")->required();
    ansatz_core->add_option("--qubits", core_args.qubits, "register qubit count")->required();
    ansatz_core->add_option("--out", core_args.out, "output circuit path")->capture_default_str();

    auto* ansatz_build = ansatz->add_subcommand("build", "build a layered ansatz circuit");
    ansatz_build->add_option("--core", ansatz_args.core, "core circuit (1, 2 or 3)")->required();
    ansatz_build->add_option("--qubits", ansatz_args.qubits, "register qubit count")->required();
    ansatz_build->add_option("--layers", ansatz_args.layers, "layer count")->required();
    ansatz_build->add_option("--form", ansatz_args.form, "unitary|nonunitary|deferred")
        ->capture_default_str();
    ansatz_build->add_option("--rotations", ansatz_args.rotations, "y|xyz")->capture_default_str();
    ansatz_build->add_option("--out", ansatz_args.out, "output circuit path")
        ->capture_default_str();

    auto* rewrite = app.add_subcommand("rewrite", "rewrite a ladder circuit into non-unitary form");
    RewriteArgs rewrite_args;
    rewrite->add_option("--in", rewrite_args.in, "input circuit JSON")->required();
    rewrite->add_option("--variant", rewrite_args.variant, "plus-x|zero-z")->capture_default_str();
    rewrite->add_flag("--keep-ends,!--no-keep-ends", rewrite_args.keep_ends,
                      "keep the first and last CX of each ladder run");
    rewrite->add_flag("--deferred", rewrite_args.deferred, "push all measurements to the end");
    rewrite->add_option("--out", rewrite_args.out, "output circuit path")->capture_default_str();
    rewrite->add_option("--report", rewrite_args.report, "rewrite report path");

    auto* verify = app.add_subcommand("verify", "exact register-channel equivalence check");
    VerifyArgs verify_args;
    verify->add_option("--a", verify_args.a, "first circuit")->required();
    verify->add_option("--b", verify_args.b, "second circuit")->required();
    verify->add_option("--trials", verify_args.trials, "random input count")
        ->capture_default_str();
    verify->add_option("--param", verify_args.params, "rotation parameter values (repeatable)");
    verify->add_option("--out", verify_args.out, "report path");

    auto* budget = app.add_subcommand("budget", "error budget of a core or circuit");
    BudgetArgs budget_args;
    budget->add_option("--core", budget_args.core, "core circuit (1, 2 or 3)")
        ->capture_default_str();
    budget->add_option("--form", budget_args.form, "unitary|nonunitary")->capture_default_str();
    budget->add_option("--qubits", budget_args.qubits, "register qubit count (closed form)");
    budget->add_option("--in", budget_args.in, "circuit JSON (budget from schedule)");
    budget->add_option("--out", budget_args.out, "output path");

    auto* sweep = app.add_subcommand("sweep", "fidelity-bound sweeps");
    sweep->require_subcommand(1);
    SweepGridArgs grid_args;
    auto* sweep_grid_cmd = sweep->add_subcommand("grid", "(p_idle, p_cx) fidelity grid");
    sweep_grid_cmd->add_option("--core", grid_args.core)->capture_default_str();
    sweep_grid_cmd->add_option("--qubits", grid_args.qubits)->capture_default_str();
    sweep_grid_cmd->add_option("--p-idle-min", grid_args.p_idle_lo)->capture_default_str();
    sweep_grid_cmd->add_option("--p-idle-max", grid_args.p_idle_hi)->capture_default_str();
    sweep_grid_cmd->add_option("--p-cx-min", grid_args.p_cx_lo)->capture_default_str();
    sweep_grid_cmd->add_option("--p-cx-max", grid_args.p_cx_hi)->capture_default_str();
    sweep_grid_cmd->add_option("--resolution", grid_args.resolution)->capture_default_str();
    sweep_grid_cmd->add_option("--out", grid_args.out)->capture_default_str();

    SweepLinesArgs lines_args;
    auto* sweep_lines_cmd = sweep->add_subcommand("lines", "delta-fidelity vs register count");
    sweep_lines_cmd->add_option("--core", lines_args.core)->capture_default_str();
    sweep_lines_cmd->add_option("--n-min", lines_args.n_lo)->capture_default_str();
    sweep_lines_cmd->add_option("--n-max", lines_args.n_hi)->capture_default_str();
    sweep_lines_cmd->add_option("--p-idle", lines_args.p_idle,
                                "idling error probability (with --p-cx selects one pair)");
    sweep_lines_cmd->add_option("--p-cx", lines_args.p_cx, "CX error probability");
    sweep_lines_cmd->add_option("--out", lines_args.out)->capture_default_str();

    auto* burgers = app.add_subcommand("burgers", "solve the 1-D Burgers equation and encode it");
    BurgersArgs burgers_args;
    burgers->add_option("--init", burgers_args.init, "gaussian|sin")->capture_default_str();
    burgers->add_option("--nu", burgers_args.nu, "kinematic viscosity")->capture_default_str();
    burgers->add_option("--t", burgers_args.t, "evolution time")->capture_default_str();
    burgers->add_option("--qubits", burgers_args.qubits, "grid = 2^qubits points")
        ->capture_default_str();
    burgers->add_option("--dt", burgers_args.dt, "time step (0 = stability limited)");
    burgers->add_option("--refine", burgers_args.refine, "solve-grid refinement factor")
        ->capture_default_str();
    burgers->add_option("--scheme", burgers_args.scheme, "central|upwind")->capture_default_str();
    burgers->add_option("--center", burgers_args.center)->capture_default_str();
    burgers->add_option("--width", burgers_args.width)->capture_default_str();
    burgers->add_option("--amplitude", burgers_args.amplitude)->capture_default_str();
    burgers->add_option("--wavenumber", burgers_args.wavenumber)->capture_default_str();
    burgers->add_option("--out", burgers_args.out)->capture_default_str();

    auto* train_cmd = app.add_subcommand("train", "variational state preparation");
    TrainArgs train_args;
    train_cmd->add_option("--target", train_args.target, "target state JSON")->required();
    train_cmd->add_option("--core", train_args.core)->capture_default_str();
    train_cmd->add_option("--form", train_args.form)->capture_default_str();
    train_cmd->add_option("--layers", train_args.layers)->capture_default_str();
    train_cmd->add_option("--iters", train_args.iters)->capture_default_str();
    train_cmd->add_option("--restarts", train_args.restarts)->capture_default_str();
    train_cmd->add_option("--optimizer", train_args.optimizer, "quasi-newton|momentum")
        ->capture_default_str();
    train_cmd->add_option("--out", train_args.out)->capture_default_str();

    auto* reproduce = app.add_subcommand("reproduce", "regenerate the reference tables and sweeps");
    ReproduceArgs reproduce_args;
    reproduce->add_option("target", reproduce_args.target, "fig3|fig5|table1|table2")->required();
    reproduce->add_option("--out-dir", reproduce_args.out_dir)->capture_default_str();

    // Let the global --seed/--threads appear after a subcommand as well.
    for (auto* sub : {ansatz, ansatz_core, ansatz_build, rewrite, verify, budget, sweep,
                      sweep_grid_cmd, sweep_lines_cmd, burgers, train_cmd, reproduce})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (ansatz_core->parsed()) return run_ansatz_core(g, core_args);
        if (ansatz_build->parsed()) return run_ansatz_build(g, ansatz_args);
        if (rewrite->parsed()) return run_rewrite(g, rewrite_args);
        if (verify->parsed()) return run_verify(g, verify_args);
        if (budget->parsed()) return run_budget(g, budget_args);
        if (sweep_grid_cmd->parsed()) return run_sweep_grid(g, grid_args);
        if (sweep_lines_cmd->parsed()) return run_sweep_lines(g, lines_args);
        if (burgers->parsed()) return run_burgers(g, burgers_args);
        if (train_cmd->parsed()) return run_train(g, train_args);
        if (reproduce->parsed()) return run_reproduce(g, reproduce_args);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
