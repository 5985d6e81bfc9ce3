// effalg: generate instances, check the non-disturbance criteria, run the
// property suites, simulate sequential measurements and run the occurrence
// search. JSON goes to stdout (or --out), diagnostics to stderr.
//
// Exit codes: 0 success, 1 property failure, 2 invalid input, 3 I/O failure.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "effalg/effalg.hpp"

namespace {

using namespace effalg;

enum Exit { kOk = 0, kFailure = 1, kInvalid = 2, kIo = 3 };

struct Config {
    long dim = 3;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    double c = 0.0;
    double xi0_arg = 0.0;
    double tol_mat_eq = Tolerances{}.mat_eq;
    double tol_check = GapTolerances{}.check;
    double tol_classify = GapTolerances{}.classify;
    std::string out;

    PhaseFamily family() const { return PhaseFamily::from_angle(c, xi0_arg); }

    Tolerances tolerances() const {
        Tolerances t;
        t.mat_eq = tol_mat_eq;
        t.validate();
        return t;
    }

    GapTolerances gap() const {
        if (!(tol_check > 0) || !(tol_classify >= tol_check)) {
            throw ValidationError("need 0 < tol-check <= tol-classify");
        }
        return {tol_check, tol_classify};
    }

    json to_json() const {
        return {{"dim", dim},
                {"seed", seed},
                {"trials", trials},
                {"family", effalg::to_json(family())},
                {"xi0_arg", xi0_arg},
                {"tolerances", effalg::to_json(tolerances())},
                {"gap", effalg::to_json(gap())}};
    }
};

void add_common(CLI::App* cmd, Config& cfg) {
    cmd->add_option("--dim", cfg.dim, "Hilbert space dimension")->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "64-bit seed")->capture_default_str();
    cmd->add_option("--trials", cfg.trials, "number of trials")->capture_default_str();
    cmd->add_option("--c", cfg.c, "phase exponent c")->capture_default_str();
    cmd->add_option("--xi0-arg", cfg.xi0_arg, "phase of the prefactor xi0, radians")->capture_default_str();
    cmd->add_option("--tol-mat-eq", cfg.tol_mat_eq, "matrix equality tolerance")->capture_default_str();
    cmd->add_option("--tol-check", cfg.tol_check, "criterion verdict tolerance")->capture_default_str();
    cmd->add_option("--tol-classify", cfg.tol_classify, "classification tolerance")->capture_default_str();
    cmd->add_option("--out", cfg.out, "write output here instead of stdout");
}

void emit(const Config& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        std::cout.flush();
    } else {
        write_file(cfg.out, text);
    }
}

void emit(const Config& cfg, const json& j) { emit(cfg, j.dump(2) + "\n"); }

std::vector<Matrix> as_matrices(const Povm& X) {
    std::vector<Matrix> out;
    for (const auto& A : X) out.push_back(A.matrix());
    return out;
}

InstanceFile load(const std::string& path, const Tolerances& tol) {
    InstanceFile f = parse_instance(read_file(path));
    f.validate(tol);
    return f;
}

/// The POVM named `name`, or the file's only POVM when `name` is absent.
Povm pick_povm(const InstanceFile& f, const std::string& name, bool explicit_name,
               const std::string& path, const Tolerances& tol) {
    auto it = f.povms.find(name);
    if (it == f.povms.end() && !explicit_name && f.povms.size() == 1) it = f.povms.begin();
    if (it == f.povms.end()) throw ValidationError(path + ": no POVM named '" + name + "'");
    return validate_povm(it->second, tol, it->first);
}

DensityOperator pick_state(const InstanceFile& f, const std::string& path, const Tolerances& tol) {
    auto it = f.states.find("W");
    if (it == f.states.end() && f.states.size() == 1) it = f.states.begin();
    if (it == f.states.end()) throw ValidationError(path + ": expected one state or a state named 'W'");
    return validate_density(it->second, tol);
}

// --- commands ---------------------------------------------------------------

struct GenArgs {
    std::string kind;
    std::size_t m = 2;
    std::size_t n = 2;
    std::size_t parts = 2;
};

int run_gen(const Config& cfg, const GenArgs& args) {
    const Tolerances tol = cfg.tolerances();
    InstanceFile f;
    f.dim = cfg.dim;
    if (args.kind == "effect") {
        f.effects["A"] = random_effect(cfg.dim, cfg.seed).matrix();
    } else if (args.kind == "density") {
        f.states["W"] = random_density(cfg.dim, cfg.seed).matrix();
    } else if (args.kind == "povm") {
        f.povms["X"] = as_matrices(random_povm(cfg.dim, args.m, cfg.seed));
    } else if (args.kind == "pvm") {
        f.povms["X"] = as_matrices(random_pvm(cfg.dim, args.parts, cfg.seed));
    } else {
        auto [X, Y] = random_commuting_povm_pair(cfg.dim, args.m, args.n, cfg.seed);
        f.povms["X"] = as_matrices(X);
        f.povms["Y"] = as_matrices(Y);
    }
    f.validate(tol);
    emit(cfg, emit_instance(f));
    return kOk;
}

struct CheckArgs {
    std::string x_path, y_path, state_path;
    std::string x_name = "X", y_name = "Y";
    bool x_named = false, y_named = false;
};

int run_check(const Config& cfg, const CheckArgs& args) {
    const Tolerances tol = cfg.tolerances();
    const GapTolerances gap = cfg.gap();
    const InstanceFile xf = load(args.x_path, tol);
    const InstanceFile yf = load(args.y_path, tol);
    const Povm X = pick_povm(xf, args.x_name, args.x_named, args.x_path, tol);
    const Povm Y = pick_povm(yf, args.y_name, args.y_named, args.y_path, tol);
    require_same_dim(X[0].matrix(), Y[0].matrix());
    const long d = X.dim();
    const DensityOperator W = args.state_path.empty()
                                  ? validate_density(identity(d) / static_cast<double>(d), tol)
                                  : pick_state(load(args.state_path, tol), args.state_path, tol);
    require_same_dim(W.matrix(), X[0].matrix());

    const auto cv = cross_validate(cfg.family(), X, Y, W, gap);
    json config = cfg.to_json();
    config["dim"] = d;
    config.erase("seed");
    config.erase("trials");
    emit(cfg, json{{"config", config}, {"report", to_json(cv)}});
    for (const auto& v : cv.violations) std::cerr << "violated: " << v << "\n";
    return cv.consistent() ? kOk : kFailure;
}

int run_verify(const Config& cfg) {
    const PhaseFamily fam = cfg.family();
    const GapTolerances gap = cfg.gap();
    std::vector<SuiteReport> suites{verify_axioms(fam, cfg.dim, cfg.trials, cfg.seed),
                                    verify_phase_calculus(fam, cfg.dim, cfg.trials, cfg.seed),
                                    verify_criteria(fam, cfg.dim, cfg.trials, cfg.seed, gap)};
    json out = {{"config", cfg.to_json()}, {"suites", json::array()}};
    bool passed = true;
    for (const auto& s : suites) {
        out["suites"].push_back(to_json(s));
        passed = passed && s.passed();
        for (const auto& p : s.properties)
            if (!p.passed()) std::cerr << s.suite << "." << p.name << " failed: " << p.max_residual << "\n";
    }
    out["passed"] = passed;
    emit(cfg, out);
    return passed ? kOk : kFailure;
}

int run_simulate(const Config& cfg, const CheckArgs& args) {
    const Tolerances tol = cfg.tolerances();
    const InstanceFile xf = load(args.x_path, tol);
    const InstanceFile yf = load(args.y_path, tol);
    const Povm X = pick_povm(xf, args.x_name, args.x_named, args.x_path, tol);
    const Povm Y = pick_povm(yf, args.y_name, args.y_named, args.y_path, tol);
    const DensityOperator W = pick_state(load(args.state_path, tol), args.state_path, tol);
    const auto table = sample_sequential(cfg.family(), W, X, Y, cfg.trials, cfg.seed);
    const double worst = max_abs_z(table);
    json config = cfg.to_json();
    config["dim"] = X.dim();
    emit(cfg, json{{"config", config}, {"table", to_json(table)}, {"max_abs_z", worst}});
    if (!(worst <= 5.0)) {
        std::cerr << "cell |z| = " << worst << " exceeds 5\n";
        return kFailure;
    }
    return kOk;
}

int run_search(const Config& cfg, std::size_t outcomes) {
    OccurrenceSearchOptions opt;
    opt.outcomes = outcomes;
    opt.gap = cfg.gap();
    const auto findings = search_occurrence_gap(cfg.family(), cfg.dim, cfg.trials, cfg.seed, opt);
    emit(cfg, json{{"config", cfg.to_json()}, {"findings", to_json(findings)}});
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sequential products and non-disturbance criteria on finite-dimensional effects"};
    app.require_subcommand(1);

    Config gen_cfg, check_cfg, verify_cfg, sim_cfg, search_cfg;
    verify_cfg.trials = 100;
    sim_cfg.trials = 100000;
    search_cfg.dim = 2;
    search_cfg.trials = 200;

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "generate a random instance file");
    gen->add_option("kind", gen_args.kind, "effect | density | povm | commuting-pair | pvm")
        ->required()
        ->check(CLI::IsMember({"effect", "density", "povm", "commuting-pair", "pvm"}));
    gen->add_option("--m", gen_args.m, "outcomes of X")->capture_default_str();
    gen->add_option("--n", gen_args.n, "outcomes of Y (commuting-pair)")->capture_default_str();
    gen->add_option("--parts", gen_args.parts, "blocks of a PVM")->capture_default_str();
    add_common(gen, gen_cfg);

    CheckArgs check_args;
    auto* check = app.add_subcommand("check", "evaluate criteria I, II, III for a POVM pair");
    check->add_option("x", check_args.x_path, "file holding X")->required();
    check->add_option("y", check_args.y_path, "file holding Y")->required();
    check->add_option("--state", check_args.state_path, "state for the fixed-state occurrence check (default I/d)");
    auto* xn = check->add_option("--x-name", check_args.x_name, "POVM name in the X file");
    auto* yn = check->add_option("--y-name", check_args.y_name, "POVM name in the Y file");
    add_common(check, check_cfg);

    auto* verify = app.add_subcommand("verify", "run the axiom, phase-calculus and criteria suites");
    add_common(verify, verify_cfg);

    CheckArgs sim_args;
    auto* simulate = app.add_subcommand("simulate", "sample X followed by Y in a state");
    simulate->add_option("x", sim_args.x_path, "file holding X")->required();
    simulate->add_option("y", sim_args.y_path, "file holding Y")->required();
    simulate->add_option("state", sim_args.state_path, "file holding the state")->required();
    auto* sxn = simulate->add_option("--x-name", sim_args.x_name, "POVM name in the X file");
    auto* syn = simulate->add_option("--y-name", sim_args.y_name, "POVM name in the Y file");
    add_common(simulate, sim_cfg);

    std::size_t search_outcomes = 2;
    auto* search = app.add_subcommand("search", "look for incompatible pairs satisfying occurrence invariance");
    search->add_option("--m", search_outcomes, "outcomes per POVM")->capture_default_str();
    add_common(search, search_cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }
    check_args.x_named = xn->count() > 0;
    check_args.y_named = yn->count() > 0;
    sim_args.x_named = sxn->count() > 0;
    sim_args.y_named = syn->count() > 0;

    try {
        if (gen->parsed()) return run_gen(gen_cfg, gen_args);
        if (check->parsed()) return run_check(check_cfg, check_args);
        if (verify->parsed()) return run_verify(verify_cfg);
        if (simulate->parsed()) return run_simulate(sim_cfg, sim_args);
        return run_search(search_cfg, search_outcomes);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const DimensionMismatch& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const ZeroProbability& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
}
