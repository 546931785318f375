// mwbound: effective Néron-Tate height bounds for curves of genus >= 2
// from Mordell-Weil lattice data and automorphism actions.
//
// Subcommands: validate, classify, spectra, optimize, bound, enumerate,
// report. Exit codes: 0 success (with a bound, for bound/report); 2 clean
// "no criterion applies"; 1 any error.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mwbound/bounds.hpp"
#include "mwbound/datum.hpp"
#include "mwbound/enumeration.hpp"
#include "mwbound/errors.hpp"
#include "mwbound/report.hpp"

namespace {

using mwbound::ordered_json;

struct CliOptions {
    std::string input;
    std::string format = "text";
    std::string output;
    double tol_pd = mwbound::defaults::pd_tol;
    double tol_sym = mwbound::defaults::sym_tol;
    double tol_iso = mwbound::defaults::iso_tol;
    double tol_bravais = mwbound::defaults::bravais_tol;
    int budget = 2000;
    std::optional<double> enum_bound;
    double enum_cap = mwbound::defaults::enum_cap;
    bool check_group_closure = false;
    bool include_zero = false;
    std::uint64_t seed = 0;
    int restarts = 0;
    bool trace = false;
};

mwbound::ToleranceSet tolerance_set(const CliOptions& o) {
    mwbound::ToleranceSet t;
    t.pd = o.tol_pd;
    t.sym = o.tol_sym;
    t.iso = o.tol_iso;
    t.bravais = o.tol_bravais;
    return t;
}

mwbound::PipelineOptions pipeline_options(const CliOptions& o) {
    mwbound::PipelineOptions p;
    p.pd_tol = o.tol_pd;
    p.sym_tol = o.tol_sym;
    p.iso_tol = o.tol_iso;
    p.bravais_tol = o.tol_bravais;
    p.optimizer.budget = o.budget;
    p.optimizer.restarts = o.restarts;
    p.optimizer.seed = o.seed;
    p.optimizer.want_trace = o.trace;
    p.check_group_closure = o.check_group_closure;
    return p;
}

void emit(const CliOptions& o, const std::string& command, const ordered_json& body) {
    const std::string text =
        o.format == "json" ? body.dump(2) + "\n" : mwbound::render_text(body);
    if (o.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.output);
    if (!out) mwbound::fail(mwbound::Errc::IoError, "cannot write " + o.output);
    out << text;

    // Run metadata goes to a sidecar so the canonical body stays
    // byte-identical across runs.
    ordered_json meta;
    meta["command"] = command;
    meta["input"] = o.input;
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    meta["written_at"] = stamp;
    std::ofstream side(o.output + ".meta.json");
    if (side) side << meta.dump(2) << "\n";
    std::cout << "wrote " << o.output << "\n";
}

// Builds validated spectral operators from either profile of a record.
struct SpectralInputs {
    mwbound::QuadraticLattice lattice;
    std::vector<mwbound::IsometryAction> actions;
    std::vector<mwbound::SymmetrizedOperator> operators;
};

SpectralInputs spectral_inputs(const mwbound::CurveDatum& datum, const CliOptions& o) {
    SpectralInputs in;
    in.lattice = mwbound::validate_lattice(datum.gram, o.tol_pd, o.tol_sym);
    if (datum.is_operator_record()) {
        for (const auto& spec : datum.operators)
            in.operators.push_back(mwbound::make_operator(in.lattice, spec.name, spec.matrix));
    } else {
        for (const auto& spec : datum.automorphisms) {
            auto act = mwbound::check_isometry(in.lattice, spec.name, spec.matrix, o.tol_iso);
            if (!act.is_identity_automorphism())
                in.operators.push_back(mwbound::symmetrize(in.lattice, act));
            in.actions.push_back(std::move(act));
        }
    }
    return in;
}

ordered_json header(const std::string& command, const std::string& label,
                    const CliOptions& o) {
    ordered_json j;
    j["schema_version"] = 1;
    j["command"] = command;
    j["label"] = label;
    j["tolerances"] = tolerances_json(tolerance_set(o));
    return j;
}

int cmd_validate(const CliOptions& o) {
    const auto datum = mwbound::parse_datum_file(o.input);
    auto in = spectral_inputs(datum, o);
    ordered_json j = header("validate", datum.label, o);
    j["lattice"] = mwbound::lattice_json(in.lattice);
    if (!in.actions.empty()) j["actions"] = mwbound::actions_json(in.actions);
    if (datum.is_operator_record()) {
        ordered_json ops = ordered_json::array();
        for (const auto& s : in.operators) {
            ordered_json e;
            e["name"] = s.label;
            e["lambda_min"] = s.lambda_min;
            ops.push_back(e);
        }
        j["operators"] = ops;
    }
    if (o.check_group_closure && !datum.is_operator_record()) {
        mwbound::verify_group_closure(in.actions, in.lattice.rank);
        j["group_closure_verified"] = true;
    }
    j["valid"] = true;
    emit(o, "validate", j);
    return 0;
}

int cmd_classify(const CliOptions& o) {
    const auto datum = mwbound::parse_datum_file(o.input);
    const auto lat = mwbound::validate_lattice(datum.gram, o.tol_pd, o.tol_sym);
    const auto reduced = mwbound::lagrange_reduce(lat);
    const auto bravais = mwbound::classify(reduced.lattice.gram, o.tol_bravais);
    ordered_json j = header("classify", datum.label, o);
    ordered_json red;
    red["gram"] = mwbound::gram_json(reduced.lattice.gram);
    red["basis_change"] = mwbound::int_matrix_json(reduced.basis_change);
    j["reduced"] = red;
    j["bravais"] = mwbound::bravais_json(bravais);
    emit(o, "classify", j);
    return 0;
}

int cmd_spectra(const CliOptions& o) {
    const auto datum = mwbound::parse_datum_file(o.input);
    auto in = spectral_inputs(datum, o);
    const auto alpha = mwbound::alpha_of_operators(in.operators);
    ordered_json j = header("spectra", datum.label, o);
    j["spectral"] = mwbound::spectra_json(in.operators, alpha);
    emit(o, "spectra", j);
    return 0;
}

int cmd_optimize(const CliOptions& o) {
    const auto datum = mwbound::parse_datum_file(o.input);
    auto in = spectral_inputs(datum, o);
    mwbound::OptimizeOptions opts;
    opts.budget = o.budget;
    opts.restarts = o.restarts;
    opts.seed = o.seed;
    opts.want_trace = o.trace;
    const auto result = mwbound::optimize_operators(in.lattice, in.operators, opts);
    ordered_json j = header("optimize", datum.label, o);
    j["spectral"] = mwbound::spectra_json(in.operators, std::nullopt);
    j["optimizer"] = mwbound::optimization_json(result);
    emit(o, "optimize", j);
    return 0;
}

int cmd_enumerate(const CliOptions& o) {
    const auto datum = mwbound::parse_datum_file(o.input);
    if (!o.enum_bound)
        mwbound::fail(mwbound::Errc::InvalidComponent,
                      "enumerate needs an explicit --enum-bound");
    const auto lat = mwbound::validate_lattice(datum.gram, o.tol_pd, o.tol_sym);
    const auto set = mwbound::short_vectors(lat, *o.enum_bound, o.include_zero, o.enum_cap);
    ordered_json j = header("enumerate", datum.label, o);
    j["enumeration"] = mwbound::enumeration_json(set);
    emit(o, "enumerate", j);
    return 0;
}

int cmd_bound(const CliOptions& o, bool with_enumeration) {
    const auto datum = mwbound::parse_datum_file(o.input);
    const auto rep = mwbound::best_bound(datum, pipeline_options(o));
    ordered_json j = mwbound::bound_report_json(rep, tolerance_set(o));
    j["command"] = with_enumeration ? "report" : "bound";
    // keep command near the top for readability
    ordered_json reordered;
    reordered["schema_version"] = j["schema_version"];
    reordered["command"] = j["command"];
    for (const auto& [key, value] : j.items())
        if (key != "schema_version" && key != "command") reordered[key] = value;
    j = reordered;

    if (with_enumeration) {
        std::optional<double> radius = o.enum_bound;
        if (!radius && rep.bound) radius = rep.bound;
        if (radius) {
            const auto set =
                mwbound::short_vectors(rep.lattice, *radius, o.include_zero, o.enum_cap);
            j["enumeration"] = mwbound::enumeration_json(set);
            const auto gap = mwbound::gap_check_over(rep.lattice, rep.genus, rep.mx, set);
            if (gap.pairs_checked > 0) j["gap_check"] = mwbound::gap_summary_json(gap);
        }
    }

    emit(o, with_enumeration ? "report" : "bound", j);
    return rep.criterion == mwbound::Criterion::NoneApplicable ? 2 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"effective Néron-Tate height bounds from Mordell-Weil lattice data"};
    app.require_subcommand(1);

    CliOptions o;
    std::string command;
    for (const auto& name : {"validate", "classify", "spectra", "optimize", "bound",
                             "enumerate", "report"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--input", o.input, "curve or operator record file")->required();
        sub->add_option("--format", o.format, "text or json")
            ->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--output", o.output, "write the report here (plus a .meta.json sidecar)");
        sub->add_option("--tol-pd", o.tol_pd, "Cholesky pivot floor");
        sub->add_option("--tol-sym", o.tol_sym, "gram asymmetry tolerance (relative)");
        sub->add_option("--tol-iso", o.tol_iso, "isometry residual tolerance (relative)");
        sub->add_option("--tol-bravais", o.tol_bravais, "Bravais classification tolerance");
        sub->add_option("--budget", o.budget, "optimizer iteration budget");
        sub->add_option("--enum-bound", o.enum_bound, "height bound for enumeration");
        sub->add_option("--enum-cap", o.enum_cap, "refuse enumerations larger than this");
        sub->add_flag("--check-group-closure", o.check_group_closure,
                      "verify the action matrices are closed under products");
        sub->add_flag("--include-zero", o.include_zero, "list the zero vector too");
        sub->add_option("--seed", o.seed, "seed for optimizer restarts");
        sub->add_option("--restarts", o.restarts, "optimizer restarts from random measures");
        sub->add_flag("--trace", o.trace, "record the optimizer's improvement trace");
        sub->callback([&command, name] { command = name; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (command == "validate") return cmd_validate(o);
        if (command == "classify") return cmd_classify(o);
        if (command == "spectra") return cmd_spectra(o);
        if (command == "optimize") return cmd_optimize(o);
        if (command == "bound") return cmd_bound(o, false);
        if (command == "enumerate") return cmd_enumerate(o);
        if (command == "report") return cmd_bound(o, true);
    } catch (const mwbound::Error& e) {
        const ordered_json err =
            mwbound::error_json(command, mwbound::errc_name(e.code()), e.what());
        if (o.format == "json")
            std::cout << err.dump(2) << "\n";
        else
            std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
