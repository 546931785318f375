#include "mwbound/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace mwbound {

namespace {

// Shortest decimal spelling that round-trips; keeps text output diff-stable.
std::string fmt_double(double v) {
    for (int prec = 1; prec <= 17; ++prec) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ordered_json rvec_json(const RVec& v) {
    ordered_json arr = ordered_json::array();
    for (double x : v) arr.push_back(x);
    return arr;
}

void render_value(std::ostringstream& out, const std::string& key, const ordered_json& v,
                  int depth);

void render_object(std::ostringstream& out, const ordered_json& obj, int depth) {
    for (const auto& [key, value] : obj.items()) render_value(out, key, value, depth);
}

bool is_scalar_array(const ordered_json& arr) {
    return std::all_of(arr.begin(), arr.end(),
                       [](const ordered_json& x) { return !x.is_structured(); });
}

std::string scalar_text(const ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
    if (v.is_null()) return "-";
    if (v.is_number_float()) return fmt_double(v.get<double>());
    return v.dump();
}

// A row renders on one line when every field is a scalar or a short
// scalar array (enumeration vectors, measure weights, trace entries).
std::string inline_row(const ordered_json& obj) {
    std::string line;
    for (const auto& [key, value] : obj.items()) {
        if (value.is_object()) return {};
        if (value.is_array()) {
            if (!is_scalar_array(value)) return {};
            std::string arr = "[";
            for (size_t i = 0; i < value.size(); ++i)
                arr += (i ? ", " : "") + scalar_text(value[i]);
            arr += "]";
            line += (line.empty() ? "" : ", ") + key + " = " + arr;
        } else {
            line += (line.empty() ? "" : ", ") + key + " = " + scalar_text(value);
        }
        if (line.size() > 100) return {};
    }
    return line;
}

void render_value(std::ostringstream& out, const std::string& key, const ordered_json& v,
                  int depth) {
    const std::string pad(static_cast<size_t>(depth) * 2, ' ');
    if (v.is_object()) {
        out << pad << key << ":\n";
        render_object(out, v, depth + 1);
    } else if (v.is_array()) {
        const bool long_strings =
            !v.empty() && v[0].is_string() &&
            std::any_of(v.begin(), v.end(),
                        [](const ordered_json& s) { return s.get<std::string>().size() > 40; });
        if (is_scalar_array(v) && !long_strings) {
            out << pad << key << " = [";
            for (size_t i = 0; i < v.size(); ++i)
                out << (i ? ", " : "") << scalar_text(v[i]);
            out << "]\n";
        } else if (is_scalar_array(v)) {
            out << pad << key << ":\n";
            for (const auto& item : v) out << pad << "  - " << scalar_text(item) << "\n";
        } else if (!v.empty() && v[0].is_array()) {
            // matrix: one row per line
            out << pad << key << ":\n";
            for (const auto& row : v) {
                out << pad << "  [";
                for (size_t i = 0; i < row.size(); ++i)
                    out << (i ? ", " : "") << scalar_text(row[i]);
                out << "]\n";
            }
        } else {
            out << pad << key << ":\n";
            for (const auto& item : v) {
                const std::string row = item.is_object() ? inline_row(item) : std::string();
                if (!row.empty()) {
                    out << pad << "  - " << row << "\n";
                } else {
                    out << pad << "  -\n";
                    render_object(out, item, depth + 2);
                }
            }
        }
    } else {
        out << pad << key << " = " << scalar_text(v) << "\n";
    }
}

} // namespace

ordered_json tolerances_json(const ToleranceSet& tol) {
    ordered_json j;
    j["pd"] = tol.pd;
    j["sym"] = tol.sym;
    j["iso"] = tol.iso;
    j["bravais"] = tol.bravais;
    j["enum_boundary"] = tol.enum_boundary;
    return j;
}

ordered_json gram_json(const Mat& m) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < m.rows; ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

ordered_json int_matrix_json(const IMat& m) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < m.rows; ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

ordered_json lattice_json(const QuadraticLattice& lat) {
    ordered_json j;
    j["rank"] = lat.rank;
    j["gram"] = gram_json(lat.gram);
    j["asymmetry_residual"] = lat.asymmetry_residual;
    j["cholesky_pivots"] = rvec_json(lat.cholesky_pivots());
    return j;
}

ordered_json actions_json(const std::vector<IsometryAction>& actions) {
    ordered_json arr = ordered_json::array();
    for (const auto& a : actions) {
        ordered_json j;
        j["name"] = a.name;
        j["matrix"] = int_matrix_json(a.matrix);
        j["is_identity_matrix"] = a.is_identity;
        j["det"] = a.determinant;
        j["residual"] = a.residual;
        arr.push_back(j);
    }
    return arr;
}

ordered_json bravais_json(const BravaisType& b) {
    ordered_json j;
    j["kind"] = bravais_name(b.kind);
    j["order"] = b.order;
    j["cosine"] = b.cosine;
    ordered_json m;
    m["square"] = b.margins.square;
    m["rectangular"] = b.margins.rectangular;
    m["hexagonal"] = b.margins.hexagonal;
    m["oblique"] = b.margins.oblique;
    j["margins"] = m;
    j["centered_rectangular_hint"] = b.centered_rectangular_hint;
    return j;
}

ordered_json spectra_json(const std::vector<SymmetrizedOperator>& ops,
                          const std::optional<DiracBest>& alpha) {
    ordered_json j;
    ordered_json arr = ordered_json::array();
    for (const auto& s : ops) {
        ordered_json o;
        o["name"] = s.label;
        o["lambda_min"] = s.lambda_min;
        o["spectrum"] = rvec_json(s.spectrum);
        arr.push_back(o);
    }
    j["per_action"] = arr;
    if (alpha) {
        j["alpha"] = alpha->alpha;
        j["alpha_label"] = alpha->label;
    }
    return j;
}

ordered_json measure_json(const ProbabilityMeasure& mu) {
    ordered_json arr = ordered_json::array();
    for (const auto& [name, w] : mu.weights) {
        ordered_json e;
        e["name"] = name;
        e["weight"] = w;
        arr.push_back(e);
    }
    return arr;
}

ordered_json optimization_json(const OptimizationResult& r) {
    ordered_json j;
    j["beta_star"] = r.beta_star;
    j["mu_star"] = measure_json(r.mu_star);
    j["iterations"] = r.iterations;
    if (!r.trace.empty()) {
        ordered_json t = ordered_json::array();
        for (const auto& [it, beta] : r.trace) {
            ordered_json e;
            e["iteration"] = it;
            e["best_beta"] = beta;
            t.push_back(e);
        }
        j["trace"] = t;
    }
    return j;
}

ordered_json kernel_json(const KernelEvidence& ev) {
    ordered_json j;
    j["found"] = ev.found;
    j["route"] = kernel_route_name(ev.route);
    if (!ev.witness_label.empty()) j["witness"] = ev.witness_label;
    if (ev.group_order) j["group_order"] = *ev.group_order;
    if (ev.lattice_order) j["lattice_order"] = *ev.lattice_order;
    j["order_route_fired"] = ev.order_route_fired;
    if (ev.kernel_lower_bound) j["kernel_lower_bound"] = *ev.kernel_lower_bound;
    return j;
}

ordered_json enumeration_json(const ShortVectorSet& set, size_t listing_limit) {
    ordered_json j;
    j["bound"] = set.bound;
    j["zero_included"] = set.zero_included;
    j["count_up_to_sign"] = set.count_up_to_sign;
    j["count_total"] = set.count_total;
    ordered_json vecs = ordered_json::array();
    size_t listed = 0;
    for (const auto& v : set.vectors) {
        if (listed++ >= listing_limit) break;
        ordered_json e;
        ordered_json coords = ordered_json::array();
        for (long long c : v.coords) coords.push_back(c);
        e["coords"] = coords;
        e["norm"] = v.norm;
        vecs.push_back(e);
    }
    j["vectors"] = vecs;
    if (set.vectors.size() > listing_limit)
        j["vectors_truncated_at"] = listing_limit;
    return j;
}

ordered_json bound_report_json(const BoundReport& rep, const ToleranceSet& tol) {
    ordered_json j;
    j["schema_version"] = 1;
    j["label"] = rep.label;
    j["genus"] = rep.genus;
    j["tolerances"] = tolerances_json(tol);
    ordered_json mx;
    mx["value"] = rep.mx;
    mx["source"] = rep.mx_source;
    j["mx"] = mx;
    j["lattice"] = lattice_json(rep.lattice);
    j["actions"] = actions_json(rep.actions);
    if (rep.reduced) {
        ordered_json red;
        red["gram"] = gram_json(rep.reduced->lattice.gram);
        red["basis_change"] = int_matrix_json(rep.reduced->basis_change);
        j["reduced"] = red;
    }
    if (rep.bravais) j["bravais"] = bravais_json(*rep.bravais);
    j["kernel"] = kernel_json(rep.kernel);
    if (!rep.spectra.empty()) j["spectral"] = spectra_json(rep.spectra, rep.dirac);
    if (rep.averaged) j["averaged"] = optimization_json(*rep.averaged);
    ordered_json cand;
    cand["kernel"] = rep.kernel_bound ? ordered_json(*rep.kernel_bound) : ordered_json(nullptr);
    cand["dirac"] = rep.dirac_bound ? ordered_json(*rep.dirac_bound) : ordered_json(nullptr);
    cand["averaged"] =
        rep.averaged_bound ? ordered_json(*rep.averaged_bound) : ordered_json(nullptr);
    j["candidate_bounds"] = cand;
    ordered_json res;
    res["criterion"] = criterion_name(rep.criterion);
    res["beta_or_alpha"] = rep.beta_or_alpha;
    res["bound"] = rep.bound ? ordered_json(*rep.bound) : ordered_json(nullptr);
    j["result"] = res;
    j["notes"] = rep.notes;
    return j;
}

GapSummary gap_check_over(const QuadraticLattice& lat, int genus, double mx,
                          const ShortVectorSet& set, size_t pair_limit) {
    GapSummary g;
    g.min_lhs = std::numeric_limits<double>::infinity();
    const size_t n = std::min(set.vectors.size(), pair_limit);
    for (size_t i = 0; i < n; ++i) {
        for (size_t k = i + 1; k < n; ++k) {
            const auto check =
                verify_gap(lat, genus, mx, set.vectors[i].coords, set.vectors[k].coords);
            ++g.pairs_checked;
            g.all_hold = g.all_hold && check.holds;
            g.min_lhs = std::min(g.min_lhs, check.lhs);
        }
    }
    if (g.pairs_checked == 0) g.min_lhs = 0.0;
    return g;
}

ordered_json gap_summary_json(const GapSummary& g) {
    ordered_json j;
    j["pairs_checked"] = g.pairs_checked;
    j["all_hold"] = g.all_hold;
    j["min_lhs"] = g.min_lhs;
    return j;
}

std::string render_text(const ordered_json& doc) {
    std::ostringstream out;
    render_object(out, doc, 0);
    return out.str();
}

ordered_json error_json(const std::string& command, const std::string& code,
                        const std::string& message) {
    ordered_json j;
    j["schema_version"] = 1;
    j["command"] = command;
    ordered_json e;
    e["code"] = code;
    e["message"] = message;
    j["error"] = e;
    return j;
}

} // namespace mwbound
