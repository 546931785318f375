#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "mwbound/bounds.hpp"
#include "mwbound/datum.hpp"
#include "mwbound/enumeration.hpp"

namespace mwbound {

using ordered_json = nlohmann::ordered_json;

/// Effective tolerance set, echoed into every report so near-boundary
/// calls can be audited.
struct ToleranceSet {
    double pd = defaults::pd_tol;
    double sym = defaults::sym_tol;
    double iso = defaults::iso_tol;
    double bravais = defaults::bravais_tol;
    double enum_boundary = defaults::enum_boundary_tol;
};

ordered_json tolerances_json(const ToleranceSet& tol);

ordered_json gram_json(const Mat& m);
ordered_json int_matrix_json(const IMat& m);

ordered_json lattice_json(const QuadraticLattice& lat);
ordered_json actions_json(const std::vector<IsometryAction>& actions);
ordered_json bravais_json(const BravaisType& b);
ordered_json spectra_json(const std::vector<SymmetrizedOperator>& ops,
                          const std::optional<DiracBest>& alpha);
ordered_json measure_json(const ProbabilityMeasure& mu);
ordered_json optimization_json(const OptimizationResult& r);
ordered_json kernel_json(const KernelEvidence& ev);
ordered_json enumeration_json(const ShortVectorSet& set, size_t listing_limit = 1000);

/// Canonical body for `bound`: the full pipeline result, no enumeration.
ordered_json bound_report_json(const BoundReport& rep, const ToleranceSet& tol);

struct GapSummary {
    std::int64_t pairs_checked = 0;
    bool all_hold = true;
    double min_lhs = 0.0;
};

/// Gap-principle self-check across distinct enumerated vectors.
GapSummary gap_check_over(const QuadraticLattice& lat, int genus, double mx,
                          const ShortVectorSet& set, size_t pair_limit = 64);

ordered_json gap_summary_json(const GapSummary& g);

/// Deterministic line-oriented rendering of a report document.
std::string render_text(const ordered_json& doc);

/// Error document for nonzero exits.
ordered_json error_json(const std::string& command, const std::string& code,
                        const std::string& message);

} // namespace mwbound
