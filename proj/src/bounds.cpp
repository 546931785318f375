#include "mwbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "mwbound/errors.hpp"

namespace mwbound {

namespace {

constexpr double kBetaStrictness = 1e-9;  // beta must clear 1/g by this much
constexpr double kTieRelTol = 1e-12;      // bounds closer than this are a tie
constexpr double kMxAgreementTol = 1e-6;  // supplied vs recomputed M(X)

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

const char* kernel_route_name(KernelRoute route) {
    switch (route) {
        case KernelRoute::IdentityAction: return "identity_action";
        case KernelRoute::OrderCounting: return "order_counting";
        case KernelRoute::None: return "none";
    }
    return "?";
}

const char* criterion_name(Criterion c) {
    switch (c) {
        case Criterion::Kernel: return "kernel";
        case Criterion::Averaged: return "averaged";
        case Criterion::Dirac: return "dirac";
        case Criterion::NoneApplicable: return "none_applicable";
    }
    return "?";
}

double compute_mx(const MXComponents& c) {
    if (c.genus < 2) fail(Errc::InvalidComponent, "genus must be >= 2");
    if (c.field_degree < 1) fail(Errc::InvalidComponent, "field degree must be >= 1");
    if (c.delta_sum < 0.0) fail(Errc::InvalidComponent, "delta_sum must be >= 0");
    for (const auto& bp : c.bad_primes) {
        if (bp.phi < 0.0) fail(Errc::InvalidComponent, "phi must be >= 0");
        if (!(bp.log_norm > 0.0)) fail(Errc::InvalidComponent, "log_norm must be > 0");
    }

    const double g = static_cast<double>(c.genus);
    const double gm1 = g - 1.0;
    double prime_sum = 0.0;
    for (const auto& bp : c.bad_primes) prime_sum += bp.phi * bp.log_norm;

    return gm1 * gm1 / 3.0 * std::max(6.0, g + 1.0) * c.delta_sum +
           2.0 * (g + 1.0) * prime_sum +
           2.0 * static_cast<double>(c.field_degree) * g * gm1 * gm1 *
               (3.0 * g * std::log(g) + 16.0);
}

KernelEvidence detect_kernel(const std::vector<IsometryAction>& actions, long long group_order,
                             const std::optional<BravaisType>& bravais) {
    std::vector<std::string> names;
    for (const auto& a : actions)
        if (std::find(names.begin(), names.end(), a.name) == names.end()) names.push_back(a.name);
    if (group_order < static_cast<long long>(names.size()))
        fail(Errc::InvalidComponent, "group_order " + std::to_string(group_order) +
                                         " is smaller than the number of distinct supplied "
                                         "automorphisms (" +
                                         std::to_string(names.size()) + ")");

    KernelEvidence ev;
    ev.group_order = group_order;

    for (const auto& a : actions) {
        // Matrix = I under a non-identity name: every sigma_*(G_i) - G_i is
        // torsion, so sigma lies in the kernel. Exact integer test.
        if (!a.is_identity_automorphism() && a.is_identity) {
            ev.found = true;
            ev.route = KernelRoute::IdentityAction;
            ev.witness_label = a.name;
            break;
        }
    }

    if (bravais) {
        ev.lattice_order = bravais->order;
        if (group_order > bravais->order) {
            ev.order_route_fired = true;
            ev.kernel_lower_bound =
                (group_order + bravais->order - 1) / bravais->order;
            if (!ev.found) {
                ev.found = true;
                ev.route = KernelRoute::OrderCounting;
            }
        }
    }
    return ev;
}

void verify_group_closure(const std::vector<IsometryAction>& actions, int rank) {
    std::vector<IMat> elems;
    elems.push_back(IMat::identity(rank));
    for (const auto& a : actions)
        if (std::find(elems.begin(), elems.end(), a.matrix) == elems.end())
            elems.push_back(a.matrix);
    for (const auto& x : elems)
        for (const auto& y : elems) {
            const IMat p = x * y;
            if (std::find(elems.begin(), elems.end(), p) == elems.end())
                fail(Errc::GroupNotClosed,
                     "the supplied action matrices (with I) are not closed under products; "
                     "the image of the automorphism group must be");
        }
}

double bound_kernel(double mx, int genus) {
    if (genus < 2) fail(Errc::InvalidComponent, "genus must be >= 2");
    return mx / static_cast<double>(2 * genus - 2);
}

std::optional<double> bound_spectral(double mx, int genus, double beta) {
    if (genus < 2) fail(Errc::InvalidComponent, "genus must be >= 2");
    const double g = static_cast<double>(genus);
    if (!(beta > 1.0 / g + kBetaStrictness)) return std::nullopt;
    return mx / (2.0 * (g * beta - 1.0));
}

GapCheck verify_gap(const QuadraticLattice& lat, int genus, double mx, const IVec& p,
                    const IVec& q) {
    if (p == q) fail(Errc::EqualVectors, "the gap principle needs distinct points");
    GapCheck out;
    out.lhs = height(lat, p) + height(lat, q) - 2.0 * static_cast<double>(genus) * pair(lat, p, q);
    out.holds = out.lhs >= -mx;
    return out;
}

BoundReport best_bound(const CurveDatum& datum, const PipelineOptions& opt) {
    datum.require_curve_profile();

    BoundReport rep;
    rep.label = datum.label;
    rep.genus = static_cast<int>(*datum.genus);

    // Resolve M(X): recompute from components when given; a supplied value
    // must agree with the recomputation.
    if (datum.mx.components) {
        MXComponents c;
        c.genus = rep.genus;
        c.field_degree = static_cast<int>(*datum.field_degree);
        c.delta_sum = datum.mx.components->delta_sum;
        c.bad_primes = datum.mx.components->bad_primes;
        rep.mx = compute_mx(c);
        if (datum.mx.value) {
            const double diff = std::fabs(*datum.mx.value - rep.mx);
            if (diff > kMxAgreementTol * std::max(1.0, std::fabs(rep.mx)))
                fail(Errc::MxMismatch, "supplied mx.value " + fmt(*datum.mx.value) +
                                           " disagrees with components (" + fmt(rep.mx) + ")");
            rep.mx_source = "both";
        } else {
            rep.mx_source = "components";
        }
    } else {
        rep.mx = *datum.mx.value;
        rep.mx_source = "value";
    }

    rep.lattice = validate_lattice(datum.gram, opt.pd_tol, opt.sym_tol);
    if (rep.lattice.asymmetry_residual > 0.0)
        rep.notes.push_back("gram asymmetry residual " + fmt(rep.lattice.asymmetry_residual) +
                            " symmetrized away at ingestion");

    for (const auto& spec : datum.automorphisms)
        rep.actions.push_back(check_isometry(rep.lattice, spec.name, spec.matrix, opt.iso_tol));
    double worst_residual = 0.0;
    for (const auto& a : rep.actions) worst_residual = std::max(worst_residual, a.residual);
    if (!rep.actions.empty())
        rep.notes.push_back("largest isometry residual " + fmt(worst_residual));

    if (opt.check_group_closure) {
        verify_group_closure(rep.actions, rep.lattice.rank);
        rep.notes.push_back("action matrices verified closed under products");
    } else {
        rep.notes.push_back(
            "group closure of the supplied actions not verified (pass --check-group-closure)");
    }

    if (rep.lattice.rank == 2) {
        rep.reduced = lagrange_reduce(rep.lattice);
        rep.bravais = classify(rep.reduced->lattice.gram, opt.bravais_tol);
        const auto& m = rep.bravais->margins;
        const struct { const char* name; double margin; } kinds[] = {
            {"square", m.square}, {"rectangular", m.rectangular}, {"hexagonal", m.hexagonal}};
        for (const auto& k : kinds)
            if (k.margin > opt.bravais_tol && k.margin <= 2.0 * opt.bravais_tol)
                rep.notes.push_back(std::string("near-boundary call: ") + k.name + " margin " +
                                    fmt(k.margin) + " vs tolerance " + fmt(opt.bravais_tol));
        if (rep.bravais->centered_rectangular_hint)
            rep.notes.push_back(
                "reduced form matches the centered-rectangular pattern (equal diagonals, "
                "cosine strictly between 0 and 1/2); point-group order 4 may apply, the "
                "conservative order 2 is used");
    }

    rep.kernel = detect_kernel(rep.actions, *datum.group_order, rep.bravais);

    for (const auto& a : rep.actions) {
        if (a.is_identity_automorphism()) continue;
        rep.spectra.push_back(symmetrize(rep.lattice, a));
    }
    if (!rep.spectra.empty()) {
        rep.dirac = alpha_of_operators(rep.spectra);
        rep.averaged = optimize_operators(rep.lattice, rep.spectra, opt.optimizer);
    } else {
        rep.notes.push_back("no non-identity automorphism supplied; spectral criteria skipped");
    }

    if (rep.kernel.found) rep.kernel_bound = bound_kernel(rep.mx, rep.genus);
    if (rep.dirac) rep.dirac_bound = bound_spectral(rep.mx, rep.genus, rep.dirac->alpha);
    if (rep.averaged)
        rep.averaged_bound = bound_spectral(rep.mx, rep.genus, rep.averaged->beta_star);

    // Smallest applicable bound wins; within the tie tolerance the earlier
    // entry does (Kernel is exact and hypothesis-light, Dirac needs only a
    // single automorphism).
    struct Candidate {
        Criterion criterion;
        double bound;
        double beta_or_alpha;
    };
    std::vector<Candidate> candidates;
    if (rep.kernel_bound) candidates.push_back({Criterion::Kernel, *rep.kernel_bound, 1.0});
    if (rep.dirac_bound)
        candidates.push_back({Criterion::Dirac, *rep.dirac_bound, rep.dirac->alpha});
    if (rep.averaged_bound)
        candidates.push_back({Criterion::Averaged, *rep.averaged_bound, rep.averaged->beta_star});

    for (const auto& c : candidates) {
        if (!rep.bound) {
            rep.criterion = c.criterion;
            rep.beta_or_alpha = c.beta_or_alpha;
            rep.bound = c.bound;
            continue;
        }
        const double tie = kTieRelTol * std::max(std::fabs(*rep.bound), std::fabs(c.bound));
        if (c.bound < *rep.bound - tie) {
            rep.criterion = c.criterion;
            rep.beta_or_alpha = c.beta_or_alpha;
            rep.bound = c.bound;
        }
    }

    rep.notes.push_back(
        "bounds apply to rational points with trivial stabilizer in the acting subgroup; "
        "stabilizers are not decidable from lattice data");
    rep.notes.push_back("natural logarithm used throughout the bound constant");
    if (datum.torsion_order > 1)
        rep.notes.push_back("torsion order " + std::to_string(datum.torsion_order) +
                            ": every lattice vector stands for that many rational classes");
    for (const auto& n : datum.notes) rep.notes.push_back("input note: " + n);
    return rep;
}

} // namespace mwbound
