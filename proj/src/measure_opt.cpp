#include "mwbound/measure_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "mwbound/errors.hpp"

namespace mwbound {

namespace {

ProbabilityMeasure measure_from_weights(const std::vector<std::string>& labels, const RVec& w) {
    ProbabilityMeasure mu;
    for (size_t i = 0; i < labels.size(); ++i) mu.weights.emplace_back(labels[i], w[i]);
    return mu;
}

bool lex_less(const RVec& x, const RVec& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

} // namespace

RVec project_to_simplex(const RVec& y) {
    const int n = static_cast<int>(y.size());
    RVec u = y;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cum = 0.0, theta = 0.0;
    for (int j = 0; j < n; ++j) {
        cum += u[j];
        const double t = (1.0 - cum) / static_cast<double>(j + 1);
        if (u[j] + t > 0.0) theta = t;
    }
    RVec x(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        x[i] = std::max(0.0, y[i] + theta);
        sum += x[i];
    }
    // Renormalize away the last few ulps so downstream weight validation
    // sees an exact simplex point.
    for (double& v : x) v /= sum;
    return x;
}

OptimizationResult optimize_operators(const QuadraticLattice& lat,
                                      const std::vector<SymmetrizedOperator>& ops,
                                      const OptimizeOptions& opt) {
    std::vector<const SymmetrizedOperator*> live;
    std::vector<std::string> labels;
    for (const auto& s : ops) {
        if (s.label == "id") continue;
        live.push_back(&s);
        labels.push_back(s.label);
    }
    const int m = static_cast<int>(live.size());
    if (m == 0) fail(Errc::NoNonIdentityAction, "no non-identity automorphism supplied");
    if (opt.budget < 1) fail(Errc::InvalidComponent, "budget must be >= 1");

    const int n = lat.rank;
    auto averaged_form = [&](const RVec& w) {
        Mat sym(n, n);
        for (int i = 0; i < m; ++i)
            if (w[i] != 0.0) sym = sym + w[i] * live[i]->sym_form;
        return sym;
    };
    auto value_of = [&](const RVec& w) { return eigen_sym(averaged_form(w)).values.front(); };

    RVec best_w;
    double best_f = -std::numeric_limits<double>::infinity();
    OptimizationResult result;
    // Merge rule over everything evaluated (seeds, iterates, restarts):
    // larger beta wins, exact ties go to the lexicographically smaller
    // measure. Deterministic regardless of evaluation order.
    auto consider = [&](const RVec& w, int iteration) {
        const double f = value_of(w);
        if (f > best_f) {
            best_f = f;
            best_w = w;
            if (opt.want_trace) result.trace.emplace_back(iteration, f);
        } else if (f == best_f && lex_less(w, best_w)) {
            best_w = w;
        }
    };

    const RVec uniform(m, 1.0 / static_cast<double>(m));
    consider(uniform, 0);
    for (int i = 0; i < m; ++i) {
        RVec dirac(m, 0.0);
        dirac[i] = 1.0;
        consider(dirac, 0);
    }

    auto ascend = [&](RVec w) {
        for (int t = 1; t <= opt.budget; ++t) {
            const EigenSym e = eigen_sym(averaged_form(w));
            // Supergradient of lambda_min at the current iterate: Rayleigh
            // quotients of the minimal eigenvector against each operator.
            RVec g(m);
            for (int i = 0; i < m; ++i) {
                double s = 0.0;
                for (int r = 0; r < n; ++r)
                    for (int c = 0; c < n; ++c)
                        s += e.vectors(r, 0) * live[i]->sym_form(r, c) * e.vectors(c, 0);
                g[i] = s;
            }
            const double step = 0.1 / std::sqrt(static_cast<double>(t));
            for (int i = 0; i < m; ++i) w[i] += step * g[i];
            w = project_to_simplex(w);
            consider(w, t);
        }
    };

    ascend(uniform);
    result.iterations = opt.budget;

    if (opt.restarts > 0) {
        for (int r = 1; r <= opt.restarts; ++r) {
            std::mt19937_64 rng(opt.seed + static_cast<std::uint64_t>(r));
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            RVec w(m);
            double sum = 0.0;
            for (int i = 0; i < m; ++i) {
                w[i] = -std::log(1.0 - unit(rng)); // Dirichlet(1): uniform on the simplex
                sum += w[i];
            }
            for (double& v : w) v /= sum;
            consider(w, 0);
            ascend(w);
        }
    }

    result.mu_star = measure_from_weights(labels, best_w);
    result.beta_star = certify_operators(lat, ops, result.mu_star);
    return result;
}

OptimizationResult optimize_mu(const QuadraticLattice& lat,
                               const std::vector<IsometryAction>& actions,
                               const OptimizeOptions& opt) {
    std::vector<SymmetrizedOperator> ops;
    for (const auto& act : actions) {
        if (act.is_identity_automorphism()) continue;
        ops.push_back(symmetrize(lat, act));
    }
    return optimize_operators(lat, ops, opt);
}

double certify_operators(const QuadraticLattice& lat,
                         const std::vector<SymmetrizedOperator>& ops,
                         const ProbabilityMeasure& mu) {
    return average(lat, ops, mu).lambda_min;
}

double certify(const QuadraticLattice& lat, const std::vector<IsometryAction>& actions,
               const ProbabilityMeasure& mu) {
    std::vector<SymmetrizedOperator> ops;
    for (const auto& act : actions) {
        if (act.is_identity_automorphism()) continue;
        ops.push_back(symmetrize(lat, act));
    }
    return certify_operators(lat, ops, mu);
}

} // namespace mwbound
