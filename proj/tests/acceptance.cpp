// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Criteria run against the shipped fixture corpus (MWBOUND_FIXTURES or
// argv[1] points at the directory) plus randomized property checks with
// fixed seeds.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mwbound/bounds.hpp"
#include "mwbound/datum.hpp"
#include "mwbound/enumeration.hpp"
#include "mwbound/errors.hpp"
#include "support/generators.hpp"

using namespace mwbound;

namespace {

std::string g_fixtures;
int g_failures = 0;

struct Check {
    int number;
    std::string name;
    std::function<void(std::ostringstream&)> body;
};

void run(const Check& c) {
    std::ostringstream detail;
    bool ok = true;
    std::string why;
    const auto start = std::chrono::steady_clock::now();
    try {
        c.body(detail);
    } catch (const std::exception& e) {
        ok = false;
        why = e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok) {
        std::printf("[PASS] criterion %d: %s (%.2fs)%s%s\n", c.number, c.name.c_str(), secs,
                    detail.str().empty() ? "" : " -- ", detail.str().c_str());
    } else {
        ++g_failures;
        std::printf("[FAIL] criterion %d: %s -- %s\n", c.number, c.name.c_str(), why.c_str());
    }
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

void require_close(double got, double want, double rel, const std::string& what) {
    const double scale = std::max(1.0, std::fabs(want));
    if (std::fabs(got - want) > rel * scale)
        throw std::runtime_error(what + ": got " + std::to_string(got) + ", want " +
                                 std::to_string(want));
}

// --- criterion 1: end-to-end reproduction on the shipped curve fixture ----

void criterion_curve_pipeline(std::ostringstream& detail) {
    const auto start = std::chrono::steady_clock::now();
    const auto datum = parse_datum_file(g_fixtures + "/196098.datum");
    const auto rep = best_bound(datum);

    require(rep.bravais.has_value(), "rank-2 record must classify");
    require(rep.bravais->kind == BravaisKind::Oblique, "Bravais kind must be oblique");
    require(rep.bravais->order == 2, "|O(Lambda)| must be 2");
    require(std::fabs(rep.bravais->cosine - (-0.344)) <= 1e-3,
            "cosine must be -0.344 +- 0.001");
    require(rep.kernel.found, "kernel must be detected");
    require(rep.kernel.route == KernelRoute::IdentityAction,
            "identity-action route must be the witness");
    require(rep.kernel.order_route_fired, "order-counting route must fire too (4 > 2)");
    require(rep.kernel.kernel_lower_bound && *rep.kernel.kernel_lower_bound == 2,
            "kernel lower bound must be 2");
    require(rep.criterion == Criterion::Kernel, "criterion must be Kernel");
    require(rep.bound.has_value(), "a bound must be produced");
    require_close(*rep.bound, rep.mx / 2.0, 1e-12, "bound must equal M(X)/(2g-2) = M(X)/2");

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    require(secs < 1.0, "pipeline must finish within 1 s");
    detail << "bound = M(X)/2 = " << *rep.bound << ", cosine = " << rep.bravais->cosine;
}

// --- criterion 2: the averaging example ------------------------------------

void criterion_averaging(std::ostringstream& detail) {
    const auto lat = validate_lattice(Mat::identity(2));
    Mat t1m(2, 2), t2m(2, 2);
    t1m(1, 1) = 1.0;
    t2m(0, 0) = 1.0;
    const auto t1 = make_operator(lat, "T1", t1m);
    const auto t2 = make_operator(lat, "T2", t2m);
    require(t1.lambda_min == 0.0, "lambda_min(T1) must be 0 exactly");
    require(t2.lambda_min == 0.0, "lambda_min(T2) must be 0 exactly");

    const auto avg = average(lat, {t1, t2}, ProbabilityMeasure::uniform({"T1", "T2"}));
    require(avg.lambda_min == 0.5, "lambda_min of the half-half average must be 1/2 exactly");

    const auto r = optimize_operators(lat, {t1, t2}, {});
    require(std::fabs(r.beta_star - 0.5) <= 1e-6, "optimizer must recover beta* = 0.5 +- 1e-6");
    require(std::fabs(r.mu_star.weight_of("T1") - 0.5) <= 1e-4 &&
                std::fabs(r.mu_star.weight_of("T2") - 0.5) <= 1e-4,
            "optimizer must recover mu* = (1/2, 1/2) +- 1e-4");
    detail << "beta* = " << r.beta_star;
}

// --- criterion 3: the bound constant against an independent oracle ---------

void criterion_mx_table(std::ostringstream& detail) {
    testgen::Rng rng(20260811);
    std::uniform_real_distribution<double> delta(0.0, 40.0);
    std::uniform_real_distribution<double> phi(0.0, 12.0);
    std::uniform_real_distribution<double> logn(0.05, 9.0);
    for (int trial = 0; trial < 20; ++trial) {
        MXComponents c;
        c.genus = 2 + static_cast<int>(rng() % 10);
        c.field_degree = 1 + static_cast<int>(rng() % 6);
        c.delta_sum = delta(rng);
        std::vector<std::pair<long double, long double>> primes;
        for (int p = 0, np = static_cast<int>(rng() % 5); p < np; ++p) {
            const double ph = phi(rng), ln = logn(rng);
            c.bad_primes.push_back({ph, ln});
            primes.emplace_back(ph, ln);
        }
        const long double want = testgen::mx_oracle(c.genus, c.field_degree, c.delta_sum, primes);
        const double got = compute_mx(c);
        require(std::fabs(got - static_cast<double>(want)) <=
                    1e-12 * std::fabs(static_cast<double>(want)),
                "M(X) must match the oracle to 1e-12 relative (case " + std::to_string(trial) +
                    ")");
    }
    detail << "20 cases, 1e-12 relative";
}

// --- criterion 4: the lemma suite -------------------------------------------

void criterion_lemma_suite(std::ostringstream& detail) {
    const auto start = std::chrono::steady_clock::now();
    testgen::Rng rng(424243);
    std::uniform_real_distribution<double> entry(-2.0, 2.0);

    // pairing identity <v, S v> = <v, A v>
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const auto lwa = testgen::random_lattice_with_actions(rng, n, 1);
        const auto lat = validate_lattice(lwa.gram);
        const auto s = symmetrize(lat, check_isometry(lat, "a", lwa.actions[0]));
        const Mat a = to_real(lwa.actions[0]);
        RVec v(n);
        for (double& x : v) x = entry(rng);
        RVec sv(n, 0.0), av(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                sv[i] += s.op(i, j) * v[j];
                av[i] += a(i, j) * v[j];
            }
        const double h = pair(lat, v, v);
        require(std::fabs(pair(lat, v, sv) - pair(lat, v, av)) <= 1e-8 * (1.0 + h),
                "pairing identity violated");
        require(s.spectrum.front() >= -1.0 - 1e-9 && s.spectrum.back() <= 1.0 + 1e-9,
                "spectrum must stay in [-1, 1]");
    }

    // convex-min inequality
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const int m = 2 + static_cast<int>(rng() % 3);
        const auto lat = validate_lattice(Mat::identity(n));
        std::vector<SymmetrizedOperator> ops;
        ProbabilityMeasure mu;
        const RVec w = testgen::random_simplex_point(rng, m);
        double weighted = 0.0;
        for (int k = 0; k < m; ++k) {
            Mat t(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) t(i, j) = t(j, i) = entry(rng);
            ops.push_back(make_operator(lat, "op" + std::to_string(k), t));
            mu.weights.emplace_back(ops.back().label, w[k]);
            weighted += w[k] * ops.back().lambda_min;
        }
        require(average(lat, ops, mu).lambda_min >= weighted - 1e-9,
                "convex-min inequality violated");
    }

    // involutions coincide with their symmetrization
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const auto lwa = testgen::random_lattice_with_actions(rng, n, 1, true);
        const auto lat = validate_lattice(lwa.gram);
        require((lwa.actions[0] * lwa.actions[0]).is_identity(), "generator must be an involution");
        const auto s = symmetrize(lat, check_isometry(lat, "a", lwa.actions[0]));
        require(max_abs(s.op - to_real(lwa.actions[0])) <= 1e-9,
                "involution must equal its symmetrization");
    }

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    require(secs < 10.0, "lemma suite must finish within 10 s");
    detail << "3000 trials, ranks 2-6, " << static_cast<int>(secs * 1000.0) << " ms";
}

// --- criterion 5: bound consistency ----------------------------------------

void criterion_bound_consistency(std::ostringstream&) {
    testgen::Rng rng(515151);
    std::uniform_real_distribution<double> mx_dist(1e-3, 1e5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const int g = 2 + static_cast<int>(rng() % 12);
        const double mx = mx_dist(rng);
        const double lo = 1.0 / g + 1e-6;
        double b1 = lo + (1.0 - lo) * unit(rng);
        double b2 = lo + (1.0 - lo) * unit(rng);
        if (b1 > b2) std::swap(b1, b2);
        const auto s1 = bound_spectral(mx, g, b1);
        const auto s2 = bound_spectral(mx, g, b2);
        require(s1.has_value() && s2.has_value(), "both betas clear the threshold");
        if (b1 < b2) require(*s1 > *s2, "bound must decrease in beta");
        const auto at_one = bound_spectral(mx, g, 1.0);
        require(at_one.has_value(), "beta = 1 is admissible");
        require(std::fabs(*at_one - bound_kernel(mx, g)) <= 1e-12 * bound_kernel(mx, g),
                "beta = 1 must reduce to the kernel bound (1e-12 relative)");
    }
}

// --- criterion 6: enumeration against brute force ---------------------------

void criterion_enumeration_oracle(std::ostringstream& detail) {
    const auto start = std::chrono::steady_clock::now();
    testgen::Rng rng(616161);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::int64_t total = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 2);
        const Mat gram = testgen::random_pd_gram(rng, n, 0.5, 5.0);
        double max_diag = 0.0;
        for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, gram(i, i));
        const double bound = unit(rng) * 10.0 * max_diag;

        const auto set = short_vectors(validate_lattice(gram), bound, false);
        const auto oracle = testgen::brute_force_short_vectors(gram, bound);
        require(set.vectors.size() == oracle.size(),
                "vector counts differ from brute force (case " + std::to_string(trial) + ")");
        for (size_t i = 0; i < oracle.size(); ++i)
            require(set.vectors[i].coords == oracle[i].coords,
                    "vector sets differ from brute force (case " + std::to_string(trial) + ")");
        total += set.count_up_to_sign;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    require(secs < 30.0, "enumeration oracle must finish within 30 s");
    detail << total << " vectors matched, " << static_cast<int>(secs * 1000.0) << " ms";
}

// --- criterion 7: Bravais stability ------------------------------------------

void criterion_bravais_stability(std::ostringstream&) {
    testgen::Rng rng(717171);
    auto gram2 = [](double a, double b, double c) {
        Mat m(2, 2);
        m(0, 0) = a;
        m(0, 1) = m(1, 0) = b;
        m(1, 1) = c;
        return m;
    };
    const Mat curve = [&] {
        Mat m(2, 2);
        m(0, 0) = 2.116;
        m(0, 1) = m(1, 0) = -0.913;
        m(1, 1) = 3.324;
        return m;
    }();
    const std::pair<Mat, BravaisKind> exemplars[] = {
        {gram2(1.0, 0.0, 1.0), BravaisKind::Square},
        {gram2(1.0, 0.0, 2.0), BravaisKind::Rectangular},
        {gram2(2.0, 1.0, 2.0), BravaisKind::Hexagonal},
        {curve, BravaisKind::Oblique},
    };
    std::uniform_real_distribution<double> scale(0.1, 25.0);
    for (const auto& [gram, kind] : exemplars) {
        for (int trial = 0; trial < 100; ++trial) {
            const auto u = testgen::random_unimodular(rng, 2, 6, 5).b;
            const Mat ur = to_real(u);
            const Mat changed = scale(rng) * (transpose(ur) * gram * ur);
            const auto red = lagrange_reduce(validate_lattice(changed));
            const auto b = classify(red.lattice.gram);
            require(b.kind == kind, std::string("classification must be stable (want ") +
                                        bravais_name(kind) + ", got " + bravais_name(b.kind) +
                                        ")");
        }
    }
    for (double tol : {1e-3, 2e-3, 5e-3, 7e-3, 1e-2}) {
        const auto b = classify(curve, tol);
        require(b.kind == BravaisKind::Oblique,
                "curve fixture must stay oblique at tolerance " + std::to_string(tol));
    }
}

// --- criterion 8: optimizer dominance ----------------------------------------

void criterion_optimizer_dominance(std::ostringstream& detail) {
    testgen::Rng rng(818181);
    double worst_slack = 1e9;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const int k = 2 + static_cast<int>(rng() % 3);
        const auto lwa = testgen::random_lattice_with_actions(rng, n, k);
        const auto lat = validate_lattice(lwa.gram);
        std::vector<IsometryAction> actions;
        for (size_t i = 0; i < lwa.actions.size(); ++i)
            actions.push_back(check_isometry(lat, "a" + std::to_string(i), lwa.actions[i]));
        OptimizeOptions opt;
        opt.budget = 300;
        const auto r = optimize_mu(lat, actions, opt);
        const double cert = certify(lat, actions, r.mu_star);
        const auto alpha = alpha_H(lat, actions);
        require(cert >= alpha.alpha - 1e-9, "averaged must never lose to the best Dirac (case " +
                                                std::to_string(trial) + ")");
        worst_slack = std::min(worst_slack, cert - alpha.alpha);
    }
    detail << "min(beta* - alpha) = " << worst_slack;
}

} // namespace

int main(int argc, char** argv) {
    if (argc > 1) {
        g_fixtures = argv[1];
    } else if (const char* env = std::getenv("MWBOUND_FIXTURES")) {
        g_fixtures = env;
    } else {
        std::cerr << "usage: acceptance <fixtures-dir> (or set MWBOUND_FIXTURES)\n";
        return 2;
    }

    const std::vector<Check> criteria = {
        {1, "curve 196098 end-to-end reproduction", criterion_curve_pipeline},
        {2, "averaging example and optimizer recovery", criterion_averaging},
        {3, "bound constant vs independent oracle (20 cases)", criterion_mx_table},
        {4, "lemma suite (pairing identity, convex-min, spectrum range, involutions)",
         criterion_lemma_suite},
        {5, "bound monotone in beta; kernel limit at beta = 1 (500 cases)",
         criterion_bound_consistency},
        {6, "enumeration equals brute force (100 lattices)", criterion_enumeration_oracle},
        {7, "Bravais classification stability", criterion_bravais_stability},
        {8, "optimizer dominance over Dirac measures (50 sets)", criterion_optimizer_dominance},
    };
    for (const auto& c : criteria) run(c);

    if (g_failures > 0) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
