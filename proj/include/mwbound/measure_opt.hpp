#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mwbound/lattice.hpp"
#include "mwbound/spectral.hpp"

namespace mwbound {

struct OptimizeOptions {
    int budget = 2000;
    int restarts = 0;
    std::uint64_t seed = 0;
    bool want_trace = false;
};

struct OptimizationResult {
    ProbabilityMeasure mu_star;
    /// lambda_min of the averaged operator rebuilt from scratch at mu_star;
    /// always the certify() value, never an optimizer-internal estimate.
    double beta_star = 0.0;
    int iterations = 0;
    /// (iteration, best-so-far beta); filled when want_trace is set.
    std::vector<std::pair<int, double>> trace;
};

/// Maximizes beta(mu) = lambda_min(S_mu) over probability measures on the
/// non-identity automorphisms by projected supergradient ascent on the
/// simplex (uniform start, step 0.1/sqrt(t)). Every evaluated measure is a
/// feasible point, so the best one seen is returned: the uniform start and
/// all Dirac measures are evaluated up front, which makes the result never
/// worse than the best single automorphism.
OptimizationResult optimize_mu(const QuadraticLattice& lat,
                               const std::vector<IsometryAction>& actions,
                               const OptimizeOptions& opt = {});

/// Same optimizer over prebuilt self-adjoint operators.
OptimizationResult optimize_operators(const QuadraticLattice& lat,
                                      const std::vector<SymmetrizedOperator>& ops,
                                      const OptimizeOptions& opt = {});

/// Rebuilds S_mu from scratch and returns lambda_min; the value used in all
/// downstream bounds.
double certify(const QuadraticLattice& lat, const std::vector<IsometryAction>& actions,
               const ProbabilityMeasure& mu);

double certify_operators(const QuadraticLattice& lat,
                         const std::vector<SymmetrizedOperator>& ops,
                         const ProbabilityMeasure& mu);

/// Euclidean projection onto the probability simplex.
RVec project_to_simplex(const RVec& y);

} // namespace mwbound
