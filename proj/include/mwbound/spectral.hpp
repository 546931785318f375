#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mwbound/lattice.hpp"
#include "mwbound/matrix.hpp"

namespace mwbound {

/// Eigendecomposition of a symmetric matrix: values ascending, eigenvectors
/// as the corresponding columns of an orthonormal matrix.
struct EigenSym {
    RVec values;
    Mat vectors;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm falls to
/// 1e-12 * (1 + ||M||_F), at most 100 sweeps. Throws NoConvergence with the
/// residual when the input scale is pathological.
EigenSym eigen_sym(const Mat& m);

/// A self-adjoint operator on the Mordell-Weil space: T in lattice
/// coordinates (generally non-symmetric there), its orthonormal-frame
/// representative L^T T L^{-T} (genuinely symmetric), and the spectrum.
struct SymmetrizedOperator {
    std::string label;
    Mat op;
    Mat sym_form;
    RVec spectrum;
    double lambda_min = 0.0;
};

/// Builds (A + adjoint(A))/2 for a verified isometry, carries the spectrum.
/// For an involution (A^2 = I) the result coincides with A itself.
SymmetrizedOperator symmetrize(const QuadraticLattice& lat, const IsometryAction& act);

/// Wraps a raw operator supplied in lattice coordinates; verifies
/// self-adjointness for the pairing (max|H T - T^T H| <= 1e-8 * (1 + max|H|)).
SymmetrizedOperator make_operator(const QuadraticLattice& lat, const std::string& label,
                                  const Mat& t);

/// Probability weights over automorphism labels; the identity automorphism
/// (reserved label "id") always has weight zero.
struct ProbabilityMeasure {
    std::vector<std::pair<std::string, double>> weights;

    double weight_of(const std::string& label) const;
    void validate() const;

    static ProbabilityMeasure dirac(const std::string& label);
    static ProbabilityMeasure uniform(const std::vector<std::string>& labels);
};

/// Convex combination sum_sigma mu(sigma) S_sigma, in both representations.
SymmetrizedOperator average(const QuadraticLattice& lat,
                            const std::vector<SymmetrizedOperator>& ops,
                            const ProbabilityMeasure& mu);

struct DiracBest {
    double alpha;
    std::string label;
};

/// max over non-identity automorphisms of lambda_min(S_sigma); ties go to
/// the first label in input order.
DiracBest alpha_H(const QuadraticLattice& lat, const std::vector<IsometryAction>& actions);

/// Same maximum over prebuilt operators (used for operator-level records).
DiracBest alpha_of_operators(const std::vector<SymmetrizedOperator>& ops);

} // namespace mwbound
