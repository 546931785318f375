#pragma once

#include <string>
#include <vector>

#include "mwbound/matrix.hpp"

namespace mwbound {

namespace defaults {
/// Absolute floor for Cholesky pivots.
inline constexpr double pd_tol = 1e-10;
/// Gram asymmetry tolerance, relative to (1 + max |entry|). Height data
/// carries a few units in the last reported digit, so this absorbs it.
inline constexpr double sym_tol = 1e-3;
/// Isometry residual tolerance, relative to (1 + max |gram entry|).
inline constexpr double iso_tol = 1e-6;
} // namespace defaults

/// The free Mordell-Weil lattice: rank, the Gram matrix of the canonical
/// height pairing on a fixed set of free generators, and its cached
/// Cholesky factor (gram = chol * chol^T, chol lower triangular).
struct QuadraticLattice {
    int rank = 0;
    Mat gram;
    Mat chol;
    /// Largest |gram[i][j] - gram[j][i]| of the raw input, recorded at
    /// ingestion; the stored gram is the symmetrized form.
    double asymmetry_residual = 0.0;

    RVec cholesky_pivots() const;
};

/// An automorphism's pushforward on the lattice basis, verified to be a
/// unimodular isometry of the pairing. The reserved name "id" marks the
/// identity automorphism; a matrix equal to I under any other name is a
/// nontrivial automorphism acting trivially (a kernel witness).
struct IsometryAction {
    std::string name;
    IMat matrix;
    /// Matrix equals I. Says nothing about whether the automorphism
    /// itself is the identity; see `name`.
    bool is_identity = false;
    /// max |A^T H A - H| entry, echoed into reports.
    double residual = 0.0;
    long long determinant = 0;

    bool is_identity_automorphism() const { return name == "id"; }
};

/// Symmetrizes the input, records the asymmetry residual, and factors.
/// Throws NotSymmetric when the residual exceeds sym_tol * (1 + max|entry|),
/// NotPositiveDefinite when a pivot falls to pd_tol or below.
QuadraticLattice validate_lattice(const Mat& gram, double pd_tol = defaults::pd_tol,
                                  double sym_tol = defaults::sym_tol);

/// Canonical height pairing u^T * gram * v.
double pair(const QuadraticLattice& lat, const RVec& u, const RVec& v);
double pair(const QuadraticLattice& lat, const IVec& u, const IVec& v);

/// Néron-Tate height of v, i.e. pair(v, v).
double height(const QuadraticLattice& lat, const IVec& v);

/// Solves gram * X = B column by column through the cached Cholesky
/// factor (two triangular solves; no explicit inverse anywhere).
Mat solve_gram(const QuadraticLattice& lat, const Mat& b);

/// Adjoint for the pairing: gram^{-1} A^T gram, so that
/// pair(adjoint(A) u, v) == pair(u, A v).
Mat adjoint(const QuadraticLattice& lat, const Mat& a);

/// Accepts A iff max|A^T H A - H| <= iso_tol * (1 + max|H|) and det A = +-1.
IsometryAction check_isometry(const QuadraticLattice& lat, const std::string& name,
                              const IMat& a, double iso_tol = defaults::iso_tol);

struct ReducedLattice {
    QuadraticLattice lattice;     // Gram satisfies 2|H12| <= H11 <= H22
    IMat basis_change;            // unimodular U with H_red = U^T H U
};

/// Lagrange-Gauss reduction of a rank-2 lattice. Throws RankNotTwo otherwise.
ReducedLattice lagrange_reduce(const QuadraticLattice& lat);

} // namespace mwbound
