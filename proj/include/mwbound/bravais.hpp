#pragma once

#include <string>

#include "mwbound/matrix.hpp"

namespace mwbound {

namespace defaults {
/// Classification tolerance; height data carries ~1e-3 noise.
inline constexpr double bravais_tol = 5e-3;
} // namespace defaults

enum class BravaisKind { Oblique, Rectangular, Square, Hexagonal };

const char* bravais_name(BravaisKind kind);

/// Bravais type of a rank-2 lattice together with the order of its point
/// group O(Lambda). Classification happens on the normalized quantities
/// c = |H12|/sqrt(H11 H22) and d = |H11 - H22|/max(H11, H22), so it is
/// scale-invariant and blind to basis-vector sign flips.
struct BravaisType {
    BravaisKind kind = BravaisKind::Oblique;
    int order = 2; // 2, 4, 8 or 12
    /// Signed cosine H12/sqrt(H11 H22) of the reduced basis.
    double cosine = 0.0;
    /// Distance of (c, d) to each kind's exact locus, in the max norm.
    /// The chosen kind is the first whose margin clears the tolerance test.
    struct Margins {
        double square = 0.0;      // max(c, d)
        double rectangular = 0.0; // c
        double hexagonal = 0.0;   // max(|c - 1/2|, d)
        double oblique = 0.0;     // distance to the nearest non-oblique locus
    } margins;
    /// Equal diagonals with a cosine strictly between 0 and 1/2: the
    /// reduced form matches the centered-rectangular pattern, whose point
    /// group also has order 4. The conservative order 2 is what gets used.
    bool centered_rectangular_hint = false;
};

/// Decision tree on a Lagrange-reduced Gram matrix:
///   square      if c <= tol and d <= tol
///   rectangular if c <= tol and d >  tol
///   hexagonal   if d <= tol and |c - 1/2| <= tol
///   oblique     otherwise
/// Throws NotReduced when 2|H12| <= H11 <= H22 fails beyond the tolerance.
BravaisType classify(const Mat& reduced_gram, double rel_tol = defaults::bravais_tol);

} // namespace mwbound
