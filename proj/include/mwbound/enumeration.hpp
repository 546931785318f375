#pragma once

#include <cstdint>
#include <vector>

#include "mwbound/lattice.hpp"
#include "mwbound/matrix.hpp"

namespace mwbound {

namespace defaults {
/// Predicted-count cap before enumeration refuses to run.
inline constexpr double enum_cap = 1e7;
/// Absolute slack on the norm boundary; erring inclusive never loses a
/// candidate point.
inline constexpr double enum_boundary_tol = 1e-9;
} // namespace defaults

struct ShortVector {
    IVec coords;
    double norm = 0.0;
};

/// All lattice vectors with height at most `bound`, one representative per
/// +-v pair (first nonzero coordinate positive), sorted by (norm, coords).
struct ShortVectorSet {
    double bound = 0.0;
    bool zero_included = false;
    std::vector<ShortVector> vectors;
    /// Nonzero representatives; the zero vector is counted separately.
    std::int64_t count_up_to_sign = 0;
    /// 2 * count_up_to_sign, plus 1 when zero is included.
    std::int64_t count_total = 0;
};

/// Depth-first Fincke-Pohst on the Cholesky factor: coordinates bounded
/// back-to-front by the residual norm budget. Throws BudgetExceeded when the
/// ellipsoid-volume estimate of the vector count exceeds `cap`.
ShortVectorSet short_vectors(const QuadraticLattice& lat, double bound, bool include_zero,
                             double cap = defaults::enum_cap);

} // namespace mwbound
