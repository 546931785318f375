#include "mwbound/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "mwbound/errors.hpp"

namespace mwbound {

namespace {

bool is_canonical(const IVec& v) {
    for (long long x : v) {
        if (x > 0) return true;
        if (x < 0) return false;
    }
    return false; // the zero vector is handled separately
}

// Lattice points inside the ellipsoid v^T H v <= B, estimated by volume:
// vol(unit r-ball) * B^{r/2} / sqrt(det H). Good enough to refuse
// obviously unreasonable requests before doing any work.
double predicted_count(const QuadraticLattice& lat, double bound) {
    constexpr double pi = 3.141592653589793238462643383279502884;
    const int r = lat.rank;
    double sqrt_det = 1.0;
    for (int i = 0; i < r; ++i) sqrt_det *= lat.chol(i, i);
    const double log_ball = 0.5 * r * std::log(pi) - std::lgamma(0.5 * r + 1.0);
    return std::exp(log_ball + 0.5 * r * std::log(std::max(bound, 1.0))) / sqrt_det;
}

} // namespace

ShortVectorSet short_vectors(const QuadraticLattice& lat, double bound, bool include_zero,
                             double cap) {
    if (!(bound >= 0.0)) fail(Errc::InvalidComponent, "enumeration bound must be >= 0");

    if (predicted_count(lat, bound) > cap) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "predicted vector count %.3g exceeds cap %.3g",
                      predicted_count(lat, bound), cap);
        fail(Errc::BudgetExceeded, buf);
    }

    const int r = lat.rank;
    // With R = chol^T (upper triangular), v^T H v = sum_i (R_ii v_i + s_i)^2
    // where s_i = sum_{j>i} R_ij v_j. Levels run back-to-front so each
    // coordinate sees the budget left by the ones already fixed.
    const Mat rmat = transpose(lat.chol);
    const double budget = bound + defaults::enum_boundary_tol;

    ShortVectorSet out;
    out.bound = bound;
    out.zero_included = include_zero;

    IVec v(r, 0);
    std::int64_t visited = 0;

    auto descend = [&](auto&& self, int level, double used) -> void {
        // Nodes, not leaves: a hard stop even when pruning keeps the leaf
        // count small on a pathologically skewed basis.
        ++visited;
        if (visited > 4 * static_cast<std::int64_t>(cap))
            fail(Errc::BudgetExceeded, "enumeration walked more nodes than the cap allows");
        if (level < 0) {
            const bool zero = std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
            if (zero || !is_canonical(v)) return;
            // The DFS prunes on its own accumulated sum; the listed norm is
            // the Gram-matrix value, and that is what the boundary test uses.
            const double norm = height(lat, v);
            if (norm <= budget) out.vectors.push_back({v, norm});
            return;
        }
        double s = 0.0;
        for (int j = level + 1; j < r; ++j) s += rmat(level, j) * static_cast<double>(v[j]);
        const double room = budget - used;
        if (room < 0.0) return;
        const double half_width = std::sqrt(room);
        const double diag = rmat(level, level);
        const long long lo = static_cast<long long>(std::ceil((-half_width - s) / diag));
        const long long hi = static_cast<long long>(std::floor((half_width - s) / diag));
        for (long long x = lo; x <= hi; ++x) {
            v[level] = x;
            const double term = diag * static_cast<double>(x) + s;
            self(self, level - 1, used + term * term);
        }
        v[level] = 0;
    };
    descend(descend, r - 1, 0.0);

    std::sort(out.vectors.begin(), out.vectors.end(), [](const ShortVector& a, const ShortVector& b) {
        if (a.norm != b.norm) return a.norm < b.norm;
        return a.coords < b.coords;
    });
    out.vectors.erase(std::unique(out.vectors.begin(), out.vectors.end(),
                                  [](const ShortVector& a, const ShortVector& b) {
                                      return a.coords == b.coords;
                                  }),
                      out.vectors.end());

    out.count_up_to_sign = static_cast<std::int64_t>(out.vectors.size());
    out.count_total = 2 * out.count_up_to_sign + (include_zero ? 1 : 0);
    if (include_zero)
        out.vectors.insert(out.vectors.begin(), ShortVector{IVec(r, 0), 0.0});
    return out;
}

} // namespace mwbound
