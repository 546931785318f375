#include "mwbound/bravais.hpp"

#include <algorithm>
#include <cmath>

#include "mwbound/errors.hpp"

namespace mwbound {

const char* bravais_name(BravaisKind kind) {
    switch (kind) {
        case BravaisKind::Oblique: return "oblique";
        case BravaisKind::Rectangular: return "rectangular";
        case BravaisKind::Square: return "square";
        case BravaisKind::Hexagonal: return "hexagonal";
    }
    return "?";
}

BravaisType classify(const Mat& reduced_gram, double rel_tol) {
    if (!reduced_gram.square() || reduced_gram.rows != 2)
        fail(Errc::RankNotTwo, "Bravais classification is a rank-2 operation");
    if (!(rel_tol > 0.0)) fail(Errc::InvalidComponent, "rel_tol must be positive");

    const double h11 = reduced_gram(0, 0);
    const double h12 = 0.5 * (reduced_gram(0, 1) + reduced_gram(1, 0));
    const double h22 = reduced_gram(1, 1);
    if (!(h11 > 0.0) || !(h22 > 0.0))
        fail(Errc::NotPositiveDefinite, "reduced Gram matrix needs positive diagonal");
    if (2.0 * std::fabs(h12) > h11 * (1.0 + rel_tol) || h11 > h22 * (1.0 + rel_tol))
        fail(Errc::NotReduced, "input violates 2|H12| <= H11 <= H22; reduce the basis first");

    const double c = std::fabs(h12) / std::sqrt(h11 * h22);
    const double d = std::fabs(h11 - h22) / std::max(h11, h22);

    BravaisType out;
    out.cosine = h12 / std::sqrt(h11 * h22);
    out.margins.square = std::max(c, d);
    out.margins.rectangular = c;
    out.margins.hexagonal = std::max(std::fabs(c - 0.5), d);
    out.margins.oblique = std::min(out.margins.rectangular, out.margins.hexagonal);

    if (c <= rel_tol && d <= rel_tol) {
        out.kind = BravaisKind::Square;
        out.order = 8;
    } else if (c <= rel_tol) {
        out.kind = BravaisKind::Rectangular;
        out.order = 4;
    } else if (d <= rel_tol && std::fabs(c - 0.5) <= rel_tol) {
        out.kind = BravaisKind::Hexagonal;
        out.order = 12;
    } else {
        out.kind = BravaisKind::Oblique;
        out.order = 2;
    }

    out.centered_rectangular_hint =
        out.kind == BravaisKind::Oblique && d <= rel_tol && c > rel_tol && c < 0.5 - rel_tol;
    return out;
}

} // namespace mwbound
