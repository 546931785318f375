#include "mwbound/lattice.hpp"

#include <cmath>
#include <cstdio>

#include "mwbound/errors.hpp"

namespace mwbound {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Forward substitution: L y = b, L lower triangular.
RVec solve_lower(const Mat& l, const RVec& b) {
    const int n = l.rows;
    RVec y(n);
    for (int i = 0; i < n; ++i) {
        double s = b[i];
        for (int j = 0; j < i; ++j) s -= l(i, j) * y[j];
        y[i] = s / l(i, i);
    }
    return y;
}

// Back substitution: L^T x = y.
RVec solve_lower_transposed(const Mat& l, const RVec& y) {
    const int n = l.rows;
    RVec x(n);
    for (int i = n - 1; i >= 0; --i) {
        double s = y[i];
        for (int j = i + 1; j < n; ++j) s -= l(j, i) * x[j];
        x[i] = s / l(i, i);
    }
    return x;
}

} // namespace

RVec QuadraticLattice::cholesky_pivots() const {
    RVec p(rank);
    for (int i = 0; i < rank; ++i) p[i] = chol(i, i);
    return p;
}

QuadraticLattice validate_lattice(const Mat& gram, double pd_tol, double sym_tol) {
    if (!gram.square() || gram.rows < 1)
        fail(Errc::DimensionMismatch, "gram matrix must be square and nonempty");
    if (!(pd_tol > 0.0)) fail(Errc::InvalidComponent, "pd_tol must be positive");

    const double residual = asymmetry(gram);
    const double scale = 1.0 + max_abs(gram);
    if (residual > sym_tol * scale)
        fail(Errc::NotSymmetric,
             "asymmetry residual " + fmt(residual) + " exceeds " + fmt(sym_tol * scale));

    QuadraticLattice lat;
    lat.rank = gram.rows;
    lat.gram = symmetric_part(gram);
    lat.asymmetry_residual = residual;

    const int n = lat.rank;
    Mat l(n, n);
    for (int j = 0; j < n; ++j) {
        double d = lat.gram(j, j);
        for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > pd_tol * pd_tol))
            fail(Errc::NotPositiveDefinite,
                 "Cholesky pivot " + std::to_string(j) +
                     " not positive; bad height data or overstated rank");
        l(j, j) = std::sqrt(d);
        for (int i = j + 1; i < n; ++i) {
            double s = lat.gram(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    lat.chol = std::move(l);
    return lat;
}

double pair(const QuadraticLattice& lat, const RVec& u, const RVec& v) {
    if (static_cast<int>(u.size()) != lat.rank || static_cast<int>(v.size()) != lat.rank)
        fail(Errc::DimensionMismatch, "vector length differs from lattice rank");
    double s = 0.0;
    for (int i = 0; i < lat.rank; ++i)
        for (int j = 0; j < lat.rank; ++j) s += u[i] * lat.gram(i, j) * v[j];
    return s;
}

double pair(const QuadraticLattice& lat, const IVec& u, const IVec& v) {
    return pair(lat, to_real(u), to_real(v));
}

double height(const QuadraticLattice& lat, const IVec& v) { return pair(lat, v, v); }

Mat solve_gram(const QuadraticLattice& lat, const Mat& b) {
    if (b.rows != lat.rank) fail(Errc::DimensionMismatch, "solve_gram shape mismatch");
    Mat x(b.rows, b.cols);
    RVec col(b.rows);
    for (int j = 0; j < b.cols; ++j) {
        for (int i = 0; i < b.rows; ++i) col[i] = b(i, j);
        RVec sol = solve_lower_transposed(lat.chol, solve_lower(lat.chol, col));
        for (int i = 0; i < b.rows; ++i) x(i, j) = sol[i];
    }
    return x;
}

Mat adjoint(const QuadraticLattice& lat, const Mat& a) {
    if (a.rows != lat.rank || a.cols != lat.rank)
        fail(Errc::DimensionMismatch, "adjoint operand shape mismatch");
    return solve_gram(lat, transpose(a) * lat.gram);
}

IsometryAction check_isometry(const QuadraticLattice& lat, const std::string& name,
                              const IMat& a, double iso_tol) {
    if (!a.square() || a.rows != lat.rank)
        fail(Errc::DimensionMismatch, "action matrix shape differs from lattice rank");

    const long long d = det(a);
    if (d != 1 && d != -1)
        fail(Errc::NotUnimodular, "action \"" + name + "\" has det " + std::to_string(d));

    const Mat ar = to_real(a);
    const double residual = max_abs(transpose(ar) * lat.gram * ar - lat.gram);
    const double allowed = iso_tol * (1.0 + max_abs(lat.gram));
    if (residual > allowed)
        fail(Errc::NotIsometry, "action \"" + name + "\" moves the form by " + fmt(residual) +
                                    " (allowed " + fmt(allowed) +
                                    "); wrong matrix or wrong basis");

    IsometryAction act;
    act.name = name;
    act.matrix = a;
    act.is_identity = a.is_identity();
    act.residual = residual;
    act.determinant = d;
    return act;
}

ReducedLattice lagrange_reduce(const QuadraticLattice& lat) {
    if (lat.rank != 2) fail(Errc::RankNotTwo, "Lagrange reduction is a rank-2 operation");

    double h11 = lat.gram(0, 0), h12 = lat.gram(0, 1), h22 = lat.gram(1, 1);
    IMat u = IMat::identity(2);

    auto swap_basis = [&] {
        std::swap(h11, h22);
        for (int i = 0; i < 2; ++i) std::swap(u(i, 0), u(i, 1));
    };

    // Gauss reduction: shorten b2 against b1, swap when out of order, stop
    // once 2|H12| <= H11 <= H22. The boundary case |H12| = H11/2 would
    // toggle signs forever without the explicit exit test.
    for (int iter = 0; iter < 64; ++iter) {
        if (h11 > h22) swap_basis();
        const long long t = std::llround(h12 / h11);
        if (t != 0) {
            // b2 <- b2 - t b1
            const double nh12 = h12 - static_cast<double>(t) * h11;
            const double nh22 = h22 - 2.0 * static_cast<double>(t) * h12 +
                                static_cast<double>(t) * static_cast<double>(t) * h11;
            h12 = nh12;
            h22 = nh22;
            for (int i = 0; i < 2; ++i) u(i, 1) -= t * u(i, 0);
        }
        if (h11 <= h22 && 2.0 * std::fabs(h12) <= h11 * (1.0 + 1e-14)) break;
    }
    if (h11 > h22) swap_basis();

    Mat reduced(2, 2);
    reduced(0, 0) = h11;
    reduced(0, 1) = reduced(1, 0) = h12;
    reduced(1, 1) = h22;

    ReducedLattice out;
    out.lattice = validate_lattice(reduced);
    out.basis_change = u;
    return out;
}

} // namespace mwbound
