#include "mwbound/matrix.hpp"

#include <cmath>
#include <cstdlib>

#include "mwbound/errors.hpp"

namespace mwbound {

namespace {

void require_same_shape(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols)
        fail(Errc::DimensionMismatch, "matrix shapes differ");
}

} // namespace

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) fail(Errc::DimensionMismatch, "matrix product shapes differ");
    Mat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const double xik = x(i, k);
            if (xik == 0.0) continue;
            for (int j = 0; j < y.cols; ++j) r(i, j) += xik * y(k, j);
        }
    return r;
}

Mat operator+(const Mat& x, const Mat& y) {
    require_same_shape(x, y);
    Mat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

Mat operator-(const Mat& x, const Mat& y) {
    require_same_shape(x, y);
    Mat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

Mat operator*(double s, const Mat& x) {
    Mat r = x;
    for (double& v : r.a) v *= s;
    return r;
}

Mat transpose(const Mat& x) {
    Mat r(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r(j, i) = x(i, j);
    return r;
}

double max_abs(const Mat& x) {
    double m = 0.0;
    for (double v : x.a) m = std::max(m, std::fabs(v));
    return m;
}

double frobenius(const Mat& x) {
    double s = 0.0;
    for (double v : x.a) s += v * v;
    return std::sqrt(s);
}

Mat symmetric_part(const Mat& x) {
    if (!x.square()) fail(Errc::DimensionMismatch, "symmetric_part needs a square matrix");
    Mat r(x.rows, x.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r(i, j) = 0.5 * (x(i, j) + x(j, i));
    return r;
}

double asymmetry(const Mat& x) {
    if (!x.square()) fail(Errc::DimensionMismatch, "asymmetry needs a square matrix");
    double m = 0.0;
    for (int i = 0; i < x.rows; ++i)
        for (int j = i + 1; j < x.cols; ++j) m = std::max(m, std::fabs(x(i, j) - x(j, i)));
    return m;
}

bool IMat::is_identity() const {
    if (!square()) return false;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

IMat IMat::identity(int n) {
    IMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

bool operator==(const IMat& x, const IMat& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
}

IMat operator*(const IMat& x, const IMat& y) {
    if (x.cols != y.rows) fail(Errc::DimensionMismatch, "matrix product shapes differ");
    IMat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const long long xik = x(i, k);
            if (xik == 0) continue;
            for (int j = 0; j < y.cols; ++j) r(i, j) += xik * y(k, j);
        }
    return r;
}

IMat transpose(const IMat& x) {
    IMat r(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r(j, i) = x(i, j);
    return r;
}

Mat to_real(const IMat& x) {
    Mat r(x.rows, x.cols);
    for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = static_cast<double>(x.a[i]);
    return r;
}

long long det(const IMat& x) {
    if (!x.square()) fail(Errc::DimensionMismatch, "determinant needs a square matrix");
    const int n = x.rows;
    // Bareiss: all intermediate divisions are exact. __int128 accumulators
    // keep small-entry inputs far from overflow.
    std::vector<__int128> m(x.a.begin(), x.a.end());
    auto at = [&](int i, int j) -> __int128& { return m[static_cast<size_t>(i) * n + j]; };
    __int128 prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
        prev = at(k, k);
    }
    return static_cast<long long>(sign * at(n - 1, n - 1));
}

RVec to_real(const IVec& v) {
    RVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = static_cast<double>(v[i]);
    return r;
}

} // namespace mwbound
