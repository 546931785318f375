#pragma once

#include <cstddef>
#include <vector>

namespace mwbound {

/// Dense row-major real matrix. Ranks in this problem are tiny (<= ~10),
/// so plain loops over contiguous storage are all we need.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool square() const { return rows == cols; }

    static Mat identity(int n);
};

Mat operator*(const Mat& x, const Mat& y);
Mat operator+(const Mat& x, const Mat& y);
Mat operator-(const Mat& x, const Mat& y);
Mat operator*(double s, const Mat& x);
Mat transpose(const Mat& x);

/// Largest absolute entry.
double max_abs(const Mat& x);
double frobenius(const Mat& x);
/// (M + M^T)/2; requires a square input.
Mat symmetric_part(const Mat& x);
/// Largest |x - x^T| entry.
double asymmetry(const Mat& x);

/// Integer matrix: automorphism actions on the lattice basis and
/// unimodular changes of basis. Entries are exact.
struct IMat {
    int rows = 0;
    int cols = 0;
    std::vector<long long> a;

    IMat() = default;
    IMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

    long long& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    long long operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool square() const { return rows == cols; }
    bool is_identity() const;

    static IMat identity(int n);
};

bool operator==(const IMat& x, const IMat& y);
IMat operator*(const IMat& x, const IMat& y);
IMat transpose(const IMat& x);
Mat to_real(const IMat& x);

/// Exact determinant by fraction-free (Bareiss) elimination.
long long det(const IMat& x);

using IVec = std::vector<long long>;
using RVec = std::vector<double>;

RVec to_real(const IVec& v);

} // namespace mwbound
