#include <cmath>

#include <doctest.h>

#include "mwbound/errors.hpp"
#include "mwbound/lattice.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace mwbound;

TEST_CASE("validate_lattice: identity") {
    const auto lat = validate_lattice(Mat::identity(2));
    CHECK(lat.rank == 2);
    CHECK(lat.chol(0, 0) == doctest::Approx(1.0));
    CHECK(lat.chol(1, 1) == doctest::Approx(1.0));
    CHECK(lat.chol(1, 0) == doctest::Approx(0.0));
    CHECK(lat.asymmetry_residual == 0.0);
}

TEST_CASE("validate_lattice: curve 196098 gram factors with the expected pivots") {
    const auto lat = validate_lattice(testfix::gram_196098());
    // Hand Cholesky: L11 = sqrt(2.116), L22 = sqrt(3.324 - 0.913^2/2.116);
    // cross-checked against det H = 6.200015 = (L11 L22)^2.
    CHECK(lat.chol(0, 0) == doctest::Approx(1.4546477236774545).epsilon(1e-12));
    CHECK(lat.chol(1, 1) == doctest::Approx(1.7117429128294728).epsilon(1e-12));
    const double det = lat.chol(0, 0) * lat.chol(0, 0) * lat.chol(1, 1) * lat.chol(1, 1);
    CHECK(det == doctest::Approx(6.200015).epsilon(1e-12));
}

TEST_CASE("validate_lattice: indefinite input is refused") {
    Mat m(2, 2);
    m(0, 0) = 1.0; m(0, 1) = 2.0;
    m(1, 0) = 2.0; m(1, 1) = 1.0; // eigenvalues 3 and -1
    CHECK_THROWS_WITH_AS((void)validate_lattice(m), doctest::Contains("pivot"), Error);
}

TEST_CASE("validate_lattice: asymmetry beyond tolerance is refused, small is recorded") {
    Mat m(2, 2);
    m(0, 0) = 2.0; m(0, 1) = 0.5001;
    m(1, 0) = 0.4999; m(1, 1) = 3.0;
    const auto lat = validate_lattice(m);
    CHECK(lat.asymmetry_residual == doctest::Approx(2e-4).epsilon(1e-6));
    CHECK(lat.gram(0, 1) == doctest::Approx(0.5));
    CHECK(lat.gram(0, 1) == lat.gram(1, 0));

    m(1, 0) = 0.4; // way past sym_tol * (1 + max entry)
    CHECK_THROWS_AS((void)validate_lattice(m), Error);
}

TEST_CASE("pair: orthonormal and curve values") {
    const auto id = validate_lattice(Mat::identity(2));
    CHECK(pair(id, IVec{1, 0}, IVec{0, 1}) == 0.0);

    const auto lat = validate_lattice(testfix::gram_196098());
    CHECK(pair(lat, IVec{1, 0}, IVec{1, 0}) == doctest::Approx(2.116));
    CHECK(pair(lat, IVec{1, 0}, IVec{0, 1}) == doctest::Approx(-0.913));
    CHECK_THROWS_AS((void)pair(lat, IVec{1, 0, 0}, IVec{0, 1}), Error);
}

TEST_CASE("pair is positive on nonzero vectors") {
    testgen::Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const auto lat = validate_lattice(testgen::random_pd_gram(rng, n));
        IVec v(n);
        bool zero = true;
        for (int i = 0; i < n; ++i) {
            v[i] = static_cast<long long>(rng() % 9) - 4;
            zero = zero && v[i] == 0;
        }
        if (zero) v[0] = 1;
        CHECK(pair(lat, v, v) > 0.0);
    }
}

TEST_CASE("adjoint: euclidean and identity cases") {
    const auto id = validate_lattice(Mat::identity(2));
    Mat rot(2, 2);
    rot(0, 1) = -1.0; rot(1, 0) = 1.0;
    const Mat adj = adjoint(id, rot);
    CHECK(max_abs(adj - transpose(rot)) < 1e-14);

    const auto lat = validate_lattice(testfix::gram_196098());
    CHECK(max_abs(adjoint(lat, Mat::identity(2)) - Mat::identity(2)) < 1e-14);
}

TEST_CASE("adjoint: swap on the curve gram is pair-adjoint on basis vectors") {
    const auto lat = validate_lattice(testfix::gram_196098());
    Mat swap(2, 2);
    swap(0, 1) = swap(1, 0) = 1.0;
    const Mat adj = adjoint(lat, swap);
    // direct matrix arithmetic oracle: H^-1 A^T H computed by hand
    CHECK(adj(0, 0) == doctest::Approx(-0.17788731156295590).epsilon(1e-12));
    CHECK(adj(0, 1) == doctest::Approx(1.6476423040911998).epsilon(1e-12));
    CHECK(adj(1, 0) == doctest::Approx(0.58772228776865862).epsilon(1e-12));
    CHECK(adj(1, 1) == doctest::Approx(0.17788731156295590).epsilon(1e-12));
    // <A† e_i, e_j> = <e_i, A e_j> entrywise
    const Mat lhs = transpose(adj) * lat.gram;
    const Mat rhs = lat.gram * swap;
    CHECK(max_abs(lhs - rhs) < 1e-12);
}

TEST_CASE("adjoint identity holds for random operators and vectors") {
    testgen::Rng rng(31);
    std::uniform_real_distribution<double> entry(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const auto lat = validate_lattice(testgen::random_pd_gram(rng, n));
        Mat a(n, n);
        for (double& x : a.a) x = entry(rng);
        const Mat adj = adjoint(lat, a);
        RVec u(n), v(n);
        for (int i = 0; i < n; ++i) {
            u[i] = entry(rng);
            v[i] = entry(rng);
        }
        RVec au(n), av(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                au[i] += adj(i, j) * u[j];
                av[i] += a(i, j) * v[j];
            }
        const double scale = 1.0 + std::fabs(pair(lat, u, u)) + std::fabs(pair(lat, v, v));
        CHECK(std::fabs(pair(lat, au, v) - pair(lat, u, av)) <= 1e-9 * scale);
    }
}

TEST_CASE("check_isometry: -I always passes, identity is flagged") {
    const auto lat = validate_lattice(testfix::gram_196098());
    IMat neg = IMat::identity(2);
    neg(0, 0) = neg(1, 1) = -1;
    const auto act = check_isometry(lat, "iota", neg);
    CHECK_FALSE(act.is_identity);
    CHECK(act.determinant == 1);

    const auto id_act = check_isometry(lat, "sigma", IMat::identity(2));
    CHECK(id_act.is_identity);
    CHECK_FALSE(id_act.is_identity_automorphism()); // name != "id"
}

TEST_CASE("check_isometry: shear on the identity gram is not an isometry") {
    const auto id = validate_lattice(Mat::identity(2));
    IMat shear = IMat::identity(2);
    shear(0, 1) = 1;
    CHECK_THROWS_WITH_AS((void)check_isometry(id, "shear", shear),
                         doctest::Contains("moves the form"), Error);
}

TEST_CASE("check_isometry: non-unimodular matrix is refused before residuals") {
    const auto id = validate_lattice(Mat::identity(2));
    IMat twice(2, 2);
    twice(0, 0) = twice(1, 1) = 2;
    CHECK_THROWS_WITH_AS((void)check_isometry(id, "double", twice), doctest::Contains("det"),
                         Error);
}

TEST_CASE("isometry closure: products of accepted actions pass") {
    testgen::Rng rng(47);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const auto lwa = testgen::random_lattice_with_actions(rng, n, 2);
        const auto lat = validate_lattice(lwa.gram);
        const auto a = check_isometry(lat, "a", lwa.actions[0]);
        const auto b = check_isometry(lat, "b", lwa.actions[1]);
        CHECK_NOTHROW((void)check_isometry(lat, "ab", a.matrix * b.matrix));
    }
}

TEST_CASE("lagrange_reduce: already-reduced inputs are fixed points") {
    Mat diag(2, 2);
    diag(0, 0) = 1.0; diag(1, 1) = 2.0;
    const auto red = lagrange_reduce(validate_lattice(diag));
    CHECK(max_abs(red.lattice.gram - diag) < 1e-14);
    CHECK(red.basis_change.is_identity());

    const auto curve = lagrange_reduce(validate_lattice(testfix::gram_196098()));
    // |2 * (-0.913)| = 1.826 <= 2.116 <= 3.324: already reduced
    CHECK(max_abs(curve.lattice.gram - testfix::gram_196098()) < 1e-14);
    CHECK(curve.basis_change.is_identity());
}

TEST_CASE("lagrange_reduce: [[5,3],[3,2]] reduces to the unit square") {
    Mat m(2, 2);
    m(0, 0) = 5.0; m(0, 1) = m(1, 0) = 3.0; m(1, 1) = 2.0;
    const auto red = lagrange_reduce(validate_lattice(m));
    // brute-force over unimodular transforms with entries in [-10,10] finds
    // minimal diagonal (1, 1) with H12 = 0
    CHECK(red.lattice.gram(0, 0) == doctest::Approx(1.0));
    CHECK(red.lattice.gram(1, 1) == doctest::Approx(1.0));
    CHECK(std::fabs(red.lattice.gram(0, 1)) < 1e-12);
    CHECK(std::abs(det(red.basis_change)) == 1);
}

TEST_CASE("lagrange_reduce: rank != 2 is refused") {
    CHECK_THROWS_AS((void)lagrange_reduce(validate_lattice(Mat::identity(3))), Error);
}

TEST_CASE("lagrange_reduce: random lattices satisfy the reduced inequalities exactly") {
    testgen::Rng rng(59);
    for (int trial = 0; trial < 300; ++trial) {
        const auto lat = validate_lattice(testgen::random_pd_gram(rng, 2, 0.2, 8.0));
        const auto red = lagrange_reduce(lat);
        const double h11 = red.lattice.gram(0, 0);
        const double h12 = red.lattice.gram(0, 1);
        const double h22 = red.lattice.gram(1, 1);
        CHECK(2.0 * std::fabs(h12) <= h11 * (1.0 + 1e-12));
        CHECK(h11 <= h22 * (1.0 + 1e-12));
        // determinant preserved
        const double det_in = lat.gram(0, 0) * lat.gram(1, 1) - lat.gram(0, 1) * lat.gram(0, 1);
        const double det_out = h11 * h22 - h12 * h12;
        CHECK(det_out == doctest::Approx(det_in).epsilon(1e-9));
        // transform really maps one gram to the other
        const Mat u = to_real(red.basis_change);
        CHECK(max_abs(transpose(u) * lat.gram * u - red.lattice.gram) < 1e-9 * (1.0 + max_abs(lat.gram)));
    }
}
