#include <doctest.h>

#include "mwbound/errors.hpp"
#include "mwbound/matrix.hpp"
#include "support/generators.hpp"

using namespace mwbound;

TEST_CASE("integer determinant is exact") {
    CHECK(det(IMat::identity(3)) == 1);

    IMat swap2(2, 2);
    swap2(0, 1) = swap2(1, 0) = 1;
    CHECK(det(swap2) == -1);

    IMat m(3, 3);
    // rows (2,0,1),(1,1,0),(0,3,4): det = 2*4 - 0 + 1*3 = 11
    m(0, 0) = 2; m(0, 2) = 1;
    m(1, 0) = 1; m(1, 1) = 1;
    m(2, 1) = 3; m(2, 2) = 4;
    CHECK(det(m) == 11);

    IMat singular(2, 2);
    singular(0, 0) = 2; singular(0, 1) = 4;
    singular(1, 0) = 1; singular(1, 1) = 2;
    CHECK(det(singular) == 0);
}

TEST_CASE("determinant of random unimodular products is +-1") {
    testgen::Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const auto p = testgen::random_unimodular(rng, n);
        const long long d = det(p.b);
        CHECK((d == 1 || d == -1));
        CHECK((p.b * p.b_inv).is_identity());
    }
}

TEST_CASE("symmetric part and asymmetry") {
    Mat m(2, 2);
    m(0, 0) = 1.0; m(0, 1) = 2.0;
    m(1, 0) = 4.0; m(1, 1) = 3.0;
    CHECK(asymmetry(m) == doctest::Approx(2.0));
    const Mat s = symmetric_part(m);
    CHECK(s(0, 1) == doctest::Approx(3.0));
    CHECK(s(1, 0) == doctest::Approx(3.0));
    CHECK(asymmetry(s) == 0.0);
}

TEST_CASE("shape mismatches are refused") {
    Mat a(2, 3), b(2, 3);
    CHECK_THROWS_AS((void)(a * b), Error);
    IMat x(2, 2);
    CHECK_THROWS_AS((void)det(IMat(2, 3)), Error);
}
