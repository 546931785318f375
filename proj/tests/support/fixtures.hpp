#pragma once

// Shared numeric fixtures for the test suites.

#include "mwbound/matrix.hpp"

namespace testfix {

/// Height Gram matrix of the rank-2 part of J(Q) for the genus-2 curve
/// with LMFDB label 196098.a.196098.1, generators G2, G3.
inline mwbound::Mat gram_196098() {
    mwbound::Mat m(2, 2);
    m(0, 0) = 2.116;
    m(0, 1) = m(1, 0) = -0.913;
    m(1, 1) = 3.324;
    return m;
}

} // namespace testfix
