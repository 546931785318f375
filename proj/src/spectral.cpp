#include "mwbound/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "mwbound/errors.hpp"

namespace mwbound {

namespace {

constexpr double kSelfAdjointTol = 1e-8;
constexpr double kSpectrumSlack = 1e-9;
constexpr double kInvolutionTol = 1e-9;
constexpr double kWeightSumTol = 1e-12;

double off_diagonal_norm(const Mat& m) {
    double s = 0.0;
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (i != j) s += m(i, j) * m(i, j);
    return std::sqrt(s);
}

// L^T T L^{-T}: column solves against the cached Cholesky factor, then the
// left product. Explicitly symmetrized at the end; T is self-adjoint for
// the pairing, so the pre-symmetrization residual is rounding only.
Mat orthonormal_frame(const QuadraticLattice& lat, const Mat& t) {
    const int n = lat.rank;
    const Mat& l = lat.chol;
    // X = T L^{-T}  <=>  X L^T = T  <=>  L X^T = T^T, column solves.
    Mat xt(n, n);
    const Mat tt = transpose(t);
    for (int j = 0; j < n; ++j) {
        RVec col(n);
        for (int i = 0; i < n; ++i) col[i] = tt(i, j);
        for (int i = 0; i < n; ++i) {
            double s = col[i];
            for (int k = 0; k < i; ++k) s -= l(i, k) * xt(k, j);
            xt(i, j) = s / l(i, i);
        }
    }
    return symmetric_part(transpose(l) * transpose(xt));
}

void check_self_adjoint(const QuadraticLattice& lat, const std::string& label, const Mat& t) {
    const double res = max_abs(lat.gram * t - transpose(t) * lat.gram);
    const double allowed = kSelfAdjointTol * (1.0 + max_abs(lat.gram));
    if (res > allowed) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "residual %.6g exceeds %.6g", res, allowed);
        fail(Errc::NotSelfAdjoint, "operator \"" + label + "\" is not pairing-self-adjoint: " + buf);
    }
}

SymmetrizedOperator finish_operator(const QuadraticLattice& lat, std::string label, Mat t) {
    check_self_adjoint(lat, label, t);
    SymmetrizedOperator s;
    s.label = std::move(label);
    s.sym_form = orthonormal_frame(lat, t);
    s.op = std::move(t);
    EigenSym e = eigen_sym(s.sym_form);
    s.spectrum = std::move(e.values);
    s.lambda_min = s.spectrum.front();
    return s;
}

} // namespace

EigenSym eigen_sym(const Mat& m) {
    if (!m.square()) fail(Errc::DimensionMismatch, "eigen_sym needs a square matrix");
    const int n = m.rows;
    Mat a = symmetric_part(m);
    Mat v = Mat::identity(n);
    const double target = 1e-12 * (1.0 + frobenius(a));

    int sweep = 0;
    for (; sweep < 100 && !(off_diagonal_norm(a) <= target); ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    const double res = off_diagonal_norm(a);
    if (!(res <= target)) { // also catches non-finite input
        char buf[96];
        std::snprintf(buf, sizeof(buf), "off-diagonal residual %.6g after %d sweeps", res, sweep);
        fail(Errc::NoConvergence, buf);
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i) < a(j, j); });

    EigenSym out;
    out.values.resize(n);
    out.vectors = Mat(n, n);
    for (int j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]);
        for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

SymmetrizedOperator symmetrize(const QuadraticLattice& lat, const IsometryAction& act) {
    const Mat a = to_real(act.matrix);
    SymmetrizedOperator s = finish_operator(lat, act.name, 0.5 * (a + adjoint(lat, a)));

    // An isometry's symmetrization has spectrum inside [-1, 1].
    if (s.lambda_min < -1.0 - kSpectrumSlack || s.spectrum.back() > 1.0 + kSpectrumSlack)
        fail(Errc::SpectrumOutOfRange,
             "spectrum of S_" + act.name + " leaves [-1,1]; inconsistent gram/action data");

    if ((act.matrix * act.matrix).is_identity()) {
        if (max_abs(s.op - a) > kInvolutionTol)
            fail(Errc::NotSelfAdjoint,
                 "involution \"" + act.name + "\" should equal its own symmetrization");
    }
    return s;
}

SymmetrizedOperator make_operator(const QuadraticLattice& lat, const std::string& label,
                                  const Mat& t) {
    if (t.rows != lat.rank || t.cols != lat.rank)
        fail(Errc::DimensionMismatch, "operator \"" + label + "\" shape differs from rank");
    return finish_operator(lat, label, t);
}

double ProbabilityMeasure::weight_of(const std::string& label) const {
    for (const auto& [name, w] : weights)
        if (name == label) return w;
    return 0.0;
}

void ProbabilityMeasure::validate() const {
    double sum = 0.0;
    for (const auto& [name, w] : weights) {
        if (w < 0.0 || w > 1.0) fail(Errc::BadMeasure, "weight of \"" + name + "\" outside [0,1]");
        if (name == "id" && w > 0.0)
            fail(Errc::SupportIncludesIdentity, "the identity automorphism must carry weight 0");
        sum += w;
    }
    if (std::fabs(sum - 1.0) > kWeightSumTol)
        fail(Errc::BadMeasure, "weights sum to " + std::to_string(sum) + ", not 1");
}

ProbabilityMeasure ProbabilityMeasure::dirac(const std::string& label) {
    return ProbabilityMeasure{{{label, 1.0}}};
}

ProbabilityMeasure ProbabilityMeasure::uniform(const std::vector<std::string>& labels) {
    ProbabilityMeasure mu;
    const double w = 1.0 / static_cast<double>(labels.size());
    for (const auto& l : labels) mu.weights.emplace_back(l, w);
    return mu;
}

SymmetrizedOperator average(const QuadraticLattice& lat,
                            const std::vector<SymmetrizedOperator>& ops,
                            const ProbabilityMeasure& mu) {
    mu.validate();
    const int n = lat.rank;
    Mat op(n, n), sym(n, n);
    for (const auto& [label, w] : mu.weights) {
        if (w == 0.0) continue;
        const SymmetrizedOperator* found = nullptr;
        for (const auto& s : ops)
            if (s.label == label) { found = &s; break; }
        if (!found) fail(Errc::UnknownLabel, "measure names unknown operator \"" + label + "\"");
        op = op + w * found->op;
        sym = sym + w * found->sym_form;
    }

    SymmetrizedOperator s;
    s.label = "mu-average";
    s.op = std::move(op);
    s.sym_form = std::move(sym);
    EigenSym e = eigen_sym(s.sym_form);
    s.spectrum = std::move(e.values);
    s.lambda_min = s.spectrum.front();
    return s;
}

DiracBest alpha_of_operators(const std::vector<SymmetrizedOperator>& ops) {
    const SymmetrizedOperator* best = nullptr;
    for (const auto& s : ops) {
        if (s.label == "id") continue;
        if (!best || s.lambda_min > best->lambda_min) best = &s;
    }
    if (!best) fail(Errc::NoNonIdentityAction, "no non-identity automorphism supplied");
    return {best->lambda_min, best->label};
}

DiracBest alpha_H(const QuadraticLattice& lat, const std::vector<IsometryAction>& actions) {
    std::vector<SymmetrizedOperator> ops;
    for (const auto& act : actions) {
        if (act.is_identity_automorphism()) continue;
        ops.push_back(symmetrize(lat, act));
    }
    return alpha_of_operators(ops);
}

} // namespace mwbound
