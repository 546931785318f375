#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mwbound/bravais.hpp"
#include "mwbound/datum.hpp"
#include "mwbound/lattice.hpp"
#include "mwbound/measure_opt.hpp"
#include "mwbound/spectral.hpp"

namespace mwbound {

/// Ingredients of the explicit bound constant M(X): genus, field degree,
/// the Faltings delta sum over complex embeddings, and the bad-prime data.
struct MXComponents {
    int genus = 2;
    int field_degree = 1;
    double delta_sum = 0.0;
    std::vector<BadPrime> bad_primes;
};

/// (g-1)^2/3 * max(6, g+1) * delta_sum + 2(g+1) * sum phi * log N
/// + 2 [K:Q] g (g-1)^2 (3g log g + 16), natural log throughout.
double compute_mx(const MXComponents& c);

enum class KernelRoute { IdentityAction, OrderCounting, None };

const char* kernel_route_name(KernelRoute route);

/// Evidence that some nontrivial automorphism acts trivially on the
/// Mordell-Weil space. Both detection routes are recorded: the preferred
/// identity-action witness and, independently, the point-group order count
/// |Aut| > |O(Lambda)| with its kernel size lower bound.
struct KernelEvidence {
    bool found = false;
    KernelRoute route = KernelRoute::None;
    /// Identity-action route: label of the witnessing automorphism.
    std::string witness_label;
    /// Order-counting route inputs, when the comparison was possible.
    std::optional<long long> group_order;
    std::optional<int> lattice_order;
    /// ceil(|Aut| / |O(Lambda)|), present whenever the order route fires.
    std::optional<long long> kernel_lower_bound;
    bool order_route_fired = false;
};

/// IdentityAction wins when some non-identity automorphism has matrix = I
/// on the free part (an exact integer test); the order route is evaluated
/// regardless so reports can show both.
KernelEvidence detect_kernel(const std::vector<IsometryAction>& actions, long long group_order,
                             const std::optional<BravaisType>& bravais);

/// Throws GroupNotClosed unless the action matrices together with I are
/// closed under products (exact integer comparison). Only meaningful when
/// the user asserts the list is the whole image of the group.
void verify_group_closure(const std::vector<IsometryAction>& actions, int rank);

/// M(X) / (2g - 2).
double bound_kernel(double mx, int genus);

/// M(X) / (2 (g beta - 1)) when beta clears 1/g by the strictness margin;
/// empty otherwise (the hypothesis fails, there is no bound).
std::optional<double> bound_spectral(double mx, int genus, double beta);

struct GapCheck {
    double lhs = 0.0;
    bool holds = false;
};

/// h(p) + h(q) - 2g <p,q> >= -M(X): sanity-checks point data against a
/// claimed constant. Throws EqualVectors when p == q.
GapCheck verify_gap(const QuadraticLattice& lat, int genus, double mx, const IVec& p,
                    const IVec& q);

enum class Criterion { Kernel, Averaged, Dirac, NoneApplicable };

const char* criterion_name(Criterion c);

struct PipelineOptions {
    double pd_tol = defaults::pd_tol;
    double sym_tol = defaults::sym_tol;
    double iso_tol = defaults::iso_tol;
    double bravais_tol = defaults::bravais_tol;
    OptimizeOptions optimizer;
    /// Verify that the supplied action matrices (plus I) are closed under
    /// multiplication. Off by default: users may supply a subset of the
    /// group, which need not be closed.
    bool check_group_closure = false;
};

/// Everything best_bound learned about one record.
struct BoundReport {
    std::string label;
    int genus = 0;
    double mx = 0.0;
    std::string mx_source; // "value", "components" or "both"

    QuadraticLattice lattice;
    std::vector<IsometryAction> actions;

    std::optional<ReducedLattice> reduced;
    std::optional<BravaisType> bravais;

    KernelEvidence kernel;

    std::optional<DiracBest> dirac;
    std::optional<OptimizationResult> averaged;
    std::vector<SymmetrizedOperator> spectra;

    /// Candidate bounds, present where the hypotheses hold.
    std::optional<double> kernel_bound;
    std::optional<double> dirac_bound;
    std::optional<double> averaged_bound;

    Criterion criterion = Criterion::NoneApplicable;
    /// Certified beta (Averaged), alpha (Dirac), or exactly 1 (Kernel).
    double beta_or_alpha = 0.0;
    std::optional<double> bound;

    std::vector<std::string> notes;
};

/// The full pipeline: validate the lattice, verify the actions, reduce and
/// classify in rank 2, detect the kernel, evaluate the Dirac and averaged
/// spectral criteria, and pick the smallest applicable bound (Kernel wins
/// ties; it is exact and hypothesis-light).
BoundReport best_bound(const CurveDatum& datum, const PipelineOptions& opt = {});

} // namespace mwbound
