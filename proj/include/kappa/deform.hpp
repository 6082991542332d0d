#pragma once

#include "kappa/hopf.hpp"
#include "kappa/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kappa {

/// Bounds for the finite ansatz of an order-n coefficient.
struct AnsatzConstraints {
    int momentum_degree = 1;     // exact total momentum degree of every term
    int lorentz_degree_max = 1;  // rotations plus boosts, both legs together
    int max_word_length = 2;     // per leg
    bool o3_invariant = false;   // restrict to combinations commuting with Δ₀(M_k)

    /// momentum degree n, at most one Lorentz generator, legs of length ≤ n+1.
    static AnsatzConstraints defaults(int order);
    std::string describe() const;
};

/// PBW monomials with momentum degree ≤ max_momentum, Lorentz degree ≤
/// max_lorentz and length ≤ max_length, in canonical order.
std::vector<PbwMonomial> graded_monomials(const LiePresentation& pres, int max_momentum, int max_lorentz,
                                          int max_length);

/// Two-leg ansatz elements. Without the O(3) filter these are single tensor
/// monomials ordered by (word length, PBW order); with it they are a basis of
/// the rotation-invariant subspace of that span (a no-op when the presentation
/// has no rotation generators).
std::vector<TensorElement> ansatz_basis(const PresentationPtr& pres, const AnsatzConstraints& c);

/// Everything known about one order of a twist or R-matrix reconstruction.
struct OrderSolve {
    std::string kind;  // "twist" or "rmatrix"
    int order = 0;
    AnsatzConstraints constraints;
    LinearSystem system;
    /// Columns [0, ansatz_columns) are the ansatz; later columns carry the
    /// freedom left in the lower-order coefficients.
    std::size_t ansatz_columns = 0;
    std::vector<TensorElement> lower_freedom;
    /// Right-hand side per generator, in presentation order.
    std::vector<TensorElement> rhs;
    SolveOutcome outcome;
    bool antisymmetric = false;
    std::string gauge;

    /// Representative order-n coefficient and the ansatz part of the kernel.
    std::optional<TensorElement> value;
    std::vector<TensorElement> kernel;
    /// Shift applied to the order-(n−1) coefficient by the representative.
    std::optional<TensorElement> lower_shift;
};

/// Order-n twist equation Σ_x: [f_n, Δ₀(x)] = Δ_n(x) − [exp(ad Σ_{k<n} λ^k f_k) Δ₀(x)]_n.
/// At n = 2 with lower_freedom the order-1 kernel is added as extra unknowns,
/// so the outcome covers every admissible f₁.
OrderSolve solve_twist_order(int n, const CoproductMap& targets, const std::vector<TensorElement>& lower,
                             const AnsatzConstraints& c, bool lower_freedom = true);

/// Order-n R-matrix equation [r_n, Δ₀(x)] = Δ_n^T(x) − [exp(ad Σ_{k<n} λ^k r_k) Δ(x)]_n.
/// Antisymmetry of r_n is imposed when it is compatible; the representative
/// is the min-norm one.
OrderSolve solve_rmatrix_order(int n, const CoproductMap& delta, const std::vector<TensorElement>& lower,
                               const AnsatzConstraints& c);

/// Coordinates of t in the ansatz columns, if t lies in their span.
std::optional<std::vector<GaussianRational>> ansatz_coordinates(const OrderSolve& s, const TensorElement& t);

/// True when t lies in the ansatz span and [t, Δ₀(x)] equals the right-hand
/// side for every generator (only meaningful without lower-freedom columns).
bool satisfies_order(const OrderSolve& s, const TensorElement& t);

/// Σ_{k} λ^k lower[k-1] as a 2-leg series truncated at `truncation`.
TensorSeries series_from_orders(const PresentationPtr& pres, const std::vector<TensorElement>& lower,
                                int truncation);

/// [u, Δ₀(x)] for every generator x.
std::vector<TensorElement> primitive_commutators(const TensorElement& u);

}  // namespace kappa
