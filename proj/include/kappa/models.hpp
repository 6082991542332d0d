#pragma once

#include "kappa/hopf.hpp"

#include <string>
#include <vector>

namespace kappa {

/// Classical-basis κ-Poincaré data in D = 2 or D = 4.
///
/// Generators are declared momenta first, then rotations, then boosts:
/// D=2: P0, P1, N. D=4: P0, P1, P2, P3, M1, M2, M3, N1, N2, N3.
struct KappaModel {
    std::string id;
    int dimension = 2;
    PresentationPtr pres;
    int default_order = 3;
    GenIndex p0 = 0;
    std::vector<GenIndex> spatial;    // P_1 .. P_{D-1}
    std::vector<GenIndex> rotations;  // M_1 .. M_3 (empty in D=2)
    std::vector<GenIndex> boosts;     // N or N_1 .. N_3
    /// C₀ = −P₀² + P⃗².
    AlgebraElement casimir0{PresentationPtr{}};
    /// Orientation s of the boost coproduct term s·λ ε_ikj P_k Π₀⁻¹ ⊗ M_j (D=4).
    int boost_epsilon_sign = 1;

    AlgebraElement gen(GenIndex i) const { return AlgebraElement::generator(pres, i); }
    /// P⃗² = Σ_k P_k².
    AlgebraElement spatial_square() const;
};

const KappaModel& model_d2();
const KappaModel& model_d4();
/// "d2-classical" or "d4-classical"; throws std::invalid_argument otherwise.
const KappaModel& model_by_id(const std::string& id);
/// D=4 data with a chosen orientation of the ε term in Δ(N_i).
KappaModel model_d4_with_boost_sign(int sign);

/// Levi-Civita symbol on {1,2,3}.
int levi_civita(int i, int j, int k);

struct Pi0Series {
    AlgebraSeries pi0;
    AlgebraSeries inverse;
};

/// Π₀ = λP₀ + √(1 − λ²C₀) and its series inverse.
Pi0Series pi0_series(const KappaModel& m, int order);
/// Π₀⁻¹ from the closed form (√(1 − λ²C₀) − λP₀) / (1 − λ²P⃗²).
AlgebraSeries pi0_inverse_closed_form(const KappaModel& m, int order);

/// Σ_{i+j=n} a_i ⊗ b_j.
TensorSeries outer(const AlgebraSeries& a, const AlgebraSeries& b);
AlgebraSeries constant_series(const AlgebraElement& a, int order);

/// κ-deformed coproducts in the classical basis, expanded through `order`.
CoproductMap target_coproducts(const KappaModel& m, int order);
/// Δ^op = flip ∘ Δ.
CoproductMap opposite_coproducts(const KappaModel& m, int order);

/// Quantum map to the bicrossproduct generators.
struct QuantumMap {
    /// log Π₀ = 𝒫₀/κ, exact through order+1.
    AlgebraSeries log_pi0;
    /// 𝒫₀ = κ log Π₀ through `order`.
    AlgebraSeries p0;
    /// 𝒫_k = P_k Π₀⁻¹, one per spatial momentum.
    std::vector<AlgebraSeries> spatial;
};

QuantumMap quantum_map(const KappaModel& m, int order);

/// Residues of P₀ = (κ/2)(e^{𝒫₀/κ} − e^{−𝒫₀/κ}(1 − λ²P⃗²)) and
/// P_k = 𝒫_k e^{𝒫₀/κ} with the quantum map substituted.
std::vector<Residue> inverse_map_check(const KappaModel& m, int order);

/// Bicrossproduct algebra relations and coproduct formulas with the quantum
/// map substituted; every residue must vanish through `order`.
std::vector<Residue> bicross_verify(const KappaModel& m, int order);

/// C = κ²(Π₀ + Π₀⁻¹ − 2 − λ²P₁²Π₀⁻¹) through `order` (D=2 only).
AlgebraSeries deformed_casimir(const KappaModel& m, int order);
/// [x, C] for every generator x.
std::vector<Residue> centrality_check(const KappaModel& m, int order);

/// Tensor-valued residue wrapper for algebra-valued identities.
Residue algebra_residue(std::string label, const AlgebraSeries& value);

}  // namespace kappa
