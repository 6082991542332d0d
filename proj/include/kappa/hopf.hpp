#pragma once

#include "kappa/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kappa {

/// Primitive coproduct Δ₀, extended homomorphically from x ↦ x⊗1 + 1⊗x.
TensorElement primitive_coproduct(const AlgebraElement& a);

/// Coproduct given by its generator images; every other value follows from
/// Δ(ab) = Δ(a)Δ(b).
class CoproductMap {
public:
    CoproductMap(PresentationPtr pres, std::vector<TensorSeries> images);

    static CoproductMap primitive(const PresentationPtr& pres, int truncation);

    const PresentationPtr& presentation() const { return pres_; }
    int truncation() const { return truncation_; }
    const TensorSeries& image(GenIndex g) const { return images_.at(g); }
    const std::vector<TensorSeries>& images() const { return images_; }

    TensorSeries apply(const AlgebraElement& a) const;
    /// Coefficientwise application, re-collected by total λ-order.
    TensorSeries apply(const AlgebraSeries& s) const;
    /// (Δ⊗id)(u) and (id⊗Δ)(u) for a 2-leg series u.
    TensorSeries apply_left(const TensorSeries& u) const;
    TensorSeries apply_right(const TensorSeries& u) const;

    CoproductMap truncated(int n) const;
    /// Δ^T: flip applied to every coefficient.
    CoproductMap flipped() const;

private:
    PresentationPtr pres_;
    std::vector<TensorSeries> images_;
    int truncation_;
};

/// Cochain twist F ∈ (U⊗U)[[λ]] with unit lead; optionally F = exp(f).
class TwistSeries {
public:
    static TwistSeries from_log(const TensorSeries& f);
    static TwistSeries from_series(const TensorSeries& F);
    static TwistSeries trivial(const PresentationPtr& pres, int truncation);

    const TensorSeries& series() const { return F_; }
    const std::optional<TensorSeries>& log() const { return log_; }
    const TensorSeries& inverse() const { return inverse_; }
    int truncation() const { return F_.truncation(); }

private:
    TwistSeries(TensorSeries F, std::optional<TensorSeries> log, TensorSeries inverse)
        : F_(std::move(F)), log_(std::move(log)), inverse_(std::move(inverse))
    {}

    TensorSeries F_;
    std::optional<TensorSeries> log_;
    TensorSeries inverse_;
};

/// Per-generator F Δ(x) F⁻¹ through `order`. With an exponential twist the
/// nested-commutator expansion Σ ad_f^k Δ(x) / k! is computed as well and must
/// agree with the direct sandwich (std::logic_error otherwise).
CoproductMap conjugate_by_twist(const TwistSeries& F, const CoproductMap& delta, int order);

/// φ = (1⊗F)(id⊗Δ)(F)(Δ⊗id)(F⁻¹)(F⁻¹⊗1), where Δ is the coproduct being
/// twisted (Δ₀ for twists of the undeformed algebra).
TensorSeries coassociator(const TwistSeries& F, const CoproductMap& base);

/// R = F^T F⁻¹.
TensorSeries twisted_rmatrix(const TwistSeries& F);

/// Σ_k ad_r^k(X) / k! = exp(r) X exp(-r) for a series r with zero lead.
TensorSeries adjoint_exp(const TensorSeries& r, const TensorSeries& x);

TensorSeries permute(const TensorSeries& u, const LegPermutation& sigma);
TensorSeries embed(const TensorSeries& u, int i, int j);
TensorSeries flip(const TensorSeries& u);

struct Residue {
    std::string label;
    TensorSeries value;
    bool vanishes() const { return value.is_zero(); }
};

/// Full residue data of an identity check, one entry per generator, pair or
/// identity.
struct CheckReport {
    std::string name;
    int truncation = 0;
    std::vector<Residue> residues;

    bool pass() const;
    std::vector<const Residue*> failures() const;
};

/// flip(Δ(x))·R − R·Δ(x) per generator.
CheckReport check_intertwiner(const TensorSeries& R, const CoproductMap& delta);
/// (id⊗Δ)Δ(x) − (Δ⊗id)Δ(x) per generator.
CheckReport check_coassociativity(const CoproductMap& delta);
/// ((id⊗Δ)Δ(x))φ − φ((Δ⊗id)Δ(x)) per generator.
CheckReport check_quasi_coassoc(const CoproductMap& delta, const TensorSeries& phi);
/// (Δ⊗id)(R) − φ₃₁₂R₁₃φ₁₃₂⁻¹R₂₃φ₁₂₃ and (id⊗Δ)(R) − φ₂₃₁⁻¹R₁₃φ₂₁₃R₁₂φ₁₂₃⁻¹.
CheckReport check_quasitriangularity(const TensorSeries& R, const TensorSeries& phi, const CoproductMap& delta);
/// R₁₂φ₃₁₂R₁₃φ₁₃₂⁻¹R₂₃φ₁₂₃ − φ₃₂₁R₂₃φ₂₃₁⁻¹R₁₃φ₂₁₃R₁₂.
CheckReport check_modified_ybe(const TensorSeries& R, const TensorSeries& phi);
/// Δ([x,y]) − [Δ(x), Δ(y)] per generator pair.
CheckReport check_homomorphism(const CoproductMap& delta);

}  // namespace kappa
