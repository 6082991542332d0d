#pragma once

#include "kappa/algebra.hpp"

#include <array>
#include <map>
#include <vector>

namespace kappa {

/// Linear combination of tensor monomials m_1 ⊗ ... ⊗ m_legs over U(g).
///
/// Two and three legs are the cases used for coproducts, R-matrices and
/// coassociators; a single leg is accepted so that algebra elements can flow
/// through the same code paths (the expression evaluator relies on this).
class TensorElement {
public:
    using Key = std::array<PbwMonomial, 3>;
    struct KeyLess {
        bool operator()(const Key& a, const Key& b) const;
    };
    using Terms = std::map<Key, GaussianRational, KeyLess>;

    TensorElement(PresentationPtr pres, int legs);
    TensorElement(PresentationPtr pres, int legs, Terms terms);

    static TensorElement zero(PresentationPtr pres, int legs) { return {std::move(pres), legs}; }
    static TensorElement unit(PresentationPtr pres, int legs, const GaussianRational& c = 1);
    static TensorElement elementary(PresentationPtr pres, int legs, const Key& key, const GaussianRational& c = 1);
    /// Single-leg element carrying a.
    static TensorElement from_algebra(const AlgebraElement& a);

    const PresentationPtr& presentation() const { return pres_; }
    int legs() const { return legs_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    GaussianRational coefficient(const Key& key) const;

    /// Inverse of from_algebra; requires one leg.
    AlgebraElement to_algebra() const;
    /// True when the element is c·(1⊗...⊗1).
    bool is_scalar() const;

    TensorElement& operator+=(const TensorElement& o);
    TensorElement& operator-=(const TensorElement& o);
    TensorElement& operator*=(const GaussianRational& c);

    friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
    friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
    friend TensorElement operator*(const GaussianRational& c, TensorElement a) { return a *= c; }
    friend TensorElement operator*(TensorElement a, const GaussianRational& c) { return a *= c; }
    TensorElement operator-() const { return *this * GaussianRational(-1); }
    /// Legwise normal-ordered product.
    friend TensorElement operator*(const TensorElement& a, const TensorElement& b);

    friend bool operator==(const TensorElement& a, const TensorElement& b);

private:
    PresentationPtr pres_;
    int legs_;
    Terms terms_;
};

/// Legwise product; throws std::invalid_argument on a leg-count mismatch.
TensorElement tensor_multiply(const TensorElement& u, const TensorElement& v);
TensorElement tensor_commutator(const TensorElement& u, const TensorElement& v);

/// Outer products; the result has the summed leg count (at most 3).
TensorElement tensor_product(const TensorElement& u, const TensorElement& v);
TensorElement tensor_product(const AlgebraElement& a, const AlgebraElement& b);
TensorElement tensor_product(const AlgebraElement& a, const AlgebraElement& b, const AlgebraElement& c);
/// a∧b = a⊗b − b⊗a.
TensorElement wedge(const AlgebraElement& a, const AlgebraElement& b);

/// Exchange of the two legs of a 2-leg element.
TensorElement flip(const TensorElement& u);

/// Subscript notation: target = {s_1, ..., s_k} places the k-th tensor factor
/// into leg s_k (1-based). For φ = a⊗b⊗c, permute(φ, {3,1,2}) = b⊗c⊗a = φ_{312}.
class LegPermutation {
public:
    LegPermutation(std::initializer_list<int> targets);
    explicit LegPermutation(std::vector<int> targets);

    int arity() const { return static_cast<int>(targets_.size()); }
    int target(int k) const { return targets_.at(static_cast<std::size_t>(k)); }
    /// (this ∘ other): apply other first, then this.
    LegPermutation after(const LegPermutation& other) const;

private:
    std::vector<int> targets_;
};

TensorElement permute(const TensorElement& u, const LegPermutation& sigma);

/// X_{ij}: places a 2-leg element into legs i and j of a 3-leg element, with a
/// unit in the remaining leg. X_{ij} with i > j carries the flipped element.
TensorElement embed(const TensorElement& u, int i, int j);

}  // namespace kappa
