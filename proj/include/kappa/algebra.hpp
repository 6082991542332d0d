#pragma once

#include "kappa/gaussian_rational.hpp"

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kappa {

using GenIndex = std::uint8_t;

enum class Grade { momentum, rotation, boost };

std::string_view grade_name(Grade g);
std::optional<Grade> parse_grade(std::string_view name);

struct GeneratorId {
    GenIndex index = 0;
    std::string name;
    Grade grade = Grade::momentum;

    int momentum_degree() const { return grade == Grade::momentum ? 1 : 0; }
    bool is_lorentz() const { return grade != Grade::momentum; }
};

/// A GaussianRational-linear combination of single generators, sorted by index.
using LinearCombination = std::vector<std::pair<GenIndex, GaussianRational>>;

/// Generators in PBW order together with their bracket table.
///
/// Only pairs (i, j) with i < j are declared; the table is completed by
/// antisymmetry. Instances are immutable and shared through PresentationPtr.
class LiePresentation {
public:
    class Builder;

    const std::string& name() const { return name_; }
    std::size_t size() const { return generators_.size(); }
    const std::vector<GeneratorId>& generators() const { return generators_; }
    const GeneratorId& generator(GenIndex i) const { return generators_.at(i); }
    std::optional<GenIndex> find(std::string_view name) const;

    /// [x_i, x_j] for any i, j.
    const LinearCombination& bracket(GenIndex i, GenIndex j) const { return table_[i * size() + j]; }

private:
    LiePresentation() = default;

    std::string name_;
    std::vector<GeneratorId> generators_;
    std::vector<LinearCombination> table_;
};

using PresentationPtr = std::shared_ptr<const LiePresentation>;

class LiePresentation::Builder {
public:
    explicit Builder(std::string name) : name_(std::move(name)) {}

    GenIndex add_generator(std::string name, Grade grade);
    /// Declares [a, b] = value. Throws std::invalid_argument on a repeated pair,
    /// a self-bracket or unknown names.
    Builder& bracket(std::string_view a, std::string_view b, LinearCombination value);
    Builder& bracket(GenIndex a, GenIndex b, LinearCombination value);
    Builder& bracket(std::string_view a, std::string_view b,
                     std::vector<std::pair<std::string, GaussianRational>> value);

    PresentationPtr build() const;

private:
    GenIndex index_of(std::string_view name) const;

    std::string name_;
    std::vector<GeneratorId> generators_;
    std::map<std::pair<GenIndex, GenIndex>, LinearCombination> brackets_;
};

struct JacobiFailure {
    GenIndex x, y, z;
    LinearCombination residue;
};

struct PresentationReport {
    std::vector<JacobiFailure> failures;
    bool pass() const { return failures.empty(); }
};

/// Evaluates [[x,y],z] + [[y,z],x] + [[z,x],y] on every generator triple using
/// the bracket table itself.
PresentationReport validate_presentation(const LiePresentation& pres);

/// Nondecreasing sequence of generator indices; empty is the unit.
class PbwMonomial {
public:
    using Factors = boost::container::small_vector<GenIndex, 8>;

    PbwMonomial() = default;
    /// Takes factors that are already in PBW order.
    explicit PbwMonomial(Factors factors);

    const Factors& factors() const { return factors_; }
    std::size_t length() const { return factors_.size(); }
    bool is_unit() const { return factors_.empty(); }

    int momentum_degree(const LiePresentation& pres) const;
    int lorentz_degree(const LiePresentation& pres) const;

    /// Degree-lexicographic: shorter first, then lexicographic by index.
    friend bool operator<(const PbwMonomial& a, const PbwMonomial& b);
    friend bool operator==(const PbwMonomial& a, const PbwMonomial& b) = default;

private:
    Factors factors_;
};

/// Finite linear combination of PBW monomials in U(g).
///
/// Canonical: zero coefficients are never stored, so equal elements have
/// identical term maps.
class AlgebraElement {
public:
    using Terms = std::map<PbwMonomial, GaussianRational>;

    explicit AlgebraElement(PresentationPtr pres) : pres_(std::move(pres)) {}
    AlgebraElement(PresentationPtr pres, Terms terms);

    static AlgebraElement zero(PresentationPtr pres) { return AlgebraElement(std::move(pres)); }
    static AlgebraElement one(PresentationPtr pres) { return scalar(std::move(pres), 1); }
    static AlgebraElement scalar(PresentationPtr pres, const GaussianRational& c);
    static AlgebraElement generator(PresentationPtr pres, GenIndex i);
    static AlgebraElement generator(PresentationPtr pres, std::string_view name);
    static AlgebraElement monomial(PresentationPtr pres, const PbwMonomial& m, const GaussianRational& c = 1);

    const PresentationPtr& presentation() const { return pres_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    GaussianRational coefficient(const PbwMonomial& m) const;

    /// Largest word length over terms (0 for zero and scalars).
    std::size_t max_length() const;
    int max_momentum_degree() const;

    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement& operator-=(const AlgebraElement& o);
    AlgebraElement& operator*=(const GaussianRational& c);

    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator*(const GaussianRational& c, AlgebraElement a) { return a *= c; }
    friend AlgebraElement operator*(AlgebraElement a, const GaussianRational& c) { return a *= c; }
    AlgebraElement operator-() const { return *this * GaussianRational(-1); }
    /// Normal-ordered product.
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);

    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);

private:
    PresentationPtr pres_;
    Terms terms_;
};

void require_same(const PresentationPtr& a, const PresentationPtr& b);

/// Adds c into terms[key], erasing the entry when it cancels.
template <class Map, class Key>
void accumulate(Map& terms, const Key& key, const GaussianRational& c)
{
    if (c.is_zero())
        return;
    auto [it, inserted] = terms.try_emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms.erase(it);
    }
}

/// Arbitrary (not necessarily ordered) product of generators with a scalar.
struct Word {
    GaussianRational coefficient{1};
    std::vector<GenIndex> letters;
};

/// Straightens a word into the PBW basis by rewriting out-of-order pairs
/// x_j x_i -> x_i x_j + [x_j, x_i]. Each rewrite lowers (max length,
/// inversion count) lexicographically, so the process terminates.
AlgebraElement normal_order(const PresentationPtr& pres, const Word& word);

/// Normal-ordered product; throws PresentationMismatch on mixed inputs.
AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b);

/// Product of two PBW monomials, accumulated into out with factor c.
void multiply_monomials_into(const LiePresentation& pres, AlgebraElement::Terms& out, const GaussianRational& c,
                             const PbwMonomial& a, const PbwMonomial& b);

}  // namespace kappa
