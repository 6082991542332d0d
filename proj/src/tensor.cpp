#include "kappa/tensor.hpp"
#include "kappa/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace kappa {

bool TensorElement::KeyLess::operator()(const Key& a, const Key& b) const
{
    for (std::size_t l = 0; l < 3; ++l) {
        if (a[l] < b[l])
            return true;
        if (b[l] < a[l])
            return false;
    }
    return false;
}

TensorElement::TensorElement(PresentationPtr pres, int legs) : pres_(std::move(pres)), legs_(legs)
{
    if (legs < 1 || legs > 3)
        throw std::invalid_argument("tensor elements carry 1 to 3 legs");
}

TensorElement::TensorElement(PresentationPtr pres, int legs, Terms terms) : TensorElement(std::move(pres), legs)
{
    terms_ = std::move(terms);
    std::erase_if(terms_, [](const auto& t) { return t.second.is_zero(); });
}

TensorElement TensorElement::unit(PresentationPtr pres, int legs, const GaussianRational& c)
{
    return elementary(std::move(pres), legs, Key{}, c);
}

TensorElement TensorElement::elementary(PresentationPtr pres, int legs, const Key& key, const GaussianRational& c)
{
    TensorElement t(std::move(pres), legs);
    for (int l = legs; l < 3; ++l)
        if (!key[static_cast<std::size_t>(l)].is_unit())
            throw std::invalid_argument("key has content beyond the leg count");
    accumulate(t.terms_, key, c);
    return t;
}

TensorElement TensorElement::from_algebra(const AlgebraElement& a)
{
    TensorElement t(a.presentation(), 1);
    for (const auto& [m, c] : a.terms())
        t.terms_.emplace(Key{m, {}, {}}, c);
    return t;
}

GaussianRational TensorElement::coefficient(const Key& key) const
{
    auto it = terms_.find(key);
    return it == terms_.end() ? GaussianRational() : it->second;
}

AlgebraElement TensorElement::to_algebra() const
{
    if (legs_ != 1)
        throw std::invalid_argument("to_algebra needs a single leg");
    AlgebraElement::Terms terms;
    for (const auto& [k, c] : terms_)
        terms.emplace(k[0], c);
    return AlgebraElement(pres_, std::move(terms));
}

bool TensorElement::is_scalar() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Key{});
}

TensorElement& TensorElement::operator+=(const TensorElement& o)
{
    require_same(pres_, o.pres_);
    if (legs_ != o.legs_)
        throw std::invalid_argument("leg-count mismatch");
    for (const auto& [k, c] : o.terms_)
        accumulate(terms_, k, c);
    return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& o)
{
    require_same(pres_, o.pres_);
    if (legs_ != o.legs_)
        throw std::invalid_argument("leg-count mismatch");
    for (const auto& [k, c] : o.terms_)
        accumulate(terms_, k, -c);
    return *this;
}

TensorElement& TensorElement::operator*=(const GaussianRational& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, coeff] : terms_)
        coeff *= c;
    return *this;
}

namespace {

struct PairLess {
    bool operator()(const std::pair<PbwMonomial, PbwMonomial>& a, const std::pair<PbwMonomial, PbwMonomial>& b) const
    {
        if (a.first < b.first)
            return true;
        if (b.first < a.first)
            return false;
        return a.second < b.second;
    }
};

using ProductCache = std::map<std::pair<PbwMonomial, PbwMonomial>, AlgebraElement::Terms, PairLess>;

const AlgebraElement::Terms& leg_product(const LiePresentation& pres, ProductCache& cache, const PbwMonomial& a,
                                         const PbwMonomial& b)
{
    auto key = std::pair{a, b};
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    AlgebraElement::Terms out;
    multiply_monomials_into(pres, out, 1, a, b);
    return cache.emplace(std::move(key), std::move(out)).first->second;
}

}  // namespace

TensorElement operator*(const TensorElement& a, const TensorElement& b)
{
    require_same(a.pres_, b.pres_);
    if (a.legs_ != b.legs_)
        throw std::invalid_argument("leg-count mismatch in tensor product");
    const auto& pres = *a.pres_;
    TensorElement out(a.pres_, a.legs_);
    ProductCache cache;
    std::array<const AlgebraElement::Terms*, 3> legs{};
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            GaussianRational c = ca * cb;
            for (int l = 0; l < a.legs_; ++l)
                legs[l] = &leg_product(pres, cache, ka[l], kb[l]);
            if (a.legs_ == 1) {
                for (const auto& [m0, c0] : *legs[0])
                    accumulate(out.terms_, TensorElement::Key{m0, {}, {}}, c * c0);
            } else if (a.legs_ == 2) {
                for (const auto& [m0, c0] : *legs[0]) {
                    GaussianRational c01 = c * c0;
                    for (const auto& [m1, c1] : *legs[1])
                        accumulate(out.terms_, TensorElement::Key{m0, m1, {}}, c01 * c1);
                }
            } else {
                for (const auto& [m0, c0] : *legs[0]) {
                    GaussianRational c01 = c * c0;
                    for (const auto& [m1, c1] : *legs[1]) {
                        GaussianRational c012 = c01 * c1;
                        for (const auto& [m2, c2] : *legs[2])
                            accumulate(out.terms_, TensorElement::Key{m0, m1, m2}, c012 * c2);
                    }
                }
            }
        }
    }
    return out;
}

bool operator==(const TensorElement& a, const TensorElement& b)
{
    return a.pres_.get() == b.pres_.get() && a.legs_ == b.legs_ && a.terms_ == b.terms_;
}

TensorElement tensor_multiply(const TensorElement& u, const TensorElement& v)
{
    return u * v;
}

TensorElement tensor_commutator(const TensorElement& u, const TensorElement& v)
{
    return u * v - v * u;
}

TensorElement tensor_product(const TensorElement& u, const TensorElement& v)
{
    require_same(u.presentation(), v.presentation());
    const int legs = u.legs() + v.legs();
    if (legs > 3)
        throw std::invalid_argument("tensor products are limited to three legs");
    TensorElement::Terms terms;
    for (const auto& [ku, cu] : u.terms())
        for (const auto& [kv, cv] : v.terms()) {
            TensorElement::Key key{};
            for (int l = 0; l < u.legs(); ++l)
                key[l] = ku[l];
            for (int l = 0; l < v.legs(); ++l)
                key[u.legs() + l] = kv[l];
            accumulate(terms, key, cu * cv);
        }
    return TensorElement(u.presentation(), legs, std::move(terms));
}

TensorElement tensor_product(const AlgebraElement& a, const AlgebraElement& b)
{
    return tensor_product(TensorElement::from_algebra(a), TensorElement::from_algebra(b));
}

TensorElement tensor_product(const AlgebraElement& a, const AlgebraElement& b, const AlgebraElement& c)
{
    return tensor_product(tensor_product(a, b), TensorElement::from_algebra(c));
}

TensorElement wedge(const AlgebraElement& a, const AlgebraElement& b)
{
    return tensor_product(a, b) - tensor_product(b, a);
}

TensorElement flip(const TensorElement& u)
{
    if (u.legs() != 2)
        throw std::invalid_argument("flip needs a 2-leg element; use permute for three legs");
    TensorElement::Terms terms;
    for (const auto& [k, c] : u.terms())
        terms.emplace(TensorElement::Key{k[1], k[0], {}}, c);
    return TensorElement(u.presentation(), 2, std::move(terms));
}

LegPermutation::LegPermutation(std::initializer_list<int> targets) : LegPermutation(std::vector<int>(targets)) {}

LegPermutation::LegPermutation(std::vector<int> targets) : targets_(std::move(targets))
{
    std::vector<int> sorted = targets_;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k)
        if (sorted[k] != static_cast<int>(k) + 1)
            throw std::invalid_argument("leg permutation must be a bijection of {1..n}");
    if (targets_.size() < 2 || targets_.size() > 3)
        throw std::invalid_argument("leg permutations act on 2 or 3 legs");
}

LegPermutation LegPermutation::after(const LegPermutation& other) const
{
    if (other.arity() != arity())
        throw std::invalid_argument("arity mismatch in permutation product");
    // factor k goes to leg other(k), then that leg's content moves to this(other(k))
    std::vector<int> composed(targets_.size());
    for (int k = 0; k < arity(); ++k)
        composed[static_cast<std::size_t>(k)] = target(other.target(k) - 1);
    return LegPermutation(std::move(composed));
}

TensorElement permute(const TensorElement& u, const LegPermutation& sigma)
{
    if (sigma.arity() != u.legs())
        throw std::invalid_argument("permutation arity does not match leg count");
    TensorElement::Terms terms;
    for (const auto& [k, c] : u.terms()) {
        TensorElement::Key key{};
        for (int l = 0; l < u.legs(); ++l)
            key[sigma.target(l) - 1] = k[l];
        terms.emplace(std::move(key), c);
    }
    return TensorElement(u.presentation(), u.legs(), std::move(terms));
}

TensorElement embed(const TensorElement& u, int i, int j)
{
    if (u.legs() != 2)
        throw std::invalid_argument("embed needs a 2-leg element");
    if (i < 1 || i > 3 || j < 1 || j > 3 || i == j)
        throw std::invalid_argument("embed positions must be two distinct legs in {1,2,3}");
    TensorElement::Terms terms;
    for (const auto& [k, c] : u.terms()) {
        TensorElement::Key key{};
        key[i - 1] = k[0];
        key[j - 1] = k[1];
        terms.emplace(std::move(key), c);
    }
    return TensorElement(u.presentation(), 3, std::move(terms));
}

}  // namespace kappa
