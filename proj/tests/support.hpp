#pragma once

#include "kappa/models.hpp"

#include <random>

namespace kappa::testing {

inline GaussianRational random_scalar(std::mt19937& rng, bool complex = true)
{
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    mpq_class re(num(rng), den(rng));
    mpq_class im = complex ? mpq_class(num(rng), den(rng)) : mpq_class(0);
    re.canonicalize();
    im.canonicalize();
    GaussianRational c(re, im);
    return c.is_zero() ? GaussianRational(1) : c;
}

inline PbwMonomial random_monomial(std::mt19937& rng, const LiePresentation& p, int max_len)
{
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> gen(0, static_cast<int>(p.size()) - 1);
    PbwMonomial::Factors f;
    for (int k = len(rng); k > 0; --k)
        f.push_back(static_cast<GenIndex>(gen(rng)));
    std::sort(f.begin(), f.end());
    return PbwMonomial(f);
}

inline AlgebraElement random_element(std::mt19937& rng, const PresentationPtr& p, int max_terms, int max_len)
{
    std::uniform_int_distribution<int> terms(1, max_terms);
    AlgebraElement a = AlgebraElement::zero(p);
    for (int k = terms(rng); k > 0; --k)
        a += AlgebraElement::monomial(p, random_monomial(rng, *p, max_len), random_scalar(rng));
    return a;
}

inline TensorElement random_tensor(std::mt19937& rng, const PresentationPtr& p, int legs, int max_terms, int max_len)
{
    std::uniform_int_distribution<int> terms(1, max_terms);
    TensorElement t = TensorElement::zero(p, legs);
    for (int k = terms(rng); k > 0; --k) {
        TensorElement::Key key{};
        for (int l = 0; l < legs; ++l)
            key[static_cast<std::size_t>(l)] = random_monomial(rng, *p, max_len);
        t += TensorElement::elementary(p, legs, key, random_scalar(rng));
    }
    return t;
}

/// Σ_{k=1..n} λ^k t_k with random 2-leg coefficients of word length ≤ max_len.
inline TensorSeries random_twist_log(std::mt19937& rng, const PresentationPtr& p, int n, int max_len)
{
    TensorSeries f(TensorElement::zero(p, 2), n);
    for (int k = 1; k <= n; ++k)
        f.set(k, random_tensor(rng, p, 2, 2, max_len));
    return f;
}


}  // namespace kappa::testing
