#include "kappa/format.hpp"

namespace kappa {

namespace {

std::string rational_text(const mpq_class& q)
{
    return q.get_str();
}

// Leading sign and the factor text placed in front of a monomial; the factor
// is empty for ±1.
std::pair<bool, std::string> coefficient_factor(const GaussianRational& c)
{
    const mpq_class& re = c.re();
    const mpq_class& im = c.im();
    if (sgn(im) == 0) {
        bool negative = sgn(re) < 0;
        mpq_class a = abs(re);
        return {negative, a == 1 ? "" : rational_text(a)};
    }
    if (sgn(re) == 0) {
        bool negative = sgn(im) < 0;
        mpq_class a = abs(im);
        return {negative, a == 1 ? "i" : rational_text(a) + "*i"};
    }
    std::string imag = abs(im) == 1 ? "i" : rational_text(abs(im)) + "*i";
    return {false, "(" + rational_text(re) + (sgn(im) < 0 ? "-" : "+") + imag + ")"};
}

template <class Terms, class Body>
std::string join_terms(const Terms& terms, Body body)
{
    if (terms.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& [key, c] : terms) {
        auto [negative, factor] = coefficient_factor(c);
        std::string b = body(key);
        std::string term;
        if (factor.empty())
            term = b;
        else if (b == "1")
            term = factor;
        else
            term = factor + "*" + b;
        if (first)
            out += negative ? "-" + term : term;
        else
            out += (negative ? " - " : " + ") + term;
        first = false;
    }
    return out;
}

template <class T, class Fmt>
std::string series_text(const DeformationSeries<T>& s, Fmt fmt)
{
    std::string out;
    for (int k = 0; k <= s.truncation(); ++k) {
        if (s[k].is_zero())
            continue;
        std::string body = fmt(s[k]);
        if (!out.empty())
            out += " + ";
        if (k == 0)
            out += body;
        else
            out += (k == 1 ? std::string("L") : "L^" + std::to_string(k)) + "*(" + body + ")";
    }
    if (out.empty())
        out = "0";
    out += " + O(L^" + std::to_string(s.truncation() + 1) + ")";
    return out;
}

}  // namespace

std::string format_monomial(const LiePresentation& pres, const PbwMonomial& m)
{
    if (m.is_unit())
        return "1";
    std::string out;
    const auto& f = m.factors();
    for (std::size_t i = 0; i < f.size();) {
        std::size_t j = i;
        while (j < f.size() && f[j] == f[i])
            ++j;
        if (!out.empty())
            out += "*";
        out += pres.generator(f[i]).name;
        if (j - i > 1)
            out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

std::string format_key(const LiePresentation& pres, const TensorElement::Key& key, int legs)
{
    std::string out;
    for (int l = 0; l < legs; ++l) {
        if (l > 0)
            out += " # ";
        out += format_monomial(pres, key[static_cast<std::size_t>(l)]);
    }
    return out;
}

std::string format_element(const AlgebraElement& a)
{
    const auto& pres = *a.presentation();
    return join_terms(a.terms(), [&](const PbwMonomial& m) { return format_monomial(pres, m); });
}

std::string format_tensor(const TensorElement& t)
{
    const auto& pres = *t.presentation();
    if (t.legs() == 1)
        return format_element(t.to_algebra());
    return join_terms(t.terms(), [&](const TensorElement::Key& k) { return format_key(pres, k, t.legs()); });
}

std::string format_series(const AlgebraSeries& s)
{
    return series_text(s, [](const AlgebraElement& a) { return format_element(a); });
}

std::string format_series(const TensorSeries& s)
{
    return series_text(s, [](const TensorElement& t) { return format_tensor(t); });
}

}  // namespace kappa
