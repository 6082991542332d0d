#pragma once

#include "kappa/errors.hpp"
#include "kappa/tensor.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <vector>

namespace kappa {

inline AlgebraElement unit_like(const AlgebraElement& a)
{
    return AlgebraElement::one(a.presentation());
}
inline TensorElement unit_like(const TensorElement& t)
{
    return TensorElement::unit(t.presentation(), t.legs());
}
inline AlgebraElement zero_like(const AlgebraElement& a)
{
    return AlgebraElement::zero(a.presentation());
}
inline TensorElement zero_like(const TensorElement& t)
{
    return TensorElement::zero(t.presentation(), t.legs());
}

/// Truncated formal power series in λ = 1/κ.
///
/// Coefficients of orders 0..truncation() are exact; everything above is
/// unknown (not zero), and every operation returns the smallest truncation
/// among its inputs.
template <class T>
class DeformationSeries {
public:
    DeformationSeries(const T& prototype, int truncation) : coeffs_(checked(truncation) + 1, zero_like(prototype)) {}

    static DeformationSeries constant(const T& value, int truncation)
    {
        DeformationSeries s(value, truncation);
        s.coeffs_[0] = value;
        return s;
    }
    /// value * λ^order
    static DeformationSeries monomial(const T& value, int order, int truncation)
    {
        DeformationSeries s(value, truncation);
        if (order < 0)
            throw std::invalid_argument("negative order");
        if (order <= truncation)
            s.coeffs_[static_cast<std::size_t>(order)] = value;
        return s;
    }

    int truncation() const { return static_cast<int>(coeffs_.size()) - 1; }
    const T& operator[](int n) const { return at(n); }
    const T& at(int n) const
    {
        if (n < 0)
            throw std::out_of_range("negative series order");
        if (n > truncation())
            throw TruncationUnderflow(n, truncation());
        return coeffs_[static_cast<std::size_t>(n)];
    }
    void set(int n, T value)
    {
        if (n > truncation())
            throw TruncationUnderflow(n, truncation());
        coeffs_.at(static_cast<std::size_t>(n)) = std::move(value);
    }
    const std::vector<T>& coefficients() const { return coeffs_; }
    const PresentationPtr& presentation() const { return coeffs_.front().presentation(); }

    bool is_zero() const
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const T& c) { return c.is_zero(); });
    }

    /// Keeps orders 0..n; n may not exceed the current truncation.
    DeformationSeries truncated(int n) const
    {
        if (n > truncation())
            throw TruncationUnderflow(n, truncation());
        DeformationSeries s(coeffs_.front(), n);
        for (int k = 0; k <= n; ++k)
            s.coeffs_[static_cast<std::size_t>(k)] = coeffs_[static_cast<std::size_t>(k)];
        return s;
    }

    DeformationSeries& operator+=(const DeformationSeries& o)
    {
        shrink_to(o.truncation());
        for (int k = 0; k <= truncation(); ++k)
            coeffs_[static_cast<std::size_t>(k)] += o.coeffs_[static_cast<std::size_t>(k)];
        return *this;
    }
    DeformationSeries& operator-=(const DeformationSeries& o)
    {
        shrink_to(o.truncation());
        for (int k = 0; k <= truncation(); ++k)
            coeffs_[static_cast<std::size_t>(k)] -= o.coeffs_[static_cast<std::size_t>(k)];
        return *this;
    }
    DeformationSeries& operator*=(const GaussianRational& c)
    {
        for (auto& x : coeffs_)
            x *= c;
        return *this;
    }

    friend DeformationSeries operator+(DeformationSeries a, const DeformationSeries& b) { return a += b; }
    friend DeformationSeries operator-(DeformationSeries a, const DeformationSeries& b) { return a -= b; }
    friend DeformationSeries operator*(const GaussianRational& c, DeformationSeries a) { return a *= c; }
    DeformationSeries operator-() const { return GaussianRational(-1) * *this; }

    /// Cauchy product up to the smaller truncation.
    friend DeformationSeries operator*(const DeformationSeries& a, const DeformationSeries& b)
    {
        const int n = std::min(a.truncation(), b.truncation());
        DeformationSeries out(a.coeffs_.front(), n);
        for (int i = 0; i <= n; ++i) {
            const T& ai = a.coeffs_[static_cast<std::size_t>(i)];
            if (ai.is_zero())
                continue;
            for (int j = 0; i + j <= n; ++j) {
                const T& bj = b.coeffs_[static_cast<std::size_t>(j)];
                if (bj.is_zero())
                    continue;
                out.coeffs_[static_cast<std::size_t>(i + j)] += ai * bj;
            }
        }
        return out;
    }

    /// Multiplies by λ^k, dropping what falls beyond the truncation.
    DeformationSeries shifted_up(int k) const
    {
        DeformationSeries out(coeffs_.front(), truncation());
        for (int n = 0; n + k <= truncation(); ++n)
            out.coeffs_[static_cast<std::size_t>(n + k)] = coeffs_[static_cast<std::size_t>(n)];
        return out;
    }

    template <class F>
    auto map(F&& f) const
    {
        using U = std::decay_t<decltype(f(coeffs_.front()))>;
        DeformationSeries<U> out(f(coeffs_.front()), truncation());
        for (int n = 0; n <= truncation(); ++n)
            out.set(n, f(coeffs_[static_cast<std::size_t>(n)]));
        return out;
    }

    friend bool operator==(const DeformationSeries& a, const DeformationSeries& b)
    {
        return a.coeffs_ == b.coeffs_;
    }

private:
    static std::size_t checked(int truncation)
    {
        if (truncation < 0)
            throw std::invalid_argument("negative truncation order");
        return static_cast<std::size_t>(truncation);
    }
    void shrink_to(int n)
    {
        if (n < truncation())
            coeffs_.erase(coeffs_.begin() + n + 1, coeffs_.end());
    }

    std::vector<T> coeffs_;
};

using AlgebraSeries = DeformationSeries<AlgebraElement>;
using TensorSeries = DeformationSeries<TensorElement>;

template <class T>
DeformationSeries<T> series_add(const DeformationSeries<T>& a, const DeformationSeries<T>& b)
{
    return a + b;
}
template <class T>
DeformationSeries<T> series_mul(const DeformationSeries<T>& a, const DeformationSeries<T>& b)
{
    return a * b;
}
template <class T>
DeformationSeries<T> series_truncate(const DeformationSeries<T>& s, int n)
{
    return s.truncated(n);
}

namespace detail {

// sum_k c_k x^k for x with vanishing order-0 coefficient
template <class T>
DeformationSeries<T> compose_power_series(const DeformationSeries<T>& x, const std::function<mpq_class(int)>& coeff)
{
    const int n = x.truncation();
    DeformationSeries<T> out = DeformationSeries<T>::constant(unit_like(x[0]), n);
    out *= GaussianRational(coeff(0));
    DeformationSeries<T> power = DeformationSeries<T>::constant(unit_like(x[0]), n);
    for (int k = 1; k <= n; ++k) {
        power = power * x;
        mpq_class c = coeff(k);
        if (sgn(c) != 0)
            out += GaussianRational(c) * power;
    }
    return out;
}

template <class T>
DeformationSeries<T> require_unit_lead(const DeformationSeries<T>& s, const char* what)
{
    if (!(s[0] == unit_like(s[0])))
        throw std::domain_error(std::string(what) + " needs an order-0 coefficient equal to the unit");
    DeformationSeries<T> x = s;
    x.set(0, zero_like(s[0]));
    return x;
}

}  // namespace detail

/// exp(s) = sum s^k / k!; s must have zero order-0 coefficient. Powers of the
/// single series s are taken literally, so noncommuting coefficients are fine.
template <class T>
DeformationSeries<T> series_exp(const DeformationSeries<T>& s)
{
    if (!s[0].is_zero())
        throw std::domain_error("series_exp needs a zero order-0 coefficient");
    return detail::compose_power_series<T>(s, [](int k) -> mpq_class {
        mpq_class f = 1;
        for (int j = 2; j <= k; ++j)
            f *= j;
        return mpq_class(1) / f;
    });
}

/// log(1 + x) = sum (-1)^{k+1} x^k / k.
template <class T>
DeformationSeries<T> series_log(const DeformationSeries<T>& s)
{
    auto x = detail::require_unit_lead(s, "series_log");
    return detail::compose_power_series<T>(x, [](int k) -> mpq_class {
        if (k == 0)
            return mpq_class(0);
        return mpq_class(k % 2 == 1 ? 1 : -1, k);
    });
}

/// sqrt(1 + x) = sum binom(1/2, k) x^k.
template <class T>
DeformationSeries<T> series_sqrt(const DeformationSeries<T>& s)
{
    auto x = detail::require_unit_lead(s, "series_sqrt");
    return detail::compose_power_series<T>(x, [](int k) -> mpq_class {
        mpq_class c = 1;
        for (int j = 0; j < k; ++j)
            c *= (mpq_class(1, 2) - j) / (j + 1);
        return c;
    });
}

/// (1 + x)^{-1} = sum (-x)^k.
template <class T>
DeformationSeries<T> series_inv(const DeformationSeries<T>& s)
{
    auto x = detail::require_unit_lead(s, "series_inv");
    return detail::compose_power_series<T>(x, [](int k) -> mpq_class { return mpq_class(k % 2 == 0 ? 1 : -1); });
}

/// κ^power · inner, for inner series whose orders below `power` must cancel.
///
/// resolve() checks the cancellation and returns the genuine series
/// (truncation drops by `power`).
template <class T>
struct KappaScaled {
    int kappa_power = 0;
    DeformationSeries<T> inner;

    DeformationSeries<T> resolve() const
    {
        for (int n = 0; n < kappa_power && n <= inner.truncation(); ++n)
            if (!inner[n].is_zero())
                throw CancellationFailure("order " + std::to_string(n - kappa_power) +
                                          " of a kappa-scaled series does not cancel");
        const int trunc = inner.truncation() - kappa_power;
        if (trunc < 0)
            throw TruncationUnderflow(kappa_power, inner.truncation());
        DeformationSeries<T> out(inner[0], trunc);
        for (int n = 0; n <= trunc; ++n)
            out.set(n, inner[n + kappa_power]);
        return out;
    }
};

/// Orders at which a residue series is nonzero.
template <class T>
std::vector<int> nonzero_orders(const DeformationSeries<T>& s)
{
    std::vector<int> out;
    for (int n = 0; n <= s.truncation(); ++n)
        if (!s[n].is_zero())
            out.push_back(n);
    return out;
}

}  // namespace kappa
