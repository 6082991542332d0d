#include "kappa/hopf.hpp"

#include <map>
#include <stdexcept>

namespace kappa {

TensorElement primitive_coproduct(const AlgebraElement& a)
{
    // Δ₀(x_1...x_k) = Σ_S x_S ⊗ x_{S^c}; subsequences of a PBW word stay ordered.
    TensorElement::Terms terms;
    for (const auto& [m, c] : a.terms()) {
        const auto& f = m.factors();
        const std::size_t k = f.size();
        if (k > 20)
            throw std::length_error("monomial too long for primitive coproduct");
        for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
            PbwMonomial::Factors left, right;
            for (std::size_t i = 0; i < k; ++i)
                ((mask >> i) & 1u ? left : right).push_back(f[i]);
            accumulate(terms, TensorElement::Key{PbwMonomial(std::move(left)), PbwMonomial(std::move(right)), {}}, c);
        }
    }
    return TensorElement(a.presentation(), 2, std::move(terms));
}

// ---------------------------------------------------------------------------
// CoproductMap

CoproductMap::CoproductMap(PresentationPtr pres, std::vector<TensorSeries> images)
    : pres_(std::move(pres)), images_(std::move(images)), truncation_(0)
{
    if (images_.size() != pres_->size())
        throw std::invalid_argument("coproduct needs one image per generator");
    truncation_ = images_.empty() ? 0 : images_.front().truncation();
    for (const auto& s : images_) {
        require_same(pres_, s.presentation());
        if (s[0].legs() != 2)
            throw std::invalid_argument("coproduct images must have two legs");
        truncation_ = std::min(truncation_, s.truncation());
    }
    for (auto& s : images_)
        if (s.truncation() > truncation_)
            s = s.truncated(truncation_);
}

CoproductMap CoproductMap::primitive(const PresentationPtr& pres, int truncation)
{
    std::vector<TensorSeries> images;
    for (const auto& g : pres->generators())
        images.push_back(TensorSeries::constant(primitive_coproduct(AlgebraElement::generator(pres, g.index)), truncation));
    return CoproductMap(pres, std::move(images));
}

namespace {

// Δ on PBW monomials with prefix memoization.
class MonomialImages {
public:
    explicit MonomialImages(const CoproductMap& delta) : delta_(delta) {}

    const TensorSeries& operator()(const PbwMonomial& m)
    {
        auto it = cache_.find(m);
        if (it != cache_.end())
            return it->second;
        TensorSeries value = TensorSeries::constant(TensorElement::unit(delta_.presentation(), 2), delta_.truncation());
        if (!m.is_unit()) {
            PbwMonomial::Factors prefix(m.factors().begin(), m.factors().end() - 1);
            value = (*this)(PbwMonomial(std::move(prefix))) * delta_.image(m.factors().back());
        }
        return cache_.emplace(m, std::move(value)).first->second;
    }

private:
    const CoproductMap& delta_;
    std::map<PbwMonomial, TensorSeries> cache_;
};

}  // namespace

TensorSeries CoproductMap::apply(const AlgebraElement& a) const
{
    require_same(pres_, a.presentation());
    MonomialImages images(*this);
    TensorSeries out(TensorElement::zero(pres_, 2), truncation_);
    for (const auto& [m, c] : a.terms())
        out += c * images(m);
    return out;
}

TensorSeries CoproductMap::apply(const AlgebraSeries& s) const
{
    require_same(pres_, s.presentation());
    const int n = std::min(truncation_, s.truncation());
    MonomialImages images(*this);
    TensorSeries out(TensorElement::zero(pres_, 2), n);
    for (int k = 0; k <= n; ++k) {
        for (const auto& [m, c] : s[k].terms()) {
            const TensorSeries& img = images(m);
            for (int j = 0; j + k <= n; ++j)
                if (!img[j].is_zero())
                    out.set(j + k, out[j + k] + c * img[j]);
        }
    }
    return out;
}

namespace {

TensorSeries apply_on_leg(const CoproductMap& delta, const TensorSeries& u, int leg)
{
    if (u[0].legs() != 2)
        throw std::invalid_argument("(Δ⊗id) and (id⊗Δ) act on 2-leg elements");
    const auto& pres = delta.presentation();
    const int n = std::min(delta.truncation(), u.truncation());
    MonomialImages images(delta);
    std::vector<TensorElement::Terms> acc(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        for (const auto& [key, c] : u[k].terms()) {
            const TensorSeries& img = images(key[leg]);
            const PbwMonomial& other = key[1 - leg];
            for (int j = 0; j + k <= n; ++j) {
                for (const auto& [ik, ic] : img[j].terms()) {
                    TensorElement::Key out = leg == 0 ? TensorElement::Key{ik[0], ik[1], other}
                                                      : TensorElement::Key{other, ik[0], ik[1]};
                    accumulate(acc[static_cast<std::size_t>(j + k)], out, c * ic);
                }
            }
        }
    }
    TensorSeries out(TensorElement::zero(pres, 3), n);
    for (int k = 0; k <= n; ++k)
        out.set(k, TensorElement(pres, 3, std::move(acc[static_cast<std::size_t>(k)])));
    return out;
}

}  // namespace

TensorSeries CoproductMap::apply_left(const TensorSeries& u) const
{
    return apply_on_leg(*this, u, 0);
}

TensorSeries CoproductMap::apply_right(const TensorSeries& u) const
{
    return apply_on_leg(*this, u, 1);
}

CoproductMap CoproductMap::truncated(int n) const
{
    std::vector<TensorSeries> images;
    for (const auto& s : images_)
        images.push_back(s.truncated(n));
    return CoproductMap(pres_, std::move(images));
}

CoproductMap CoproductMap::flipped() const
{
    std::vector<TensorSeries> images;
    for (const auto& s : images_)
        images.push_back(kappa::flip(s));
    return CoproductMap(pres_, std::move(images));
}

// ---------------------------------------------------------------------------
// Twists

TwistSeries TwistSeries::from_log(const TensorSeries& f)
{
    if (!f[0].is_zero())
        throw std::domain_error("twist logarithm must vanish at order 0");
    if (f[0].legs() != 2)
        throw std::invalid_argument("twists have two legs");
    return TwistSeries(series_exp(f), f, series_exp(-f));
}

TwistSeries TwistSeries::from_series(const TensorSeries& F)
{
    if (F[0].legs() != 2)
        throw std::invalid_argument("twists have two legs");
    return TwistSeries(F, std::nullopt, series_inv(F));
}

TwistSeries TwistSeries::trivial(const PresentationPtr& pres, int truncation)
{
    return from_log(TensorSeries(TensorElement::zero(pres, 2), truncation));
}

TensorSeries adjoint_exp(const TensorSeries& r, const TensorSeries& x)
{
    if (!r[0].is_zero())
        throw std::domain_error("adjoint_exp needs a zero order-0 exponent");
    const int n = std::min(r.truncation(), x.truncation());
    TensorSeries term = x.truncated(n);
    TensorSeries out = term;
    for (int k = 1; k <= n; ++k) {
        term = r * term - term * r;
        term *= GaussianRational(mpq_class(1, k));
        out += term;
    }
    return out;
}

CoproductMap conjugate_by_twist(const TwistSeries& F, const CoproductMap& delta, int order)
{
    if (F.truncation() < order)
        throw TruncationUnderflow(order, F.truncation());
    if (delta.truncation() < order)
        throw TruncationUnderflow(order, delta.truncation());
    const TensorSeries Ft = F.series().truncated(order);
    const TensorSeries Finv = F.inverse().truncated(order);
    std::vector<TensorSeries> images;
    for (const auto& img : delta.images()) {
        TensorSeries direct = Ft * img.truncated(order) * Finv;
        if (F.log()) {
            TensorSeries nested = adjoint_exp(F.log()->truncated(order), img.truncated(order));
            if (!(nested == direct))
                throw std::logic_error("nested-commutator and sandwich expansions of the twisted coproduct disagree");
        }
        images.push_back(std::move(direct));
    }
    return CoproductMap(delta.presentation(), std::move(images));
}

TensorSeries permute(const TensorSeries& u, const LegPermutation& sigma)
{
    return u.map([&](const TensorElement& t) { return permute(t, sigma); });
}

TensorSeries embed(const TensorSeries& u, int i, int j)
{
    return u.map([&](const TensorElement& t) { return embed(t, i, j); });
}

TensorSeries flip(const TensorSeries& u)
{
    return u.map([](const TensorElement& t) { return flip(t); });
}

TensorSeries coassociator(const TwistSeries& F, const CoproductMap& base)
{
    const int n = std::min(F.truncation(), base.truncation());
    const TensorSeries Ft = F.series().truncated(n);
    const TensorSeries Finv = F.inverse().truncated(n);
    TensorSeries one_F = embed(Ft, 2, 3);
    TensorSeries Finv_one = embed(Finv, 1, 2);
    return one_F * base.apply_right(Ft) * base.apply_left(Finv) * Finv_one;
}

TensorSeries twisted_rmatrix(const TwistSeries& F)
{
    return flip(F.series()) * F.inverse();
}

// ---------------------------------------------------------------------------
// Checks

bool CheckReport::pass() const
{
    for (const auto& r : residues)
        if (!r.vanishes())
            return false;
    return true;
}

std::vector<const Residue*> CheckReport::failures() const
{
    std::vector<const Residue*> out;
    for (const auto& r : residues)
        if (!r.vanishes())
            out.push_back(&r);
    return out;
}

CheckReport check_intertwiner(const TensorSeries& R, const CoproductMap& delta)
{
    CheckReport report{"intertwiner", std::min(R.truncation(), delta.truncation()), {}};
    for (const auto& g : delta.presentation()->generators()) {
        const TensorSeries& d = delta.image(g.index);
        report.residues.push_back({g.name, flip(d) * R - R * d});
    }
    return report;
}

CheckReport check_coassociativity(const CoproductMap& delta)
{
    CheckReport report{"coassociativity", delta.truncation(), {}};
    for (const auto& g : delta.presentation()->generators()) {
        const TensorSeries& d = delta.image(g.index);
        report.residues.push_back({g.name, delta.apply_right(d) - delta.apply_left(d)});
    }
    return report;
}

CheckReport check_quasi_coassoc(const CoproductMap& delta, const TensorSeries& phi)
{
    CheckReport report{"quasi-coassociativity", std::min(delta.truncation(), phi.truncation()), {}};
    for (const auto& g : delta.presentation()->generators()) {
        const TensorSeries& d = delta.image(g.index);
        report.residues.push_back({g.name, delta.apply_right(d) * phi - phi * delta.apply_left(d)});
    }
    return report;
}

CheckReport check_quasitriangularity(const TensorSeries& R, const TensorSeries& phi, const CoproductMap& delta)
{
    const TensorSeries phi_inv = series_inv(phi);
    const TensorSeries R12 = embed(R, 1, 2);
    const TensorSeries R13 = embed(R, 1, 3);
    const TensorSeries R23 = embed(R, 2, 3);

    CheckReport report{"quasitriangularity", std::min({R.truncation(), phi.truncation(), delta.truncation()}), {}};
    TensorSeries left = delta.apply_left(R) - permute(phi, {3, 1, 2}) * R13 * permute(phi_inv, {1, 3, 2}) * R23 * phi;
    TensorSeries right =
        delta.apply_right(R) - permute(phi_inv, {2, 3, 1}) * R13 * permute(phi, {2, 1, 3}) * R12 * phi_inv;
    report.residues.push_back({"(Delta x id)(R)", std::move(left)});
    report.residues.push_back({"(id x Delta)(R)", std::move(right)});
    return report;
}

CheckReport check_modified_ybe(const TensorSeries& R, const TensorSeries& phi)
{
    const TensorSeries phi_inv = series_inv(phi);
    const TensorSeries R12 = embed(R, 1, 2);
    const TensorSeries R13 = embed(R, 1, 3);
    const TensorSeries R23 = embed(R, 2, 3);
    TensorSeries lhs = R12 * permute(phi, {3, 1, 2}) * R13 * permute(phi_inv, {1, 3, 2}) * R23 * phi;
    TensorSeries rhs = permute(phi, {3, 2, 1}) * R23 * permute(phi_inv, {2, 3, 1}) * R13 * permute(phi, {2, 1, 3}) * R12;
    CheckReport report{"modified-ybe", std::min(R.truncation(), phi.truncation()), {}};
    report.residues.push_back({"R12 phi312 R13 phi132^-1 R23 phi - phi321 R23 phi231^-1 R13 phi213 R12", lhs - rhs});
    return report;
}

CheckReport check_homomorphism(const CoproductMap& delta)
{
    const auto& pres = delta.presentation();
    CheckReport report{"homomorphism", delta.truncation(), {}};
    for (const auto& x : pres->generators())
        for (const auto& y : pres->generators()) {
            if (y.index <= x.index)
                continue;
            AlgebraElement br = AlgebraElement::zero(pres);
            for (const auto& [k, c] : pres->bracket(x.index, y.index))
                br += c * AlgebraElement::generator(pres, k);
            const TensorSeries& dx = delta.image(x.index);
            const TensorSeries& dy = delta.image(y.index);
            report.residues.push_back({"[" + x.name + "," + y.name + "]", delta.apply(br) - (dx * dy - dy * dx)});
        }
    return report;
}

}  // namespace kappa
