#include "kappa/deform.hpp"

#include "kappa/format.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kappa {

AnsatzConstraints AnsatzConstraints::defaults(int order)
{
    return {order, 1, order + 1, false};
}

std::string AnsatzConstraints::describe() const
{
    std::ostringstream os;
    os << "momentum_degree=" << momentum_degree << " lorentz_degree_max=" << lorentz_degree_max
       << " max_word_length=" << max_word_length << " o3_invariant=" << (o3_invariant ? "true" : "false");
    return os.str();
}

std::vector<PbwMonomial> graded_monomials(const LiePresentation& pres, int max_momentum, int max_lorentz,
                                          int max_length)
{
    std::vector<PbwMonomial> out;
    PbwMonomial::Factors current;
    const auto n = static_cast<GenIndex>(pres.size());
    auto rec = [&](auto& self, GenIndex from, int momenta, int lorentz) -> void {
        out.emplace_back(current);
        if (static_cast<int>(current.size()) == max_length)
            return;
        for (GenIndex g = from; g < n; ++g) {
            const bool mom = pres.generator(g).grade == Grade::momentum;
            if (mom ? momenta == max_momentum : lorentz == max_lorentz)
                continue;
            current.push_back(g);
            self(self, g, momenta + (mom ? 1 : 0), lorentz + (mom ? 0 : 1));
            current.pop_back();
        }
    };
    if (max_length >= 0 && max_momentum >= 0 && max_lorentz >= 0)
        rec(rec, 0, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<TensorElement> primitive_commutators(const TensorElement& u)
{
    const auto& pres = u.presentation();
    std::vector<TensorElement> out;
    for (const auto& g : pres->generators()) {
        TensorElement d = primitive_coproduct(AlgebraElement::generator(pres, g.index));
        out.push_back(tensor_commutator(u, d));
    }
    return out;
}

namespace {

std::vector<TensorElement> monomial_basis(const PresentationPtr& pres, const AnsatzConstraints& c)
{
    const LiePresentation& p = *pres;
    auto monos = graded_monomials(p, c.momentum_degree, c.lorentz_degree_max, c.max_word_length);
    std::vector<TensorElement::Key> keys;
    for (const auto& a : monos)
        for (const auto& b : monos) {
            if (a.momentum_degree(p) + b.momentum_degree(p) != c.momentum_degree)
                continue;
            if (a.lorentz_degree(p) + b.lorentz_degree(p) > c.lorentz_degree_max)
                continue;
            keys.push_back({a, b, {}});
        }
    std::sort(keys.begin(), keys.end(), [](const TensorElement::Key& x, const TensorElement::Key& y) {
        const auto lx = x[0].length() + x[1].length();
        const auto ly = y[0].length() + y[1].length();
        if (lx != ly)
            return lx < ly;
        return TensorElement::KeyLess{}(x, y);
    });
    std::vector<TensorElement> out;
    for (const auto& k : keys)
        out.push_back(TensorElement::elementary(pres, 2, k));
    return out;
}

}  // namespace

std::vector<TensorElement> ansatz_basis(const PresentationPtr& pres, const AnsatzConstraints& c)
{
    std::vector<TensorElement> basis = monomial_basis(pres, c);
    if (!c.o3_invariant)
        return basis;
    std::vector<GenIndex> rotations;
    std::vector<std::string> blocks;
    for (const auto& g : pres->generators())
        if (g.grade == Grade::rotation) {
            rotations.push_back(g.index);
            blocks.push_back(g.name);
        }
    if (rotations.empty())
        return basis;

    SystemBuilder builder(pres, blocks);
    std::vector<TensorElement> deltas;
    for (GenIndex r : rotations)
        deltas.push_back(primitive_coproduct(AlgebraElement::generator(pres, r)));
    for (const auto& u : basis) {
        std::vector<TensorElement> images;
        for (const auto& d : deltas)
            images.push_back(tensor_commutator(u, d));
        builder.add_unknown(u, format_tensor(u), images);
    }
    LinearSystem sys = builder.build();
    SolveOutcome out = solve_linear(sys);
    std::vector<TensorElement> invariant;
    for (const auto& k : out.solution().kernel)
        invariant.push_back(sys.combine(k));
    return invariant;
}

TensorSeries series_from_orders(const PresentationPtr& pres, const std::vector<TensorElement>& lower, int truncation)
{
    TensorSeries s(TensorElement::zero(pres, 2), truncation);
    for (std::size_t k = 0; k < lower.size() && static_cast<int>(k) + 1 <= truncation; ++k)
        s.set(static_cast<int>(k) + 1, lower[k]);
    return s;
}

namespace {

std::vector<std::string> generator_blocks(const LiePresentation& p)
{
    std::vector<std::string> out;
    for (const auto& g : p.generators())
        out.push_back(g.name);
    return out;
}

void add_ansatz_columns(SystemBuilder& builder, const std::vector<TensorElement>& basis, bool antisymmetry)
{
    for (const auto& u : basis) {
        std::vector<TensorElement> images = primitive_commutators(u);
        if (antisymmetry)
            images.push_back(u + flip(u));
        builder.add_unknown(u, format_tensor(u), images);
    }
}

void extract_solution(OrderSolve& s, bool min_norm)
{
    if (!s.outcome.is_solution())
        return;
    const Solution& sol = s.outcome.solution();
    std::vector<GaussianRational> x = sol.particular;
    s.gauge = "pivot";
    if (min_norm && sol.kernel.size() <= 256) {
        x = min_norm_representative(sol);
        s.gauge = "min-norm";
    }
    auto ansatz_part = [&](const std::vector<GaussianRational>& v) {
        TensorElement t = TensorElement::zero(s.system.pres, 2);
        for (std::size_t u = 0; u < s.ansatz_columns; ++u)
            if (!v[u].is_zero())
                t += v[u] * s.system.unknowns[u];
        return t;
    };
    auto lower_part = [&](const std::vector<GaussianRational>& v) {
        TensorElement t = TensorElement::zero(s.system.pres, 2);
        for (std::size_t u = s.ansatz_columns; u < v.size(); ++u)
            if (!v[u].is_zero())
                t += v[u] * s.system.unknowns[u];
        return t;
    };
    s.value = ansatz_part(x);
    if (!s.lower_freedom.empty())
        s.lower_shift = lower_part(x);
    for (const auto& k : sol.kernel) {
        TensorElement t = ansatz_part(k);
        if (!t.is_zero())
            s.kernel.push_back(std::move(t));
    }
}

}  // namespace

OrderSolve solve_twist_order(int n, const CoproductMap& targets, const std::vector<TensorElement>& lower,
                             const AnsatzConstraints& c, bool lower_freedom)
{
    if (n < 1)
        throw std::invalid_argument("twist orders start at 1");
    if (targets.truncation() < n)
        throw TruncationUnderflow(n, targets.truncation());
    if (static_cast<int>(lower.size()) < n - 1)
        throw std::invalid_argument("lower-order twist coefficients missing");
    const PresentationPtr& pres = targets.presentation();

    OrderSolve s;
    s.kind = "twist";
    s.order = n;
    s.constraints = c;

    std::vector<TensorElement> lower_used(lower.begin(), lower.begin() + (n - 1));
    TwistSeries F = TwistSeries::from_log(series_from_orders(pres, lower_used, n));
    CoproductMap conj = conjugate_by_twist(F, CoproductMap::primitive(pres, n), n);
    for (const auto& g : pres->generators())
        s.rhs.push_back(targets.image(g.index)[n] - conj.image(g.index)[n]);

    SystemBuilder builder(pres, generator_blocks(*pres));
    std::vector<TensorElement> basis = ansatz_basis(pres, c);
    add_ansatz_columns(builder, basis, false);
    s.ansatz_columns = basis.size();

    if (n == 2 && lower_freedom) {
        AnsatzConstraints c1{1, c.lorentz_degree_max, std::max(1, c.max_word_length - 1), c.o3_invariant};
        OrderSolve first = solve_twist_order(1, CoproductMap::primitive(pres, 1), {}, c1, false);
        const TensorElement& f1 = lower_used.front();
        std::vector<TensorElement> d1 = primitive_commutators(f1);
        for (const auto& k : first.kernel) {
            std::vector<TensorElement> images;
            for (const auto& d : d1)
                images.push_back(GaussianRational(mpq_class(1, 2)) * tensor_commutator(k, d));
            builder.add_unknown(k, "lower:" + format_tensor(k), images);
            s.lower_freedom.push_back(k);
        }
    }

    for (std::size_t b = 0; b < s.rhs.size(); ++b)
        builder.set_rhs(b, s.rhs[b]);
    s.system = builder.build();
    s.outcome = solve_linear(s.system);
    extract_solution(s, true);
    return s;
}

OrderSolve solve_rmatrix_order(int n, const CoproductMap& delta, const std::vector<TensorElement>& lower,
                               const AnsatzConstraints& c)
{
    if (n < 1)
        throw std::invalid_argument("R-matrix orders start at 1");
    if (delta.truncation() < n)
        throw TruncationUnderflow(n, delta.truncation());
    if (static_cast<int>(lower.size()) < n - 1)
        throw std::invalid_argument("lower-order r coefficients missing");
    const PresentationPtr& pres = delta.presentation();

    std::vector<TensorElement> lower_used(lower.begin(), lower.begin() + (n - 1));
    TensorSeries r = series_from_orders(pres, lower_used, n);
    std::vector<TensorElement> rhs;
    for (const auto& g : pres->generators()) {
        const TensorSeries d = delta.image(g.index).truncated(n);
        rhs.push_back(flip(d[n]) - adjoint_exp(r, d)[n]);
    }
    std::vector<TensorElement> basis = ansatz_basis(pres, c);

    auto attempt = [&](bool antisymmetry) {
        OrderSolve s;
        s.kind = "rmatrix";
        s.order = n;
        s.constraints = c;
        s.rhs = rhs;
        s.antisymmetric = antisymmetry;
        std::vector<std::string> blocks = generator_blocks(*pres);
        if (antisymmetry)
            blocks.push_back("antisymmetry");
        SystemBuilder builder(pres, blocks);
        add_ansatz_columns(builder, basis, antisymmetry);
        s.ansatz_columns = basis.size();
        for (std::size_t b = 0; b < rhs.size(); ++b)
            builder.set_rhs(b, rhs[b]);
        s.system = builder.build();
        s.outcome = solve_linear(s.system);
        extract_solution(s, true);
        return s;
    };

    OrderSolve s = attempt(true);
    if (s.outcome.is_solution())
        return s;
    return attempt(false);
}

std::optional<std::vector<GaussianRational>> ansatz_coordinates(const OrderSolve& s, const TensorElement& t)
{
    const PresentationPtr& pres = s.system.pres;
    SystemBuilder builder(pres, {"value"});
    for (std::size_t u = 0; u < s.ansatz_columns; ++u)
        builder.add_unknown(s.system.unknowns[u], s.system.unknown_labels[u], {s.system.unknowns[u]});
    builder.set_rhs(0, t);
    LinearSystem sys = builder.build();
    SolveOutcome out = solve_linear(sys);
    if (!out.is_solution())
        return std::nullopt;
    return out.solution().particular;
}

bool satisfies_order(const OrderSolve& s, const TensorElement& t)
{
    if (!ansatz_coordinates(s, t))
        return false;
    std::vector<TensorElement> images = primitive_commutators(t);
    for (std::size_t b = 0; b < images.size(); ++b)
        if (!(images[b] == s.rhs[b]))
            return false;
    if (s.antisymmetric && !(t + flip(t)).is_zero())
        return false;
    return true;
}

}  // namespace kappa
