#include "kappa/models.hpp"

#include <stdexcept>

namespace kappa {

int levi_civita(int i, int j, int k)
{
    if (i == j || j == k || i == k)
        return 0;
    // even permutations of (1,2,3)
    if ((i == 1 && j == 2) || (i == 2 && j == 3) || (i == 3 && j == 1))
        return 1;
    return -1;
}

AlgebraElement KappaModel::spatial_square() const
{
    AlgebraElement s = AlgebraElement::zero(pres);
    for (GenIndex k : spatial)
        s += gen(k) * gen(k);
    return s;
}

namespace {

const GaussianRational I = GaussianRational::imaginary_unit();

KappaModel build_d2()
{
    LiePresentation::Builder b("d2-classical");
    GenIndex p0 = b.add_generator("P0", Grade::momentum);
    GenIndex p1 = b.add_generator("P1", Grade::momentum);
    GenIndex n = b.add_generator("N", Grade::boost);
    b.bracket(n, p0, {{p1, I}});
    b.bracket(n, p1, {{p0, I}});

    KappaModel m;
    m.id = "d2-classical";
    m.dimension = 2;
    m.pres = b.build();
    m.default_order = 3;
    m.p0 = p0;
    m.spatial = {p1};
    m.boosts = {n};
    m.casimir0 = -(m.gen(p0) * m.gen(p0)) + m.spatial_square();
    return m;
}

KappaModel build_d4(int sign)
{
    LiePresentation::Builder b("d4-classical");
    GenIndex p0 = b.add_generator("P0", Grade::momentum);
    std::vector<GenIndex> p, mr, nb;
    for (int k = 1; k <= 3; ++k)
        p.push_back(b.add_generator("P" + std::to_string(k), Grade::momentum));
    for (int k = 1; k <= 3; ++k)
        mr.push_back(b.add_generator("M" + std::to_string(k), Grade::rotation));
    for (int k = 1; k <= 3; ++k)
        nb.push_back(b.add_generator("N" + std::to_string(k), Grade::boost));
    auto idx = [](int k) { return static_cast<std::size_t>(k - 1); };

    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            LinearCombination mm, mn, nn, mp;
            for (int k = 1; k <= 3; ++k) {
                const int e = levi_civita(i, j, k);
                if (e == 0)
                    continue;
                mm.push_back({mr[idx(k)], e * I});
                mn.push_back({nb[idx(k)], e * I});
                nn.push_back({mr[idx(k)], -e * I});
                mp.push_back({p[idx(k)], e * I});
            }
            if (i < j) {
                b.bracket(mr[idx(i)], mr[idx(j)], mm);
                b.bracket(nb[idx(i)], nb[idx(j)], nn);
            }
            if (i != j) {
                b.bracket(mr[idx(i)], nb[idx(j)], mn);
                b.bracket(mr[idx(i)], p[idx(j)], mp);
            }
            if (i == j)
                b.bracket(nb[idx(i)], p[idx(j)], {{p0, I}});
        }
    for (int j = 1; j <= 3; ++j)
        b.bracket(nb[idx(j)], p0, {{p[idx(j)], I}});

    KappaModel m;
    m.id = "d4-classical";
    m.dimension = 4;
    m.pres = b.build();
    m.default_order = 2;
    m.p0 = p0;
    m.spatial = p;
    m.rotations = mr;
    m.boosts = nb;
    m.casimir0 = -(m.gen(p0) * m.gen(p0)) + m.spatial_square();
    m.boost_epsilon_sign = sign;
    return m;
}

}  // namespace

const KappaModel& model_d2()
{
    static const KappaModel m = build_d2();
    return m;
}

const KappaModel& model_d4()
{
    static const KappaModel m = build_d4(1);
    return m;
}

KappaModel model_d4_with_boost_sign(int sign)
{
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("boost sign must be +1 or -1");
    KappaModel m = model_d4();
    m.boost_epsilon_sign = sign;
    return m;
}

const KappaModel& model_by_id(const std::string& id)
{
    if (id == "d2-classical")
        return model_d2();
    if (id == "d4-classical")
        return model_d4();
    throw std::invalid_argument("unknown model '" + id + "'");
}

AlgebraSeries constant_series(const AlgebraElement& a, int order)
{
    return AlgebraSeries::constant(a, order);
}

TensorSeries outer(const AlgebraSeries& a, const AlgebraSeries& b)
{
    const int n = std::min(a.truncation(), b.truncation());
    TensorSeries out(TensorElement::zero(a.presentation(), 2), n);
    for (int i = 0; i <= n; ++i) {
        if (a[i].is_zero())
            continue;
        for (int j = 0; i + j <= n; ++j)
            if (!b[j].is_zero())
                out.set(i + j, out[i + j] + tensor_product(a[i], b[j]));
    }
    return out;
}

Pi0Series pi0_series(const KappaModel& m, int order)
{
    const auto one = AlgebraElement::one(m.pres);
    AlgebraSeries radicand = AlgebraSeries::constant(one, order);
    if (order >= 2)
        radicand.set(2, -m.casimir0);
    AlgebraSeries pi0 = series_sqrt(radicand);
    if (order >= 1)
        pi0.set(1, pi0[1] + m.gen(m.p0));
    return {pi0, series_inv(pi0)};
}

AlgebraSeries pi0_inverse_closed_form(const KappaModel& m, int order)
{
    const auto one = AlgebraElement::one(m.pres);
    AlgebraSeries radicand = AlgebraSeries::constant(one, order);
    AlgebraSeries denominator = AlgebraSeries::constant(one, order);
    if (order >= 2) {
        radicand.set(2, -m.casimir0);
        denominator.set(2, -m.spatial_square());
    }
    AlgebraSeries numerator = series_sqrt(radicand);
    if (order >= 1)
        numerator.set(1, numerator[1] - m.gen(m.p0));
    return numerator * series_inv(denominator);
}

CoproductMap target_coproducts(const KappaModel& m, int order)
{
    const Pi0Series pi = pi0_series(m, order);
    const auto one = constant_series(AlgebraElement::one(m.pres), order);
    auto c = [&](GenIndex g) { return constant_series(m.gen(g), order); };

    std::vector<TensorSeries> images(m.pres->size(), TensorSeries(TensorElement::zero(m.pres, 2), order));

    // Δ(P₀) = P₀⊗Π₀ + Π₀⁻¹⊗P₀ + λ Σ_k P_kΠ₀⁻¹⊗P_k
    TensorSeries dp0 = outer(c(m.p0), pi.pi0) + outer(pi.inverse, c(m.p0));
    for (GenIndex k : m.spatial)
        dp0 += outer(c(k) * pi.inverse, c(k)).shifted_up(1);
    images[m.p0] = dp0;

    // Δ(P_k) = P_k⊗Π₀ + 1⊗P_k
    for (GenIndex k : m.spatial)
        images[k] = outer(c(k), pi.pi0) + outer(one, c(k));

    // Δ(M_i) primitive
    for (GenIndex r : m.rotations)
        images[r] = TensorSeries::constant(primitive_coproduct(m.gen(r)), order);

    // Δ(N_i) = N_i⊗1 + Π₀⁻¹⊗N_i + s λ ε_ikj P_kΠ₀⁻¹⊗M_j
    for (std::size_t i = 0; i < m.boosts.size(); ++i) {
        GenIndex n = m.boosts[i];
        TensorSeries dn = outer(c(n), one) + outer(pi.inverse, c(n));
        if (!m.rotations.empty()) {
            TensorSeries eps(TensorElement::zero(m.pres, 2), order);
            for (int k = 1; k <= 3; ++k)
                for (int j = 1; j <= 3; ++j) {
                    const int e = levi_civita(static_cast<int>(i) + 1, k, j);
                    if (e == 0)
                        continue;
                    eps += GaussianRational(e * m.boost_epsilon_sign) *
                           outer(c(m.spatial[static_cast<std::size_t>(k - 1)]) * pi.inverse,
                                 c(m.rotations[static_cast<std::size_t>(j - 1)]));
                }
            dn += eps.shifted_up(1);
        }
        images[n] = dn;
    }
    return CoproductMap(m.pres, std::move(images));
}

CoproductMap opposite_coproducts(const KappaModel& m, int order)
{
    return target_coproducts(m, order).flipped();
}

QuantumMap quantum_map(const KappaModel& m, int order)
{
    const Pi0Series pi = pi0_series(m, order + 1);
    AlgebraSeries log_pi0 = series_log(pi.pi0);
    AlgebraSeries p0 = KappaScaled<AlgebraElement>{1, log_pi0}.resolve();
    const AlgebraSeries inv = pi.inverse.truncated(order);
    std::vector<AlgebraSeries> spatial;
    for (GenIndex k : m.spatial)
        spatial.push_back(constant_series(m.gen(k), order) * inv);
    return {std::move(log_pi0), std::move(p0), std::move(spatial)};
}

Residue algebra_residue(std::string label, const AlgebraSeries& value)
{
    return {std::move(label), value.map([](const AlgebraElement& a) { return TensorElement::from_algebra(a); })};
}

namespace {

template <class T>
DeformationSeries<T> commutator(const DeformationSeries<T>& a, const DeformationSeries<T>& b)
{
    return a * b - b * a;
}

AlgebraSeries kappa_times(const AlgebraSeries& s)
{
    return KappaScaled<AlgebraElement>{1, s}.resolve();
}

TensorSeries kappa_times(const TensorSeries& s)
{
    return KappaScaled<TensorElement>{1, s}.resolve();
}

}  // namespace

std::vector<Residue> inverse_map_check(const KappaModel& m, int order)
{
    const QuantumMap q = quantum_map(m, order);
    const AlgebraSeries e_plus = series_exp(q.log_pi0);
    const AlgebraSeries e_minus = series_exp(-q.log_pi0);
    AlgebraSeries factor = constant_series(AlgebraElement::one(m.pres), order + 1);
    if (order + 1 >= 2)
        factor.set(2, -m.spatial_square());

    std::vector<Residue> out;
    AlgebraSeries p0 = kappa_times(GaussianRational(mpq_class(1, 2)) * (e_plus - e_minus * factor));
    out.push_back(algebra_residue("P0", p0 - constant_series(m.gen(m.p0), order)));
    for (std::size_t k = 0; k < m.spatial.size(); ++k) {
        GenIndex g = m.spatial[k];
        out.push_back(algebra_residue(m.pres->generator(g).name,
                                      q.spatial[k] * e_plus - constant_series(m.gen(g), order)));
    }
    return out;
}

std::vector<Residue> bicross_verify(const KappaModel& m, int order)
{
    const QuantumMap q = quantum_map(m, order);
    const CoproductMap delta = target_coproducts(m, order + 1);
    const auto one = constant_series(AlgebraElement::one(m.pres), order);
    const AlgebraSeries& L = q.log_pi0;  // 𝒫₀/κ through order+1
    const AlgebraSeries e_minus = series_exp(-L).truncated(order);
    const AlgebraSeries e_minus2 = series_exp(GaussianRational(-2) * L);
    auto c = [&](GenIndex g, int n) { return constant_series(m.gen(g), n); };
    auto name = [&](GenIndex g) { return m.pres->generator(g).name; };
    const std::vector<AlgebraSeries>& P = q.spatial;
    std::vector<AlgebraSeries> P_ext;  // 𝒫_k through order+1, for κ-scaled brackets
    {
        const AlgebraSeries inv = pi0_series(m, order + 1).inverse;
        for (GenIndex k : m.spatial)
            P_ext.push_back(c(k, order + 1) * inv);
    }

    std::vector<Residue> out;

    // momenta commute
    for (std::size_t k = 0; k < P.size(); ++k) {
        out.push_back(algebra_residue("[P0," + name(m.spatial[k]) + "]", kappa_times(commutator(L, P_ext[k]))));
        for (std::size_t l = k + 1; l < P.size(); ++l)
            out.push_back(algebra_residue("[" + name(m.spatial[k]) + "," + name(m.spatial[l]) + "]", commutator(P[k], P[l])));
    }

    // [N_j, 𝒫₀] = i𝒫_j
    for (std::size_t j = 0; j < m.boosts.size(); ++j) {
        GenIndex n = m.boosts[j];
        out.push_back(algebra_residue("[" + name(n) + ",P0]", kappa_times(commutator(c(n, order + 1), L)) - I * P[j]));
    }

    // [N_i, 𝒫_j] = (i/2)δ_ij (κ(1 − e^{−2𝒫₀/κ}) + λ𝒫⃗²) − iλ𝒫_i𝒫_j
    // (D=2: [N, 𝒫₁] = (i/2)κ(1 − e^{−2𝒫₀/κ}) − (i/2)λ𝒫₁²)
    const AlgebraSeries kappa_part = kappa_times(GaussianRational(0, mpq_class(1, 2)) *
                                                 (constant_series(AlgebraElement::one(m.pres), order + 1) - e_minus2));
    AlgebraSeries p_sq(AlgebraElement::zero(m.pres), order);
    for (const auto& pk : P)
        p_sq += pk * pk;
    for (std::size_t i = 0; i < m.boosts.size(); ++i)
        for (std::size_t j = 0; j < P.size(); ++j) {
            AlgebraSeries expected(AlgebraElement::zero(m.pres), order);
            if (m.dimension == 2) {
                expected = kappa_part - (GaussianRational(0, mpq_class(1, 2)) * (P[0] * P[0])).shifted_up(1);
            } else {
                if (i == j)
                    expected = kappa_part + (GaussianRational(0, mpq_class(1, 2)) * p_sq).shifted_up(1);
                expected -= (I * (P[i] * P[j])).shifted_up(1);
            }
            out.push_back(algebra_residue("[" + name(m.boosts[i]) + "," + name(m.spatial[j]) + "]",
                                          commutator(c(m.boosts[i], order), P[j]) - expected));
        }

    // rotations: [M_j, 𝒫₀] = 0, [M_j, 𝒫_k] = iε_jki 𝒫_i
    for (std::size_t j = 0; j < m.rotations.size(); ++j) {
        GenIndex r = m.rotations[j];
        out.push_back(algebra_residue("[" + name(r) + ",P0]", kappa_times(commutator(c(r, order + 1), L))));
        for (std::size_t k = 0; k < P.size(); ++k) {
            AlgebraSeries expected(AlgebraElement::zero(m.pres), order);
            for (std::size_t i = 0; i < P.size(); ++i) {
                int e = levi_civita(static_cast<int>(j) + 1, static_cast<int>(k) + 1, static_cast<int>(i) + 1);
                if (e != 0)
                    expected += GaussianRational(0, e) * P[i];
            }
            out.push_back(algebra_residue("[" + name(r) + "," + name(m.spatial[k]) + "]",
                                          commutator(c(r, order), P[k]) - expected));
        }
    }

    // coproducts
    {
        const AlgebraSeries one1 = constant_series(AlgebraElement::one(m.pres), order + 1);
        TensorSeries dl = delta.apply(L) - outer(L, one1) - outer(one1, L);
        out.push_back({"Delta(P0)", kappa_times(dl)});
    }
    for (std::size_t k = 0; k < P.size(); ++k)
        out.push_back({"Delta(" + name(m.spatial[k]) + ")",
                       delta.apply(P[k]) - outer(P[k], one) - outer(e_minus, P[k])});
    for (GenIndex r : m.rotations)
        out.push_back({"Delta(" + name(r) + ")",
                       delta.truncated(order).image(r) - outer(c(r, order), one) - outer(one, c(r, order))});
    for (std::size_t i = 0; i < m.boosts.size(); ++i) {
        GenIndex n = m.boosts[i];
        TensorSeries expected = outer(c(n, order), one) + outer(e_minus, c(n, order));
        if (!m.rotations.empty()) {
            TensorSeries eps(TensorElement::zero(m.pres, 2), order);
            for (int j = 1; j <= 3; ++j)
                for (int k = 1; k <= 3; ++k) {
                    int e = levi_civita(static_cast<int>(i) + 1, j, k);
                    if (e != 0)
                        eps += GaussianRational(e * m.boost_epsilon_sign) *
                               outer(P[static_cast<std::size_t>(j - 1)], c(m.rotations[static_cast<std::size_t>(k - 1)], order));
                }
            expected += eps.shifted_up(1);
        }
        out.push_back({"Delta(" + name(n) + ")", delta.truncated(order).image(n) - expected});
    }
    return out;
}

AlgebraSeries deformed_casimir(const KappaModel& m, int order)
{
    if (m.dimension != 2)
        throw std::invalid_argument("the deformed Casimir is only available in D=2");
    const int n = order + 2;
    const Pi0Series pi = pi0_series(m, n);
    AlgebraSeries inner = pi.pi0 + pi.inverse - GaussianRational(2) * constant_series(AlgebraElement::one(m.pres), n);
    inner -= (constant_series(m.spatial_square(), n) * pi.inverse).shifted_up(2);
    return KappaScaled<AlgebraElement>{2, inner}.resolve();
}

std::vector<Residue> centrality_check(const KappaModel& m, int order)
{
    const AlgebraSeries C = deformed_casimir(m, order);
    std::vector<Residue> out;
    for (const auto& g : m.pres->generators())
        out.push_back(algebra_residue("[" + g.name + ",C]", commutator(constant_series(m.gen(g.index), order), C)));
    return out;
}

}  // namespace kappa
