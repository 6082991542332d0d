#include "kappa/algebra.hpp"
#include "kappa/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace kappa {

std::string_view grade_name(Grade g)
{
    switch (g) {
    case Grade::momentum: return "momentum";
    case Grade::rotation: return "rotation";
    case Grade::boost: return "boost";
    }
    return "?";
}

std::optional<Grade> parse_grade(std::string_view name)
{
    if (name == "momentum")
        return Grade::momentum;
    if (name == "rotation")
        return Grade::rotation;
    if (name == "boost")
        return Grade::boost;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// LiePresentation

std::optional<GenIndex> LiePresentation::find(std::string_view name) const
{
    for (const auto& g : generators_)
        if (g.name == name)
            return g.index;
    return std::nullopt;
}

GenIndex LiePresentation::Builder::add_generator(std::string name, Grade grade)
{
    if (name.empty())
        throw std::invalid_argument("empty generator name");
    for (const auto& g : generators_)
        if (g.name == name)
            throw std::invalid_argument("duplicate generator '" + name + "'");
    if (generators_.size() >= 255)
        throw std::invalid_argument("too many generators");
    auto index = static_cast<GenIndex>(generators_.size());
    generators_.push_back({index, std::move(name), grade});
    return index;
}

GenIndex LiePresentation::Builder::index_of(std::string_view name) const
{
    for (const auto& g : generators_)
        if (g.name == name)
            return g.index;
    throw std::invalid_argument("unknown generator '" + std::string(name) + "'");
}

LiePresentation::Builder& LiePresentation::Builder::bracket(std::string_view a, std::string_view b,
                                                            LinearCombination value)
{
    GenIndex i = index_of(a);
    GenIndex j = index_of(b);
    if (i == j)
        throw std::invalid_argument("self-bracket [" + std::string(a) + ", " + std::string(a) + "] is always zero");
    std::sort(value.begin(), value.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    LinearCombination merged;
    for (auto& [k, c] : value) {
        if (k >= generators_.size())
            throw std::invalid_argument("bracket value refers to an unknown generator");
        if (!merged.empty() && merged.back().first == k)
            merged.back().second += c;
        else
            merged.emplace_back(k, c);
    }
    std::erase_if(merged, [](const auto& t) { return t.second.is_zero(); });
    if (i > j) {
        std::swap(i, j);
        for (auto& t : merged)
            t.second = -t.second;
    }
    if (!brackets_.emplace(std::pair{i, j}, std::move(merged)).second)
        throw std::invalid_argument("duplicate bracket [" + std::string(a) + ", " + std::string(b) + "]");
    return *this;
}

LiePresentation::Builder& LiePresentation::Builder::bracket(
    std::string_view a, std::string_view b, std::vector<std::pair<std::string, GaussianRational>> value)
{
    LinearCombination lc;
    for (auto& [name, c] : value)
        lc.emplace_back(index_of(name), c);
    return bracket(a, b, std::move(lc));
}

LiePresentation::Builder& LiePresentation::Builder::bracket(GenIndex a, GenIndex b, LinearCombination value)
{
    if (a >= generators_.size() || b >= generators_.size())
        throw std::invalid_argument("bracket refers to an unknown generator index");
    return bracket(generators_[a].name, generators_[b].name, std::move(value));
}

PresentationPtr LiePresentation::Builder::build() const
{
    auto pres = std::shared_ptr<LiePresentation>(new LiePresentation());
    pres->name_ = name_;
    pres->generators_ = generators_;
    const std::size_t n = generators_.size();
    pres->table_.assign(n * n, {});
    for (const auto& [key, value] : brackets_) {
        auto [i, j] = key;
        pres->table_[i * n + j] = value;
        LinearCombination neg = value;
        for (auto& t : neg)
            t.second = -t.second;
        pres->table_[j * n + i] = std::move(neg);
    }
    return pres;
}

namespace {

void add_scaled(LinearCombination& acc, const LinearCombination& v, const GaussianRational& c)
{
    for (const auto& [k, a] : v) {
        auto it = std::lower_bound(acc.begin(), acc.end(), k, [](const auto& t, GenIndex key) { return t.first < key; });
        if (it != acc.end() && it->first == k) {
            it->second += c * a;
            if (it->second.is_zero())
                acc.erase(it);
        } else {
            GaussianRational p = c * a;
            if (!p.is_zero())
                acc.insert(it, {k, p});
        }
    }
}

// [[a,b],c] evaluated through the table
LinearCombination nested(const LiePresentation& pres, GenIndex a, GenIndex b, GenIndex c)
{
    LinearCombination out;
    for (const auto& [k, coeff] : pres.bracket(a, b))
        add_scaled(out, pres.bracket(k, c), coeff);
    return out;
}

}  // namespace

PresentationReport validate_presentation(const LiePresentation& pres)
{
    PresentationReport report;
    const auto n = static_cast<GenIndex>(pres.size());
    for (GenIndex x = 0; x < n; ++x)
        for (GenIndex y = x + 1; y < n; ++y)
            for (GenIndex z = y + 1; z < n; ++z) {
                LinearCombination sum;
                add_scaled(sum, nested(pres, x, y, z), 1);
                add_scaled(sum, nested(pres, y, z, x), 1);
                add_scaled(sum, nested(pres, z, x, y), 1);
                if (!sum.empty())
                    report.failures.push_back({x, y, z, std::move(sum)});
            }
    return report;
}

// ---------------------------------------------------------------------------
// PbwMonomial

PbwMonomial::PbwMonomial(Factors factors) : factors_(std::move(factors))
{
    if (!std::is_sorted(factors_.begin(), factors_.end()))
        throw std::invalid_argument("PBW monomial factors out of order");
}

int PbwMonomial::momentum_degree(const LiePresentation& pres) const
{
    int d = 0;
    for (GenIndex g : factors_)
        d += pres.generator(g).momentum_degree();
    return d;
}

int PbwMonomial::lorentz_degree(const LiePresentation& pres) const
{
    return static_cast<int>(length()) - momentum_degree(pres);
}

bool operator<(const PbwMonomial& a, const PbwMonomial& b)
{
    if (a.factors_.size() != b.factors_.size())
        return a.factors_.size() < b.factors_.size();
    return std::lexicographical_compare(a.factors_.begin(), a.factors_.end(), b.factors_.begin(), b.factors_.end());
}

// ---------------------------------------------------------------------------
// Straightening

namespace {

using Factors = PbwMonomial::Factors;
using Terms = AlgebraElement::Terms;

std::span<const GenIndex> view(const Factors& f)
{
    return {f.data(), f.size()};
}

void multiply_by_generator(const LiePresentation& pres, Terms& out, const GaussianRational& c,
                           std::span<const GenIndex> m, GenIndex g);

void multiply_by_factors(const LiePresentation& pres, Terms& out, const GaussianRational& c,
                         std::span<const GenIndex> m, std::span<const GenIndex> tail)
{
    if (tail.empty()) {
        accumulate(out, PbwMonomial(Factors(m.begin(), m.end())), c);
        return;
    }
    Terms current;
    multiply_by_generator(pres, current, c, m, tail.front());
    tail = tail.subspan(1);
    while (!tail.empty()) {
        Terms next;
        for (const auto& [mono, coeff] : current)
            multiply_by_generator(pres, next, coeff, view(mono.factors()), tail.front());
        current = std::move(next);
        tail = tail.subspan(1);
    }
    for (const auto& [mono, coeff] : current)
        accumulate(out, mono, coeff);
}

// out += c * (m . g) where m is PBW-ordered. Moving g left past the block B of
// factors greater than it gives
//   A B g = A g B + sum_k A B_{<k} [B_k, g] B_{>k},
// and every correction term is one letter shorter.
void multiply_by_generator(const LiePresentation& pres, Terms& out, const GaussianRational& c,
                           std::span<const GenIndex> m, GenIndex g)
{
    auto pos = static_cast<std::size_t>(std::upper_bound(m.begin(), m.end(), g) - m.begin());
    Factors ordered(m.begin(), m.begin() + pos);
    ordered.push_back(g);
    ordered.insert(ordered.end(), m.begin() + pos, m.end());
    accumulate(out, PbwMonomial(std::move(ordered)), c);

    for (std::size_t k = pos; k < m.size(); ++k) {
        const auto& br = pres.bracket(m[k], g);
        for (const auto& [z, cz] : br) {
            Terms head;
            multiply_by_generator(pres, head, c * cz, m.first(k), z);
            for (const auto& [mono, coeff] : head)
                multiply_by_factors(pres, out, coeff, view(mono.factors()), m.subspan(k + 1));
        }
    }
}

}  // namespace

void multiply_monomials_into(const LiePresentation& pres, Terms& out, const GaussianRational& c,
                             const PbwMonomial& a, const PbwMonomial& b)
{
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    if (fa.empty() || fb.empty() || fa.back() <= fb.front()) {
        Factors joined(fa.begin(), fa.end());
        joined.insert(joined.end(), fb.begin(), fb.end());
        accumulate(out, PbwMonomial(std::move(joined)), c);
        return;
    }
    multiply_by_factors(pres, out, c, view(fa), view(fb));
}

// ---------------------------------------------------------------------------
// AlgebraElement

void require_same(const PresentationPtr& a, const PresentationPtr& b)
{
    if (a.get() != b.get())
        throw PresentationMismatch();
}

AlgebraElement::AlgebraElement(PresentationPtr pres, Terms terms) : pres_(std::move(pres)), terms_(std::move(terms))
{
    std::erase_if(terms_, [](const auto& t) { return t.second.is_zero(); });
}

AlgebraElement AlgebraElement::scalar(PresentationPtr pres, const GaussianRational& c)
{
    AlgebraElement e(std::move(pres));
    accumulate(e.terms_, PbwMonomial(), c);
    return e;
}

AlgebraElement AlgebraElement::generator(PresentationPtr pres, GenIndex i)
{
    if (i >= pres->size())
        throw std::out_of_range("generator index");
    return monomial(std::move(pres), PbwMonomial(PbwMonomial::Factors{i}));
}

AlgebraElement AlgebraElement::generator(PresentationPtr pres, std::string_view name)
{
    auto i = pres->find(name);
    if (!i)
        throw std::invalid_argument("unknown generator '" + std::string(name) + "'");
    return generator(std::move(pres), *i);
}

AlgebraElement AlgebraElement::monomial(PresentationPtr pres, const PbwMonomial& m, const GaussianRational& c)
{
    AlgebraElement e(std::move(pres));
    accumulate(e.terms_, m, c);
    return e;
}

GaussianRational AlgebraElement::coefficient(const PbwMonomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? GaussianRational() : it->second;
}

std::size_t AlgebraElement::max_length() const
{
    std::size_t n = 0;
    for (const auto& [m, c] : terms_)
        n = std::max(n, m.length());
    return n;
}

int AlgebraElement::max_momentum_degree() const
{
    int d = 0;
    for (const auto& [m, c] : terms_)
        d = std::max(d, m.momentum_degree(*pres_));
    return d;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o)
{
    require_same(pres_, o.pres_);
    for (const auto& [m, c] : o.terms_)
        accumulate(terms_, m, c);
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o)
{
    require_same(pres_, o.pres_);
    for (const auto& [m, c] : o.terms_)
        accumulate(terms_, m, -c);
    return *this;
}

AlgebraElement& AlgebraElement::operator*=(const GaussianRational& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, coeff] : terms_)
        coeff *= c;
    return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b)
{
    require_same(a.pres_, b.pres_);
    AlgebraElement out(a.pres_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            multiply_monomials_into(*a.pres_, out.terms_, ca * cb, ma, mb);
    return out;
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b)
{
    return a.pres_.get() == b.pres_.get() && a.terms_ == b.terms_;
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b)
{
    return a * b;
}

AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b)
{
    return a * b - b * a;
}

AlgebraElement normal_order(const PresentationPtr& pres, const Word& word)
{
    for (GenIndex g : word.letters)
        if (g >= pres->size())
            throw std::out_of_range("word letter outside presentation");
    Terms out;
    multiply_by_factors(*pres, out, word.coefficient, {}, word.letters);
    return AlgebraElement(pres, std::move(out));
}

}  // namespace kappa
