#include "kappa/solver.hpp"

#include "kappa/format.hpp"

#include <algorithm>
#include <stdexcept>

namespace kappa {

GaussianRational LinearSystem::row_value(std::size_t r, const std::vector<GaussianRational>& x) const
{
    GaussianRational v;
    for (const auto& [c, a] : matrix.at(r))
        if (!x.at(c).is_zero())
            v += a * x[c];
    return v;
}

TensorElement LinearSystem::combine(const std::vector<GaussianRational>& x, int legs) const
{
    TensorElement out = TensorElement::zero(pres, unknowns.empty() ? legs : unknowns.front().legs());
    for (std::size_t u = 0; u < unknowns.size(); ++u)
        if (!x.at(u).is_zero())
            out += x[u] * unknowns[u];
    return out;
}

std::string LinearSystem::describe_row(std::size_t r) const
{
    const RowId& id = rows.at(r);
    return id.block + ": " + format_key(*pres, id.key, id.legs);
}

// ---------------------------------------------------------------------------
// SystemBuilder

bool SystemBuilder::RowKeyLess::operator()(const RowKey& a, const RowKey& b) const
{
    if (a.first != b.first)
        return a.first < b.first;
    return TensorElement::KeyLess{}(a.second, b.second);
}

SystemBuilder::SystemBuilder(PresentationPtr pres, std::vector<std::string> blocks)
    : pres_(std::move(pres)), blocks_(std::move(blocks)), block_legs_(blocks_.size(), 2)
{}

void SystemBuilder::add_unknown(TensorElement unknown, std::string label, const std::vector<TensorElement>& images)
{
    if (images.size() != blocks_.size())
        throw std::invalid_argument("one image per block required");
    const std::size_t col = unknowns_.size();
    for (std::size_t b = 0; b < images.size(); ++b) {
        require_same(pres_, images[b].presentation());
        block_legs_[b] = images[b].legs();
        for (const auto& [key, c] : images[b].terms())
            entries_[{b, key}][col] = c;
    }
    unknowns_.push_back(std::move(unknown));
    labels_.push_back(std::move(label));
}

void SystemBuilder::set_rhs(std::size_t block, const TensorElement& value)
{
    require_same(pres_, value.presentation());
    block_legs_.at(block) = value.legs();
    for (auto it = rhs_.begin(); it != rhs_.end();)
        it = it->first.first == block ? rhs_.erase(it) : std::next(it);
    for (const auto& [key, c] : value.terms())
        rhs_[{block, key}] = c;
}

LinearSystem SystemBuilder::build() const
{
    LinearSystem sys;
    sys.pres = pres_;
    sys.unknowns = unknowns_;
    sys.unknown_labels = labels_;
    std::map<RowKey, int, RowKeyLess> keys;
    for (const auto& [k, row] : entries_)
        keys[k] = 0;
    for (const auto& [k, c] : rhs_)
        keys[k] = 0;
    for (const auto& [k, unused] : keys) {
        sys.rows.push_back({blocks_[k.first], k.second, block_legs_[k.first]});
        SparseVector row;
        if (auto it = entries_.find(k); it != entries_.end())
            row.insert(it->second.begin(), it->second.end());
        sys.matrix.push_back(std::move(row));
        auto r = rhs_.find(k);
        sys.rhs.push_back(r == rhs_.end() ? GaussianRational() : r->second);
    }
    return sys;
}

// ---------------------------------------------------------------------------
// Elimination

namespace {

struct PivotRow {
    SparseVector coeffs;  // leading entry (the pivot) is 1
    GaussianRational rhs;
    SparseVector history;  // combination of original rows
};

void axpy(SparseVector& y, const GaussianRational& a, const SparseVector& x)
{
    for (const auto& [k, v] : x)
        accumulate(y, k, a * v);
}

void scale(SparseVector& y, const GaussianRational& a)
{
    for (auto& [k, v] : y)
        v *= a;
}

}  // namespace

SolveOutcome solve_linear(const LinearSystem& sys)
{
    const std::size_t n = sys.columns();
    std::map<std::size_t, PivotRow> pivots;  // pivot column -> row

    std::vector<std::size_t> unreachable;
    for (std::size_t r = 0; r < sys.rows.size(); ++r)
        if (sys.matrix[r].empty() && !sys.rhs[r].is_zero())
            unreachable.push_back(r);

    for (std::size_t r = 0; r < sys.rows.size(); ++r) {
        SparseVector row = sys.matrix[r];
        GaussianRational rhs = sys.rhs[r];
        SparseVector history{{r, GaussianRational(1)}};

        // The pivot of each stored row is its smallest column, so subtracting it
        // only touches larger columns and one ascending sweep suffices.
        auto it = row.begin();
        while (it != row.end()) {
            auto p = pivots.find(it->first);
            if (p == pivots.end()) {
                ++it;
                continue;
            }
            const std::size_t col = it->first;
            const GaussianRational factor = -it->second;
            axpy(row, factor, p->second.coeffs);
            rhs += factor * p->second.rhs;
            axpy(history, factor, p->second.history);
            it = row.upper_bound(col);
        }

        if (row.empty()) {
            if (rhs.is_zero())
                continue;
            Obstruction ob;
            ob.certificate = std::move(history);
            const GaussianRational lead = ob.certificate.begin()->second;
            scale(ob.certificate, GaussianRational(1) / lead);
            for (const auto& [k, v] : ob.certificate) {
                ob.pairing += v * sys.rhs[k];
                if (!sys.rhs[k].is_zero())
                    ob.blocked.push_back(k);
            }
            ob.unreachable = std::move(unreachable);
            return {std::move(ob)};
        }

        const std::size_t col = row.begin()->first;
        const GaussianRational inv = GaussianRational(1) / row.begin()->second;
        scale(row, inv);
        scale(history, inv);
        rhs *= inv;
        pivots.emplace(col, PivotRow{std::move(row), std::move(rhs), std::move(history)});
    }

    Solution s;
    for (std::size_t c = 0; c < n; ++c)
        if (!pivots.count(c))
            s.free_columns.push_back(c);

    auto back_substitute = [&](std::vector<GaussianRational> x, bool homogeneous) {
        for (auto p = pivots.rbegin(); p != pivots.rend(); ++p) {
            GaussianRational v = homogeneous ? GaussianRational() : p->second.rhs;
            for (const auto& [c, a] : p->second.coeffs)
                if (c != p->first && !x[c].is_zero())
                    v -= a * x[c];
            x[p->first] = v;
        }
        return x;
    };

    s.particular = back_substitute(std::vector<GaussianRational>(n), false);
    for (std::size_t f : s.free_columns) {
        std::vector<GaussianRational> x(n);
        x[f] = 1;
        s.kernel.push_back(back_substitute(std::move(x), true));
    }
    return {std::move(s)};
}

Verification verify_outcome(const SolveOutcome& outcome, const LinearSystem& sys)
{
    Verification v;
    auto fail = [&](std::string msg) {
        v.pass = false;
        v.problems.push_back(std::move(msg));
    };
    const std::size_t n = sys.columns();

    if (outcome.is_solution()) {
        const Solution& s = outcome.solution();
        if (s.particular.size() != n) {
            fail("particular solution has wrong length");
            return v;
        }
        for (std::size_t r = 0; r < sys.rows.size(); ++r) {
            GaussianRational res = sys.row_value(r, s.particular) - sys.rhs[r];
            if (!res.is_zero())
                fail("particular residue " + res.to_string() + " at " + sys.describe_row(r));
        }
        if (s.kernel.size() != s.free_columns.size())
            fail("kernel basis size differs from free column count");
        for (std::size_t j = 0; j < s.kernel.size(); ++j) {
            const auto& k = s.kernel[j];
            if (k.size() != n) {
                fail("kernel vector has wrong length");
                continue;
            }
            for (std::size_t r = 0; r < sys.rows.size(); ++r) {
                GaussianRational res = sys.row_value(r, k);
                if (!res.is_zero())
                    fail("kernel vector " + std::to_string(j) + " residue at " + sys.describe_row(r));
            }
            // independence: unit entry at its own free column, zero at the others
            for (std::size_t i = 0; i < s.free_columns.size() && j < s.free_columns.size(); ++i) {
                GaussianRational expect = i == j ? 1 : 0;
                if (!(k[s.free_columns[i]] == expect))
                    fail("kernel vectors are not in reduced free-column form");
            }
        }
        return v;
    }

    const Obstruction& ob = outcome.obstruction();
    if (ob.certificate.empty()) {
        fail("empty certificate");
        return v;
    }
    if (!ob.certificate.begin()->second.is_one())
        fail("certificate not normalized");
    SparseVector va;
    GaussianRational vb;
    for (const auto& [r, c] : ob.certificate) {
        if (r >= sys.rows.size()) {
            fail("certificate references missing row");
            return v;
        }
        axpy(va, c, sys.matrix[r]);
        vb += c * sys.rhs[r];
    }
    for (const auto& [col, a] : va)
        fail("certificate does not annihilate column " + std::to_string(col) + " (" + a.to_string() + ")");
    if (vb.is_zero())
        fail("certificate pairs to zero with the right-hand side");
    if (!(vb == ob.pairing))
        fail("recorded pairing " + ob.pairing.to_string() + " differs from recomputed " + vb.to_string());
    return v;
}

std::vector<GaussianRational> solve_dense(std::vector<std::vector<GaussianRational>> g, std::vector<GaussianRational> h)
{
    const std::size_t n = h.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && g[p][c].is_zero())
            ++p;
        if (p == n)
            throw std::domain_error("singular dense system");
        std::swap(g[p], g[c]);
        std::swap(h[p], h[c]);
        const GaussianRational inv = GaussianRational(1) / g[c][c];
        for (std::size_t k = c; k < n; ++k)
            g[c][k] *= inv;
        h[c] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || g[r][c].is_zero())
                continue;
            const GaussianRational f = g[r][c];
            for (std::size_t k = c; k < n; ++k)
                if (!g[c][k].is_zero())
                    g[r][k] -= f * g[c][k];
            h[r] -= f * h[c];
        }
    }
    return h;
}

std::vector<GaussianRational> min_norm_representative(const Solution& s)
{
    const std::size_t m = s.kernel.size();
    if (m == 0)
        return s.particular;
    auto inner = [](const std::vector<GaussianRational>& a, const std::vector<GaussianRational>& b) {
        GaussianRational v;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!a[i].is_zero() && !b[i].is_zero())
                v += a[i].conj() * b[i];
        return v;
    };
    std::vector<std::vector<GaussianRational>> g(m, std::vector<GaussianRational>(m));
    std::vector<GaussianRational> h(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j)
            g[i][j] = inner(s.kernel[i], s.kernel[j]);
        h[i] = inner(s.kernel[i], s.particular);
    }
    std::vector<GaussianRational> c = solve_dense(std::move(g), std::move(h));
    std::vector<GaussianRational> x = s.particular;
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!s.kernel[j][i].is_zero())
                x[i] -= c[j] * s.kernel[j][i];
    return x;
}

std::optional<std::vector<GaussianRational>> kernel_coordinates(const LinearSystem& sys, const Solution& s,
                                                                const std::vector<GaussianRational>& x)
{
    if (x.size() != sys.columns())
        return std::nullopt;
    std::vector<GaussianRational> c;
    std::vector<GaussianRational> rebuilt = s.particular;
    for (std::size_t j = 0; j < s.free_columns.size(); ++j) {
        GaussianRational cj = x[s.free_columns[j]] - s.particular[s.free_columns[j]];
        c.push_back(cj);
        if (!cj.is_zero())
            for (std::size_t i = 0; i < rebuilt.size(); ++i)
                if (!s.kernel[j][i].is_zero())
                    rebuilt[i] += cj * s.kernel[j][i];
    }
    if (rebuilt != x)
        return std::nullopt;
    return c;
}

}  // namespace kappa
