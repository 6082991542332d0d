#pragma once

#include "kappa/tensor.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace kappa {

using SparseVector = std::map<std::size_t, GaussianRational>;

/// A row of a linear system: one tensor monomial inside one equation block
/// (usually the equation for one generator).
struct RowId {
    std::string block;
    TensorElement::Key key;
    int legs = 2;
};

/// A·x = b over the Gaussian rationals. Unknowns are tensor elements; the
/// solution x is read as Σ x_u · unknowns[u].
struct LinearSystem {
    PresentationPtr pres;
    std::vector<TensorElement> unknowns;
    std::vector<std::string> unknown_labels;
    std::vector<RowId> rows;
    std::vector<SparseVector> matrix;  // one sparse row per RowId
    std::vector<GaussianRational> rhs;

    std::size_t columns() const { return unknowns.size(); }
    /// Row r of A·x.
    GaussianRational row_value(std::size_t r, const std::vector<GaussianRational>& x) const;
    /// Σ x_u unknowns[u].
    TensorElement combine(const std::vector<GaussianRational>& x, int legs = 2) const;
    std::string describe_row(std::size_t r) const;
};

/// Collects unknown images block by block and lays out rows in a fixed order:
/// blocks in declaration order, then tensor monomials in canonical key order.
class SystemBuilder {
public:
    SystemBuilder(PresentationPtr pres, std::vector<std::string> blocks);

    /// images[b] is the image of the unknown inside block b.
    void add_unknown(TensorElement unknown, std::string label, const std::vector<TensorElement>& images);
    void set_rhs(std::size_t block, const TensorElement& value);

    LinearSystem build() const;

private:
    using RowKey = std::pair<std::size_t, TensorElement::Key>;
    struct RowKeyLess {
        bool operator()(const RowKey& a, const RowKey& b) const;
    };

    PresentationPtr pres_;
    std::vector<std::string> blocks_;
    std::vector<int> block_legs_;
    std::vector<TensorElement> unknowns_;
    std::vector<std::string> labels_;
    std::map<RowKey, std::map<std::size_t, GaussianRational>, RowKeyLess> entries_;
    std::map<RowKey, GaussianRational, RowKeyLess> rhs_;
};

struct Solution {
    std::vector<GaussianRational> particular;
    std::vector<std::vector<GaussianRational>> kernel;
    std::vector<std::size_t> free_columns;
};

struct Obstruction {
    /// v with vᵀA = 0 and vᵀb ≠ 0; first nonzero entry is 1.
    SparseVector certificate;
    GaussianRational pairing;
    /// Rows in the support of v with nonzero right-hand side.
    std::vector<std::size_t> blocked;
    /// Rows whose entire A-row vanishes while b does not.
    std::vector<std::size_t> unreachable;
};

struct SolveOutcome {
    std::variant<Solution, Obstruction> value;

    bool is_solution() const { return std::holds_alternative<Solution>(value); }
    const Solution& solution() const { return std::get<Solution>(value); }
    const Obstruction& obstruction() const { return std::get<Obstruction>(value); }
};

/// Exact elimination, rows in order, pivot = first nonzero column.
SolveOutcome solve_linear(const LinearSystem& sys);

struct Verification {
    bool pass = true;
    std::vector<std::string> problems;
};

/// Independent re-check of a solver outcome against the system.
Verification verify_outcome(const SolveOutcome& outcome, const LinearSystem& sys);

/// The particular solution shifted by a kernel combination so that it is
/// orthogonal (Hermitian inner product on coefficients) to the kernel.
std::vector<GaussianRational> min_norm_representative(const Solution& s);

/// Coordinates c with x = particular + Σ c_j kernel_j, or nothing if x is not
/// a solution.
std::optional<std::vector<GaussianRational>> kernel_coordinates(const LinearSystem& sys, const Solution& s,
                                                                const std::vector<GaussianRational>& x);

/// Solves G·c = h for a square nonsingular dense matrix; throws
/// std::domain_error when G is singular.
std::vector<GaussianRational> solve_dense(std::vector<std::vector<GaussianRational>> g,
                                          std::vector<GaussianRational> h);

}  // namespace kappa
