#pragma once

#include "kappa/hopf.hpp"

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kappa {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

struct Position {
    int line = 1;
    int column = 1;
};

/// Expression tree. Precedence, loosest first: binary + −, unary −,
/// tensor separators (# and /\), *, ^.
struct Expr {
    enum class Kind { number, imaginary, lambda, identifier, order_marker, negate, add, subtract, multiply, power, tensor, wedge };

    Kind kind = Kind::number;
    Position pos;
    mpq_class number;
    std::string name;
    int exponent = 0;  // power exponent, or n in O(L^n)
    std::vector<std::shared_ptr<const Expr>> children;
};
using ExprPtr = std::shared_ptr<const Expr>;

ExprPtr parse_expression_ast(const std::string& text);

/// Result of evaluating an expression: a polynomial in λ whose coefficients
/// have `legs` tensor legs (0 for a bare scalar), optionally truncated.
struct ExprValue {
    int legs = 0;
    std::map<int, TensorElement> orders;
    std::optional<int> truncation;

    bool is_scalar() const { return legs == 0; }
    /// Highest stored order, or the truncation when given.
    int series_truncation() const;
    AlgebraElement to_algebra(const PresentationPtr& pres) const;
    TensorElement to_tensor(const PresentationPtr& pres) const;
    TensorSeries to_series(const PresentationPtr& pres, std::optional<int> truncation = std::nullopt) const;
};

ExprValue evaluate(const Expr& e, const PresentationPtr& pres);
ExprValue parse_expression(const std::string& text, const PresentationPtr& pres);

struct ModelFileAst {
    struct Generator {
        std::string name;
        Grade grade;
        Position pos;
    };
    struct Bracket {
        std::string left, right;
        ExprPtr value;
        Position pos;
    };
    struct Coproduct {
        std::string generator;
        ExprPtr value;
        Position pos;
    };
    struct Twist {
        std::string name;
        ExprPtr value;
        Position pos;
    };

    std::string name;
    std::vector<Generator> generators;
    std::vector<Bracket> brackets;
    std::vector<Coproduct> coproducts;
    std::vector<Twist> twists;
};

ModelFileAst parse_model(const std::string& text);

/// A model file with its expressions evaluated.
struct LoadedModel {
    std::string name;
    PresentationPtr pres;
    /// Present when every generator has a coproduct declaration.
    std::optional<CoproductMap> coproducts;
    /// Twist logarithms as evaluated; without an O(L^n) marker they are exact
    /// and extend to any truncation.
    std::vector<std::pair<std::string, ExprValue>> twists;
};

LoadedModel build_model(const ModelFileAst& ast);
LoadedModel load_model_file(const std::string& path);

}  // namespace kappa
