#include "kappa/parser.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace kappa {

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column)
{}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { ident, number, string, symbol, end };

struct Token {
    Tok kind = Tok::end;
    std::string text;
    mpq_class number;
    Position pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        while (true) {
            skip_space();
            Token t;
            t.pos = {line_, col_};
            if (at_end()) {
                t.kind = Tok::end;
                out.push_back(t);
                return out;
            }
            char c = peek();
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
                    t.text += get();
                t.kind = Tok::ident;
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string num;
                while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
                    num += get();
                if (!at_end() && peek() == '/' && pos_ + 1 < text_.size() &&
                    std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
                    num += get();
                    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
                        num += get();
                }
                t.kind = Tok::number;
                t.text = num;
                if (t.number.set_str(num, 10) != 0 || sgn(t.number.get_den()) == 0)
                    throw ParseError("malformed number '" + num + "'", t.pos.line, t.pos.column);
                t.number.canonicalize();
            } else if (c == '"') {
                get();
                while (!at_end() && peek() != '"' && peek() != '\n')
                    t.text += get();
                if (at_end() || peek() != '"')
                    throw ParseError("unterminated string", t.pos.line, t.pos.column);
                get();
                t.kind = Tok::string;
            } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '\\') {
                get();
                get();
                t.kind = Tok::symbol;
                t.text = "/\\";
            } else if (std::string("+-*^()#[],=;{}:").find(c) != std::string::npos) {
                t.kind = Tok::symbol;
                t.text = std::string(1, get());
            } else {
                throw ParseError(std::string("unexpected character '") + c + "'", t.pos.line, t.pos.column);
            }
            out.push_back(t);
        }
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    char get()
    {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    void skip_space()
    {
        while (!at_end()) {
            if (std::isspace(static_cast<unsigned char>(peek()))) {
                get();
            } else if (peek() == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
                while (!at_end() && peek() != '\n')
                    get();
            } else {
                break;
            }
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    ExprPtr expression() { return sum(); }

    ModelFileAst model()
    {
        ModelFileAst ast;
        expect_ident("algebra");
        if (cur().kind != Tok::string)
            fail("expected quoted algebra name");
        ast.name = next().text;
        expect_symbol("{");
        std::set<std::pair<std::string, std::string>> seen;
        while (!is_symbol("}")) {
            if (cur().kind != Tok::ident)
                fail("expected a declaration");
            const Token kw = next();
            if (kw.text == "generator") {
                Token name = ident();
                expect_symbol(":");
                Token grade = ident();
                auto g = parse_grade(grade.text);
                if (!g)
                    throw ParseError("unknown grade '" + grade.text + "'", grade.pos.line, grade.pos.column);
                ast.generators.push_back({name.text, *g, name.pos});
            } else if (kw.text == "bracket") {
                expect_symbol("[");
                Token a = ident();
                expect_symbol(",");
                Token b = ident();
                expect_symbol("]");
                expect_symbol("=");
                auto key = std::minmax(a.text, b.text);
                if (!seen.insert({key.first, key.second}).second)
                    throw ParseError("duplicate bracket [" + a.text + ", " + b.text + "]", kw.pos.line, kw.pos.column);
                ast.brackets.push_back({a.text, b.text, sum(), kw.pos});
            } else if (kw.text == "coproduct") {
                Token g = ident();
                expect_symbol("=");
                ast.coproducts.push_back({g.text, sum(), kw.pos});
            } else if (kw.text == "twist") {
                Token n = ident();
                expect_symbol("=");
                ast.twists.push_back({n.text, sum(), kw.pos});
            } else {
                throw ParseError("unknown declaration '" + kw.text + "'", kw.pos.line, kw.pos.column);
            }
            expect_symbol(";");
        }
        expect_symbol("}");
        expect_end();
        return ast;
    }

    void expect_end()
    {
        if (cur().kind != Tok::end)
            fail("unexpected trailing input");
    }

private:
    const Token& cur() const { return toks_[i_]; }
    Token next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }
    bool is_symbol(const char* s) const { return cur().kind == Tok::symbol && cur().text == s; }
    [[noreturn]] void fail(const std::string& msg) const
    {
        std::string near = cur().kind == Tok::end ? "end of input" : "'" + cur().text + "'";
        throw ParseError(msg + " near " + near, cur().pos.line, cur().pos.column);
    }
    void expect_symbol(const char* s)
    {
        if (!is_symbol(s))
            fail(std::string("expected '") + s + "'");
        next();
    }
    void expect_ident(const char* s)
    {
        if (cur().kind != Tok::ident || cur().text != s)
            fail(std::string("expected '") + s + "'");
        next();
    }
    Token ident()
    {
        if (cur().kind != Tok::ident)
            fail("expected an identifier");
        return next();
    }

    static ExprPtr node(Expr::Kind k, Position p, std::vector<ExprPtr> children = {})
    {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->pos = p;
        e->children = std::move(children);
        return e;
    }

    ExprPtr sum()
    {
        ExprPtr left = unary();
        while (is_symbol("+") || is_symbol("-")) {
            Token op = next();
            ExprPtr right = unary();
            left = node(op.text == "+" ? Expr::Kind::add : Expr::Kind::subtract, op.pos, {left, right});
        }
        return left;
    }

    ExprPtr unary()
    {
        if (is_symbol("-")) {
            Token op = next();
            return node(Expr::Kind::negate, op.pos, {unary()});
        }
        return tensor();
    }

    ExprPtr tensor()
    {
        ExprPtr left = product();
        while (is_symbol("#") || is_symbol("/\\")) {
            Token op = next();
            ExprPtr right = product();
            left = node(op.text == "#" ? Expr::Kind::tensor : Expr::Kind::wedge, op.pos, {left, right});
        }
        return left;
    }

    ExprPtr product()
    {
        ExprPtr left = power();
        while (is_symbol("*")) {
            Token op = next();
            ExprPtr right = power();
            left = node(Expr::Kind::multiply, op.pos, {left, right});
        }
        return left;
    }

    int small_integer()
    {
        if (cur().kind != Tok::number || cur().number.get_den() != 1 || cur().number > 64)
            fail("expected a small nonnegative integer exponent");
        return static_cast<int>(next().number.get_num().get_si());
    }

    ExprPtr power()
    {
        ExprPtr base = atom();
        if (is_symbol("^")) {
            Token op = next();
            auto e = std::make_shared<Expr>(*node(Expr::Kind::power, op.pos, {base}));
            e->exponent = small_integer();
            return e;
        }
        return base;
    }

    ExprPtr atom()
    {
        const Token t = cur();
        if (t.kind == Tok::number) {
            next();
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::number;
            e->pos = t.pos;
            e->number = t.number;
            return e;
        }
        if (is_symbol("(")) {
            next();
            ExprPtr inner = sum();
            expect_symbol(")");
            return inner;
        }
        if (t.kind == Tok::ident) {
            next();
            if (t.text == "i")
                return node(Expr::Kind::imaginary, t.pos);
            if (t.text == "L")
                return node(Expr::Kind::lambda, t.pos);
            if (t.text == "O" && is_symbol("(")) {
                next();
                expect_ident("L");
                int n = 1;
                if (is_symbol("^")) {
                    next();
                    n = small_integer();
                }
                expect_symbol(")");
                if (n < 1)
                    throw ParseError("O(L^n) needs n >= 1", t.pos.line, t.pos.column);
                auto e = std::make_shared<Expr>(*node(Expr::Kind::order_marker, t.pos));
                e->exponent = n;
                return e;
            }
            auto e = std::make_shared<Expr>(*node(Expr::Kind::identifier, t.pos));
            e->name = t.text;
            return e;
        }
        fail("expected an operand");
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
};

// ---------------------------------------------------------------------------
// Evaluation

constexpr int unbounded = 1 << 20;

int trunc_of(const ExprValue& v)
{
    return v.truncation.value_or(unbounded);
}

int low_order(const ExprValue& v)
{
    return v.orders.empty() ? unbounded : v.orders.begin()->first;
}

TensorElement promote(const TensorElement& t, int from_legs, int to_legs, const PresentationPtr& pres)
{
    if (from_legs == to_legs || from_legs != 0)
        return t;
    return TensorElement::unit(pres, to_legs, t.coefficient({}));
}

[[noreturn]] void eval_fail(const Expr& e, const std::string& msg)
{
    throw ParseError(msg, e.pos.line, e.pos.column);
}

ExprValue finish(ExprValue v)
{
    for (auto it = v.orders.begin(); it != v.orders.end();) {
        if (it->second.is_zero() || (v.truncation && it->first > *v.truncation))
            it = v.orders.erase(it);
        else
            ++it;
    }
    return v;
}

ExprValue scalar_value(const PresentationPtr& pres, const GaussianRational& c, int order = 0)
{
    ExprValue v;
    v.legs = 0;
    v.orders.emplace(order, TensorElement::unit(pres, 1, c));
    return finish(v);
}

int joint_legs(const Expr& e, const ExprValue& a, const ExprValue& b)
{
    if (a.legs != 0 && b.legs != 0 && a.legs != b.legs)
        eval_fail(e, "leg count mismatch (" + std::to_string(a.legs) + " vs " + std::to_string(b.legs) + ")");
    return std::max(a.legs, b.legs);
}

ExprValue add(const Expr& e, const ExprValue& a, const ExprValue& b, const GaussianRational& sign,
              const PresentationPtr& pres)
{
    ExprValue out;
    out.legs = joint_legs(e, a, b);
    const int legs = std::max(out.legs, 1);
    if (a.truncation || b.truncation)
        out.truncation = std::min(trunc_of(a), trunc_of(b));
    for (const auto& [k, t] : a.orders)
        out.orders.emplace(k, promote(t, a.legs, legs, pres));
    for (const auto& [k, t] : b.orders) {
        TensorElement bt = sign * promote(t, b.legs, legs, pres);
        auto it = out.orders.find(k);
        if (it == out.orders.end())
            out.orders.emplace(k, std::move(bt));
        else
            it->second += bt;
    }
    return finish(std::move(out));
}

template <class Combine>
ExprValue cauchy(const ExprValue& a, const ExprValue& b, int legs, Combine combine)
{
    ExprValue out;
    out.legs = legs;
    if (a.truncation || b.truncation) {
        const int t = std::min(trunc_of(a) == unbounded ? unbounded : trunc_of(a) + low_order(b),
                               trunc_of(b) == unbounded ? unbounded : trunc_of(b) + low_order(a));
        out.truncation = std::min(t, unbounded);
    }
    for (const auto& [i, x] : a.orders)
        for (const auto& [j, y] : b.orders) {
            if (out.truncation && i + j > *out.truncation)
                continue;
            TensorElement p = combine(x, y);
            auto it = out.orders.find(i + j);
            if (it == out.orders.end())
                out.orders.emplace(i + j, std::move(p));
            else
                it->second += p;
        }
    return finish(std::move(out));
}

ExprValue multiply(const Expr& e, const ExprValue& a, const ExprValue& b, const PresentationPtr& pres)
{
    const int legs = joint_legs(e, a, b);
    const int actual = std::max(legs, 1);
    return cauchy(a, b, legs, [&](const TensorElement& x, const TensorElement& y) {
        return promote(x, a.legs, actual, pres) * promote(y, b.legs, actual, pres);
    });
}

ExprValue tensor(const Expr& e, const ExprValue& a, const ExprValue& b, const PresentationPtr& pres)
{
    const int la = std::max(a.legs, 1);
    const int lb = std::max(b.legs, 1);
    if (la + lb > 3)
        eval_fail(e, "tensor products are limited to three legs");
    return cauchy(a, b, la + lb, [&](const TensorElement& x, const TensorElement& y) {
        return tensor_product(promote(x, a.legs, la, pres), promote(y, b.legs, lb, pres));
    });
}

}  // namespace

ExprPtr parse_expression_ast(const std::string& text)
{
    Parser p(Lexer(text).run());
    ExprPtr e = p.expression();
    p.expect_end();
    return e;
}

ExprValue evaluate(const Expr& e, const PresentationPtr& pres)
{
    using K = Expr::Kind;
    switch (e.kind) {
    case K::number:
        return scalar_value(pres, GaussianRational(e.number));
    case K::imaginary:
        return scalar_value(pres, GaussianRational::imaginary_unit());
    case K::lambda:
        return scalar_value(pres, 1, 1);
    case K::order_marker: {
        ExprValue v;
        v.truncation = e.exponent - 1;
        return v;
    }
    case K::identifier: {
        auto g = pres->find(e.name);
        if (!g)
            eval_fail(e, "unknown generator '" + e.name + "'");
        ExprValue v;
        v.legs = 1;
        v.orders.emplace(0, TensorElement::from_algebra(AlgebraElement::generator(pres, *g)));
        return v;
    }
    case K::negate: {
        ExprValue v = evaluate(*e.children[0], pres);
        for (auto& [k, t] : v.orders)
            t *= GaussianRational(-1);
        return v;
    }
    case K::add:
    case K::subtract:
        return add(e, evaluate(*e.children[0], pres), evaluate(*e.children[1], pres),
                   e.kind == K::add ? GaussianRational(1) : GaussianRational(-1), pres);
    case K::multiply:
        return multiply(e, evaluate(*e.children[0], pres), evaluate(*e.children[1], pres), pres);
    case K::power: {
        ExprValue base = evaluate(*e.children[0], pres);
        ExprValue acc = scalar_value(pres, 1);
        for (int k = 0; k < e.exponent; ++k)
            acc = multiply(e, acc, base, pres);
        return acc;
    }
    case K::tensor:
        return tensor(e, evaluate(*e.children[0], pres), evaluate(*e.children[1], pres), pres);
    case K::wedge: {
        ExprValue a = evaluate(*e.children[0], pres);
        ExprValue b = evaluate(*e.children[1], pres);
        if (a.legs > 1 || b.legs > 1)
            eval_fail(e, "wedge needs single-leg operands");
        return add(e, tensor(e, a, b, pres), tensor(e, b, a, pres), GaussianRational(-1), pres);
    }
    }
    eval_fail(e, "unknown expression node");
}

ExprValue parse_expression(const std::string& text, const PresentationPtr& pres)
{
    return evaluate(*parse_expression_ast(text), pres);
}

int ExprValue::series_truncation() const
{
    if (truncation)
        return *truncation;
    return orders.empty() ? 0 : orders.rbegin()->first;
}

AlgebraElement ExprValue::to_algebra(const PresentationPtr& pres) const
{
    if (legs > 1)
        throw std::invalid_argument("expression has " + std::to_string(legs) + " legs, expected an algebra element");
    if (truncation || (!orders.empty() && orders.rbegin()->first > 0))
        throw std::invalid_argument("expression depends on L, expected an algebra element");
    auto it = orders.find(0);
    if (it == orders.end())
        return AlgebraElement::zero(pres);
    return it->second.to_algebra();
}

TensorElement ExprValue::to_tensor(const PresentationPtr& pres) const
{
    if (legs == 1)
        throw std::invalid_argument("expression has one leg, expected a tensor");
    if (truncation || (!orders.empty() && orders.rbegin()->first > 0))
        throw std::invalid_argument("expression depends on L, expected a tensor");
    auto it = orders.find(0);
    const int l = legs == 0 ? 2 : legs;
    if (it == orders.end())
        return TensorElement::zero(pres, l);
    return promote(it->second, legs, l, pres);
}

TensorSeries ExprValue::to_series(const PresentationPtr& pres, std::optional<int> trunc) const
{
    if (legs == 1)
        throw std::invalid_argument("expression has one leg, expected a tensor series");
    const int n = trunc.value_or(series_truncation());
    if (truncation && *truncation < n)
        throw TruncationUnderflow(n, *truncation);
    const int l = legs == 0 ? 2 : legs;
    TensorSeries s(TensorElement::zero(pres, l), n);
    for (const auto& [k, t] : orders)
        if (k <= n)
            s.set(k, promote(t, legs, l, pres));
    return s;
}

ModelFileAst parse_model(const std::string& text)
{
    Parser p(Lexer(text).run());
    return p.model();
}

LoadedModel build_model(const ModelFileAst& ast)
{
    LiePresentation::Builder builder(ast.name);
    std::set<std::string> names;
    for (const auto& g : ast.generators) {
        if (g.name == "i" || g.name == "L" || g.name == "O")
            throw ParseError("generator name '" + g.name + "' is reserved", g.pos.line, g.pos.column);
        if (!names.insert(g.name).second)
            throw ParseError("duplicate generator '" + g.name + "'", g.pos.line, g.pos.column);
        builder.add_generator(g.name, g.grade);
    }
    // a presentation without brackets resolves identifiers in bracket values
    PresentationPtr names_only = LiePresentation::Builder(builder).build();
    for (const auto& b : ast.brackets) {
        for (const auto* side : {&b.left, &b.right})
            if (!names.count(*side))
                throw ParseError("unknown generator '" + *side + "'", b.pos.line, b.pos.column);
        if (b.left == b.right)
            throw ParseError("self-bracket [" + b.left + ", " + b.right + "]", b.pos.line, b.pos.column);
        ExprValue v = evaluate(*b.value, names_only);
        AlgebraElement a = [&] {
            try {
                return v.to_algebra(names_only);
            } catch (const std::invalid_argument& ex) {
                throw ParseError(ex.what(), b.pos.line, b.pos.column);
            }
        }();
        LinearCombination lc;
        for (const auto& [m, c] : a.terms()) {
            if (m.length() != 1)
                throw ParseError("bracket values must be linear in the generators", b.pos.line, b.pos.column);
            lc.emplace_back(m.factors().front(), c);
        }
        builder.bracket(b.left, b.right, std::move(lc));
    }

    LoadedModel model;
    model.name = ast.name;
    model.pres = builder.build();

    std::map<GenIndex, TensorSeries> images;
    for (const auto& c : ast.coproducts) {
        auto g = model.pres->find(c.generator);
        if (!g)
            throw ParseError("unknown generator '" + c.generator + "'", c.pos.line, c.pos.column);
        if (images.count(*g))
            throw ParseError("duplicate coproduct for '" + c.generator + "'", c.pos.line, c.pos.column);
        ExprValue v = evaluate(*c.value, model.pres);
        if (v.legs != 2)
            throw ParseError("coproduct values need two legs", c.pos.line, c.pos.column);
        images.emplace(*g, v.to_series(model.pres));
    }
    if (!images.empty()) {
        if (images.size() != model.pres->size())
            throw ParseError("coproducts must be declared for every generator or none", ast.coproducts.front().pos.line,
                             ast.coproducts.front().pos.column);
        int trunc = unbounded;
        for (const auto& [g, s] : images)
            trunc = std::min(trunc, s.truncation());
        std::vector<TensorSeries> list;
        for (auto& [g, s] : images) {
            TensorSeries t(TensorElement::zero(model.pres, 2), trunc);
            for (int k = 0; k <= trunc && k <= s.truncation(); ++k)
                t.set(k, s[k]);
            list.push_back(std::move(t));
        }
        model.coproducts.emplace(model.pres, std::move(list));
    }
    for (const auto& t : ast.twists) {
        ExprValue v = evaluate(*t.value, model.pres);
        if (v.legs != 2 && v.legs != 0)
            throw ParseError("twist values need two legs", t.pos.line, t.pos.column);
        model.twists.emplace_back(t.name, std::move(v));
    }
    return model;
}

LoadedModel load_model_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open model file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return build_model(parse_model(ss.str()));
}

}  // namespace kappa
