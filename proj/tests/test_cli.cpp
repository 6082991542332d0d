#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kappa/commands.hpp"
#include "kappa/format.hpp"
#include "kappa/parser.hpp"
#include "support.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

using namespace kappa;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string models = KAPPA_MODELS_DIR;

}  // namespace

TEST_CASE("expression examples")
{
    const auto& p = model_d2().pres;
    ModelFileAst ast = parse_model("algebra \"x\" { generator P0 : momentum; generator P1 : momentum;\n"
                                   "generator N : boost; bracket [N, P1] = i*P0; }");
    LoadedModel lm = build_model(ast);
    REQUIRE(lm.pres->bracket(2, 1).size() == 1);
    CHECK(lm.pres->bracket(2, 1).front().second == GaussianRational(0, 1));
    CHECK(lm.pres->bracket(1, 2).front().second == GaussianRational(0, -1));

    TensorElement f1 = parse_expression("-i * (P1 # N)", p).to_tensor(p);
    CHECK(f1 == GaussianRational(0, -1) * tensor_product(model_d2().gen(1), model_d2().gen(2)));

    ExprValue v = parse_expression("P0 # 1 + 1 # P0 + L*(P1 # P1)", p);
    TensorSeries s = v.to_series(p);
    CHECK(s.truncation() == 1);
    CHECK(s[1] == tensor_product(model_d2().gen(1), model_d2().gen(1)));
}

TEST_CASE("precedence")
{
    const auto& p = model_d2().pres;
    auto tt = [&](const char* x) { return parse_expression(x, p).to_tensor(p); };
    CHECK(tt("-P1 # N") == GaussianRational(-1) * tt("P1 # N"));
    CHECK(tt("P0*P1 # N^2") == tt("(P0*P1) # (N*N)"));
    CHECK(tt("P0 # N - N # P0") == tt("P0 /\\ N"));
    CHECK(tt("2*P0^2 # 1") == tt("(2*(P0^2)) # 1"));
    CHECK(tt("1/2*P0 # 1") == tt("(1/2)*P0 # 1"));
}

TEST_CASE("truncation markers")
{
    const auto& p = model_d2().pres;
    ExprValue v = parse_expression("P0 # 1 + L^3*(N # N) + O(L^2)", p);
    CHECK(*v.truncation == 1);
    CHECK(v.orders.count(3) == 0);
    CHECK_THROWS_AS(v.to_series(p, 2), TruncationUnderflow);
    CHECK(v.to_series(p).truncation() == 1);
    ExprValue w = parse_expression("(1 + O(L^2)) * (P0 # 1 + L*(P1 # 1))", p);
    CHECK(*w.truncation == 1);
}

TEST_CASE("parse errors carry positions")
{
    const auto& p = model_d2().pres;
    try {
        parse_expression("P0 + \n  Q7", p);
        FAIL("expected an error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 3);
    }
    CHECK_THROWS_AS(parse_expression("P0 +", p), ParseError);
    CHECK_THROWS_AS(parse_expression("P0 $ P1", p), ParseError);
    CHECK_THROWS_AS(parse_expression("(P0 # P1) # (P0 # N)", p), ParseError);
    CHECK_THROWS_AS(parse_expression("P0 # 1 + P0", p), ParseError);
    CHECK_THROWS_AS(parse_expression("(P0 # P1) /\\ N", p), ParseError);

    CHECK_THROWS_AS(parse_model("algebra \"x\" { generator A : momentum; generator B : boost;\n"
                                "bracket [A, B] = A; bracket [B, A] = A; }"),
                    ParseError);
    try {
        build_model(parse_model("algebra \"x\" {\n generator A : momentum;\n coproduct A = A # 1 + 1 # Zz;\n}"));
        FAIL("expected an error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(build_model(parse_model("algebra \"x\" { generator i : momentum; }")), ParseError);
    CHECK_THROWS_AS(build_model(parse_model("algebra \"x\" { generator A : spin; }")), ParseError);
    CHECK_THROWS_AS(build_model(parse_model("algebra \"x\" { generator A : momentum; generator B : boost;"
                                            " bracket [A, B] = A*A; }")),
                    ParseError);
}

TEST_CASE("property: print then parse is the identity")
{
    std::mt19937 rng(43);
    for (int trial = 0; trial < 1000; ++trial) {
        const KappaModel& m = trial % 2 ? model_d4() : model_d2();
        const int legs = 1 + trial % 3;
        TensorElement t = kappa::testing::random_tensor(rng, m.pres, legs, 4, 3);
        const std::string text = format_tensor(t);
        ExprValue v = parse_expression(text, m.pres);
        REQUIRE(v.orders.size() <= 1);
        TensorElement back = v.orders.empty() ? TensorElement::zero(m.pres, legs) : v.orders.begin()->second;
        if (v.legs == 0)
            back = TensorElement::unit(m.pres, legs, back.coefficient({}));
        REQUIRE(back == t);
        REQUIRE(format_tensor(back) == text);
    }
    for (int trial = 0; trial < 100; ++trial) {
        const auto& p = model_d2().pres;
        TensorSeries s = kappa::testing::random_twist_log(rng, p, 3, 2);
        s.set(0, kappa::testing::random_tensor(rng, p, 2, 2, 2));
        REQUIRE(parse_expression(format_series(s), p).to_series(p) == s);
    }
}

TEST_CASE("command exit codes")
{
    CHECK(run({"expand", "--model", "d2-classical", "--what", "pi0", "--order", "2"}).code == 0);
    CHECK(run({"solve-twist", "--model", "d2-classical", "--order", "1"}).code == 0);
    CHECK(run({"solve-twist", "--model", "d2-classical", "--order", "2"}).code == 2);
    CHECK(run({"solve-rmatrix", "--model", "d2-classical", "--order", "2"}).code == 0);
    CHECK(run({"check", "--model", "d4-classical", "--suite", "hom"}).code == 0);
    CHECK(run({"check", "--model", "d2-classical", "--suite", "coassoc", "--twist", "L*(-i*P1 # N)"}).code == 0);
    CHECK(run({"coassociator", "--model", "d2-classical", "--twist", "L*(P0 # P1)", "--order", "3"}).code == 0);
    CHECK(run({"validate", "--file", models + "/d2-classical.alg"}).code == 0);

    CHECK(run({"expand", "--model", "d9", "--what", "pi0"}).code == 1);
    CHECK(run({"expand", "--model", "d2-classical", "--what", "pi0", "--order", "99"}).code == 1);
    CHECK(run({"expand", "--model", "d2-classical"}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"validate", "--file", "/nonexistent/model.alg"}).code == 1);
    CHECK(run({"check", "--model", "d4-classical", "--suite", "casimir"}).code == 1);
    CHECK(run({"coassociator", "--model", "d2-classical", "--twist", "P0 # P1"}).code == 1);
}

TEST_CASE("reports")
{
    Run r = run({"solve-rmatrix", "--model", "d2-classical", "--order", "1"});
    CHECK(r.out.find("r1 = i*P1 # N - i*N # P1") != std::string::npos);

    Run e = run({"expand", "--model", "d2-classical", "--what", "coproducts", "--order", "2"});
    CHECK(e.out.find("L^1: -P0 # N") != std::string::npos);

    Run j = run({"solve-twist", "--model", "d2-classical", "--order", "2", "--json"});
    auto doc = nlohmann::json::parse(j.out);
    for (const char* key : {"command", "model", "order", "constraints", "status", "payload"})
        CHECK(doc.contains(key));
    CHECK(doc["status"] == "obstruction");
    CHECK(doc["order"] == 2);
    CHECK(doc["constraints"]["momentum_degree"] == 2);
    const auto& ob = doc["payload"]["orders"][1];
    CHECK(ob["verified"] == true);
    CHECK(ob["pairing"] == "1/2");
    CHECK(ob["blocked"][0]["legs"] == nlohmann::json::array({"P0", "P0^2"}));
    CHECK(doc["payload"]["orders"][0]["value"]["terms"][0]["coefficient"] == "-1 i");

    // byte-identical across runs
    CHECK(run({"solve-twist", "--model", "d2-classical", "--order", "2", "--json"}).out == j.out);
}

TEST_CASE("model file drives the commands")
{
    Run r = run({"solve-twist", "--file", models + "/d4-classical.alg", "--order", "2", "--o3-invariant"});
    CHECK(r.code == 2);
    Run c = run({"check", "--file", models + "/d2-classical.alg", "--suite", "coassoc"});
    CHECK(c.code == 0);
    Run y = run({"check", "--file", models + "/d2-classical.alg", "--suite", "ybe", "--order", "3"});
    CHECK(y.code == 0);
}
