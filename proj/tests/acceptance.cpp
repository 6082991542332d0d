// Runs every acceptance criterion and prints one PASS/FAIL line for each.
//
// Two criteria cannot pass as literally stated because the reference
// expressions they compare against are internally inconsistent; for those the
// binary checks that the mismatch is exactly the analysed one. The exit status
// is nonzero when any outcome differs from that expectation.

#include "kappa/commands.hpp"
#include "kappa/deform.hpp"
#include "kappa/format.hpp"
#include "kappa/parser.hpp"
#include "support.hpp"

#include <json.hpp>

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace kappa;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;
    /// Set when a FAIL is the analysed discrepancy rather than a defect.
    std::string known_discrepancy;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            notes.push_back("failed: " + what);
        }
    }
    void note(const std::string& s) { notes.push_back(s); }
};

TensorElement t(const std::string& text, const PresentationPtr& p)
{
    return parse_expression(text, p).to_tensor(p);
}

TensorSeries ser(const std::string& text, const PresentationPtr& p, int n)
{
    return parse_expression(text, p).to_series(p, n);
}

AlgebraSeries algebra_series(const ExprValue& v, const PresentationPtr& p)
{
    AlgebraSeries out(AlgebraElement::zero(p), v.series_truncation());
    for (const auto& [k, t] : v.orders)
        out.set(k, v.legs == 0 ? t.to_algebra() * AlgebraElement::one(p) : t.to_algebra());
    return out;
}

std::string C0(const KappaModel& m)
{
    return "(" + format_element(m.casimir0) + ")";
}

// ---------------------------------------------------------------------------

void criterion1(Outcome& o)
{
    std::ostringstream out, err;
    const int code =
        run_command({"expand", "--model", "d2-classical", "--what", "pi0", "--order", "2", "--json"}, out, err);
    o.require(code == 0, "expand exit status");
    auto doc = nlohmann::json::parse(out.str());
    const auto& m = model_d2();
    const std::string text = doc["payload"]["pi0"]["text"].get<std::string>();
    const ExprValue got = parse_expression(text, m.pres);
    const ExprValue expected = parse_expression("1 + L*P0 - 1/2*L^2*" + C0(m) + " + O(L^3)", m.pres);
    o.require(got.truncation == expected.truncation && algebra_series(got, m.pres) == algebra_series(expected, m.pres),
              "Pi0 = 1 + L P0 - L^2 C0 / 2");
    o.require(pi0_series(m, 2).pi0 == algebra_series(expected, m.pres), "library Pi0 agrees");
    o.note("Pi0 = " + doc["payload"]["pi0"]["text"].get<std::string>());
}

void criterion2(Outcome& o)
{
    {
        const auto& m = model_d2();
        const std::string c0 = C0(m);
        CoproductMap d = target_coproducts(m, 2);
        const std::vector<std::string> reference{
            "P0 # 1 + 1 # P0 + L*(P1 # P1) + L^2*(P0^2 # P0 + 1/2*" + c0 + " # P0 - P1*P0 # P1 - 1/2*P0 # " + c0 + ")",
            "P1 # 1 + 1 # P1 + L*(P1 # P0) - 1/2*L^2*(P1 # " + c0 + ")",
            "N # 1 + 1 # N - L*(P0 # N) + L^2*((P0^2 + 1/2*" + c0 + ") # N)",
        };
        for (GenIndex g = 0; g < 3; ++g)
            o.require(d.image(g) == ser(reference[g], m.pres, 2), "D=2 coproduct of " + m.pres->generator(g).name);
        o.note("D=2: all three coproducts match through L^2");
    }

    const auto& m = model_d4();
    const std::string c0 = C0(m);
    CoproductMap d = target_coproducts(m, 2);
    auto name = [&](GenIndex g) { return m.pres->generator(g).name; };
    auto eps_sum = [&](int i, const std::string& left_extra) {
        // Σ ε_ikj P_k (extra) ⊗ M_j
        std::string s = "0";
        for (int k = 1; k <= 3; ++k)
            for (int j = 1; j <= 3; ++j) {
                const int e = levi_civita(i, k, j);
                if (e != 0)
                    s += (e > 0 ? " + " : " - ") + name(m.spatial[k - 1]) + left_extra + " # " +
                         name(m.rotations[j - 1]);
            }
        return "(" + s + ")";
    };
    bool rest_match = true;
    {
        std::string p0 = "P0 # 1 + 1 # P0 + L*(P1 # P1 + P2 # P2 + P3 # P3) + L^2*(P0^2 # P0 + 1/2*" + c0 +
                         " # P0 - P1*P0 # P1 - P2*P0 # P2 - P3*P0 # P3 - 1/2*P0 # " + c0 + ")";
        rest_match = rest_match && d.image(m.p0) == ser(p0, m.pres, 2);
        for (GenIndex k : m.spatial) {
            const std::string pk = name(k);
            rest_match = rest_match && d.image(k) == ser(pk + " # 1 + 1 # " + pk + " + L*(" + pk + " # P0) - 1/2*L^2*(" +
                                                             pk + " # " + c0 + ")",
                                                         m.pres, 2);
        }
        for (GenIndex r : m.rotations)
            rest_match = rest_match && d.image(r) == ser(name(r) + " # 1 + 1 # " + name(r), m.pres, 2);
    }
    o.require(rest_match, "D=4 coproducts of P0, P_k, M_i");

    bool literal = true, corrected = true;
    for (int i = 1; i <= 3; ++i) {
        const std::string n = name(m.boosts[static_cast<std::size_t>(i - 1)]);
        auto boost = [&](const std::string& s1, const std::string& s2) {
            return n + " # 1 + 1 # " + n + " - L*(" + s1 + eps_sum(i, "") + " + P0 # " + n + ") + L^2*((P0^2 + 1/2*" +
                   c0 + ") # " + n + " " + s2 + " " + eps_sum(i, "*P0") + ")";
        };
        const TensorSeries& got = d.image(m.boosts[static_cast<std::size_t>(i - 1)]);
        literal = literal && got == ser(boost("", "+"), m.pres, 2);
        corrected = corrected && got == ser(boost("-", "-"), m.pres, 2);
    }
    const bool reference_breaks_hom = !check_homomorphism(target_coproducts(model_d4_with_boost_sign(-1), 2)).pass();
    const bool ours_hom = check_homomorphism(d).pass();
    o.require(literal, "D=4 boost coproducts as given in the reference");
    o.note("D=4: P0, P_k, M_i match through L^2; boost coproducts match with the opposite orientation of the "
           "eps_ikj P_k # M_j terms");
    o.note(std::string("reference orientation is a homomorphism: ") + (reference_breaks_hom ? "no" : "yes") +
           "; implemented orientation: " + (ours_hom ? "yes" : "no"));
    if (!literal && corrected && rest_match && reference_breaks_hom && ours_hom)
        o.known_discrepancy = "the reference D=4 boost coproduct has the eps term with the orientation that breaks "
                              "Delta([N_i,N_j]) = [Delta N_i, Delta N_j]";
}

void criterion3(Outcome& o)
{
    for (const KappaModel* m : {&model_d2(), &model_d4()}) {
        CoproductMap target = target_coproducts(*m, 1);
        OrderSolve s = solve_twist_order(1, target, {}, AnsatzConstraints::defaults(1));
        o.require(s.outcome.is_solution(), m->id + " order-1 solution");
        if (!s.outcome.is_solution())
            continue;
        o.require(verify_outcome(s.outcome, s.system).pass, m->id + " verification");
        TensorElement f1 = TensorElement::zero(m->pres, 2);
        for (std::size_t k = 0; k < m->spatial.size(); ++k)
            f1 += GaussianRational(0, -1) * tensor_product(m->gen(m->spatial[k]), m->gen(m->boosts[k]));
        o.require(satisfies_order(s, f1), m->id + " f1 in solution set");
        CoproductMap conj =
            conjugate_by_twist(TwistSeries::from_log(TensorSeries::monomial(f1, 1, 1)), CoproductMap::primitive(m->pres, 1), 1);
        for (const auto& g : m->pres->generators())
            o.require(conj.image(g.index)[1] == target.image(g.index)[1], m->id + " order-1 coproduct of " + g.name);
        o.note(m->id + ": f1 = " + format_tensor(*s.value) + ", kernel dimension " + std::to_string(s.kernel.size()));
    }
}

void criterion4(Outcome& o)
{
    struct Case {
        const KappaModel* m;
        AnsatzConstraints c;
        std::string label;
    };
    AnsatzConstraints o3 = AnsatzConstraints::defaults(2);
    o3.o3_invariant = true;
    const AnsatzConstraints big{2, 2, 4, false};
    const AnsatzConstraints big_o3{2, 2, 4, true};
    const std::vector<Case> cases{
        {&model_d2(), AnsatzConstraints::defaults(2), "d2 default"},
        {&model_d4(), AnsatzConstraints::defaults(2), "d4 default"},
        {&model_d4(), o3, "d4 O(3)"},
        {&model_d2(), big, "d2 enlarged"},
        {&model_d4(), big, "d4 enlarged"},
        {&model_d4(), big_o3, "d4 enlarged O(3)"},
    };
    for (const auto& k : cases) {
        const auto start = std::chrono::steady_clock::now();
        CoproductMap target = target_coproducts(*k.m, 2);
        OrderSolve first = solve_twist_order(1, target, {}, AnsatzConstraints::defaults(1));
        OrderSolve s = solve_twist_order(2, target, {*first.value}, k.c);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        o.require(!s.outcome.is_solution(), k.label + " obstruction");
        o.require(verify_outcome(s.outcome, s.system).pass, k.label + " certificate verifies");
        o.require(secs < 60, k.label + " time");
        if (!s.outcome.is_solution()) {
            std::ostringstream os;
            os << k.label << ": " << s.system.columns() << " unknowns, certificate support "
               << s.outcome.obstruction().certificate.size() << ", first blocked row "
               << s.system.describe_row(s.outcome.obstruction().blocked.front()) << ", " << std::fixed
               << std::setprecision(2) << secs << " s";
            o.note(os.str());
        }
    }
}

void criterion5(Outcome& o)
{
    const auto& m = model_d2();
    CoproductMap delta = target_coproducts(m, 2);
    OrderSolve s1 = solve_rmatrix_order(1, delta, {}, AnsatzConstraints::defaults(1));
    o.require(s1.outcome.is_solution() && *s1.value == t("i*P1 /\\ N", m.pres), "r1 = i P1 /\\ N");
    if (!s1.outcome.is_solution())
        return;
    OrderSolve s2 = solve_rmatrix_order(2, delta, {*s1.value}, AnsatzConstraints::defaults(2));
    o.require(s2.outcome.is_solution(), "order-2 solution");
    if (!s2.outcome.is_solution())
        return;
    o.require(verify_outcome(s2.outcome, s2.system).pass, "order-2 verification");
    const std::string c0 = C0(m);
    const std::vector<std::string> rhs{
        "P1*P0 # P1 - P1 # P1*P0",
        "1/2*(P0^2 # P1 - P1 # P0^2 - P0 # P1*P0 + P1*P0 # P0)",
        "N # P0^2 + 1/2*N # " + c0 + " - P0^2 # N - 1/2*" + c0 +
            " # N - 1/2*N*P0 # P0 + 1/2*P1 # N*P1 + 1/2*P0 # P0*N - 1/2*P1*N # P1",
    };
    for (std::size_t g = 0; g < 3; ++g) {
        o.require(s2.rhs[g] == t(rhs[g], m.pres), "order-2 right-hand side for " + m.pres->generator(static_cast<GenIndex>(g)).name);
        o.require(primitive_commutators(*s2.value)[g] == s2.rhs[g], "zero residue for " + m.pres->generator(static_cast<GenIndex>(g)).name);
    }
    const TensorElement minus = t("1/2*i*(N /\\ P1*P0 - N*P0 /\\ P1)", m.pres);
    const TensorElement plus = t("1/2*i*(N /\\ P1*P0 + N*P0 /\\ P1)", m.pres);
    const bool minus_ok = satisfies_order(s2, minus);
    const bool plus_ok = satisfies_order(s2, plus);
    o.require(minus_ok != plus_ok, "exactly one sign variant of r2 satisfies the equations");
    o.note("r1 = " + format_tensor(*s1.value));
    o.note("r2 = " + format_tensor(*s2.value) + " (kernel dimension " + std::to_string(s2.kernel.size()) + ")");
    o.note(std::string("sign: (i/2)(N /\\ P1P0 - NP0 /\\ P1) ") + (minus_ok ? "satisfies" : "violates") +
           " the order-2 equations, (i/2)(N /\\ P1P0 + NP0 /\\ P1) " + (plus_ok ? "satisfies" : "violates") + " them");
    const TensorSeries R = TwistSeries::from_log(series_from_orders(m.pres, {*s1.value, *s2.value}, 2)).series();
    o.require(check_intertwiner(R, delta).pass(), "intertwiner for exp(L r1 + L^2 r2)");
}

void criterion6(Outcome& o)
{
    for (auto [m, n] : {std::pair{&model_d2(), 3}, std::pair{&model_d4(), 2}}) {
        for (const auto& r : inverse_map_check(*m, n))
            o.require(r.vanishes(), m->id + " round trip " + r.label);
        const auto b = bicross_verify(*m, n);
        for (const auto& r : b)
            o.require(r.vanishes(), m->id + " bicrossproduct " + r.label);
        o.note(m->id + ": round trip and " + std::to_string(b.size()) + " bicrossproduct residues vanish through L^" +
               std::to_string(n));
    }
    o.note("d4 bicrossproduct boost coproduct uses the homomorphic eps orientation (see criterion 2)");
}

void criterion7(Outcome& o)
{
    for (const KappaModel* m : {&model_d2(), &model_d4()}) {
        CoproductMap d = target_coproducts(*m, m->default_order);
        o.require(check_homomorphism(d).pass(), m->id + " homomorphism");
        o.require(check_coassociativity(d).pass(), m->id + " coassociativity");
        o.note(m->id + ": homomorphism and coassociativity hold through L^" + std::to_string(m->default_order));
    }
    const auto& m = model_d2();
    const TensorElement combo = t("N # P1*P0 + N*P0 # P1 - P1*P0 # N - P1 # N*P0", m.pres);
    const TensorElement reference =
        t("N*P1 # P1 - P0^2 # N - P1^2 # N - P0 # N*P0 + N # (P0^2 + P1^2) + N*P0 # P0 - P1 # N*P1", m.pres);
    const TensorElement value = tensor_commutator(combo, primitive_coproduct(m.gen(2)));
    const bool exact = value == reference;
    o.require(exact, "nested commutator equals the reference right-hand side");
    o.note("[N # P1P0 + NP0 # P1 - P1P0 # N - P1 # NP0, Delta0(N)] = " + format_tensor(value));
    const bool up_to_factor = value == GaussianRational(0, -1) * reference;
    o.note(std::string("equals -i times the reference right-hand side: ") + (up_to_factor ? "yes" : "no"));
    if (!exact && up_to_factor && o.notes.size() == 5)
        o.known_discrepancy = "the reference right-hand side lacks an overall factor -i";
}

void criterion8(Outcome& o)
{
    const auto& m = model_d2();
    const int n = 3;
    TwistSeries F = TwistSeries::from_log(ser("L*(P0 # P1)", m.pres, n));
    CoproductMap base = CoproductMap::primitive(m.pres, n);
    CoproductMap d = conjugate_by_twist(F, base, n);
    TensorSeries phi = coassociator(F, base);
    TensorSeries unit3 = TensorSeries::constant(TensorElement::unit(m.pres, 3), n);
    o.require(phi == unit3, "coassociator is 1 # 1 # 1");
    TensorSeries R = twisted_rmatrix(F);
    o.require(check_intertwiner(R, d).pass(), "intertwiner");
    o.require(check_quasitriangularity(R, unit3, d).pass(), "quasitriangularity");
    o.require(check_modified_ybe(R, unit3).pass(), "Yang-Baxter");
    o.note("R = " + format_series(R));
}

void criterion9(Outcome& o)
{
    std::mt19937 rng(20261016);
    int algebra_cases = 0;
    for (int trial = 0; trial < 1200; ++trial, ++algebra_cases) {
        const KappaModel& m = trial % 3 == 0 ? model_d4() : model_d2();
        AlgebraElement a = kappa::testing::random_element(rng, m.pres, 2, 2);
        AlgebraElement b = kappa::testing::random_element(rng, m.pres, 2, 2);
        AlgebraElement c = kappa::testing::random_element(rng, m.pres, 2, 2);
        bool ok = (commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b)))
                      .is_zero();
        ok = ok && commutator(a, b * c) == commutator(a, b) * c + b * commutator(a, c);
        ok = ok && (a * b) * c == a * (b * c);
        AlgebraElement again = AlgebraElement::zero(m.pres);
        for (const auto& [mono, coef] : a.terms())
            again += normal_order(m.pres, Word{coef, std::vector<GenIndex>(mono.factors().begin(), mono.factors().end())});
        ok = ok && again == a;
        if (!ok) {
            o.require(false, "algebra invariants, case " + std::to_string(trial));
            break;
        }
    }

    int solver_cases = 0, obstructions = 0;
    std::uniform_int_distribution<int> dim(1, 8), entry(-2, 2), sparse(0, 2);
    const auto& p = model_d2().pres;
    for (int trial = 0; trial < 1200; ++trial, ++solver_cases) {
        LinearSystem sys;
        sys.pres = p;
        const int rows = dim(rng), cols = dim(rng);
        for (int c = 0; c < cols; ++c) {
            sys.unknowns.push_back(TensorElement::unit(p, 2));
            sys.unknown_labels.push_back("x");
        }
        for (int r = 0; r < rows; ++r) {
            SparseVector row;
            for (int c = 0; c < cols; ++c)
                if (sparse(rng) == 0) {
                    GaussianRational v(mpq_class(entry(rng)), mpq_class(entry(rng)));
                    if (!v.is_zero())
                        row[static_cast<std::size_t>(c)] = v;
                }
            sys.matrix.push_back(row);
            sys.rows.push_back({"b", TensorElement::Key{}, 2});
            sys.rhs.push_back(GaussianRational(mpq_class(entry(rng)), 0));
        }
        SolveOutcome out = solve_linear(sys);
        obstructions += out.is_solution() ? 0 : 1;
        if (!verify_outcome(out, sys).pass) {
            o.require(false, "solver soundness, case " + std::to_string(trial));
            break;
        }
    }
    o.note(std::to_string(algebra_cases) + " algebra cases (Jacobi, Leibniz, associativity, idempotence), " +
           std::to_string(solver_cases) + " solver cases (" + std::to_string(obstructions) + " obstructed)");
}

}  // namespace

int main()
{
    struct Criterion {
        int id;
        std::string title;
        double limit;
        std::function<void(Outcome&)> run;
        bool expect_pass;
    };
    const std::vector<Criterion> criteria{
        {1, "Pi0 expansion", 1, criterion1, true},
        {2, "coproduct expansions D=2 and D=4", 5, criterion2, false},
        {3, "first-order twist", 5, criterion3, true},
        {4, "second-order twist obstruction", 120, criterion4, true},
        {5, "R-matrix through order 2", 10, criterion5, true},
        {6, "quantum map and bicrossproduct relations", 10, criterion6, true},
        {7, "Hopf properties and nested commutator identity", 10, criterion7, false},
        {8, "abelian cocycle control", 5, criterion8, true},
        {9, "randomized property suites", 60, criterion9, true},
    };

    bool as_expected = true;
    int passed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        o.require(secs < c.limit, "time limit");
        passed += o.pass ? 1 : 0;

        std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << " (" << std::fixed
                  << std::setprecision(3) << secs << " s, limit " << std::setprecision(0) << c.limit << " s) "
                  << c.title;
        if (!o.pass && !o.known_discrepancy.empty())
            std::cout << " [analysed discrepancy: " << o.known_discrepancy << "]";
        std::cout << "\n";
        for (const auto& n : o.notes)
            std::cout << "    " << n << "\n";

        const bool expected = c.expect_pass ? o.pass : (!o.pass && !o.known_discrepancy.empty());
        if (!expected) {
            as_expected = false;
            std::cout << "    unexpected outcome\n";
        }
    }
    std::cout << passed << " of " << criteria.size() << " criteria pass"
              << (as_expected ? "; every failure is an analysed discrepancy" : "; UNEXPECTED OUTCOMES") << "\n";
    return as_expected ? 0 : 1;
}
