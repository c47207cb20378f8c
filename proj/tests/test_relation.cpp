#include <doctest.h>

#include <random>

#include "hosos/builtin.hpp"
#include "hosos/relation.hpp"
#include "hosos/simulation.hpp"

using namespace hosos;

namespace {

std::vector<Term> cdu_universe(const SpecDocument& spec, int size) {
    return enumerate_terms(spec.signature(), size);
}

FiniteRelation random_relation(std::mt19937_64& rng, const std::vector<Term>& universe,
                               double density) {
    FiniteRelation r(universe);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (const Term& a : r.universe())
        for (const Term& b : r.universe())
            if (coin(rng) < density) r.add(a, b);
    return r;
}

// Oracle: relational composition by the naive triple loop.
FiniteRelation compose_oracle(const FiniteRelation& r, const FiniteRelation& s) {
    FiniteRelation out(r.universe());
    for (const Term& a : r.universe())
        for (const Term& b : r.universe())
            for (const Term& c : r.universe())
                if (r.related(a, b) && s.related(b, c)) out.add(a, c);
    return out;
}

} // namespace

TEST_CASE("compose: identity unit and one-step chase") {
    SpecDocument spec = ex34_spec();
    auto universe = cdu_universe(spec, 2);
    FiniteRelation delta = FiniteRelation::identity(universe);
    std::mt19937_64 rng(3);
    FiniteRelation r = random_relation(rng, universe, 0.3);
    CHECK(compose(delta, r) == r);
    CHECK(compose(r, delta) == r);

    Term c = parse_term(spec.signature(), "c"), d = parse_term(spec.signature(), "d");
    FiniteRelation cd(universe), dc(universe);
    cd.add(c, d);
    dc.add(d, c);
    FiniteRelation cc = compose(cd, dc);
    CHECK(cc.size() == 1);
    CHECK(cc.related(c, c));
}

TEST_CASE("compose agrees with the triple-loop oracle and is associative") {
    SpecDocument spec = ex34_spec();
    auto universe = cdu_universe(spec, 2); // 4 terms
    universe.push_back(parse_term(spec.signature(), "u(u(c))"));
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        FiniteRelation r = random_relation(rng, universe, 0.35);
        FiniteRelation s = random_relation(rng, universe, 0.35);
        FiniteRelation t = random_relation(rng, universe, 0.35);
        CHECK(compose(r, s) == compose_oracle(r, s));
        CHECK(compose(compose(r, s), t) == compose(r, compose(s, t)));
    }
}

TEST_CASE("compose rejects universe mismatches") {
    SpecDocument spec = ex34_spec();
    FiniteRelation a(cdu_universe(spec, 1));
    FiniteRelation b(cdu_universe(spec, 2));
    CHECK_THROWS_AS(compose(a, b), UniverseMismatch);
}

TEST_CASE("reflexivity, transitivity, congruence of the identity relation") {
    SpecDocument spec = ex34_spec();
    FiniteRelation delta = FiniteRelation::identity(cdu_universe(spec, 2));
    CHECK(is_reflexive(delta));
    CHECK(is_transitive(delta));
    CHECK(is_congruence(spec, delta));
}

TEST_CASE("congruence failure carries a witness") {
    SpecDocument spec = ex34_spec();
    auto universe = cdu_universe(spec, 2); // c d u(c) u(d)
    FiniteRelation r = FiniteRelation::identity(universe);
    Term c = parse_term(spec.signature(), "c"), d = parse_term(spec.signature(), "d");
    r.add(c, d);
    auto witness = congruence_witness(spec, r);
    REQUIRE(witness.has_value());
    CHECK(witness->op == "u");
    CHECK(witness->left_args == std::vector<Term>{c});
    CHECK(witness->right_args == std::vector<Term>{d});
}

TEST_CASE("bounded weak similarity of the counterexample spec is not a congruence") {
    SpecDocument spec = ex34_spec();
    auto universe = cdu_universe(spec, 2);
    FiniteRelation sim(universe);
    Evaluator eval(spec);
    Bounds bounds{4, 20, 2};
    for (const Term& p : universe)
        for (const Term& q : universe)
            if (weak_similar(eval, p, q, bounds).holds()) sim.add(p, q);
    CHECK(sim.related(parse_term(spec.signature(), "c"), parse_term(spec.signature(), "d")));
    auto witness = congruence_witness(spec, sim);
    REQUIRE(witness.has_value());
    CHECK(witness->op == "u");
}

TEST_CASE("b0 lifting relates matching summands only") {
    SpecDocument spec = ex34_spec();
    auto universe = cdu_universe(spec, 2);
    FiniteRelation s = FiniteRelation::identity(universe);
    FiniteRelation r = FiniteRelation::identity(universe);
    Term c = parse_term(spec.signature(), "c");

    Behavior red_c = Behavior::red(c);
    Behavior fun_c = Behavior::fun(OpenTerm::from_term(c));
    CHECK(b0_lift_related(r, s, red_c, red_c).related());
    CHECK(b0_lift_related(r, s, fun_c, fun_c).related());
    CHECK(b0_lift_related(r, s, red_c, fun_c).kind == B0LiftResult::Kind::NotRelated);
    CHECK(b0_lift_related(r, s, fun_c, red_c).kind == B0LiftResult::Kind::NotRelated);
}

TEST_CASE("b0 lifting reports out-of-universe instantiations") {
    SpecDocument spec = ex34_spec();
    FiniteRelation tiny(std::vector<Term>{parse_term(spec.signature(), "c"),
                                          parse_term(spec.signature(), "d")});
    FiniteRelation r = FiniteRelation::identity(tiny.universe());
    // body u(x) plugged with c gives u(c), which the universe lacks
    Behavior fun_u = Behavior::fun(parse_open_term(spec.signature(), "u(x)"));
    B0LiftResult res = b0_lift_related(r, r, fun_u, fun_u);
    CHECK(res.kind == B0LiftResult::Kind::OutOfUniverse);
    CHECK(res.missing == parse_term(spec.signature(), "u(c)"));
}

TEST_CASE("b0 lifting is monotone in S under fixed R") {
    SpecDocument spec = ex34_spec();
    auto universe = cdu_universe(spec, 2);
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 40; ++trial) {
        FiniteRelation r = random_relation(rng, universe, 0.3);
        FiniteRelation s = random_relation(rng, universe, 0.3);
        FiniteRelation s2 = s.united(random_relation(rng, universe, 0.2));
        for (const Term& a : universe)
            for (const Term& b : universe) {
                Behavior u = Behavior::red(a), v = Behavior::red(b);
                if (b0_lift_related(r, s, u, v).related())
                    CHECK(b0_lift_related(r, s2, u, v).related());
            }
    }
}

TEST_CASE("egli-milner lifting") {
    SpecDocument spec = ex34_spec();
    auto universe = cdu_universe(spec, 2);
    FiniteRelation delta = FiniteRelation::identity(universe);
    Term c = parse_term(spec.signature(), "c");

    CHECK(egli_milner_related(delta, {}, {}));          // vacuous
    CHECK(egli_milner_related(delta, {}, {c}));         // vacuous
    CHECK_FALSE(egli_milner_related(delta, {c}, {}));

    // oracle: double loop
    std::mt19937_64 rng(31);
    std::bernoulli_distribution coin(0.5);
    for (int trial = 0; trial < 60; ++trial) {
        FiniteRelation r = random_relation(rng, universe, 0.3);
        std::vector<Term> u, v;
        for (const Term& t : universe) {
            if (coin(rng)) u.push_back(t);
            if (coin(rng)) v.push_back(t);
        }
        bool oracle = true;
        for (const Term& a : u) {
            bool any = false;
            for (const Term& b : v) any = any || r.related(a, b);
            oracle = oracle && any;
        }
        CHECK(egli_milner_related(r, u, v) == oracle);
        // up-closure: enlarging V never flips true to false
        if (egli_milner_related(r, u, v)) {
            std::vector<Term> v2 = v;
            v2.push_back(universe[trial % universe.size()]);
            CHECK(egli_milner_related(r, u, v2));
        }
    }
}

TEST_CASE("relation text format round-trips") {
    SpecDocument spec = ex34_spec();
    std::string text = "# fixture\npair c d\npair u(c) u(d)\n\npair d d\n";
    FiniteRelation r = parse_relation(spec, text);
    CHECK(r.size() == 3);
    CHECK(r.related(parse_term(spec.signature(), "c"), parse_term(spec.signature(), "d")));
    FiniteRelation again = parse_relation(spec, relation_to_string(r));
    CHECK(again.size() == r.size());
    for (const auto& [a, b] : r.term_pairs()) CHECK(again.related(a, b));

    CHECK_THROWS_AS(parse_relation(spec, "pair c\n"), ParseError);
    CHECK_THROWS_AS(parse_relation(spec, "twosome c d\n"), ParseError);
    CHECK_THROWS_AS(parse_relation(spec, "pair c nope\n"), ParseError);
}

TEST_CASE("subterm closure") {
    SpecDocument spec = ex34_spec();
    Term t = parse_term(spec.signature(), "u(u(d))");
    auto closed = subterm_closure({t});
    REQUIRE(closed.size() == 3);
    CHECK(closed[0] == parse_term(spec.signature(), "d"));
    CHECK(closed[1] == parse_term(spec.signature(), "u(d)"));
    CHECK(closed[2] == t);
}

TEST_CASE("b0 lifting over function behaviours is monotone in S") {
    SpecDocument spec = ex34_spec();
    auto universe = cdu_universe(spec, 3); // closed under u-plugging of size-2 terms
    std::mt19937_64 rng(37);
    OpenTerm ux = parse_open_term(spec.signature(), "u(x)");
    Behavior fun_u = Behavior::fun(ux);
    Behavior fun_c = Behavior::fun(OpenTerm::from_term(parse_term(spec.signature(), "c")));
    for (int trial = 0; trial < 30; ++trial) {
        FiniteRelation r(universe);
        // keep the argument pairs small so the plugged terms stay inside
        for (const Term& a : cdu_universe(spec, 2))
            for (const Term& b : cdu_universe(spec, 2))
                if (std::uniform_real_distribution<double>(0, 1)(rng) < 0.3) r.add(a, b);
        FiniteRelation s(universe), s2(universe);
        for (const Term& a : universe)
            for (const Term& b : universe) {
                double roll = std::uniform_real_distribution<double>(0, 1)(rng);
                if (roll < 0.4) s.add(a, b);
                if (roll < 0.6) s2.add(a, b); // s2 is a superset of s
            }
        for (const Behavior* u : {&fun_u, &fun_c})
            for (const Behavior* v : {&fun_u, &fun_c}) {
                B0LiftResult small = b0_lift_related(r, s, *u, *v);
                if (small.related()) CHECK(b0_lift_related(r, s2, *u, *v).related());
            }
    }
}
