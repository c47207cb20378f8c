#include <doctest.h>

#include <random>

#include "hosos/builtin.hpp"
#include "hosos/howe.hpp"
#include "hosos/simulation.hpp"

#include "oracles.hpp"

using namespace hosos;

namespace {

Term t(const SpecDocument& spec, const std::string& text) {
    return parse_term(spec.signature(), text);
}

FiniteRelation random_preorder_base(std::mt19937_64& rng, const std::vector<Term>& universe,
                                    double density, bool reflexive, bool transitive) {
    FiniteRelation r(universe);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (const Term& a : r.universe())
        for (const Term& b : r.universe())
            if (coin(rng) < density) r.add(a, b);
    if (reflexive)
        for (const Term& a : r.universe()) r.add(a, a);
    if (transitive) {
        for (;;) {
            FiniteRelation more = r.united(compose(r, r));
            if (more == r) break;
            r = more;
        }
    }
    return r;
}

} // namespace

TEST_CASE("howe stages on the counterexample spec") {
    SpecDocument spec = ex34_spec();
    auto universe = enumerate_terms(spec.signature(), 2); // c d u(c) u(d)

    // empty base: every stage stays empty
    FiniteRelation empty(universe);
    CHECK(howe_stage(spec, empty, empty).size() == 0);
    CHECK(howe_closure(spec, empty).closure.size() == 0);

    // identity base: the fixpoint is the identity again
    FiniteRelation delta = FiniteRelation::identity(universe);
    HoweResult delta_closure = howe_closure(spec, delta);
    CHECK(delta_closure.closure == delta);

    // identity plus (c,d): the closure picks up (u(c),u(d))
    FiniteRelation base = FiniteRelation::identity(universe);
    base.add(t(spec, "c"), t(spec, "d"));
    HoweResult closed = howe_closure(spec, base);
    CHECK(closed.closure.related(t(spec, "u(c)"), t(spec, "u(d)")));
    CHECK(base.subset_of(closed.closure));
}

TEST_CASE("howe_stage requires matching, subterm-closed universes") {
    SpecDocument spec = ex34_spec();
    FiniteRelation a(enumerate_terms(spec.signature(), 1));
    FiniteRelation b(enumerate_terms(spec.signature(), 2));
    CHECK_THROWS_AS(howe_stage(spec, a, b), UniverseMismatch);
    FiniteRelation holey(std::vector<Term>{t(spec, "u(c)")}); // c missing
    CHECK_THROWS_AS(howe_closure(spec, holey), Error);
}

TEST_CASE("howe closure laws on random bases") {
    SpecDocument spec = ex34_spec();
    auto universe = enumerate_terms(spec.signature(), 3); // 8 terms, subterm closed
    std::mt19937_64 rng(41);

    for (int trial = 0; trial < 30; ++trial) {
        FiniteRelation r = random_preorder_base(rng, universe, 0.12, trial % 2 == 0, false);
        HoweResult res = howe_closure(spec, r);
        CHECK(r.subset_of(res.closure)); // stage 0

        if (is_reflexive(r)) {
            CHECK(is_reflexive(res.closure));
            CHECK(is_congruence(spec, res.closure));
        }
    }

    for (int trial = 0; trial < 30; ++trial) {
        FiniteRelation r = random_preorder_base(rng, universe, 0.10, false, true);
        HoweResult res = howe_closure(spec, r);
        // weak transitivity: closure ; R stays inside the closure
        CHECK(compose(res.closure, r).subset_of(res.closure));
    }
}

TEST_CASE("howe closure of a preorder is the least weakly transitive congruence") {
    SpecDocument spec = ex34_spec();
    auto universe = enumerate_terms(spec.signature(), 3);
    REQUIRE(universe.size() <= 12);
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 25; ++trial) {
        FiniteRelation r = random_preorder_base(rng, universe, 0.08, true, true);
        HoweResult res = howe_closure(spec, r);
        FiniteRelation oracle = oracles::least_weakly_transitive_congruence(spec, r);
        CHECK(res.closure == oracle);
    }
}

TEST_CASE("blocked closure steps are counted") {
    SpecDocument spec = ex34_spec();
    // universe misses u(d), so the step towards (u(c),u(d)) is blocked
    std::vector<Term> universe{t(spec, "c"), t(spec, "d"), t(spec, "u(c)")};
    FiniteRelation base = FiniteRelation::identity(universe);
    base.add(t(spec, "c"), t(spec, "d"));
    HoweResult res = howe_closure(spec, base);
    CHECK_FALSE(res.closure.related(t(spec, "u(c)"), t(spec, "u(d)")));
    CHECK(res.blocked > 0);
}

TEST_CASE("for a cool spec the Howe closure of bounded similarity is a weak simulation") {
    // cool fixture: v evaluates its argument and then behaves as its
    // function; w diverges, giving the similarity some real structure
    SpecDocument spec = parse_spec(R"(
        sig { c/0 d/0 w/0 v/1 }
        rule c: |- c =x=> c
        rule d: |- d -> c
        rule w: |- w -> w
        rule v(x1): x1 -> y1 |- v(x1) -> v(y1)
        rule v(x1): x1 =x=> y1_x, x1 =x1=> y1_x1 |- v(x1) =x=> y1_x
    )");
    REQUIRE(check_cool(spec).cool);

    auto universe = enumerate_terms(spec.signature(), 2); // c d v(c) v(d)
    Evaluator eval(spec);
    Bounds bounds{4, 20, 1};
    FiniteRelation sim(universe);
    for (const Term& p : universe)
        for (const Term& q : universe)
            if (weak_similar(eval, p, q, bounds).holds()) sim.add(p, q);
    REQUIRE(check_weak_simulation(spec, sim, 20).holds());

    HoweResult res = howe_closure(spec, sim);
    CHECK(check_weak_simulation(spec, res.closure, 20).holds());
    CHECK(is_congruence(spec, res.closure));
}
