#include <doctest.h>

#include "hosos/builtin.hpp"
#include "hosos/spec.hpp"

using namespace hosos;

TEST_CASE("parsing the four-rule counterexample spec") {
    SpecDocument spec = ex34_spec();
    CHECK(spec.signature().operators().size() == 3);
    CHECK(spec.signature().arity("u") == 1);
    REQUIRE(spec.declared_rules().size() == 4);
    CHECK(spec.declared_rules()[0].kind == RuleKind::Fun);
    CHECK(spec.declared_rules()[1].kind == RuleKind::Red);
    CHECK(spec.declared_rules()[2].red_premises == std::set<int>{1});
    CHECK(spec.declared_rules()[3].fun_premises.at(1) == std::set<std::string>{"x1"});
    // expansion: c, d have one rule each; u has W={1} and W={}
    CHECK(spec.rules().size() == 4);
    CHECK(spec.rule_for("u", 0b1).target.str() == "u(x1)");
    CHECK(spec.rule_for("u", 0).target.str() == "c");
}

TEST_CASE("parsing the SKI application rules") {
    SpecDocument spec = ski_spec();
    int app_rules = 0;
    for (const DeclaredRule& r : spec.declared_rules())
        if (r.op == "app") ++app_rules;
    CHECK(app_rules == 2);
    // app1 mentions position 1 only: expansion covers W={1},{1,2}; app2 covers W={},{2}
    CHECK(spec.rule_for("app", 0b01).target.str() == "app(y1,x2)");
    CHECK(spec.rule_for("app", 0b11).target.str() == "app(y1,x2)");
    CHECK(spec.rule_for("app", 0b00).target.str() == "y1_x2");
    CHECK(spec.rule_for("app", 0b10).target.str() == "y1_x2");
    CHECK(spec.rule_for("app", 0b00).kind == RuleKind::Red);
}

TEST_CASE("expansion completes unmentioned positions in every feasible way") {
    // a premise-free rule for a binary operator expands to all four W sets
    SpecDocument spec = parse_spec(R"(
        sig { a/0 f/2 }
        rule a: |- a -> a
        rule f(x1,x2): |- f(x1,x2) -> x1
    )");
    int f_rules = 0;
    for (const HoRule& r : spec.rules())
        if (r.op == "f") ++f_rules;
    CHECK(f_rules == 4);
    for (std::uint64_t w : {0ull, 1ull, 2ull, 3ull}) {
        CHECK(spec.rule_for("f", w).target.str() == "x1");
        CHECK(spec.rule_for("f", w).kind == RuleKind::Red);
    }
    // a premise-free constant rule yields exactly one rule with W = {}
    CHECK(spec.rule_for("a", 0).kind == RuleKind::Red);
}

TEST_CASE("expansion is idempotent on complete rule lists") {
    SpecDocument spec = ski_spec();
    // feed back fully exercised rules as declared rules with explicit premises
    std::vector<DeclaredRule> declared;
    for (const HoRule& r : spec.rules()) {
        DeclaredRule d;
        d.op = r.op;
        d.arity = r.arity;
        d.kind = r.kind;
        d.target = r.target;
        for (int pos = 1; pos <= r.arity; ++pos) {
            if (r.in_w(pos)) {
                d.red_premises.insert(pos);
            } else {
                for (int i = 1; i <= r.arity; ++i)
                    d.fun_premises[pos].insert(arg_var(i));
                if (r.kind == RuleKind::Fun) d.fun_premises[pos].insert(hole_var);
            }
        }
        declared.push_back(std::move(d));
    }
    std::vector<HoRule> once = expand_premises(spec.signature(), declared);
    REQUIRE(once.size() == spec.rules().size());
    for (std::size_t i = 0; i < once.size(); ++i) {
        CHECK(once[i].op == spec.rules()[i].op);
        CHECK(once[i].reducing == spec.rules()[i].reducing);
        CHECK(once[i].kind == spec.rules()[i].kind);
        CHECK(once[i].target == spec.rules()[i].target);
    }
}

TEST_CASE("scope violations are rejected") {
    // target mentions y2 but position 2 has no reduction premise
    CHECK_THROWS_AS(parse_spec(R"(
        sig { a/0 f/2 }
        rule a: |- a -> a
        rule f(x1,x2): x1 -> y1 |- f(x1,x2) -> y2
    )"),
                    ScopeError);
    // y1_x2 needs the premise x1 =x2=> y1_x2
    CHECK_THROWS_AS(parse_spec(R"(
        sig { a/0 f/2 }
        rule f(x1,x2): x1 =x1=> y1_x1 |- f(x1,x2) -> y1_x2
    )"),
                    ScopeError);
    // the hole variable is only in scope for =x=> conclusions
    CHECK_THROWS_AS(parse_spec(R"(
        sig { a/0 f/1 }
        rule f(x1): |- f(x1) -> x
    )"),
                    ScopeError);
}

TEST_CASE("conflicting and incomplete rule sets are rejected") {
    CHECK_THROWS_AS(parse_spec(R"(
        sig { a/0 b/0 }
        rule a: |- a -> a
        rule a: |- a -> b
        rule b: |- b -> b
    )"),
                    ConflictingRules);
    CHECK_THROWS_AS(parse_spec(R"(
        sig { a/0 f/1 }
        rule a: |- a -> a
        rule f(x1): x1 -> y1 |- f(x1) -> f(y1)
    )"),
                    IncompleteSpec);
    // identical duplicates merge silently
    SpecDocument ok = parse_spec(R"(
        sig { a/0 }
        rule a: |- a -> a
        rule a: |- a -> a
    )");
    CHECK(ok.rules().size() == 1);
}

TEST_CASE("syntax errors carry line numbers") {
    try {
        parse_spec("sig { a/0 }\nrule a |- a -> a\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
    CHECK_THROWS_AS(parse_spec("sig { a/zero }"), ParseError);
    CHECK_THROWS_AS(parse_spec("rule a: |- a -> a"), ParseError); // rule before sig
}

TEST_CASE("cool: SKI is cool with app receiving at position 1") {
    CoolReport report = check_cool(ski_spec());
    CHECK(report.cool);
    const CoolOperator& app = report.for_op("app");
    CHECK(app.status == CoolOperator::Status::Active);
    CHECK(app.receiving_position == 1);
    for (const char* passive : {"S", "K", "I", "S'", "K'", "S''"}) {
        CHECK(report.for_op(passive).status == CoolOperator::Status::Passive);
    }
}

TEST_CASE("cool: the counterexample spec is not cool, rule 3 is the violation") {
    CoolReport report = check_cool(ex34_spec());
    CHECK_FALSE(report.cool);
    CHECK(report.for_op("c").status == CoolOperator::Status::Passive);
    CHECK(report.for_op("d").status == CoolOperator::Status::Passive);
    const CoolOperator& u = report.for_op("u");
    CHECK(u.status == CoolOperator::Status::Violation);
    CHECK(u.bad_rule == 3);
    CHECK(u.reason.find("u(y1)") != std::string::npos);
}

TEST_CASE("cool: premise-free specs are vacuously cool") {
    SpecDocument spec = parse_spec(R"(
        sig { a/0 g/1 }
        rule a: |- a =x=> x
        rule g(x1): |- g(x1) -> x1
    )");
    CoolReport report = check_cool(spec);
    CHECK(report.cool);
    CHECK(report.for_op("a").status == CoolOperator::Status::Passive);
    CHECK(report.for_op("g").status == CoolOperator::Status::Passive);
}

TEST_CASE("cool: an active operator may run its argument and become it") {
    // shape 1 plus shape 3: evaluate the argument, then behave as its function
    SpecDocument spec = parse_spec(R"(
        sig { c/0 v/1 }
        rule c: |- c =x=> c
        rule v(x1): x1 -> y1 |- v(x1) -> v(y1)
        rule v(x1): x1 =x=> y1_x |- v(x1) =x=> y1_x
    )");
    CoolReport report = check_cool(spec);
    CHECK(report.cool);
    CHECK(report.for_op("v").status == CoolOperator::Status::Active);
    CHECK(report.for_op("v").receiving_position == 1);
}

TEST_CASE("cool: shape 2 target may not mention the receiving position") {
    SpecDocument spec = parse_spec(R"(
        sig { c/0 w/1 }
        rule c: |- c =x=> c
        rule w(x1): x1 -> y1 |- w(x1) -> w(y1)
        rule w(x1): x1 =x1=> y1_x1 |- w(x1) -> y1_x1
    )");
    CoolReport report = check_cool(spec);
    CHECK_FALSE(report.cool);
    const CoolOperator& w = report.for_op("w");
    CHECK(w.status == CoolOperator::Status::Violation);
    CHECK(w.bad_rule == 3);
}

TEST_CASE("a premise-free ternary rule expands to all eight premise sets") {
    SpecDocument spec = parse_spec(R"(
        sig { a/0 f3/3 }
        rule a: |- a -> a
        rule f3(x1,x2,x3): |- f3(x1,x2,x3) -> x2
    )");
    int count = 0;
    for (const HoRule& r : spec.rules())
        if (r.op == "f3") ++count;
    CHECK(count == 8);
}

TEST_CASE("rule headers must list x1..xn in order") {
    CHECK_THROWS_AS(parse_spec(R"(
        sig { f/2 a/0 }
        rule f(x2,x1): |- f(x1,x2) -> x1
    )"),
                    ParseError);
    CHECK_THROWS_AS(parse_spec(R"(
        sig { f/2 a/0 }
        rule f(x1): |- f(x1,x2) -> x1
    )"),
                    ParseError);
}
