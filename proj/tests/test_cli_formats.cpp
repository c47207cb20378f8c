#include <doctest.h>

#include <fstream>
#include <sstream>

#include "hosos/builtin.hpp"
#include "hosos/relation.hpp"
#include "hosos/simulation.hpp"

using namespace hosos;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void check_same_rules(const SpecDocument& a, const SpecDocument& b) {
    CHECK(a.signature() == b.signature());
    REQUIRE(a.rules().size() == b.rules().size());
    for (std::size_t i = 0; i < a.rules().size(); ++i) {
        CHECK(a.rules()[i].op == b.rules()[i].op);
        CHECK(a.rules()[i].reducing == b.rules()[i].reducing);
        CHECK(a.rules()[i].kind == b.rules()[i].kind);
        CHECK(a.rules()[i].target == b.rules()[i].target);
    }
}

} // namespace

TEST_CASE("shipped .hos fixtures load and match the built-in specs") {
    const std::string dir = HOSOS_FIXTURES_DIR;
    SpecDocument ski_file = parse_spec(slurp(dir + "/ski.hos"));
    check_same_rules(ski_file, ski_spec());
    SpecDocument ex_file = parse_spec(slurp(dir + "/ex34.hos"));
    check_same_rules(ex_file, ex34_spec());
}

TEST_CASE("built-in spec texts round-trip through the parser") {
    check_same_rules(parse_spec(ski_text()), ski_spec());
    check_same_rules(parse_spec(ex34_text()), ex34_spec());
}

TEST_CASE("the shipped relation fixture is a weak simulation") {
    const std::string dir = HOSOS_FIXTURES_DIR;
    SpecDocument spec = ex34_spec();
    FiniteRelation r = parse_relation(spec, slurp(dir + "/ex34_rel.txt"));
    CHECK(r.size() == 3);
    CHECK(check_weak_simulation(spec, r, 20).holds());
}
