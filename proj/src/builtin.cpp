#include "hosos/builtin.hpp"

namespace hosos {

const std::string& ski_text() {
    static const std::string text = R"(# extended SKI calculus
sig { S/0 K/0 I/0 S'/1 K'/1 S''/2 app/2 }

# application
rule app(x1,x2): x1 -> y1 |- app(x1,x2) -> app(y1,x2)
rule app(x1,x2): x1 =x2=> y1_x2 |- app(x1,x2) -> y1_x2

# combinators; the auxiliaries make every behaviour a unary function step
rule I: |- I =x=> x
rule K: |- K =x=> K'(x)
rule K'(x1): |- K'(x1) =x=> x1
rule S: |- S =x=> S'(x)
rule S'(x1): |- S'(x1) =x=> S''(x1,x)
rule S''(x1,x2): |- S''(x1,x2) =x=> app(app(x1,x),app(x2,x))
)";
    return text;
}

SpecDocument ski_spec() { return parse_spec(ski_text()); }

const std::string& ex34_text() {
    static const std::string text = R"(# weak similarity is not a congruence here
sig { c/0 d/0 u/1 }

rule c: |- c =x=> c
rule d: |- d -> c
rule u(x1): x1 -> y1 |- u(x1) -> u(x1)
rule u(x1): x1 =x1=> y1_x1 |- u(x1) -> c
)";
    return text;
}

SpecDocument ex34_spec() { return parse_spec(ex34_text()); }

} // namespace hosos
