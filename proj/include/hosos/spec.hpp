#ifndef HOSOS_SPEC_HPP
#define HOSOS_SPEC_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hosos/term.hpp"

namespace hosos {

enum class RuleKind { Red, Fun };

// Canonical metavariable names: x1..xn for arguments, yj for the reduct of
// position j, yk_z for position k applied to z (z one of x1..xn or x), and
// x for the hole of a Fun conclusion.
std::string arg_var(int i);                        // "x3"
std::string red_var(int j);                        // "y3"
std::string fun_var(int k, const std::string& z);  // "y3_x1"
inline const std::string hole_var = "x";

// A rule as written in a spec file. Premises may be incomplete.
struct DeclaredRule {
    std::string op;
    int arity = 0;
    std::set<int> red_premises;                       // j with premise xj -> yj
    std::map<int, std::set<std::string>> fun_premises;// k -> labels z of xk =z=> yk_z
    RuleKind kind = RuleKind::Red;
    OpenTerm target;
    int line = 0;

    bool premise_free() const { return red_premises.empty() && fun_premises.empty(); }
    bool mentions(int pos) const {
        return red_premises.count(pos) || fun_premises.count(pos);
    }
};

// A complete rule: one per (operator, W). Premises are determined by W and
// the kind, so only W is stored.
struct HoRule {
    std::string op;
    int arity = 0;
    std::uint64_t reducing = 0; // W as a bitmask, bit i-1 = position i
    RuleKind kind = RuleKind::Red;
    OpenTerm target;
    std::size_t declared_index = 0; // 1-based index of the originating declared rule

    bool in_w(int pos) const { return (reducing >> (pos - 1)) & 1u; }
    std::vector<int> w_positions() const;
};

// The set of metavariables a complete rule's target may use.
std::set<std::string> rule_scope(const std::string& op, int arity, std::uint64_t w, RuleKind kind);

class SpecDocument {
  public:
    SpecDocument() = default;
    // Expands premises, checks completeness, builds the dispatch index.
    SpecDocument(Signature sig, std::vector<DeclaredRule> declared);

    const Signature& signature() const { return sig_; }
    const std::vector<DeclaredRule>& declared_rules() const { return declared_; }
    const std::vector<HoRule>& rules() const { return rules_; }

    // The unique rule for (operator, W). Throws IncompleteSpec if missing.
    const HoRule& rule_for(const std::string& op, std::uint64_t w) const;

  private:
    Signature sig_;
    std::vector<DeclaredRule> declared_;
    std::vector<HoRule> rules_;
    std::map<std::pair<std::string, std::uint64_t>, std::size_t> index_;
};

// Parses the spec DSL:
//   sig { name/arity ... }
//   rule f(x1,..,xn): <premises> |- <conclusion>     (premises comma-separated)
//   premises:  xj -> yj   |   xk =z=> yk_z
//   conclusion: f(x1,..,xn) -> t   |   f(x1,..,xn) =x=> t
//   '#' starts a comment.
SpecDocument parse_spec(const std::string& text);

// Completes declared rules with missing premises in every feasible way,
// also used by the SpecDocument constructor. Exposed for tests.
std::vector<HoRule> expand_premises(const Signature& sig,
                                    const std::vector<DeclaredRule>& declared);

// -------- cool format --------

struct CoolOperator {
    enum class Status { Passive, Active, Violation };
    std::string op;
    Status status = Status::Passive;
    int receiving_position = 0;   // Active only
    std::size_t bad_rule = 0;     // Violation only; 1-based declared rule index
    std::string reason;           // Violation only
};

struct CoolReport {
    std::vector<CoolOperator> operators;
    bool cool = true;
    // The shape check reads declared rules verbatim (up to completing the
    // =z=> labels of the receiving position); recorded here for transparency.
    std::string note;

    const CoolOperator& for_op(const std::string& name) const;
};

CoolReport check_cool(const SpecDocument& spec);

std::string rule_to_string(const HoRule& rule);
std::string rule_to_string(const DeclaredRule& rule);

} // namespace hosos

#endif
