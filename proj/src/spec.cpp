#include "hosos/spec.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace hosos {

std::string arg_var(int i) { return "x" + std::to_string(i); }
std::string red_var(int j) { return "y" + std::to_string(j); }
std::string fun_var(int k, const std::string& z) { return "y" + std::to_string(k) + "_" + z; }

std::vector<int> HoRule::w_positions() const {
    std::vector<int> out;
    for (int i = 1; i <= arity; ++i)
        if (in_w(i)) out.push_back(i);
    return out;
}

std::set<std::string> rule_scope(const std::string&, int arity, std::uint64_t w, RuleKind kind) {
    std::set<std::string> scope;
    for (int i = 1; i <= arity; ++i) scope.insert(arg_var(i));
    for (int k = 1; k <= arity; ++k) {
        if ((w >> (k - 1)) & 1u) {
            scope.insert(red_var(k));
        } else {
            for (int i = 1; i <= arity; ++i) scope.insert(fun_var(k, arg_var(i)));
            if (kind == RuleKind::Fun) scope.insert(fun_var(k, hole_var));
        }
    }
    if (kind == RuleKind::Fun) scope.insert(hole_var);
    return scope;
}

// -------- declared-rule validation --------

namespace {

constexpr int kMaxRuleArity = 16; // completeness enumerates all 2^n premise sets

std::string rule_label(const DeclaredRule& r, std::size_t index) {
    std::string s = "rule " + std::to_string(index) + " (" + r.op + ")";
    if (r.line > 0) s += " at line " + std::to_string(r.line);
    return s;
}

void validate_declared(const Signature& sig, const DeclaredRule& r, std::size_t index) {
    const std::string where = rule_label(r, index);
    auto ar = sig.arity(r.op);
    if (!ar) throw Error(where + ": unknown operator");
    if (*ar != r.arity)
        throw ArityMismatch(where + ": operator " + r.op + " has arity " + std::to_string(*ar));
    if (r.arity > kMaxRuleArity)
        throw Error(where + ": arity exceeds the supported maximum of " +
                    std::to_string(kMaxRuleArity));
    std::set<std::string> labels;
    for (int i = 1; i <= r.arity; ++i) labels.insert(arg_var(i));
    if (r.kind == RuleKind::Fun) labels.insert(hole_var);
    for (int j : r.red_premises) {
        if (j < 1 || j > r.arity) throw Error(where + ": premise position out of range");
        if (r.fun_premises.count(j))
            throw Error(where + ": position " + std::to_string(j) +
                        " has both a reduction and an application premise");
    }
    for (const auto& [k, zs] : r.fun_premises) {
        if (k < 1 || k > r.arity) throw Error(where + ": premise position out of range");
        for (const std::string& z : zs)
            if (!labels.count(z))
                throw ScopeError(where, z);
    }
    if (r.target.empty()) throw Error(where + ": missing target");
    // Target scope is determined by the declared premises only.
    std::set<std::string> scope;
    for (int i = 1; i <= r.arity; ++i) scope.insert(arg_var(i));
    if (r.kind == RuleKind::Fun) scope.insert(hole_var);
    for (int j : r.red_premises) scope.insert(red_var(j));
    for (const auto& [k, zs] : r.fun_premises)
        for (const std::string& z : zs) scope.insert(fun_var(k, z));
    try {
        validate_open_term(sig, r.target, scope);
    } catch (const ScopeError& e) {
        throw ScopeError(where, e.variable);
    }
}

} // namespace

// -------- expansion --------

std::vector<HoRule> expand_premises(const Signature& sig,
                                    const std::vector<DeclaredRule>& declared) {
    for (std::size_t i = 0; i < declared.size(); ++i)
        validate_declared(sig, declared[i], i + 1);

    std::map<std::pair<std::string, std::uint64_t>, HoRule> by_key;
    for (std::size_t di = 0; di < declared.size(); ++di) {
        const DeclaredRule& r = declared[di];
        std::vector<int> unmentioned;
        for (int pos = 1; pos <= r.arity; ++pos)
            if (!r.mentions(pos)) unmentioned.push_back(pos);

        std::uint64_t base_w = 0;
        for (int j : r.red_premises) base_w |= (1ull << (j - 1));

        // Every unmentioned position independently joins W or its complement.
        for (std::uint64_t choice = 0; choice < (1ull << unmentioned.size()); ++choice) {
            std::uint64_t w = base_w;
            for (std::size_t b = 0; b < unmentioned.size(); ++b)
                if ((choice >> b) & 1u) w |= (1ull << (unmentioned[b] - 1));

            HoRule rule{r.op, r.arity, w, r.kind, r.target, di + 1};
            auto key = std::make_pair(r.op, w);
            auto it = by_key.find(key);
            if (it == by_key.end()) {
                by_key.emplace(key, std::move(rule));
            } else if (it->second.kind != rule.kind || !(it->second.target == rule.target)) {
                std::ostringstream msg;
                msg << "operator " << r.op << ", W={";
                bool first = true;
                for (int i = 1; i <= r.arity; ++i)
                    if ((w >> (i - 1)) & 1u) {
                        if (!first) msg << ",";
                        msg << i;
                        first = false;
                    }
                msg << "}: declared rules " << it->second.declared_index << " and " << (di + 1)
                    << " expand to conflicting rules";
                throw ConflictingRules(msg.str());
            }
            // Identical duplicates merge silently; the earliest declaration wins.
        }
    }

    std::vector<HoRule> out;
    for (const auto& [name, ar] : sig.operators()) {
        for (std::uint64_t w = 0; w < (1ull << ar); ++w) {
            auto it = by_key.find({name, w});
            if (it == by_key.end()) {
                std::ostringstream msg;
                msg << "no rule for operator " << name << " with W={";
                bool first = true;
                for (int i = 1; i <= ar; ++i)
                    if ((w >> (i - 1)) & 1u) {
                        if (!first) msg << ",";
                        msg << i;
                        first = false;
                    }
                msg << "}";
                throw IncompleteSpec(msg.str());
            }
            out.push_back(it->second);
        }
    }
    return out;
}

// -------- SpecDocument --------

SpecDocument::SpecDocument(Signature sig, std::vector<DeclaredRule> declared)
    : sig_(std::move(sig)), declared_(std::move(declared)) {
    rules_ = expand_premises(sig_, declared_);
    for (std::size_t i = 0; i < rules_.size(); ++i)
        index_[{rules_[i].op, rules_[i].reducing}] = i;
}

const HoRule& SpecDocument::rule_for(const std::string& op, std::uint64_t w) const {
    auto it = index_.find({op, w});
    if (it == index_.end())
        throw IncompleteSpec("no rule for operator " + op);
    return rules_[it->second];
}

// -------- DSL parser --------

namespace {

enum class Tok { Name, LBrace, RBrace, LParen, RParen, Comma, Slash, Colon, Arrow, DArrow, Eq, Turnstile, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int line = 1;
    std::size_t i = 0;
    auto is_name = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        if (is_name(c)) {
            std::size_t start = i;
            while (i < text.size() && is_name(text[i])) ++i;
            out.push_back({Tok::Name, text.substr(start, i - start), line});
            continue;
        }
        switch (c) {
            case '{': out.push_back({Tok::LBrace, "{", line}); ++i; break;
            case '}': out.push_back({Tok::RBrace, "}", line}); ++i; break;
            case '(': out.push_back({Tok::LParen, "(", line}); ++i; break;
            case ')': out.push_back({Tok::RParen, ")", line}); ++i; break;
            case ',': out.push_back({Tok::Comma, ",", line}); ++i; break;
            case '/': out.push_back({Tok::Slash, "/", line}); ++i; break;
            case ':': out.push_back({Tok::Colon, ":", line}); ++i; break;
            case '-':
                if (i + 1 < text.size() && text[i + 1] == '>') {
                    out.push_back({Tok::Arrow, "->", line});
                    i += 2;
                } else {
                    throw ParseError(line, "stray '-'");
                }
                break;
            case '=':
                if (i + 1 < text.size() && text[i + 1] == '>') {
                    out.push_back({Tok::DArrow, "=>", line});
                    i += 2;
                } else {
                    out.push_back({Tok::Eq, "=", line});
                    ++i;
                }
                break;
            case '|':
                if (i + 1 < text.size() && text[i + 1] == '-') {
                    out.push_back({Tok::Turnstile, "|-", line});
                    i += 2;
                } else {
                    throw ParseError(line, "stray '|'");
                }
                break;
            default:
                throw ParseError(line, std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({Tok::End, "", line});
    return out;
}

struct RuleParser {
    const std::vector<Token>& toks;
    std::size_t pos = 0;

    const Token& peek() const { return toks[pos]; }
    Token next() { return toks[pos++]; }
    Token expect(Tok kind, const std::string& what) {
        if (peek().kind != kind)
            throw ParseError(peek().line, "expected " + what + ", got \"" + peek().text + "\"");
        return next();
    }
    bool accept(Tok kind) {
        if (peek().kind != kind) return false;
        ++pos;
        return true;
    }

    // name or name(t1,...,tn); leaves resolve to vars later
    OpenTerm term() {
        Token head = expect(Tok::Name, "a name");
        std::vector<OpenTerm> args;
        if (accept(Tok::LParen)) {
            if (peek().kind != Tok::RParen) {
                args.push_back(term());
                while (accept(Tok::Comma)) args.push_back(term());
            }
            expect(Tok::RParen, "')'");
        }
        return OpenTerm::op(head.text, std::move(args));
    }
};

OpenTerm resolve_vars(const Signature& sig, const OpenTerm& raw, int line) {
    if (raw.args().empty() && !sig.contains(raw.name())) return OpenTerm::var(raw.name());
    if (!sig.contains(raw.name()))
        throw ParseError(line, "unknown operator: " + raw.name());
    std::vector<OpenTerm> args;
    for (const OpenTerm& a : raw.args()) args.push_back(resolve_vars(sig, a, line));
    return OpenTerm::op(raw.name(), std::move(args));
}

int parse_position(const std::string& name, const std::string& prefix, int arity, int line) {
    if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0)
        return 0;
    int v = 0;
    for (std::size_t i = prefix.size(); i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return 0;
        v = v * 10 + (name[i] - '0');
    }
    if (v < 1 || v > arity) throw ParseError(line, "premise position out of range: " + name);
    return v;
}

} // namespace

SpecDocument parse_spec(const std::string& text) {
    std::vector<Token> toks = tokenize(text);
    RuleParser p{toks};

    Signature sig;
    bool have_sig = false;
    std::vector<DeclaredRule> declared;

    while (p.peek().kind != Tok::End) {
        Token kw = p.expect(Tok::Name, "'sig' or 'rule'");
        if (kw.text == "sig") {
            p.expect(Tok::LBrace, "'{'");
            while (p.peek().kind != Tok::RBrace) {
                Token name = p.expect(Tok::Name, "an operator name");
                p.expect(Tok::Slash, "'/'");
                Token ar = p.expect(Tok::Name, "an arity");
                int arity = 0;
                for (char c : ar.text) {
                    if (!std::isdigit(static_cast<unsigned char>(c)))
                        throw ParseError(ar.line, "arity must be a number: " + ar.text);
                    arity = arity * 10 + (c - '0');
                }
                try {
                    sig.add(name.text, arity);
                } catch (const Error& e) {
                    throw ParseError(name.line, e.what());
                }
            }
            p.expect(Tok::RBrace, "'}'");
            have_sig = true;
            continue;
        }
        if (kw.text != "rule") throw ParseError(kw.line, "expected 'sig' or 'rule', got \"" + kw.text + "\"");
        if (!have_sig) throw ParseError(kw.line, "rule before sig block");

        DeclaredRule rule;
        rule.line = kw.line;
        Token op = p.expect(Tok::Name, "an operator name");
        rule.op = op.text;
        auto ar = sig.arity(rule.op);
        if (!ar) throw ParseError(op.line, "unknown operator: " + rule.op);
        rule.arity = *ar;
        // header arguments must be x1..xn in order; parens optional for constants
        if (p.accept(Tok::LParen)) {
            int expect_i = 1;
            if (p.peek().kind != Tok::RParen) {
                do {
                    Token v = p.expect(Tok::Name, "an argument variable");
                    if (v.text != arg_var(expect_i))
                        throw ParseError(v.line, "rule header argument " + std::to_string(expect_i) +
                                                     " must be " + arg_var(expect_i));
                    ++expect_i;
                } while (p.accept(Tok::Comma));
            }
            p.expect(Tok::RParen, "')'");
            if (expect_i - 1 != rule.arity)
                throw ParseError(op.line, "rule header for " + rule.op + " must list " +
                                              std::to_string(rule.arity) + " arguments");
        } else if (rule.arity != 0) {
            throw ParseError(op.line, "rule header for " + rule.op + " must list its arguments");
        }
        p.expect(Tok::Colon, "':'");

        // premises up to '|-'
        while (p.peek().kind != Tok::Turnstile) {
            Token lhs = p.expect(Tok::Name, "a premise");
            int k = parse_position(lhs.text, "x", rule.arity, lhs.line);
            if (k == 0) throw ParseError(lhs.line, "premise must start with an argument variable, got \"" + lhs.text + "\"");
            if (p.accept(Tok::Arrow)) {
                Token rhs = p.expect(Tok::Name, "a variable");
                if (rhs.text != red_var(k))
                    throw ParseError(rhs.line, "premise " + lhs.text + " -> must bind " + red_var(k));
                if (rule.red_premises.count(k) || rule.fun_premises.count(k))
                    throw ParseError(lhs.line, "duplicate premise for position " + std::to_string(k));
                rule.red_premises.insert(k);
            } else {
                p.expect(Tok::Eq, "'->' or '=z=>'");
                Token z = p.expect(Tok::Name, "a label variable");
                p.expect(Tok::DArrow, "'=>'");
                Token rhs = p.expect(Tok::Name, "a variable");
                if (rhs.text != fun_var(k, z.text))
                    throw ParseError(rhs.line, "premise " + lhs.text + " =" + z.text +
                                                   "=> must bind " + fun_var(k, z.text));
                if (rule.red_premises.count(k))
                    throw ParseError(lhs.line, "position " + std::to_string(k) +
                                                   " has both premise forms");
                if (!rule.fun_premises[k].insert(z.text).second)
                    throw ParseError(lhs.line, "duplicate premise for position " +
                                                   std::to_string(k) + " label " + z.text);
            }
            if (!p.accept(Tok::Comma)) break;
        }
        Token ts = p.expect(Tok::Turnstile, "'|-'");

        OpenTerm lhs_raw = p.term();
        OpenTerm lhs = resolve_vars(sig, lhs_raw, ts.line);
        std::vector<OpenTerm> expect_args;
        for (int i = 1; i <= rule.arity; ++i) expect_args.push_back(OpenTerm::var(arg_var(i)));
        OpenTerm expect_lhs = OpenTerm::op(rule.op, std::move(expect_args));
        if (!(lhs == expect_lhs))
            throw ParseError(ts.line, "conclusion source must be " + expect_lhs.str());

        if (p.accept(Tok::Arrow)) {
            rule.kind = RuleKind::Red;
        } else {
            p.expect(Tok::Eq, "'->' or '=x=>'");
            Token z = p.expect(Tok::Name, "the hole variable");
            if (z.text != hole_var)
                throw ParseError(z.line, "function conclusions are written =x=>");
            p.expect(Tok::DArrow, "'=>'");
            rule.kind = RuleKind::Fun;
        }
        OpenTerm target_raw = p.term();
        rule.target = resolve_vars(sig, target_raw, ts.line);
        declared.push_back(std::move(rule));
    }

    if (!have_sig) throw ParseError(1, "missing sig block");
    return SpecDocument(std::move(sig), std::move(declared));
}

// -------- cool format --------

namespace {

std::string shape1_target_str(const std::string& op, int arity, int j) {
    std::vector<OpenTerm> args;
    for (int i = 1; i <= arity; ++i)
        args.push_back(OpenTerm::var(i == j ? red_var(j) : arg_var(i)));
    return OpenTerm::op(op, std::move(args)).str();
}

// Returns empty string on match, otherwise the reason the rule fails every
// shape for receiving position j. Label sets of the receiving position are
// compared after completion, so partially listed =z=> premises still match.
std::string match_cool_shape(const DeclaredRule& r, int j) {
    const bool only_red_j = r.red_premises == std::set<int>{j} && r.fun_premises.empty();
    const bool only_fun_j =
        r.red_premises.empty() && r.fun_premises.size() == 1 && r.fun_premises.count(j);

    if (only_red_j) {
        if (r.kind != RuleKind::Red)
            return "a rule with premise " + arg_var(j) + " -> " + red_var(j) +
                   " must have a reduction conclusion";
        std::vector<OpenTerm> args;
        for (int i = 1; i <= r.arity; ++i)
            args.push_back(OpenTerm::var(i == j ? red_var(j) : arg_var(i)));
        OpenTerm expected = OpenTerm::op(r.op, std::move(args));
        if (!(r.target == expected))
            return "target must be " + shape1_target_str(r.op, r.arity, j) + ", got " +
                   r.target.str();
        return "";
    }
    if (only_fun_j) {
        std::set<std::string> allowed;
        for (int i = 1; i <= r.arity; ++i) {
            if (i == j) continue;
            allowed.insert(arg_var(i));
            allowed.insert(fun_var(j, arg_var(i)));
        }
        if (r.kind == RuleKind::Fun) {
            allowed.insert(hole_var);
            allowed.insert(fun_var(j, hole_var));
        }
        for (const std::string& v : r.target.vars())
            if (!allowed.count(v))
                return "target may not mention " + v;
        return "";
    }
    return "premises must mention exactly position " + std::to_string(j);
}

} // namespace

const CoolOperator& CoolReport::for_op(const std::string& name) const {
    for (const CoolOperator& e : operators)
        if (e.op == name) return e;
    throw Error("no such operator in cool report: " + name);
}

CoolReport check_cool(const SpecDocument& spec) {
    CoolReport report;
    report.note = "shapes are checked against the declared rules as written; only the "
                  "=z=> labels of the receiving position are completed";

    // declared rules grouped per operator, remembering global 1-based indices
    std::map<std::string, std::vector<std::size_t>> rules_of;
    for (std::size_t i = 0; i < spec.declared_rules().size(); ++i)
        rules_of[spec.declared_rules()[i].op].push_back(i);

    for (const auto& [name, arity] : spec.signature().operators()) {
        CoolOperator entry;
        entry.op = name;
        const auto& idxs = rules_of[name];

        bool all_premise_free = true;
        for (std::size_t i : idxs)
            if (!spec.declared_rules()[i].premise_free()) all_premise_free = false;

        if (all_premise_free) {
            // completeness guarantees at least one rule and merges duplicates,
            // so a premise-free operator is passive
            entry.status = CoolOperator::Status::Passive;
            report.operators.push_back(entry);
            continue;
        }

        // active: look for a receiving position that all rules fit
        std::size_t best_fail_rank = 0;
        bool found = false;
        for (int j = 1; j <= arity && !found; ++j) {
            std::string reason;
            std::size_t fail_rank = idxs.size();
            std::size_t fail_idx = 0;
            for (std::size_t rank = 0; rank < idxs.size(); ++rank) {
                reason = match_cool_shape(spec.declared_rules()[idxs[rank]], j);
                if (!reason.empty()) {
                    fail_rank = rank;
                    fail_idx = idxs[rank];
                    break;
                }
            }
            if (fail_rank == idxs.size()) {
                entry.status = CoolOperator::Status::Active;
                entry.receiving_position = j;
                found = true;
            } else if (entry.status != CoolOperator::Status::Violation ||
                       fail_rank > best_fail_rank) {
                entry.status = CoolOperator::Status::Violation;
                entry.bad_rule = fail_idx + 1;
                entry.reason = "receiving position " + std::to_string(j) + ": " + reason;
                best_fail_rank = fail_rank;
            }
        }
        if (!found && entry.status != CoolOperator::Status::Violation) {
            // arity 0 with premises cannot happen; guard anyway
            entry.status = CoolOperator::Status::Violation;
            entry.bad_rule = idxs.empty() ? 0 : idxs.front() + 1;
            entry.reason = "no receiving position available";
        }
        if (entry.status == CoolOperator::Status::Violation) report.cool = false;
        report.operators.push_back(entry);
    }
    return report;
}

// -------- printing --------

std::string rule_to_string(const DeclaredRule& r) {
    std::ostringstream out;
    out << "rule " << r.op << "(";
    for (int i = 1; i <= r.arity; ++i) {
        if (i > 1) out << ",";
        out << arg_var(i);
    }
    out << "):";
    bool first = true;
    for (int j : r.red_premises) {
        out << (first ? " " : ", ") << arg_var(j) << " -> " << red_var(j);
        first = false;
    }
    for (const auto& [k, zs] : r.fun_premises)
        for (const std::string& z : zs) {
            out << (first ? " " : ", ") << arg_var(k) << " =" << z << "=> " << fun_var(k, z);
            first = false;
        }
    out << " |- " << r.op;
    if (r.arity > 0) {
        out << "(";
        for (int i = 1; i <= r.arity; ++i) {
            if (i > 1) out << ",";
            out << arg_var(i);
        }
        out << ")";
    }
    out << (r.kind == RuleKind::Red ? " -> " : " =x=> ") << r.target.str();
    return out.str();
}

std::string rule_to_string(const HoRule& r) {
    std::ostringstream out;
    out << r.op << "[W={";
    bool first = true;
    for (int i : r.w_positions()) {
        if (!first) out << ",";
        out << i;
        first = false;
    }
    out << "}]" << (r.kind == RuleKind::Red ? " -> " : " =x=> ") << r.target.str();
    return out.str();
}

} // namespace hosos
