#include "hosos/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace hosos {

// -------- Signature --------

Signature::Signature(std::initializer_list<std::pair<std::string, int>> ops) {
    for (const auto& [name, ar] : ops) add(name, ar);
}

void Signature::add(const std::string& name, int arity) {
    if (name.empty()) throw Error("operator name must be nonempty");
    if (arity < 0) throw Error("operator arity must be >= 0: " + name);
    if (arities_.count(name)) throw Error("duplicate operator: " + name);
    ops_.emplace_back(name, arity);
    arities_[name] = arity;
}

std::optional<int> Signature::arity(const std::string& name) const {
    auto it = arities_.find(name);
    if (it == arities_.end()) return std::nullopt;
    return it->second;
}

// -------- Term --------

static std::size_t hash_combine(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

Term Term::make(std::string head, std::vector<Term> args) {
    auto node = std::make_shared<Node>();
    node->size = 1;
    node->hash = std::hash<std::string>{}(head);
    for (const Term& a : args) {
        node->size += a.size();
        node->hash = hash_combine(node->hash, a.hash());
    }
    node->head = std::move(head);
    node->args = std::move(args);
    Term t;
    t.node_ = std::move(node);
    return t;
}

bool Term::operator==(const Term& other) const {
    if (node_ == other.node_) return true;
    if (!node_ || !other.node_) return false;
    if (node_->hash != other.node_->hash || node_->size != other.node_->size) return false;
    if (node_->head != other.node_->head) return false;
    if (node_->args.size() != other.node_->args.size()) return false;
    for (std::size_t i = 0; i < node_->args.size(); ++i)
        if (!(node_->args[i] == other.node_->args[i])) return false;
    return true;
}

std::strong_ordering Term::operator<=>(const Term& other) const {
    if (node_ == other.node_) return std::strong_ordering::equal;
    if (!node_) return std::strong_ordering::less;
    if (!other.node_) return std::strong_ordering::greater;
    if (auto c = node_->size <=> other.node_->size; c != 0) return c;
    if (auto c = node_->head.compare(other.node_->head); c != 0)
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    const auto& a = node_->args;
    const auto& b = other.node_->args;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
        if (auto c = a[i] <=> b[i]; c != 0) return c;
    return a.size() <=> b.size();
}

std::string Term::str() const {
    if (!node_) return "<empty>";
    if (node_->args.empty()) return node_->head;
    std::string out = node_->head;
    out += '(';
    for (std::size_t i = 0; i < node_->args.size(); ++i) {
        if (i) out += ',';
        out += node_->args[i].str();
    }
    out += ')';
    return out;
}

// -------- OpenTerm --------

OpenTerm OpenTerm::var(std::string name) {
    auto node = std::make_shared<Node>();
    node->name = std::move(name);
    node->is_var = true;
    OpenTerm t;
    t.node_ = std::move(node);
    return t;
}

OpenTerm OpenTerm::op(std::string head, std::vector<OpenTerm> args) {
    auto node = std::make_shared<Node>();
    node->name = std::move(head);
    node->args = std::move(args);
    OpenTerm t;
    t.node_ = std::move(node);
    return t;
}

OpenTerm OpenTerm::from_term(const Term& t) {
    std::vector<OpenTerm> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(from_term(a));
    return op(t.head(), std::move(args));
}

static void collect_vars(const OpenTerm& t, std::set<std::string>& out) {
    if (t.is_var()) {
        out.insert(t.name());
        return;
    }
    for (const OpenTerm& a : t.args()) collect_vars(a, out);
}

std::set<std::string> OpenTerm::vars() const {
    std::set<std::string> out;
    collect_vars(*this, out);
    return out;
}

bool OpenTerm::is_closed() const {
    if (is_var()) return false;
    for (const OpenTerm& a : args())
        if (!a.is_closed()) return false;
    return true;
}

Term OpenTerm::to_term() const {
    if (is_var()) throw UnboundMetavariable(name());
    std::vector<Term> args;
    args.reserve(node_->args.size());
    for (const OpenTerm& a : node_->args) args.push_back(a.to_term());
    return Term::make(node_->name, std::move(args));
}

bool OpenTerm::operator==(const OpenTerm& other) const {
    if (node_ == other.node_) return true;
    if (!node_ || !other.node_) return false;
    if (node_->is_var != other.node_->is_var || node_->name != other.node_->name) return false;
    if (node_->args.size() != other.node_->args.size()) return false;
    for (std::size_t i = 0; i < node_->args.size(); ++i)
        if (!(node_->args[i] == other.node_->args[i])) return false;
    return true;
}

std::string OpenTerm::str() const {
    if (!node_) return "<empty>";
    if (node_->args.empty()) return node_->name;
    std::string out = node_->name;
    out += '(';
    for (std::size_t i = 0; i < node_->args.size(); ++i) {
        if (i) out += ',';
        out += node_->args[i].str();
    }
    out += ')';
    return out;
}

// -------- substitution --------

Term substitute(const OpenTerm& t, const std::map<std::string, Term>& binding) {
    if (t.is_var()) {
        auto it = binding.find(t.name());
        if (it == binding.end()) throw UnboundMetavariable(t.name());
        return it->second;
    }
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const OpenTerm& a : t.args()) args.push_back(substitute(a, binding));
    return Term::make(t.name(), std::move(args));
}

OpenTerm substitute_open(const OpenTerm& t, const std::map<std::string, OpenTerm>& binding) {
    if (t.is_var()) {
        auto it = binding.find(t.name());
        return it == binding.end() ? t : it->second;
    }
    std::vector<OpenTerm> args;
    args.reserve(t.args().size());
    for (const OpenTerm& a : t.args()) args.push_back(substitute_open(a, binding));
    return OpenTerm::op(t.name(), std::move(args));
}

// -------- enumeration --------

std::vector<Term> enumerate_terms(const Signature& sig, int max_size) {
    if (max_size < 1) throw Error("enumerate_terms: max_size must be >= 1");
    // by_size[s] holds all terms with exactly s operator occurrences
    std::vector<std::vector<Term>> by_size(static_cast<std::size_t>(max_size) + 1);
    for (int s = 1; s <= max_size; ++s) {
        for (const auto& [name, ar] : sig.operators()) {
            if (ar == 0) {
                if (s == 1) by_size[s].push_back(Term::make(name));
                continue;
            }
            if (s < 1 + ar) continue; // each argument needs size >= 1
            // all ways to split s-1 among ar argument slots
            std::vector<Term> partial;
            std::function<void(int, int)> fill = [&](int pos, int budget) {
                if (pos == ar) {
                    if (budget == 0) {
                        std::vector<Term> args(partial.begin(), partial.end());
                        by_size[s].push_back(Term::make(name, std::move(args)));
                    }
                    return;
                }
                int slots_left = ar - pos - 1;
                for (int k = 1; k + slots_left <= budget; ++k) {
                    for (const Term& t : by_size[k]) {
                        partial.push_back(t);
                        fill(pos + 1, budget - k);
                        partial.pop_back();
                    }
                }
            };
            fill(0, s - 1);
        }
    }
    std::vector<Term> out;
    for (int s = 1; s <= max_size; ++s)
        out.insert(out.end(), by_size[s].begin(), by_size[s].end());
    std::sort(out.begin(), out.end());
    return out;
}

// -------- validation --------

void validate_term(const Signature& sig, const Term& t) {
    if (t.empty()) throw Error("empty term");
    auto ar = sig.arity(t.head());
    if (!ar) throw Error("unknown operator: " + t.head());
    if (static_cast<std::size_t>(*ar) != t.args().size())
        throw ArityMismatch("operator " + t.head() + " expects " + std::to_string(*ar) +
                            " arguments, got " + std::to_string(t.args().size()));
    for (const Term& a : t.args()) validate_term(sig, a);
}

void validate_open_term(const Signature& sig, const OpenTerm& t,
                        const std::set<std::string>& allowed_vars) {
    if (t.empty()) throw Error("empty term");
    if (t.is_var()) {
        if (!allowed_vars.count(t.name())) throw ScopeError("term " + t.str(), t.name());
        return;
    }
    auto ar = sig.arity(t.name());
    if (!ar) throw Error("unknown operator: " + t.name());
    if (static_cast<std::size_t>(*ar) != t.args().size())
        throw ArityMismatch("operator " + t.name() + " expects " + std::to_string(*ar) +
                            " arguments, got " + std::to_string(t.args().size()));
    for (const OpenTerm& a : t.args()) validate_open_term(sig, a, allowed_vars);
}

// -------- term parsing --------

namespace {

struct TermCursor {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    static bool name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    }
    std::string name() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && name_char(text[pos])) ++pos;
        if (pos == start) throw ParseError(0, "expected a name at \"" + std::string(text.substr(pos)) + "\"");
        return std::string(text.substr(start, pos - start));
    }
    void expect(char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c)
            throw ParseError(0, std::string("expected '") + c + "' in term");
        ++pos;
    }
};

OpenTerm parse_tree(TermCursor& cur) {
    std::string head = cur.name();
    std::vector<OpenTerm> args;
    if (cur.peek() == '(') {
        cur.expect('(');
        if (cur.peek() != ')') {
            args.push_back(parse_tree(cur));
            while (cur.peek() == ',') {
                cur.expect(',');
                args.push_back(parse_tree(cur));
            }
        }
        cur.expect(')');
    }
    return OpenTerm::op(std::move(head), std::move(args));
}

// Leaves whose name is not an operator become metavariables.
OpenTerm resolve(const Signature& sig, const OpenTerm& raw) {
    if (raw.args().empty() && !sig.contains(raw.name())) return OpenTerm::var(raw.name());
    std::vector<OpenTerm> args;
    args.reserve(raw.args().size());
    for (const OpenTerm& a : raw.args()) args.push_back(resolve(sig, a));
    return OpenTerm::op(raw.name(), std::move(args));
}

} // namespace

OpenTerm parse_open_term(const Signature& sig, std::string_view text) {
    TermCursor cur{text};
    OpenTerm raw = parse_tree(cur);
    if (!cur.at_end())
        throw ParseError(0, "trailing input after term: \"" + std::string(text.substr(cur.pos)) + "\"");
    OpenTerm t = resolve(sig, raw);
    // arity check, any metavariable allowed at this stage
    validate_open_term(sig, t, t.vars());
    return t;
}

Term parse_term(const Signature& sig, std::string_view text) {
    OpenTerm t = parse_open_term(sig, text);
    if (!t.is_closed()) {
        auto vs = t.vars();
        throw Error("term is not closed, unknown symbol: " + *vs.begin());
    }
    Term closed = t.to_term();
    validate_term(sig, closed);
    return closed;
}

} // namespace hosos
