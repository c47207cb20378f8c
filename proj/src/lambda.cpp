#include "hosos/lambda.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <unordered_map>

namespace hosos {

// -------- LamTerm --------

namespace {

std::size_t lam_hash_combine(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

} // namespace

LamTerm LamTerm::wrap(std::shared_ptr<const Node> node, int scope) {
    if (scope < node->min_scope)
        throw ScopeMismatch("scope " + std::to_string(scope) + " does not cover free index " +
                            std::to_string(node->min_scope - 1));
    LamTerm t;
    t.node_ = std::move(node);
    t.scope_ = scope;
    return t;
}

LamTerm LamTerm::var(int index, int scope) {
    if (index < 0) throw ScopeMismatch("negative variable index");
    auto node = std::make_shared<Node>();
    node->kind = Kind::Var;
    node->index = index;
    node->min_scope = index + 1;
    node->size = 1;
    node->hash = lam_hash_combine(0x11, static_cast<std::size_t>(index));
    return wrap(std::move(node), scope);
}

LamTerm LamTerm::app(const LamTerm& fun, const LamTerm& arg) {
    if (fun.scope_ != arg.scope_)
        throw ScopeMismatch("application of terms at different scopes");
    auto node = std::make_shared<Node>();
    node->kind = Kind::App;
    node->a = fun.node_;
    node->b = arg.node_;
    node->min_scope = std::max(fun.node_->min_scope, arg.node_->min_scope);
    node->size = 1 + fun.node_->size + arg.node_->size;
    node->hash = lam_hash_combine(lam_hash_combine(0x22, fun.node_->hash), arg.node_->hash);
    return wrap(std::move(node), fun.scope_);
}

LamTerm LamTerm::lam(const LamTerm& body) {
    if (body.scope_ < 1) throw ScopeMismatch("lambda body must have scope >= 1");
    auto node = std::make_shared<Node>();
    node->kind = Kind::Lam;
    node->a = body.node_;
    node->min_scope = std::max(body.node_->min_scope - 1, 0);
    node->size = 1 + body.node_->size;
    node->hash = lam_hash_combine(0x33, body.node_->hash);
    return wrap(std::move(node), body.scope_ - 1);
}

LamTerm LamTerm::fun() const { return wrap(node_->a, scope_); }
LamTerm LamTerm::arg() const { return wrap(node_->b, scope_); }
LamTerm LamTerm::body() const { return wrap(node_->a, scope_ + 1); }

std::size_t LamTerm::hash() const {
    if (!node_) return 0;
    return lam_hash_combine(node_->hash, static_cast<std::size_t>(scope_));
}

LamTerm LamTerm::at_scope(int n) const { return wrap(node_, n); }

namespace {

std::strong_ordering node_cmp(const LamTerm& a, const LamTerm& b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    if (auto c = static_cast<int>(a.kind()) <=> static_cast<int>(b.kind()); c != 0) return c;
    switch (a.kind()) {
        case LamTerm::Kind::Var: return a.index() <=> b.index();
        case LamTerm::Kind::App:
            if (auto c = node_cmp(a.fun(), b.fun()); c != 0) return c;
            return node_cmp(a.arg(), b.arg());
        default: return node_cmp(a.body(), b.body());
    }
}

bool node_eq(const LamTerm& a, const LamTerm& b) {
    if (a.hash() != b.hash()) return false;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case LamTerm::Kind::Var: return a.index() == b.index();
        case LamTerm::Kind::App: return node_eq(a.fun(), b.fun()) && node_eq(a.arg(), b.arg());
        default: return node_eq(a.body(), b.body());
    }
}

} // namespace

bool LamTerm::operator==(const LamTerm& other) const {
    if (node_ == other.node_ && scope_ == other.scope_) return true;
    if (!node_ || !other.node_) return node_ == other.node_;
    if (scope_ != other.scope_) return false;
    return node_eq(*this, other);
}

std::strong_ordering LamTerm::operator<=>(const LamTerm& other) const {
    if (auto c = scope_ <=> other.scope_; c != 0) return c;
    return node_cmp(*this, other);
}

namespace {

std::string binder_name(int depth) {
    static const char* names = "abcdefghijklmnopqrstuvwxyz";
    std::string n(1, names[depth % 26]);
    if (depth >= 26) n += std::to_string(depth / 26);
    return n;
}

void print_term(const LamTerm& t, int depth, const std::vector<std::string>* free_names,
                std::ostringstream& out, bool fun_pos, bool arg_pos) {
    switch (t.kind()) {
        case LamTerm::Kind::Var: {
            int k = t.index();
            if (k < depth) {
                out << binder_name(depth - 1 - k);
            } else {
                int free = k - depth;
                if (free_names && free < static_cast<int>(free_names->size()))
                    out << (*free_names)[free];
                else
                    out << "#" << free;
            }
            return;
        }
        case LamTerm::Kind::App: {
            bool parens = arg_pos;
            if (parens) out << "(";
            print_term(t.fun(), depth, free_names, out, true, false);
            out << " ";
            print_term(t.arg(), depth, free_names, out, false, true);
            if (parens) out << ")";
            return;
        }
        default: {
            bool parens = fun_pos || arg_pos;
            if (parens) out << "(";
            out << "\\" << binder_name(depth) << ". ";
            print_term(t.body(), depth + 1, free_names, out, false, false);
            if (parens) out << ")";
            return;
        }
    }
}

} // namespace

std::string LamTerm::str(const std::vector<std::string>* free_names) const {
    if (!node_) return "<empty>";
    std::ostringstream out;
    print_term(*this, 0, free_names, out, false, false);
    return out.str();
}

// -------- substitution --------

namespace {

// indices >= cutoff move up by `by`
LamTerm shift(const LamTerm& t, int by, int cutoff, int result_scope) {
    switch (t.kind()) {
        case LamTerm::Kind::Var: {
            int k = t.index();
            return LamTerm::var(k >= cutoff ? k + by : k, result_scope);
        }
        case LamTerm::Kind::App:
            return LamTerm::app(shift(t.fun(), by, cutoff, result_scope),
                                shift(t.arg(), by, cutoff, result_scope));
        default:
            return LamTerm::lam(shift(t.body(), by, cutoff + 1, result_scope + 1));
    }
}

// replaces the variable bound at `depth` with arg (given at the root scope)
LamTerm subst_at(const LamTerm& t, int depth, const LamTerm& arg, int result_scope) {
    switch (t.kind()) {
        case LamTerm::Kind::Var: {
            int k = t.index();
            if (k == depth) return shift(arg, depth, 0, result_scope);
            return LamTerm::var(k > depth ? k - 1 : k, result_scope);
        }
        case LamTerm::Kind::App:
            return LamTerm::app(subst_at(t.fun(), depth, arg, result_scope),
                                subst_at(t.arg(), depth, arg, result_scope));
        default:
            return LamTerm::lam(subst_at(t.body(), depth + 1, arg, result_scope + 1));
    }
}

} // namespace

LamTerm capture_free_subst(const LamTerm& body, const LamTerm& arg) {
    if (body.scope() != arg.scope() + 1)
        throw ScopeMismatch("substitution needs body scope = argument scope + 1");
    return subst_at(body, 0, arg, arg.scope());
}

LamTerm close_term(const LamTerm& t, const std::vector<LamTerm>& us) {
    if (static_cast<int>(us.size()) != t.scope())
        throw ScopeMismatch("closing tuple must match the term's scope");
    for (const LamTerm& u : us)
        if (u.scope() != 0) throw ScopeMismatch("closing terms must be closed");
    std::function<LamTerm(const LamTerm&, int)> go = [&](const LamTerm& s, int depth) -> LamTerm {
        switch (s.kind()) {
            case LamTerm::Kind::Var: {
                int k = s.index();
                if (k < depth) return LamTerm::var(k, depth);
                return us[k - depth].at_scope(depth);
            }
            case LamTerm::Kind::App: return LamTerm::app(go(s.fun(), depth), go(s.arg(), depth));
            default: return LamTerm::lam(go(s.body(), depth + 1));
        }
    };
    return go(t, 0);
}

// -------- operational model --------

LamBehavior cbn_step(const LamTerm& t) {
    switch (t.kind()) {
        case LamTerm::Kind::Var: return {LamBehavior::Kind::Stuck, {}, {}};
        case LamTerm::Kind::Lam: return {LamBehavior::Kind::Fun, {}, t.body()};
        default: {
            LamTerm f = t.fun();
            LamBehavior bf = cbn_step(f);
            if (bf.is_red()) return {LamBehavior::Kind::Red, LamTerm::app(bf.next, t.arg()), {}};
            if (bf.is_fun())
                return {LamBehavior::Kind::Red, capture_free_subst(bf.body, t.arg()), {}};
            return {LamBehavior::Kind::Stuck, {}, {}};
        }
    }
}

LamOutcome run_lambda(const LamTerm& t, std::size_t fuel) {
    if (fuel < 1) throw Error("run_lambda: fuel must be >= 1");
    LamOutcome out;
    std::unordered_map<LamTerm, std::size_t, LamTermHash> seen;
    LamTerm cur = t;
    std::size_t steps = 0;
    for (;;) {
        LamBehavior b = cbn_step(cur);
        if (b.is_fun()) {
            out.kind = LamOutcome::Kind::Lambda;
            out.last = cur;
            out.body = b.body;
            out.steps = steps;
            return out;
        }
        if (b.is_stuck()) {
            out.kind = LamOutcome::Kind::Stuck;
            out.last = cur;
            out.steps = steps;
            return out;
        }
        seen.emplace(cur, steps);
        if (steps == fuel) {
            out.kind = LamOutcome::Kind::FuelExhausted;
            out.last = cur;
            out.steps = steps;
            return out;
        }
        cur = b.next;
        ++steps;
        auto it = seen.find(cur);
        if (it != seen.end()) {
            out.kind = LamOutcome::Kind::Diverges;
            out.last = cur;
            out.cycle_length = steps - it->second;
            return out;
        }
    }
}

// -------- applicative similarity --------

namespace {

struct LamSimChecker {
    Bounds bounds;
    SimMode mode;
    std::vector<LamTerm> args;
    std::set<std::pair<LamTerm, LamTerm>> stack;

    struct Res {
        Verdict::Kind kind;
        std::vector<WitnessEntry> witness;
        std::string reason;
    };

    LamSimChecker(const Bounds& b, SimMode m) : bounds(b), mode(m) {
        args = enumerate_lambda_terms(0, static_cast<int>(b.arg_size));
    }

    Res check(const LamTerm& t1, const LamTerm& t2, std::size_t depth) {
        if (stack.count({t1, t2})) return {Verdict::Kind::Holds, {}, {}};
        if (depth == 0) return {Verdict::Kind::Holds, {}, {}};
        stack.insert({t1, t2});
        Res res = mode == SimMode::Strong ? strong_clauses(t1, t2, depth)
                                          : weak_clauses(t1, t2, depth);
        stack.erase({t1, t2});
        return res;
    }

    Res body_args(const LamTerm& t1, const LamTerm& t2, const LamTerm& b1, const LamTerm& b2,
                  std::size_t depth) {
        bool saw_unknown = false;
        std::string why;
        for (const LamTerm& e : args) {
            LamTerm left = capture_free_subst(b1, e);
            LamTerm right = capture_free_subst(b2, e);
            Res r = check(left, right, depth - 1);
            if (r.kind == Verdict::Kind::Refuted) {
                Res out{Verdict::Kind::Refuted, {}, {}};
                out.witness.push_back({t1.str(), t2.str(), "fun-arg",
                                       "argument " + e.str() + ": compare " + left.str() +
                                           " with " + right.str()});
                for (const WitnessEntry& w : r.witness) out.witness.push_back(w);
                return out;
            }
            if (r.kind == Verdict::Kind::Unknown) {
                saw_unknown = true;
                if (why.empty()) why = r.reason;
            }
        }
        if (saw_unknown) return {Verdict::Kind::Unknown, {}, why};
        return {Verdict::Kind::Holds, {}, {}};
    }

    Res weak_clauses(const LamTerm& t1, const LamTerm& t2, std::size_t depth) {
        LamOutcome o1 = run_lambda(t1, bounds.fuel);
        if (o1.fuel_exhausted())
            return {Verdict::Kind::Unknown, {}, "fuel exhausted evaluating " + t1.str()};
        if (o1.diverges() || o1.kind == LamOutcome::Kind::Stuck)
            return {Verdict::Kind::Holds, {}, {}}; // no λ-convergence to match
        LamOutcome o2 = run_lambda(t2, bounds.fuel);
        if (o2.fuel_exhausted())
            return {Verdict::Kind::Unknown, {}, "fuel exhausted evaluating " + t2.str()};
        if (o2.diverges()) {
            std::ostringstream d;
            d << t1.str() << " =>* " << o1.last.str() << " but " << t2.str() << " diverges";
            if (o2.cycle_length == 1) d << ": " << o2.last.str() << " -> " << o2.last.str() << " (cycle)";
            else d << " (cycle of length " << o2.cycle_length << ")";
            return {Verdict::Kind::Refuted, {{t1.str(), t2.str(), "fun", d.str()}}, {}};
        }
        if (o2.kind == LamOutcome::Kind::Stuck) {
            return {Verdict::Kind::Refuted,
                    {{t1.str(), t2.str(), "fun",
                      t1.str() + " =>* " + o1.last.str() + " but " + t2.str() +
                          " gets stuck at " + o2.last.str()}},
                    {}};
        }
        return body_args(t1, t2, o1.body, o2.body, depth);
    }

    Res strong_clauses(const LamTerm& t1, const LamTerm& t2, std::size_t depth) {
        LamBehavior b1 = cbn_step(t1);
        if (b1.is_stuck()) return {Verdict::Kind::Holds, {}, {}};
        LamBehavior b2 = cbn_step(t2);
        if (b1.is_red()) {
            if (!b2.is_red())
                return {Verdict::Kind::Refuted,
                        {{t1.str(), t2.str(), "red",
                          t1.str() + " reduces but " + t2.str() + " does not"}},
                        {}};
            Res r = check(b1.next, b2.next, depth - 1);
            if (r.kind == Verdict::Kind::Refuted)
                r.witness.insert(r.witness.begin(),
                                 {t1.str(), t2.str(), "red",
                                  t1.str() + " -> " + b1.next.str() + ", " + t2.str() + " -> " +
                                      b2.next.str()});
            return r;
        }
        if (!b2.is_fun())
            return {Verdict::Kind::Refuted,
                    {{t1.str(), t2.str(), "fun",
                      t1.str() + " is a function but " + t2.str() + " is not"}},
                    {}};
        return body_args(t1, t2, b1.body, b2.body, depth);
    }
};

} // namespace

Verdict applicative_similar_closed(const LamTerm& t1, const LamTerm& t2, const Bounds& bounds,
                                   SimMode mode) {
    bounds.validate();
    if (t1.scope() != 0 || t2.scope() != 0)
        throw ScopeMismatch("applicative similarity needs closed terms");
    LamSimChecker checker(bounds, mode);
    LamSimChecker::Res res = checker.check(t1, t2, bounds.depth);
    Verdict v;
    v.kind = res.kind;
    v.bounds = bounds;
    v.witness = std::move(res.witness);
    v.reason = std::move(res.reason);
    for (const LamTerm& a : checker.args) v.args_tested.push_back(a.str());
    return v;
}

Verdict open_applicative_similar(const LamTerm& t1, const LamTerm& t2, const Bounds& bounds,
                                 SimMode mode) {
    bounds.validate();
    if (t1.scope() != t2.scope()) throw ScopeMismatch("open extension needs equal scopes");
    const int n = t1.scope();
    if (n == 0) return applicative_similar_closed(t1, t2, bounds, mode);

    std::vector<LamTerm> args = enumerate_lambda_terms(0, static_cast<int>(bounds.arg_size));
    Verdict out;
    out.bounds = bounds;
    for (const LamTerm& a : args) out.args_tested.push_back(a.str());
    if (args.empty()) {
        out.kind = Verdict::Kind::Unknown;
        out.reason = "no closed arguments of size <= " + std::to_string(bounds.arg_size);
        return out;
    }

    bool saw_unknown = false;
    std::string why;
    std::vector<LamTerm> tuple(n, args[0]);
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
        for (int i = 0; i < n; ++i) tuple[i] = args[idx[i]];
        Verdict v = applicative_similar_closed(close_term(t1, tuple), close_term(t2, tuple),
                                               bounds, mode);
        if (v.refuted()) {
            std::ostringstream d;
            d << "closing [";
            for (int i = 0; i < n; ++i) {
                if (i) d << ", ";
                d << "#" << i << " := " << tuple[i].str();
            }
            d << "]";
            out.kind = Verdict::Kind::Refuted;
            out.witness.push_back({t1.str(), t2.str(), "closing", d.str()});
            for (const WitnessEntry& w : v.witness) out.witness.push_back(w);
            return out;
        }
        if (v.unknown()) {
            saw_unknown = true;
            if (why.empty()) why = v.reason;
        }
        int pos = n - 1;
        while (pos >= 0 && ++idx[pos] == args.size()) idx[pos--] = 0;
        if (pos < 0) break;
    }
    out.kind = saw_unknown ? Verdict::Kind::Unknown : Verdict::Kind::Holds;
    out.reason = saw_unknown ? why : "";
    return out;
}

// -------- enumeration, random terms, parsing --------

std::vector<LamTerm> enumerate_lambda_terms(int scope, int max_size) {
    if (max_size < 1) throw Error("enumerate_lambda_terms: max_size must be >= 1");
    std::map<std::pair<int, int>, std::vector<LamTerm>> memo; // (scope, exact size)
    std::function<const std::vector<LamTerm>&(int, int)> of = [&](int s, int k)
        -> const std::vector<LamTerm>& {
        auto key = std::make_pair(s, k);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        std::vector<LamTerm> out;
        if (k == 1) {
            for (int i = 0; i < s; ++i) out.push_back(LamTerm::var(i, s));
        } else {
            for (const LamTerm& b : of(s + 1, k - 1)) out.push_back(LamTerm::lam(b));
            for (int i = 1; i <= k - 2; ++i)
                for (const LamTerm& f : of(s, i))
                    for (const LamTerm& a : of(s, k - 1 - i)) out.push_back(LamTerm::app(f, a));
        }
        return memo.emplace(key, std::move(out)).first->second;
    };
    std::vector<LamTerm> all;
    for (int k = 1; k <= max_size; ++k) {
        const auto& v = of(scope, k);
        all.insert(all.end(), v.begin(), v.end());
    }
    std::sort(all.begin(), all.end());
    return all;
}

LamTerm random_lambda_term(std::mt19937_64& rng, int scope, int size_budget) {
    const int min_size = scope > 0 ? 1 : 2;
    if (size_budget < min_size) size_budget = min_size;
    enum { Var, Lam, App };
    std::vector<int> options;
    if (scope > 0) options.push_back(Var);
    if (size_budget >= 2) options.push_back(Lam);
    int arg_min = scope > 0 ? 1 : 2;
    if (size_budget >= 1 + 2 * arg_min) options.push_back(App);
    int pick = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    switch (pick) {
        case Var:
            return LamTerm::var(std::uniform_int_distribution<int>(0, scope - 1)(rng), scope);
        case Lam:
            return LamTerm::lam(random_lambda_term(rng, scope + 1, size_budget - 1));
        default: {
            int left = std::uniform_int_distribution<int>(arg_min, size_budget - 1 - arg_min)(rng);
            return LamTerm::app(random_lambda_term(rng, scope, left),
                                random_lambda_term(rng, scope, size_budget - 1 - left));
        }
    }
}

namespace {

struct LamAst {
    LamTerm::Kind kind = LamTerm::Kind::Var;
    int var = 0; // bound: depth distance; free: slot, flagged below
    bool is_free = false;
    std::unique_ptr<LamAst> a, b;
};

struct LamCursor {
    const std::string& text;
    std::size_t pos = 0;
    std::vector<std::string> binders; // innermost last
    std::vector<std::string>& free_names;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
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
        if (pos == start) throw ParseError(0, "expected a name in lambda term");
        return text.substr(start, pos - start);
    }

    std::unique_ptr<LamAst> expr() {
        if (peek() == '\\') {
            ++pos;
            std::string v = name();
            skip_ws();
            if (peek() != '.') throw ParseError(0, "expected '.' after lambda binder");
            ++pos;
            binders.push_back(v);
            auto body = expr();
            binders.pop_back();
            auto node = std::make_unique<LamAst>();
            node->kind = LamTerm::Kind::Lam;
            node->a = std::move(body);
            return node;
        }
        auto head = atom();
        if (!head) throw ParseError(0, "expected a lambda term");
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '\\') { // application of a trailing lambda: f \x. e
                auto rhs = expr();
                auto node = std::make_unique<LamAst>();
                node->kind = LamTerm::Kind::App;
                node->a = std::move(head);
                node->b = std::move(rhs);
                head = std::move(node);
                return head;
            }
            auto rhs = atom();
            if (!rhs) return head;
            auto node = std::make_unique<LamAst>();
            node->kind = LamTerm::Kind::App;
            node->a = std::move(head);
            node->b = std::move(rhs);
            head = std::move(node);
        }
    }

    std::unique_ptr<LamAst> atom() {
        char c = peek();
        if (c == '(') {
            ++pos;
            auto inner = expr();
            if (peek() != ')') throw ParseError(0, "expected ')'");
            ++pos;
            return inner;
        }
        if (!name_char(c)) return nullptr;
        std::string v = name();
        auto node = std::make_unique<LamAst>();
        node->kind = LamTerm::Kind::Var;
        for (std::size_t i = binders.size(); i-- > 0;) {
            if (binders[i] == v) {
                node->var = static_cast<int>(binders.size() - 1 - i);
                return node;
            }
        }
        node->is_free = true;
        for (std::size_t i = 0; i < free_names.size(); ++i)
            if (free_names[i] == v) {
                node->var = static_cast<int>(i);
                return node;
            }
        node->var = static_cast<int>(free_names.size());
        free_names.push_back(v);
        return node;
    }
};

LamTerm build(const LamAst& ast, int depth, int total_free) {
    switch (ast.kind) {
        case LamTerm::Kind::Var: {
            int index = ast.is_free ? depth + ast.var : ast.var;
            return LamTerm::var(index, depth + total_free);
        }
        case LamTerm::Kind::App:
            return LamTerm::app(build(*ast.a, depth, total_free),
                                build(*ast.b, depth, total_free));
        default:
            return LamTerm::lam(build(*ast.a, depth + 1, total_free));
    }
}

} // namespace

LamTerm parse_lambda_term(const std::string& text, std::vector<std::string>& free_names) {
    LamCursor cur{text, 0, {}, free_names};
    auto ast = cur.expr();
    cur.skip_ws();
    if (cur.pos < text.size())
        throw ParseError(0, "trailing input after lambda term: \"" + text.substr(cur.pos) + "\"");
    return build(*ast, 0, static_cast<int>(free_names.size()));
}

} // namespace hosos
