#include "hosos/opmodel.hpp"

namespace hosos {

Term Behavior::apply(const Term& arg) const {
    if (!is_fun()) throw Error("Behavior::apply on a reduction step");
    return substitute(body, {{hole_var, arg}});
}

bool Behavior::operator==(const Behavior& other) const {
    if (kind != other.kind) return false;
    return is_red() ? next == other.next : body == other.body;
}

std::string Behavior::str() const {
    return is_red() ? "-> " + next.str() : "=x=> " + body.str();
}

namespace {

// The dispatch recipe: select the rule for (head, W) and substitute
//   x_i -> p_i, y_j -> successor of p_j, y_k^{x_i} -> body of p_k applied to p_i,
// and, for Fun conclusions, y_k^x -> body of p_k with its hole kept open.
Behavior dispatch(const SpecDocument& spec, const Term& p, const std::vector<Behavior>& sub) {
    const int n = static_cast<int>(p.args().size());
    std::uint64_t w = 0;
    for (int i = 0; i < n; ++i)
        if (sub[i].is_red()) w |= (1ull << i);
    const HoRule& rule = spec.rule_for(p.head(), w);

    std::map<std::string, OpenTerm> binding;
    for (int i = 1; i <= n; ++i)
        binding[arg_var(i)] = OpenTerm::from_term(p.args()[i - 1]);
    for (int j = 1; j <= n; ++j) {
        if (rule.in_w(j)) {
            binding[red_var(j)] = OpenTerm::from_term(sub[j - 1].next);
        } else {
            for (int i = 1; i <= n; ++i)
                binding[fun_var(j, arg_var(i))] =
                    OpenTerm::from_term(sub[j - 1].apply(p.args()[i - 1]));
            if (rule.kind == RuleKind::Fun)
                binding[fun_var(j, hole_var)] = sub[j - 1].body; // hole stays open
        }
    }

    OpenTerm result = substitute_open(rule.target, binding);
    if (rule.kind == RuleKind::Red) return Behavior::red(result.to_term());
    return Behavior::fun(std::move(result));
}

template <typename Step>
EvalOutcome run_impl(Step&& step_fn, const Term& p, std::size_t fuel) {
    if (fuel < 1) throw Error("run: fuel must be >= 1");
    EvalOutcome out;
    std::unordered_map<Term, std::size_t, TermHash> seen;
    Term cur = p;
    std::size_t steps = 0;
    for (;;) {
        Behavior b = step_fn(cur);
        if (b.is_fun()) {
            out.kind = EvalOutcome::Kind::Converges;
            out.last = cur;
            out.final_body = b.body;
            out.steps = steps;
            return out;
        }
        seen.emplace(cur, steps);
        if (steps == fuel) {
            out.kind = EvalOutcome::Kind::FuelExhausted;
            out.last = cur;
            out.steps = steps;
            return out;
        }
        cur = b.next;
        ++steps;
        auto it = seen.find(cur);
        if (it != seen.end()) {
            out.kind = EvalOutcome::Kind::Diverges;
            out.last = cur;
            out.cycle_length = steps - it->second;
            return out;
        }
    }
}

template <typename Step>
WeakSuccessors weak_successors_impl(Step&& step_fn, const Term& p, std::size_t fuel) {
    WeakSuccessors out;
    std::unordered_map<Term, std::size_t, TermHash> seen;
    Term cur = p;
    std::size_t steps = 0;
    for (;;) {
        out.terms.push_back(cur);
        Behavior b = step_fn(cur);
        if (b.is_fun()) {
            out.complete = true;
            return out;
        }
        seen.emplace(cur, steps);
        if (steps == fuel) {
            out.complete = false;
            return out;
        }
        cur = b.next;
        ++steps;
        if (seen.count(cur)) {
            out.complete = true; // cycle: every weak successor already listed
            return out;
        }
    }
}

} // namespace

Behavior step(const SpecDocument& spec, const Term& p) {
    std::vector<Behavior> sub;
    sub.reserve(p.args().size());
    for (const Term& a : p.args()) sub.push_back(step(spec, a));
    return dispatch(spec, p, sub);
}

EvalOutcome run(const SpecDocument& spec, const Term& p, std::size_t fuel) {
    return run_impl([&](const Term& t) { return step(spec, t); }, p, fuel);
}

WeakSuccessors weak_successors(const SpecDocument& spec, const Term& p, std::size_t fuel) {
    return weak_successors_impl([&](const Term& t) { return step(spec, t); }, p, fuel);
}

Behavior Evaluator::step(const Term& p) {
    auto it = memo_.find(p);
    if (it != memo_.end()) return it->second;
    std::vector<Behavior> sub;
    sub.reserve(p.args().size());
    for (const Term& a : p.args()) sub.push_back(step(a));
    Behavior b = dispatch(*spec_, p, sub);
    memo_.emplace(p, b);
    return b;
}

EvalOutcome Evaluator::run(const Term& p, std::size_t fuel) {
    return run_impl([&](const Term& t) { return step(t); }, p, fuel);
}

WeakSuccessors Evaluator::weak_successors(const Term& p, std::size_t fuel) {
    return weak_successors_impl([&](const Term& t) { return step(t); }, p, fuel);
}

} // namespace hosos
