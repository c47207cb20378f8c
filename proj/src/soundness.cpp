#include "hosos/soundness.hpp"

#include <functional>
#include <sstream>

namespace hosos {

std::string to_string(SampleStatus s) {
    switch (s) {
        case SampleStatus::Sound: return "sound";
        case SampleStatus::Violated: return "violated";
        default: return "unknown";
    }
}

std::vector<std::size_t> SoundnessReport::violated_declared_rules() const {
    std::vector<std::size_t> out;
    for (const auto& [idx, status] : per_declared)
        if (status == SampleStatus::Violated) out.push_back(idx);
    return out;
}

std::optional<Term> random_term(const Signature& sig, std::mt19937_64& rng,
                                std::size_t size_budget) {
    if (size_budget < 1) return std::nullopt;
    std::vector<std::pair<std::string, int>> constants, usable;
    for (const auto& op : sig.operators()) {
        if (op.second == 0) constants.push_back(op);
        // an operator fits if every argument slot can still hold a constant
        if (static_cast<std::size_t>(op.second) + 1 <= size_budget) usable.push_back(op);
    }
    if (constants.empty()) return std::nullopt; // no closed terms at all
    if (usable.empty()) usable = constants;
    const auto& [name, ar] =
        usable[std::uniform_int_distribution<std::size_t>(0, usable.size() - 1)(rng)];
    if (ar == 0) return Term::make(name);
    // split the remaining budget among the arguments, each at least 1
    std::size_t rest = size_budget - 1;
    std::vector<std::size_t> budget(ar, 1);
    rest -= ar;
    for (std::size_t extra = 0; extra < rest; ++extra)
        ++budget[std::uniform_int_distribution<int>(0, ar - 1)(rng)];
    std::vector<Term> args;
    for (int i = 0; i < ar; ++i) {
        auto a = random_term(sig, rng, budget[i]);
        if (!a) return std::nullopt;
        args.push_back(std::move(*a));
    }
    return Term::make(name, std::move(args));
}

namespace {

std::string successors_str(const WeakSuccessors& ws) {
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < ws.terms.size(); ++i) {
        if (i) out << ", ";
        out << ws.terms[i].str();
    }
    out << (ws.complete ? "}" : ", ...}");
    return out.str();
}

struct PremiseData {
    // per position (1-based): either the list of => endpoints (j in W) or the
    // unique ⇓ endpoint with its function body (k not in W)
    std::vector<std::vector<Term>> reach; // j in W
    std::vector<Term> normal;             // k not in W
    std::vector<OpenTerm> body;           // k not in W
};

} // namespace

RuleSoundness check_rule_sound(const SpecDocument& spec, const HoRule& rule,
                               const std::vector<std::vector<Term>>& samples,
                               std::size_t fuel, const std::vector<Term>& args,
                               std::size_t max_premise_choices) {
    RuleSoundness out;
    out.declared_index = rule.declared_index;
    Evaluator eval(spec);
    const int n = rule.arity;

    for (const std::vector<Term>& sample : samples) {
        SampleReport rep;
        rep.sample = sample;
        if (static_cast<int>(sample.size()) != n) throw Error("sample arity mismatch");

        PremiseData prem;
        prem.reach.resize(n + 1);
        prem.normal.resize(n + 1);
        prem.body.resize(n + 1);

        bool vacuous = false, incomplete = false;
        std::string note;
        for (int pos = 1; pos <= n && !vacuous; ++pos) {
            const Term& pk = sample[pos - 1];
            if (rule.in_w(pos)) {
                WeakSuccessors ws = eval.weak_successors(pk, fuel);
                if (!ws.complete) {
                    incomplete = true;
                    note = "fuel exhausted enumerating weak successors of " + pk.str();
                }
                prem.reach[pos] = ws.terms;
            } else {
                EvalOutcome o = eval.run(pk, fuel);
                if (o.diverges()) {
                    vacuous = true;
                    note = "premise x" + std::to_string(pos) + " unsatisfiable: " + pk.str() +
                           " diverges";
                } else if (o.fuel_exhausted()) {
                    incomplete = true;
                    vacuous = true; // cannot build any choice without the normal form
                    note = "fuel exhausted evaluating " + pk.str();
                } else {
                    prem.normal[pos] = o.last;
                    prem.body[pos] = o.final_body;
                }
            }
        }
        if (vacuous) {
            rep.status = incomplete ? SampleStatus::Unknown : SampleStatus::Sound;
            rep.detail = note;
            out.samples.push_back(std::move(rep));
            continue;
        }

        // closed part of the substitution, shared by all premise choices
        std::map<std::string, Term> base;
        for (int i = 1; i <= n; ++i) base[arg_var(i)] = sample[i - 1];
        for (int k = 1; k <= n; ++k) {
            if (rule.in_w(k)) continue;
            Behavior bk = Behavior::fun(prem.body[k]);
            for (int i = 1; i <= n; ++i)
                base[fun_var(k, arg_var(i))] = bk.apply(sample[i - 1]);
        }

        std::vector<int> wpos = rule.w_positions();
        std::size_t tried = 0;
        bool violated = false, unknown = incomplete;
        std::string unknown_note = note;

        std::function<void(std::size_t)> explore = [&](std::size_t wi) {
            if (violated) return;
            if (tried >= max_premise_choices) {
                unknown = true;
                if (unknown_note.empty()) unknown_note = "premise choice budget exhausted";
                return;
            }
            if (wi < wpos.size()) {
                for (const Term& endpoint : prem.reach[wpos[wi]]) {
                    base[red_var(wpos[wi])] = endpoint;
                    explore(wi + 1);
                    if (violated) return;
                }
                return;
            }
            ++tried;
            std::ostringstream premises;
            for (std::size_t i = 0; i < wpos.size(); ++i)
                premises << "x" << wpos[i] << ": " << sample[wpos[i] - 1].str() << " =>* "
                         << base[red_var(wpos[i])].str() << "; ";
            for (int k = 1; k <= n; ++k)
                if (!rule.in_w(k))
                    premises << "x" << k << ": " << sample[k - 1].str()
                             << " evaluates to " << prem.normal[k].str() << "; ";

            Term source = Term::make(rule.op, sample);
            if (rule.kind == RuleKind::Red) {
                Term expected = substitute(rule.target, base);
                WeakSuccessors ws = eval.weak_successors(source, fuel);
                bool found = false;
                for (const Term& t : ws.terms)
                    if (t == expected) {
                        found = true;
                        break;
                    }
                if (found) return;
                if (!ws.complete) {
                    unknown = true;
                    if (unknown_note.empty())
                        unknown_note = "fuel exhausted checking " + source.str() + " =>* " +
                                       expected.str();
                    return;
                }
                violated = true;
                std::ostringstream d;
                d << premises.str() << "expected " << source.str() << " =>* "
                  << expected.str() << " but its weak successors are "
                  << successors_str(ws);
                rep.detail = d.str();
                return;
            }
            // Fun conclusion: source must converge and its body must agree
            // with the rule target on every argument
            EvalOutcome o = eval.run(source, fuel);
            if (o.fuel_exhausted()) {
                unknown = true;
                if (unknown_note.empty()) unknown_note = "fuel exhausted evaluating " + source.str();
                return;
            }
            if (o.diverges()) {
                violated = true;
                std::ostringstream d;
                d << premises.str() << "expected " << source.str()
                  << " to converge to a function, but it diverges";
                rep.detail = d.str();
                return;
            }
            Behavior actual = Behavior::fun(o.final_body);
            std::vector<Behavior> bodies_k(n + 1);
            for (int k = 1; k <= n; ++k)
                if (!rule.in_w(k)) bodies_k[k] = Behavior::fun(prem.body[k]);
            for (const Term& e : args) {
                std::map<std::string, Term> binding = base;
                binding[hole_var] = e;
                for (int k = 1; k <= n; ++k)
                    if (!rule.in_w(k)) binding[fun_var(k, hole_var)] = bodies_k[k].apply(e);
                Term expected_e = substitute(rule.target, binding);
                Term actual_e = actual.apply(e);
                if (!(expected_e == actual_e)) {
                    violated = true;
                    std::ostringstream d;
                    d << premises.str() << source.str() << " evaluates to " << o.last.str()
                      << " but its body applied to " << e.str() << " gives "
                      << actual_e.str() << ", expected " << expected_e.str();
                    rep.detail = d.str();
                    return;
                }
            }
        };
        explore(0);

        if (violated) {
            rep.status = SampleStatus::Violated;
        } else if (unknown) {
            rep.status = SampleStatus::Unknown;
            rep.detail = unknown_note;
        } else {
            rep.status = SampleStatus::Sound;
        }
        out.samples.push_back(std::move(rep));
    }

    for (const SampleReport& r : out.samples) {
        if (r.status == SampleStatus::Violated) {
            out.status = SampleStatus::Violated;
            if (!out.first_violation) out.first_violation = r;
        } else if (r.status == SampleStatus::Unknown && out.status == SampleStatus::Sound) {
            out.status = SampleStatus::Unknown;
        }
    }
    return out;
}

SoundnessReport check_spec_sound(const SpecDocument& spec, const SamplerConfig& cfg,
                                 std::size_t fuel) {
    SoundnessReport report;
    const Signature& sig = spec.signature();

    std::vector<Term> components = enumerate_terms(sig, static_cast<int>(cfg.enum_size));
    std::vector<Term> args = components;
    if (cfg.arg_size != cfg.enum_size)
        args = enumerate_terms(sig, static_cast<int>(cfg.arg_size));
    if (args.size() > cfg.max_args) args.resize(cfg.max_args);
    report.args_used = args;

    std::mt19937_64 rng(cfg.seed);

    // sample tuples per arity, enumerated first, then random, deduplicated
    std::map<int, std::vector<std::vector<Term>>> tuples_by_arity;
    auto tuples_for = [&](int n) -> const std::vector<std::vector<Term>>& {
        auto it = tuples_by_arity.find(n);
        if (it != tuples_by_arity.end()) return it->second;
        std::vector<std::vector<Term>> tuples;
        std::set<std::vector<Term>> seen;
        if (n == 0) {
            tuples.push_back({});
        } else if (!components.empty()) {
            std::vector<std::size_t> idx(n, 0);
            for (;;) {
                std::vector<Term> tuple;
                for (int i = 0; i < n; ++i) tuple.push_back(components[idx[i]]);
                if (seen.insert(tuple).second) tuples.push_back(std::move(tuple));
                if (tuples.size() >= cfg.max_enum_tuples) break;
                int pos = n - 1;
                while (pos >= 0 && ++idx[pos] == components.size()) idx[pos--] = 0;
                if (pos < 0) break;
            }
            for (std::size_t s = 0; s < cfg.random_samples; ++s) {
                std::vector<Term> tuple;
                bool ok = true;
                for (int i = 0; i < n && ok; ++i) {
                    auto t = random_term(sig, rng, cfg.random_term_size);
                    if (!t) ok = false;
                    else tuple.push_back(std::move(*t));
                }
                if (ok && seen.insert(tuple).second) tuples.push_back(std::move(tuple));
            }
        }
        return tuples_by_arity.emplace(n, std::move(tuples)).first->second;
    };

    for (std::size_t ri = 0; ri < spec.rules().size(); ++ri) {
        const HoRule& rule = spec.rules()[ri];
        RuleSoundness rs = check_rule_sound(spec, rule, tuples_for(rule.arity), fuel, args,
                                            cfg.max_premise_choices);
        rs.rule_index = ri;
        auto [it, fresh] = report.per_declared.emplace(rs.declared_index, rs.status);
        if (!fresh) {
            if (rs.status == SampleStatus::Violated) it->second = SampleStatus::Violated;
            else if (rs.status == SampleStatus::Unknown && it->second == SampleStatus::Sound)
                it->second = SampleStatus::Unknown;
        }
        if (rs.status == SampleStatus::Violated) report.any_violation = true;
        report.per_rule.push_back(std::move(rs));
    }
    return report;
}

} // namespace hosos
