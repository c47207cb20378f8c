#include "hosos/simulation.hpp"

#include <set>
#include <sstream>

namespace hosos {

namespace {

std::string trace_str(const WeakSuccessors& ws) {
    std::ostringstream out;
    for (std::size_t i = 0; i < ws.terms.size(); ++i) {
        if (i) out << " -> ";
        out << ws.terms[i].str();
    }
    if (!ws.complete) out << " -> ... (fuel exhausted)";
    return out.str();
}

std::string divergence_str(const Term& from, const EvalOutcome& out) {
    std::ostringstream s;
    s << from.str() << " diverges: ";
    if (out.cycle_length == 1) {
        s << out.last.str() << " -> " << out.last.str() << " (cycle)";
    } else {
        s << "cycle of length " << out.cycle_length << " entered at " << out.last.str();
    }
    return s.str();
}

} // namespace

// -------- candidate-relation checking --------

Verdict check_weak_simulation(const SpecDocument& spec, const FiniteRelation& r,
                              std::size_t fuel) {
    Verdict verdict;
    verdict.bounds.fuel = fuel;
    for (const Term& t : r.universe()) verdict.args_tested.push_back(t.str());

    Evaluator eval(spec);
    bool unknown = false;
    std::string unknown_reason;
    auto note_unknown = [&](const std::string& why) {
        if (!unknown) unknown_reason = why;
        unknown = true;
    };

    for (const auto& [p, q] : r.term_pairs()) {
        Behavior bp = eval.step(p);
        if (bp.is_red()) {
            const Term& pbar = bp.next;
            if (!r.in_universe(pbar)) {
                note_unknown("universe lacks " + pbar.str());
                continue;
            }
            WeakSuccessors ws = eval.weak_successors(q, fuel);
            bool matched = false;
            for (const Term& qbar : ws.terms)
                if (r.related(pbar, qbar)) {
                    matched = true;
                    break;
                }
            if (matched) continue;
            if (!ws.complete) {
                note_unknown("fuel exhausted exploring weak successors of " + q.str());
                continue;
            }
            std::ostringstream detail;
            detail << p.str() << " -> " << pbar.str() << " but no related weak successor; ";
            if (ws.terms.size() == 1 && eval.step(q).is_red()) {
                detail << q.str() << " -> " << eval.step(q).next.str() << " (cycle)";
            } else {
                detail << q.str() << " => {" << trace_str(ws) << "}";
            }
            verdict.kind = Verdict::Kind::Refuted;
            verdict.witness.push_back({p.str(), q.str(), "red", detail.str()});
            return verdict;
        }
        // p does not reduce: q must converge and the bodies must be related
        // on every argument from the universe
        EvalOutcome oq = eval.run(q, fuel);
        if (oq.fuel_exhausted()) {
            note_unknown("fuel exhausted evaluating " + q.str());
            continue;
        }
        if (oq.diverges()) {
            verdict.kind = Verdict::Kind::Refuted;
            verdict.witness.push_back(
                {p.str(), q.str(), "fun",
                 p.str() + " is a function but " + divergence_str(q, oq)});
            return verdict;
        }
        for (const Term& x : r.universe()) {
            Term left = bp.apply(x);
            Term right = Behavior::fun(oq.final_body).apply(x);
            if (!r.in_universe(left)) {
                note_unknown("universe lacks " + left.str());
                break;
            }
            if (!r.in_universe(right)) {
                note_unknown("universe lacks " + right.str());
                break;
            }
            if (!r.related(left, right)) {
                std::ostringstream detail;
                detail << "argument " << x.str() << ": bodies give (" << left.str() << ", "
                       << right.str() << ") which is not in the relation";
                verdict.kind = Verdict::Kind::Refuted;
                verdict.witness.push_back({p.str(), q.str(), "fun-arg", detail.str()});
                return verdict;
            }
        }
    }

    if (unknown) {
        verdict.kind = Verdict::Kind::Unknown;
        verdict.reason = unknown_reason;
    } else {
        verdict.kind = Verdict::Kind::Holds;
    }
    return verdict;
}

// -------- on-the-fly similarity --------

namespace {

struct SimChecker {
    Evaluator& eval;
    Bounds bounds;
    SimMode mode;
    std::vector<Term> args;
    std::set<std::pair<Term, Term>> stack;

    struct Res {
        Verdict::Kind kind;
        std::vector<WitnessEntry> witness;
        std::string reason;
    };

    SimChecker(Evaluator& e, const Bounds& b, SimMode m) : eval(e), bounds(b), mode(m) {
        args = enumerate_terms(eval.spec().signature(), static_cast<int>(b.arg_size));
    }

    Res check(const Term& p, const Term& q, std::size_t depth) {
        if (stack.count({p, q})) return {Verdict::Kind::Holds, {}, {}}; // coinductive hypothesis
        if (depth == 0) return {Verdict::Kind::Holds, {}, {}};          // holds up to bounds
        stack.insert({p, q});
        Res res = check_clauses(p, q, depth);
        stack.erase({p, q});
        return res;
    }

    Res check_clauses(const Term& p, const Term& q, std::size_t depth) {
        Behavior bp = eval.step(p);
        if (bp.is_red()) return red_clause(p, q, bp.next, depth);
        return fun_clause(p, q, bp, depth);
    }

    Res red_clause(const Term& p, const Term& q, const Term& pbar, std::size_t depth) {
        std::vector<Term> candidates;
        bool complete = true;
        WeakSuccessors ws;
        if (mode == SimMode::Strong) {
            Behavior bq = eval.step(q);
            if (bq.is_fun()) {
                return {Verdict::Kind::Refuted,
                        {{p.str(), q.str(), "red",
                          p.str() + " -> " + pbar.str() + " but " + q.str() +
                              " does not reduce"}},
                        {}};
            }
            candidates.push_back(bq.next);
        } else {
            ws = eval.weak_successors(q, bounds.fuel); // fewest steps first
            candidates = ws.terms;
            complete = ws.complete;
        }

        bool saw_unknown = false;
        std::string unknown_reason;
        Res first_fail{Verdict::Kind::Holds, {}, {}};
        bool have_fail = false;
        for (const Term& qbar : candidates) {
            Res r = check(pbar, qbar, depth - 1);
            if (r.kind == Verdict::Kind::Holds) return {Verdict::Kind::Holds, {}, {}};
            if (r.kind == Verdict::Kind::Unknown) {
                saw_unknown = true;
                if (unknown_reason.empty()) unknown_reason = r.reason;
            } else if (!have_fail) {
                first_fail = r;
                have_fail = true;
            }
        }
        if (saw_unknown || !complete) {
            std::string why = !complete
                                  ? "fuel exhausted exploring weak successors of " + q.str()
                                  : unknown_reason;
            return {Verdict::Kind::Unknown, {}, why};
        }
        std::ostringstream detail;
        detail << p.str() << " -> " << pbar.str() << " but no weak successor of " << q.str()
               << " simulates it; ";
        if (mode == SimMode::Weak && candidates.size() == 1 && eval.step(q).is_red()) {
            detail << q.str() << " -> " << eval.step(q).next.str() << " (cycle)";
        } else {
            std::ostringstream tr;
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                if (i) tr << " -> ";
                tr << candidates[i].str();
            }
            detail << q.str() << " => {" << tr.str() << "}";
        }
        Res out{Verdict::Kind::Refuted, {}, {}};
        out.witness.push_back({p.str(), q.str(), "red", detail.str()});
        for (const WitnessEntry& e : first_fail.witness) out.witness.push_back(e);
        return out;
    }

    Res fun_clause(const Term& p, const Term& q, const Behavior& bp, std::size_t depth) {
        OpenTerm qbody;
        if (mode == SimMode::Strong) {
            Behavior bq = eval.step(q);
            if (bq.is_red()) {
                return {Verdict::Kind::Refuted,
                        {{p.str(), q.str(), "fun",
                          p.str() + " is a function but " + q.str() + " reduces"}},
                        {}};
            }
            qbody = bq.body;
        } else {
            EvalOutcome oq = eval.run(q, bounds.fuel);
            if (oq.fuel_exhausted())
                return {Verdict::Kind::Unknown, {}, "fuel exhausted evaluating " + q.str()};
            if (oq.diverges()) {
                return {Verdict::Kind::Refuted,
                        {{p.str(), q.str(), "fun",
                          p.str() + " is a function but " + divergence_str(q, oq)}},
                        {}};
            }
            qbody = oq.final_body;
        }

        Behavior fq = Behavior::fun(qbody);
        bool saw_unknown = false;
        std::string unknown_reason;
        for (const Term& e : args) {
            Term left = bp.apply(e);
            Term right = fq.apply(e);
            Res r = check(left, right, depth - 1);
            if (r.kind == Verdict::Kind::Refuted) {
                Res out{Verdict::Kind::Refuted, {}, {}};
                out.witness.push_back({p.str(), q.str(), "fun-arg",
                                       "argument " + e.str() + ": compare " + left.str() +
                                           " with " + right.str()});
                for (const WitnessEntry& w : r.witness) out.witness.push_back(w);
                return out;
            }
            if (r.kind == Verdict::Kind::Unknown) {
                saw_unknown = true;
                if (unknown_reason.empty()) unknown_reason = r.reason;
            }
        }
        if (saw_unknown) return {Verdict::Kind::Unknown, {}, unknown_reason};
        return {Verdict::Kind::Holds, {}, {}};
    }
};

} // namespace

Verdict weak_similar(Evaluator& eval, const Term& p, const Term& q, const Bounds& bounds,
                     SimMode mode) {
    bounds.validate();
    SimChecker checker(eval, bounds, mode);
    SimChecker::Res res = checker.check(p, q, bounds.depth);
    Verdict v;
    v.kind = res.kind;
    v.bounds = bounds;
    v.witness = std::move(res.witness);
    v.reason = std::move(res.reason);
    for (const Term& a : checker.args) v.args_tested.push_back(a.str());
    return v;
}

Verdict weak_similar(const SpecDocument& spec, const Term& p, const Term& q,
                     const Bounds& bounds, SimMode mode) {
    Evaluator eval(spec);
    return weak_similar(eval, p, q, bounds, mode);
}

} // namespace hosos
