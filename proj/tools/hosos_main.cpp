// hosos: a workbench for higher-order structural operational semantics.
// Subcommands cover rule-format checks, reduction traces, similarity and
// simulation checking, Howe closures, rule soundness and the built-in
// lambda-calculus instance.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "hosos/builtin.hpp"
#include "hosos/howe.hpp"
#include "hosos/lambda.hpp"
#include "hosos/simulation.hpp"
#include "hosos/soundness.hpp"

using json = nlohmann::json;
using namespace hosos;

namespace {

// Exit codes: 0 holds/pass, 1 refuted/fail, 2 unknown, 3 usage or parse error.
constexpr int kPass = 0, kFail = 1, kUnknown = 2, kUsage = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw Error("cannot read file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

SpecDocument load_spec(const std::string& path) {
    if (path == "ski") return ski_spec();
    if (path == "ex34") return ex34_spec();
    return parse_spec(slurp(path));
}

int verdict_exit(const Verdict& v) {
    if (v.holds()) return kPass;
    if (v.refuted()) return kFail;
    return kUnknown;
}

json verdict_json(const Verdict& v) {
    json out;
    out["verdict"] = v.kind_str();
    out["bounds"] = {{"depth", v.bounds.depth},
                     {"fuel", v.bounds.fuel},
                     {"arg_size", v.bounds.arg_size}};
    out["witness"] = json::array();
    for (const WitnessEntry& w : v.witness)
        out["witness"].push_back(
            {{"left", w.left}, {"right", w.right}, {"clause", w.clause}, {"detail", w.detail}});
    if (v.unknown()) out["reason"] = v.reason;
    out["args_tested"] = v.args_tested;
    return out;
}

void print_verdict(const Verdict& v, const std::string& what) {
    std::cout << what << ": ";
    if (v.holds()) {
        std::cout << "Holds (up to depth " << v.bounds.depth << ", fuel " << v.bounds.fuel
                  << ", " << v.args_tested.size() << " arguments)\n";
        return;
    }
    if (v.refuted()) {
        std::cout << "Refuted\n";
        for (const WitnessEntry& w : v.witness)
            std::cout << "  [" << w.clause << "] (" << w.left << ", " << w.right << "): "
                      << w.detail << "\n";
        return;
    }
    std::cout << "Unknown: " << v.reason << "\n";
}

json cool_json(const CoolReport& report) {
    json ops = json::array();
    for (const CoolOperator& op : report.operators) {
        json entry{{"op", op.op}};
        switch (op.status) {
            case CoolOperator::Status::Passive: entry["status"] = "passive"; break;
            case CoolOperator::Status::Active:
                entry["status"] = "active";
                entry["receiving_position"] = op.receiving_position;
                break;
            default:
                entry["status"] = "violation";
                entry["rule"] = op.bad_rule;
                entry["reason"] = op.reason;
        }
        ops.push_back(entry);
    }
    return {{"cool", report.cool}, {"operators", ops}, {"note", report.note}};
}

void print_cool(const CoolReport& report) {
    for (const CoolOperator& op : report.operators) {
        std::cout << "  " << op.op << ": ";
        switch (op.status) {
            case CoolOperator::Status::Passive: std::cout << "passive\n"; break;
            case CoolOperator::Status::Active:
                std::cout << "active, receiving position " << op.receiving_position << "\n";
                break;
            default:
                std::cout << "violation at rule " << op.bad_rule << ": " << op.reason << "\n";
        }
    }
    std::cout << (report.cool ? "spec is cool\n" : "spec is not cool\n");
}

struct SoundnessPrinter {
    const SpecDocument& spec;
    const SoundnessReport& report;

    json to_json() const {
        json rules = json::array();
        for (const auto& [idx, status] : report.per_declared) {
            json entry{{"declared_rule", idx},
                       {"rule", rule_to_string(spec.declared_rules()[idx - 1])},
                       {"status", to_string(status)}};
            for (const RuleSoundness& rs : report.per_rule) {
                if (rs.declared_index == idx && rs.first_violation) {
                    entry["witness"] = {{"sample", json::array()},
                                        {"detail", rs.first_violation->detail}};
                    for (const Term& t : rs.first_violation->sample)
                        entry["witness"]["sample"].push_back(t.str());
                    break;
                }
            }
            rules.push_back(entry);
        }
        json args = json::array();
        for (const Term& t : report.args_used) args.push_back(t.str());
        return {{"violations", report.violated_declared_rules().size()},
                {"rules", rules},
                {"args_used", args}};
    }

    void print() const {
        for (const auto& [idx, status] : report.per_declared) {
            std::cout << "  rule " << idx << " ("
                      << rule_to_string(spec.declared_rules()[idx - 1]) << "): "
                      << to_string(status) << "\n";
            if (status != SampleStatus::Violated) continue;
            for (const RuleSoundness& rs : report.per_rule)
                if (rs.declared_index == idx && rs.first_violation) {
                    std::cout << "    witness: " << rs.first_violation->detail << "\n";
                    break;
                }
        }
        auto violated = report.violated_declared_rules();
        if (violated.empty()) {
            std::cout << "all rules sound on the tested samples\n";
        } else {
            std::cout << "unsound rules:";
            for (std::size_t idx : violated) std::cout << " " << idx;
            std::cout << "\n";
        }
    }
};

void emit(bool as_json, const json& payload) {
    if (as_json) std::cout << payload.dump(2) << "\n";
}

// -------- subcommand implementations --------

int cmd_check(const std::string& spec_path, bool require_cool, bool as_json) {
    SpecDocument spec; // construction checks completeness
    try {
        spec = load_spec(spec_path);
    } catch (const IncompleteSpec& e) {
        if (as_json) emit(true, json{{"command", "check"}, {"complete", false}, {"error", e.what()}});
        else std::cout << "spec is not complete: " << e.what() << "\n";
        return kFail;
    } catch (const ConflictingRules& e) {
        if (as_json) emit(true, json{{"command", "check"}, {"complete", false}, {"error", e.what()}});
        else std::cout << "spec has conflicting rules: " << e.what() << "\n";
        return kFail;
    }
    CoolReport report = check_cool(spec);
    if (as_json) {
        json out = cool_json(report);
        out["command"] = "check";
        out["complete"] = true;
        out["operators_count"] = spec.signature().operators().size();
        out["rules"] = spec.rules().size();
        emit(true, out);
    } else {
        std::cout << "spec is complete: " << spec.rules().size() << " rules over "
                  << spec.signature().operators().size() << " operators\n";
        print_cool(report);
    }
    if (require_cool && !report.cool) return kFail;
    return kPass;
}

int cmd_trace(const std::string& spec_path, const std::string& term_text, std::size_t fuel,
              bool as_json) {
    SpecDocument spec = load_spec(spec_path);
    Term start = parse_term(spec.signature(), term_text);
    Evaluator eval(spec);
    WeakSuccessors ws = eval.weak_successors(start, fuel);
    EvalOutcome out = eval.run(start, fuel);

    json payload{{"command", "trace"}, {"term", start.str()}};
    json trace = json::array();
    for (const Term& t : ws.terms) trace.push_back(t.str());
    payload["trace"] = trace;

    if (!as_json)
        for (std::size_t i = 0; i < ws.terms.size(); ++i)
            std::cout << (i ? "  -> " : "     ") << ws.terms[i].str() << "\n";
    switch (out.kind) {
        case EvalOutcome::Kind::Converges:
            payload["outcome"] = "converges";
            payload["steps"] = out.steps;
            payload["normal_form"] = out.last.str();
            payload["final_body"] = out.final_body.str();
            if (!as_json)
                std::cout << "converges to " << out.last.str() << " in " << out.steps
                          << " steps; behaviour =x=> " << out.final_body.str() << "\n";
            break;
        case EvalOutcome::Kind::Diverges:
            payload["outcome"] = "diverges";
            payload["cycle_entry"] = out.last.str();
            payload["cycle_length"] = out.cycle_length;
            if (!as_json)
                std::cout << "diverges: cycle of length " << out.cycle_length << " at "
                          << out.last.str() << "\n";
            break;
        default:
            payload["outcome"] = "fuel-exhausted";
            payload["last"] = out.last.str();
            payload["steps"] = out.steps;
            if (!as_json)
                std::cout << "fuel exhausted after " << out.steps << " steps at "
                          << out.last.str() << "\n";
    }
    emit(as_json, payload);
    return kPass;
}

int cmd_sim(const std::string& spec_path, const std::string& t1, const std::string& t2,
            const std::string& mode, const Bounds& bounds, bool as_json) {
    SpecDocument spec = load_spec(spec_path);
    Term a = parse_term(spec.signature(), t1);
    Term b = parse_term(spec.signature(), t2);
    SimMode m = mode == "strong" ? SimMode::Strong : SimMode::Weak;
    Verdict v = weak_similar(spec, a, b, bounds, m);
    if (as_json) {
        json out = verdict_json(v);
        out["command"] = "sim";
        out["mode"] = mode;
        out["left"] = a.str();
        out["right"] = b.str();
        emit(true, out);
    } else {
        print_verdict(v, a.str() + " <~ " + b.str());
    }
    return verdict_exit(v);
}

int cmd_simrel(const std::string& spec_path, const std::string& rel_path, std::size_t fuel,
               int universe_size, bool as_json) {
    SpecDocument spec = load_spec(spec_path);
    std::vector<Term> extra;
    if (universe_size > 0) extra = enumerate_terms(spec.signature(), universe_size);
    FiniteRelation r = parse_relation(spec, slurp(rel_path), extra);
    Verdict v = check_weak_simulation(spec, r, fuel);
    if (as_json) {
        json out = verdict_json(v);
        out["command"] = "simrel";
        out["pairs"] = r.size();
        out["universe"] = r.universe().size();
        emit(true, out);
    } else {
        std::ostringstream what;
        what << "relation (" << r.size() << " pairs over " << r.universe().size()
             << " terms) is a weak simulation";
        print_verdict(v, what.str());
    }
    return verdict_exit(v);
}

int cmd_howe(const std::string& spec_path, const std::string& rel_path, int universe_size,
             bool as_json) {
    SpecDocument spec = load_spec(spec_path);
    std::vector<Term> extra;
    if (universe_size > 0) extra = enumerate_terms(spec.signature(), universe_size);
    FiniteRelation base = parse_relation(spec, slurp(rel_path), extra);
    // the closure rule needs subterms of universe members
    FiniteRelation r(subterm_closure(base.universe()));
    for (const auto& [a, b] : base.term_pairs()) r.add(a, b);

    HoweResult res = howe_closure(spec, r);
    bool base_reflexive = is_reflexive(r);
    bool closure_congruence = is_congruence(spec, res.closure);
    bool weakly_transitive = compose(res.closure, r).subset_of(res.closure);

    if (as_json) {
        json pairs = json::array();
        for (const auto& [a, b] : res.closure.term_pairs())
            pairs.push_back({a.str(), b.str()});
        emit(true, json{{"command", "howe"},
                        {"universe", res.closure.universe().size()},
                        {"stages", res.stages},
                        {"blocked", res.blocked},
                        {"closure", pairs},
                        {"properties",
                         {{"contains_base", r.subset_of(res.closure)},
                          {"base_reflexive", base_reflexive},
                          {"closure_congruence", closure_congruence},
                          {"weakly_transitive_over_base", weakly_transitive}}}});
    } else {
        std::cout << "universe: " << res.closure.universe().size() << " terms, closure: "
                  << res.closure.size() << " pairs after " << res.stages << " stages\n";
        if (res.blocked > 0)
            std::cout << "note: " << res.blocked
                      << " closure steps blocked by universe smallness\n";
        for (const auto& [a, b] : res.closure.term_pairs())
            std::cout << "  pair " << a.str() << " " << b.str() << "\n";
        std::cout << "contains base: " << (r.subset_of(res.closure) ? "yes" : "no") << "\n";
        std::cout << "closure is a congruence on the universe: "
                  << (closure_congruence ? "yes" : "no") << "\n";
        std::cout << "closure;base inside closure: " << (weakly_transitive ? "yes" : "no")
                  << "\n";
    }
    return kPass;
}

int cmd_soundness(const std::string& spec_path, const SamplerConfig& cfg, std::size_t fuel,
                  bool as_json) {
    SpecDocument spec = load_spec(spec_path);
    SoundnessReport report = check_spec_sound(spec, cfg, fuel);
    SoundnessPrinter printer{spec, report};
    if (as_json) {
        json out = printer.to_json();
        out["command"] = "soundness";
        emit(true, out);
    } else {
        printer.print();
    }
    if (report.any_violation) return kFail;
    for (const auto& [idx, status] : report.per_declared)
        if (status == SampleStatus::Unknown) return kUnknown;
    return kPass;
}

int cmd_lambda_trace(const std::string& text, std::size_t fuel, bool as_json) {
    std::vector<std::string> frees;
    LamTerm t = parse_lambda_term(text, frees);
    LamOutcome out = run_lambda(t, fuel);
    json payload{{"command", "lambda trace"}, {"term", t.str(&frees)}};

    json steps = json::array();
    LamTerm cur = t;
    for (std::size_t i = 0;; ++i) {
        steps.push_back(cur.str(&frees));
        if (!as_json) std::cout << (i ? "  -> " : "     ") << cur.str(&frees) << "\n";
        LamBehavior b = cbn_step(cur);
        if (!b.is_red() || i >= out.steps + out.cycle_length) break;
        cur = b.next;
    }
    payload["trace"] = steps;
    switch (out.kind) {
        case LamOutcome::Kind::Lambda:
            payload["outcome"] = "converges";
            payload["steps"] = out.steps;
            payload["normal_form"] = out.last.str(&frees);
            if (!as_json)
                std::cout << t.str(&frees) << " =>* " << out.last.str(&frees) << " in "
                          << out.steps << " steps\n";
            break;
        case LamOutcome::Kind::Stuck:
            payload["outcome"] = "stuck";
            payload["at"] = out.last.str(&frees);
            if (!as_json)
                std::cout << t.str(&frees) << " gets stuck at " << out.last.str(&frees) << "\n";
            break;
        case LamOutcome::Kind::Diverges:
            payload["outcome"] = "diverges";
            payload["cycle_length"] = out.cycle_length;
            if (!as_json)
                std::cout << t.str(&frees) << " diverges (cycle of length " << out.cycle_length
                          << ")\n";
            break;
        default:
            payload["outcome"] = "fuel-exhausted";
            payload["steps"] = out.steps;
            if (!as_json) std::cout << "fuel exhausted after " << out.steps << " steps\n";
    }
    emit(as_json, payload);
    return kPass;
}

int cmd_lambda_sim(const std::string& t1, const std::string& t2, const std::string& mode,
                   const Bounds& bounds, bool as_json) {
    std::vector<std::string> frees;
    LamTerm a = parse_lambda_term(t1, frees);
    LamTerm b = parse_lambda_term(t2, frees);
    a = a.at_scope(static_cast<int>(frees.size()));
    b = b.at_scope(static_cast<int>(frees.size()));
    SimMode m = mode == "strong" ? SimMode::Strong : SimMode::Weak;
    Verdict v = open_applicative_similar(a, b, bounds, m);
    if (as_json) {
        json out = verdict_json(v);
        out["command"] = "lambda sim";
        out["left"] = a.str(&frees);
        out["right"] = b.str(&frees);
        out["free_variables"] = frees;
        emit(true, out);
    } else {
        print_verdict(v, a.str(&frees) + " <~ " + b.str(&frees));
    }
    return verdict_exit(v);
}

int cmd_demo_ex34(bool as_json) {
    SpecDocument spec = ex34_spec();
    Bounds bounds{4, 20, 2};
    Term c = parse_term(spec.signature(), "c"), d = parse_term(spec.signature(), "d");
    Term uc = parse_term(spec.signature(), "u(c)"), ud = parse_term(spec.signature(), "u(d)");

    Verdict cd = weak_similar(spec, c, d, bounds);
    Verdict ucud = weak_similar(spec, uc, ud, bounds);
    CoolReport cool = check_cool(spec);
    SamplerConfig cfg;
    SoundnessReport sound = check_spec_sound(spec, cfg, 20);

    if (as_json) {
        json out{{"command", "demo ex34"},
                 {"c <~ d", verdict_json(cd)},
                 {"u(c) <~ u(d)", verdict_json(ucud)},
                 {"cool", cool_json(cool)},
                 {"soundness", SoundnessPrinter{spec, sound}.to_json()}};
        emit(true, out);
    } else {
        std::cout << "c <~ d: " << (cd.holds() ? "Holds" : cd.kind_str()) << "\n";
        std::cout << "u(c) <~ u(d): " << (ucud.refuted() ? "Refuted" : ucud.kind_str()) << "\n";
        for (const WitnessEntry& w : ucud.witness)
            std::cout << "  [" << w.clause << "] (" << w.left << ", " << w.right << "): "
                      << w.detail << "\n";
        std::cout << "weak similarity is not a congruence here: (c,d) holds, (u(c),u(d)) fails\n";
        print_cool(cool);
        for (std::size_t idx : sound.violated_declared_rules()) {
            std::cout << "rule " << idx << " unsound";
            for (const RuleSoundness& rs : sound.per_rule)
                if (rs.declared_index == idx && rs.first_violation) {
                    std::cout << ": witness " << rs.first_violation->detail;
                    break;
                }
            std::cout << "\n";
        }
    }
    // the headline similarity query u(c) <~ u(d) is a refutation
    return verdict_exit(ucud);
}

int cmd_demo_ski(bool as_json) {
    SpecDocument spec = ski_spec();
    CoolReport cool = check_cool(spec);
    Term skk = parse_term(spec.signature(), "app(app(S,K),K)");
    Term i = parse_term(spec.signature(), "I");
    Bounds bounds{3, 50, 3};
    Evaluator eval(spec);

    json runs = json::array();
    bool all_converge = true;
    for (const char* arg : {"I", "K", "S"}) {
        Term t = Term::make("app", {skk, parse_term(spec.signature(), arg)});
        EvalOutcome out = eval.run(t, 50);
        all_converge = all_converge && out.converges() &&
                       out.last == parse_term(spec.signature(), arg);
        if (as_json)
            runs.push_back({{"term", t.str()},
                            {"outcome", out.converges() ? "converges" : "other"},
                            {"normal_form", out.converges() ? out.last.str() : ""},
                            {"steps", out.steps}});
        else if (out.converges())
            std::cout << t.str() << " =>* " << out.last.str() << " in " << out.steps
                      << " steps\n";
    }
    Verdict fwd = weak_similar(eval, skk, i, bounds);
    Verdict bwd = weak_similar(eval, i, skk, bounds);
    if (as_json) {
        emit(true, json{{"command", "demo ski"},
                        {"cool", cool_json(cool)},
                        {"runs", runs},
                        {"skk <~ i", verdict_json(fwd)},
                        {"i <~ skk", verdict_json(bwd)}});
    } else {
        print_cool(cool);
        print_verdict(fwd, "S K K <~ I");
        print_verdict(bwd, "I <~ S K K");
    }
    bool ok = cool.cool && all_converge && fwd.holds() && bwd.holds();
    return ok ? kPass : kFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for higher-order structural operational semantics"};
    app.require_subcommand(1);
    app.fallthrough(); // let --json appear after the subcommand as well
    bool as_json = false;
    app.add_flag("--json", as_json, "emit machine-readable JSON");

    std::string spec_path, term_text, t1, t2, rel_path, mode = "weak";
    bool require_cool = false;
    std::size_t fuel = 100;
    Bounds bounds{8, 100, 2};
    int universe_size = 0;

    auto* check = app.add_subcommand("check", "completeness and cool-format report");
    check->add_option("spec", spec_path, "spec file (.hos), or ski/ex34")->required();
    check->add_flag("--require-cool", require_cool, "fail unless the spec is cool");

    auto* trace = app.add_subcommand("trace", "reduction trace of a term");
    trace->add_option("spec", spec_path)->required();
    trace->add_option("term", term_text)->required();
    trace->add_option("--fuel", fuel, "max reduction steps");

    auto* sim = app.add_subcommand("sim", "bounded similarity of two terms");
    sim->add_option("spec", spec_path)->required();
    sim->add_option("t1", t1)->required();
    sim->add_option("t2", t2)->required();
    sim->add_option("--mode", mode, "weak|strong")->check(CLI::IsMember({"weak", "strong"}));
    sim->add_option("--depth", bounds.depth, "coinduction depth");
    sim->add_option("--fuel", bounds.fuel, "reduction fuel");
    sim->add_option("--args", bounds.arg_size, "argument enumeration size");

    auto* simrel = app.add_subcommand("simrel", "check a candidate weak simulation");
    simrel->add_option("spec", spec_path)->required();
    simrel->add_option("relation", rel_path, "relation file (pair <t> <t> lines)")->required();
    simrel->add_option("--fuel", fuel);
    simrel->add_option("--universe-size", universe_size,
                       "add all terms up to this size to the universe");

    auto* howe = app.add_subcommand("howe", "Howe closure of a relation");
    howe->add_option("spec", spec_path)->required();
    howe->add_option("relation", rel_path)->required();
    howe->add_option("--universe-size", universe_size)->required();

    SamplerConfig cfg;
    auto* soundness = app.add_subcommand("soundness", "weak-transition soundness of all rules");
    soundness->add_option("spec", spec_path)->required();
    soundness->add_option("--samples", cfg.random_samples, "random samples per rule");
    soundness->add_option("--fuel", fuel);
    soundness->add_option("--args", cfg.arg_size, "argument enumeration size");
    soundness->add_option("--seed", cfg.seed);

    auto* lambda = app.add_subcommand("lambda", "call-by-name lambda-calculus instance");
    lambda->require_subcommand(1);
    auto* lsim = lambda->add_subcommand("sim", "applicative similarity");
    lsim->add_option("t1", t1)->required();
    lsim->add_option("t2", t2)->required();
    lsim->add_option("--mode", mode)->check(CLI::IsMember({"weak", "strong"}));
    lsim->add_option("--depth", bounds.depth);
    lsim->add_option("--fuel", bounds.fuel);
    lsim->add_option("--args", bounds.arg_size);
    auto* ltrace = lambda->add_subcommand("trace", "call-by-name reduction");
    ltrace->add_option("term", term_text)->required();
    ltrace->add_option("--fuel", fuel);

    std::string demo_name;
    auto* demo = app.add_subcommand("demo", "run a bundled fixture end to end");
    demo->add_option("name", demo_name, "ex34|ski")->required()
        ->check(CLI::IsMember({"ex34", "ski"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kUsage; // --help exits 0, usage errors exit 3
    }

    try {
        if (check->parsed()) return cmd_check(spec_path, require_cool, as_json);
        if (trace->parsed()) return cmd_trace(spec_path, term_text, fuel, as_json);
        if (sim->parsed()) return cmd_sim(spec_path, t1, t2, mode, bounds, as_json);
        if (simrel->parsed()) return cmd_simrel(spec_path, rel_path, fuel, universe_size, as_json);
        if (howe->parsed()) return cmd_howe(spec_path, rel_path, universe_size, as_json);
        if (soundness->parsed()) return cmd_soundness(spec_path, cfg, fuel, as_json);
        if (lambda->parsed()) {
            if (lsim->parsed()) return cmd_lambda_sim(t1, t2, mode, bounds, as_json);
            return cmd_lambda_trace(term_text, fuel, as_json);
        }
        if (demo->parsed()) return demo_name == "ex34" ? cmd_demo_ex34(as_json)
                                                       : cmd_demo_ski(as_json);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
