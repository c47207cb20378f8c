#ifndef HOSOS_OPMODEL_HPP
#define HOSOS_OPMODEL_HPP

#include <unordered_map>
#include <vector>

#include "hosos/spec.hpp"
#include "hosos/term.hpp"

namespace hosos {

// One dispatch step: a term either reduces or denotes a function. Function
// behaviour is kept intensionally as a one-hole open term over hole_var.
struct Behavior {
    enum class Kind { Red, Fun };
    Kind kind = Kind::Red;
    Term next;     // Red
    OpenTerm body; // Fun; closed except for hole_var

    bool is_red() const { return kind == Kind::Red; }
    bool is_fun() const { return kind == Kind::Fun; }
    static Behavior red(Term t) { return {Kind::Red, std::move(t), {}}; }
    static Behavior fun(OpenTerm b) { return {Kind::Fun, {}, std::move(b)}; }

    // The function applied to an argument.
    Term apply(const Term& arg) const;

    bool operator==(const Behavior& other) const;
    std::string str() const;
};

struct EvalOutcome {
    enum class Kind { Converges, Diverges, FuelExhausted };
    Kind kind = Kind::FuelExhausted;
    Term last;              // normal form / first repeated term / last term seen
    OpenTerm final_body;    // Converges: the normal form's function body
    std::size_t steps = 0;  // reductions taken (Converges, FuelExhausted)
    std::size_t cycle_length = 0; // Diverges

    bool converges() const { return kind == Kind::Converges; }
    bool diverges() const { return kind == Kind::Diverges; }
    bool fuel_exhausted() const { return kind == Kind::FuelExhausted; }
};

struct WeakSuccessors {
    std::vector<Term> terms; // trace prefixes' endpoints, in trace order
    bool complete = false;   // false only on fuel exhaustion
};

// Structurally recursive rule dispatch. Pure.
Behavior step(const SpecDocument& spec, const Term& p);

// Iterates step while the term reduces; detects cycles by exact revisit.
EvalOutcome run(const SpecDocument& spec, const Term& p, std::size_t fuel);

// All p' with p => p', complete unless the trace exhausts fuel.
WeakSuccessors weak_successors(const SpecDocument& spec, const Term& p, std::size_t fuel);

// step/run/weak_successors against a shared memo table; observationally the
// same functions.
class Evaluator {
  public:
    explicit Evaluator(const SpecDocument& spec) : spec_(&spec) {}

    const SpecDocument& spec() const { return *spec_; }
    Behavior step(const Term& p);
    EvalOutcome run(const Term& p, std::size_t fuel);
    WeakSuccessors weak_successors(const Term& p, std::size_t fuel);

  private:
    const SpecDocument* spec_;
    std::unordered_map<Term, Behavior, TermHash> memo_;
};

} // namespace hosos

#endif
