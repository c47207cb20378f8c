#ifndef HOSOS_LAMBDA_HPP
#define HOSOS_LAMBDA_HPP

#include <compare>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "hosos/verdict.hpp"

namespace hosos {

// Call-by-name λ-terms in de Bruijn form. A term carries its scope n: all
// free indices are < n, and a Lam body lives at scope n+1 with index 0 bound.
// α-equivalence is definitional equality.
class LamTerm {
  public:
    enum class Kind { Var, App, Lam };

    LamTerm() = default;
    static LamTerm var(int index, int scope);
    static LamTerm app(const LamTerm& fun, const LamTerm& arg); // equal scopes
    static LamTerm lam(const LamTerm& body);                    // body scope >= 1

    bool empty() const { return node_ == nullptr; }
    Kind kind() const { return node_->kind; }
    int index() const { return node_->index; }
    LamTerm fun() const;  // App
    LamTerm arg() const;  // App
    LamTerm body() const; // Lam, at scope()+1
    int scope() const { return scope_; }
    int size() const { return node_->size; }
    std::size_t hash() const;

    // Re-declare the scope; n must cover all free indices.
    LamTerm at_scope(int n) const;

    bool operator==(const LamTerm& other) const;
    std::strong_ordering operator<=>(const LamTerm& other) const;

    // free_names, when given, names the free indices 0..n-1; otherwise they
    // print as #0, #1, ...
    std::string str(const std::vector<std::string>* free_names = nullptr) const;

  private:
    struct Node {
        Kind kind = Kind::Var;
        int index = 0;
        std::shared_ptr<const Node> a, b; // App: fun/arg; Lam: body in a
        int min_scope = 0;
        int size = 1;
        std::size_t hash = 0;
    };
    static LamTerm wrap(std::shared_ptr<const Node> node, int scope);
    std::shared_ptr<const Node> node_;
    int scope_ = 0;
};

struct LamTermHash {
    std::size_t operator()(const LamTerm& t) const { return t.hash(); }
};

struct LamBehavior {
    enum class Kind { Red, Fun, Stuck };
    Kind kind = Kind::Stuck;
    LamTerm next; // Red
    LamTerm body; // Fun, at scope+1

    bool is_red() const { return kind == Kind::Red; }
    bool is_fun() const { return kind == Kind::Fun; }
    bool is_stuck() const { return kind == Kind::Stuck; }
};

// One call-by-name step: λ-abstractions are functions, the head of an
// application runs first, β fires when it becomes a function, variables and
// applications of stuck terms are stuck.
LamBehavior cbn_step(const LamTerm& t);

// β-substitution: body at scope n+1, argument at scope n, result at scope n.
LamTerm capture_free_subst(const LamTerm& body, const LamTerm& arg);

// Parallel substitution t[u⃗] closing an open term with closed terms.
LamTerm close_term(const LamTerm& t, const std::vector<LamTerm>& us);

struct LamOutcome {
    enum class Kind { Lambda, Stuck, Diverges, FuelExhausted };
    Kind kind = Kind::FuelExhausted;
    LamTerm last;  // normal form / first repeated term / last term
    LamTerm body;  // Lambda only
    std::size_t steps = 0;
    std::size_t cycle_length = 0;

    bool to_lambda() const { return kind == Kind::Lambda; }
    bool diverges() const { return kind == Kind::Diverges; }
    bool fuel_exhausted() const { return kind == Kind::FuelExhausted; }
};

LamOutcome run_lambda(const LamTerm& t, std::size_t fuel);

// Bounded applicative similarity on closed terms: convergence to a λ on the
// left must be matched on the right, with bodies related under every closed
// argument enumerated up to bounds.arg_size. Strong mode matches single
// steps and zero-step function behaviour.
Verdict applicative_similar_closed(const LamTerm& t1, const LamTerm& t2,
                                   const Bounds& bounds, SimMode mode = SimMode::Weak);

// Open extension: both terms closed with every tuple over the enumerated
// closed arguments; Refuted dominates, then Unknown, then Holds.
Verdict open_applicative_similar(const LamTerm& t1, const LamTerm& t2,
                                 const Bounds& bounds, SimMode mode = SimMode::Weak);

// All terms at the given scope with size <= max_size, canonical order.
std::vector<LamTerm> enumerate_lambda_terms(int scope, int max_size);

LamTerm random_lambda_term(std::mt19937_64& rng, int scope, int size_budget);

// Text syntax: `\x. e`, application by juxtaposition, parentheses.
// Free identifiers resolve through free_names, appending new ones.
LamTerm parse_lambda_term(const std::string& text, std::vector<std::string>& free_names);

} // namespace hosos

#endif
