#ifndef HOSOS_RELATION_HPP
#define HOSOS_RELATION_HPP

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "hosos/opmodel.hpp"
#include "hosos/term.hpp"

namespace hosos {

// A finite binary relation over an explicit, canonically ordered universe of
// terms. Pairs are stored as index pairs into the universe.
class FiniteRelation {
  public:
    FiniteRelation() = default;
    explicit FiniteRelation(std::vector<Term> universe);

    static FiniteRelation identity(std::vector<Term> universe);

    const std::vector<Term>& universe() const { return *universe_; }
    bool in_universe(const Term& t) const { return index_of(t).has_value(); }
    std::optional<std::size_t> index_of(const Term& t) const;

    bool same_universe(const FiniteRelation& other) const;

    void add(const Term& a, const Term& b); // throws UniverseMismatch if outside
    bool related(const Term& a, const Term& b) const;
    bool related(std::size_t a, std::size_t b) const { return pairs_.count({a, b}) > 0; }

    const std::set<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }
    std::size_t size() const { return pairs_.size(); }
    std::vector<std::pair<Term, Term>> term_pairs() const;

    bool subset_of(const FiniteRelation& other) const; // same universe required
    bool operator==(const FiniteRelation& other) const;
    FiniteRelation united(const FiniteRelation& other) const;

  private:
    std::shared_ptr<const std::vector<Term>> universe_ = std::make_shared<std::vector<Term>>();
    std::shared_ptr<const std::map<Term, std::size_t>> index_ =
        std::make_shared<std::map<Term, std::size_t>>();
    std::set<std::pair<std::size_t, std::size_t>> pairs_;
};

// Relational composition: pairs (a,c) with some b where R(a,b) and S(b,c).
FiniteRelation compose(const FiniteRelation& r, const FiniteRelation& s);

bool is_reflexive(const FiniteRelation& r);
bool is_transitive(const FiniteRelation& r);

struct CongruenceWitness {
    std::string op;
    std::vector<Term> left_args, right_args;
    std::string str() const;
};

// Checks closure under the signature operators, restricted to applications
// whose results lie in the universe.
std::optional<CongruenceWitness> congruence_witness(const SpecDocument& spec,
                                                    const FiniteRelation& r);
bool is_congruence(const SpecDocument& spec, const FiniteRelation& r);

// -------- liftings --------

// The lifting of B0 on behaviours: Red/Red successors related by S; Fun/Fun
// bodies related pointwise on R-related arguments; mixed pairs unrelated.
struct B0LiftResult {
    enum class Kind { Related, NotRelated, OutOfUniverse };
    Kind kind = Kind::NotRelated;
    Term missing; // OutOfUniverse: a term the universe lacks

    bool related() const { return kind == Kind::Related; }
};

B0LiftResult b0_lift_related(const FiniteRelation& r, const FiniteRelation& s,
                             const Behavior& u, const Behavior& v);

// One-sided Egli-Milner condition: every u in U has an R-partner in V.
bool egli_milner_related(const FiniteRelation& r, const std::vector<Term>& u,
                         const std::vector<Term>& v);

// -------- text format --------

// Line format: `pair <term> <term>`, '#' comments. The universe is the set of
// terms mentioned in pairs plus whatever `extra_universe` supplies.
FiniteRelation parse_relation(const SpecDocument& spec, const std::string& text,
                              const std::vector<Term>& extra_universe = {});
std::string relation_to_string(const FiniteRelation& r);

// Closes a universe under subterms, canonical order.
std::vector<Term> subterm_closure(std::vector<Term> universe);

} // namespace hosos

#endif
