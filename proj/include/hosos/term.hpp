#ifndef HOSOS_TERM_HPP
#define HOSOS_TERM_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hosos/errors.hpp"

namespace hosos {

// A first-order signature: operator symbols with arities.
class Signature {
  public:
    Signature() = default;
    Signature(std::initializer_list<std::pair<std::string, int>> ops);

    // Throws Error on duplicate names or negative arity.
    void add(const std::string& name, int arity);

    std::optional<int> arity(const std::string& name) const;
    bool contains(const std::string& name) const { return arity(name).has_value(); }
    const std::vector<std::pair<std::string, int>>& operators() const { return ops_; }
    bool empty() const { return ops_.empty(); }

    bool operator==(const Signature& other) const { return ops_ == other.ops_; }

  private:
    std::vector<std::pair<std::string, int>> ops_;
    std::map<std::string, int> arities_;
};

// An immutable closed term over some signature. Shared structurally; equality,
// hashing and ordering are structural. size() counts operator occurrences.
// Ordering is size first, then head name, then arguments lexicographically.
class Term {
  public:
    Term() = default; // empty; only valid as a placeholder
    static Term make(std::string head, std::vector<Term> args = {});

    bool empty() const { return node_ == nullptr; }
    const std::string& head() const { return node_->head; }
    const std::vector<Term>& args() const { return node_->args; }
    int size() const { return node_->size; }
    std::size_t hash() const { return node_ ? node_->hash : 0; }

    bool operator==(const Term& other) const;
    std::strong_ordering operator<=>(const Term& other) const;

    std::string str() const;

  private:
    struct Node {
        std::string head;
        std::vector<Term> args;
        int size = 0;
        std::size_t hash = 0;
    };
    std::shared_ptr<const Node> node_;
};

struct TermHash {
    std::size_t operator()(const Term& t) const { return t.hash(); }
};

// A term whose leaves may be metavariables (plain string names).
class OpenTerm {
  public:
    OpenTerm() = default;
    static OpenTerm var(std::string name);
    static OpenTerm op(std::string head, std::vector<OpenTerm> args = {});
    static OpenTerm from_term(const Term& t);

    bool empty() const { return node_ == nullptr; }
    bool is_var() const { return node_->is_var; }
    // Metavariable name when is_var(), operator symbol otherwise.
    const std::string& name() const { return node_->name; }
    const std::vector<OpenTerm>& args() const { return node_->args; }

    std::set<std::string> vars() const;
    bool is_closed() const;
    Term to_term() const; // throws UnboundMetavariable on the first leftover variable

    bool operator==(const OpenTerm& other) const;
    std::string str() const;

  private:
    struct Node {
        std::string name;
        bool is_var = false;
        std::vector<OpenTerm> args;
    };
    std::shared_ptr<const Node> node_;
};

// Replaces every metavariable of t; the binding must be total on t's variables.
Term substitute(const OpenTerm& t, const std::map<std::string, Term>& binding);

// Partial substitution: unbound metavariables stay in place.
OpenTerm substitute_open(const OpenTerm& t, const std::map<std::string, OpenTerm>& binding);

// All closed terms with at most max_size operator occurrences, in canonical
// (size, then lexicographic) order, without duplicates.
std::vector<Term> enumerate_terms(const Signature& sig, int max_size);

// Well-formedness against a signature. Throw ArityMismatch / Error.
void validate_term(const Signature& sig, const Term& t);
// allowed_vars limits which metavariables may occur; throws ScopeError otherwise.
void validate_open_term(const Signature& sig, const OpenTerm& t,
                        const std::set<std::string>& allowed_vars);

// Term text syntax: name, or name(t1,...,tn). Names may contain primes.
Term parse_term(const Signature& sig, std::string_view text);
// Names that are not operators of the signature become metavariables.
OpenTerm parse_open_term(const Signature& sig, std::string_view text);

} // namespace hosos

#endif
