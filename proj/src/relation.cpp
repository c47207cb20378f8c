#include "hosos/relation.hpp"

#include <algorithm>
#include <sstream>

namespace hosos {

FiniteRelation::FiniteRelation(std::vector<Term> universe) {
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
    auto index = std::make_shared<std::map<Term, std::size_t>>();
    for (std::size_t i = 0; i < universe.size(); ++i) (*index)[universe[i]] = i;
    universe_ = std::make_shared<std::vector<Term>>(std::move(universe));
    index_ = std::move(index);
}

FiniteRelation FiniteRelation::identity(std::vector<Term> universe) {
    FiniteRelation r(std::move(universe));
    for (std::size_t i = 0; i < r.universe().size(); ++i) r.pairs_.insert({i, i});
    return r;
}

std::optional<std::size_t> FiniteRelation::index_of(const Term& t) const {
    auto it = index_->find(t);
    if (it == index_->end()) return std::nullopt;
    return it->second;
}

bool FiniteRelation::same_universe(const FiniteRelation& other) const {
    return universe_ == other.universe_ || *universe_ == *other.universe_;
}

void FiniteRelation::add(const Term& a, const Term& b) {
    auto ia = index_of(a), ib = index_of(b);
    if (!ia || !ib) throw UniverseMismatch();
    pairs_.insert({*ia, *ib});
}

bool FiniteRelation::related(const Term& a, const Term& b) const {
    auto ia = index_of(a), ib = index_of(b);
    if (!ia || !ib) return false;
    return related(*ia, *ib);
}

std::vector<std::pair<Term, Term>> FiniteRelation::term_pairs() const {
    std::vector<std::pair<Term, Term>> out;
    out.reserve(pairs_.size());
    for (const auto& [a, b] : pairs_) out.emplace_back((*universe_)[a], (*universe_)[b]);
    return out;
}

bool FiniteRelation::subset_of(const FiniteRelation& other) const {
    if (!same_universe(other)) throw UniverseMismatch();
    return std::includes(other.pairs_.begin(), other.pairs_.end(), pairs_.begin(), pairs_.end());
}

bool FiniteRelation::operator==(const FiniteRelation& other) const {
    return same_universe(other) && pairs_ == other.pairs_;
}

FiniteRelation FiniteRelation::united(const FiniteRelation& other) const {
    if (!same_universe(other)) throw UniverseMismatch();
    FiniteRelation out = *this;
    out.pairs_.insert(other.pairs_.begin(), other.pairs_.end());
    return out;
}

FiniteRelation compose(const FiniteRelation& r, const FiniteRelation& s) {
    if (!r.same_universe(s)) throw UniverseMismatch();
    FiniteRelation out(r.universe());
    // successor lists of s indexed by first component
    std::vector<std::vector<std::size_t>> succ(s.universe().size());
    for (const auto& [b, c] : s.pairs()) succ[b].push_back(c);
    for (const auto& [a, b] : r.pairs())
        for (std::size_t c : succ[b]) out.add(r.universe()[a], r.universe()[c]);
    return out;
}

bool is_reflexive(const FiniteRelation& r) {
    for (std::size_t i = 0; i < r.universe().size(); ++i)
        if (!r.related(i, i)) return false;
    return true;
}

bool is_transitive(const FiniteRelation& r) {
    return compose(r, r).subset_of(r);
}

std::string CongruenceWitness::str() const {
    std::ostringstream out;
    out << op << ": related arguments (";
    for (std::size_t i = 0; i < left_args.size(); ++i) {
        if (i) out << ",";
        out << left_args[i].str();
    }
    out << ") and (";
    for (std::size_t i = 0; i < right_args.size(); ++i) {
        if (i) out << ",";
        out << right_args[i].str();
    }
    out << ") but the applications are unrelated";
    return out.str();
}

std::optional<CongruenceWitness> congruence_witness(const SpecDocument& spec,
                                                    const FiniteRelation& r) {
    // R-successor lists per universe element
    std::vector<std::vector<std::size_t>> succ(r.universe().size());
    for (const auto& [a, b] : r.pairs()) succ[a].push_back(b);

    for (const Term& t : r.universe()) {
        if (!spec.signature().contains(t.head())) continue;
        const int n = static_cast<int>(t.args().size());
        std::vector<std::size_t> arg_idx(n);
        bool args_in = true;
        for (int i = 0; i < n && args_in; ++i) {
            auto idx = r.index_of(t.args()[i]);
            if (!idx) args_in = false;
            else arg_idx[i] = *idx;
        }
        if (!args_in) continue; // no related argument tuples to consider

        std::vector<Term> right(n);
        std::function<std::optional<CongruenceWitness>(int)> walk =
            [&](int pos) -> std::optional<CongruenceWitness> {
            if (pos == n) {
                Term applied = Term::make(t.head(), right);
                if (!r.in_universe(applied)) return std::nullopt;
                if (!r.related(t, applied))
                    return CongruenceWitness{t.head(), t.args(), right};
                return std::nullopt;
            }
            for (std::size_t q : succ[arg_idx[pos]]) {
                right[pos] = r.universe()[q];
                if (auto w = walk(pos + 1)) return w;
            }
            return std::nullopt;
        };
        if (auto w = walk(0)) return w;
    }
    return std::nullopt;
}

bool is_congruence(const SpecDocument& spec, const FiniteRelation& r) {
    return !congruence_witness(spec, r).has_value();
}

B0LiftResult b0_lift_related(const FiniteRelation& r, const FiniteRelation& s,
                             const Behavior& u, const Behavior& v) {
    B0LiftResult out;
    if (u.kind != v.kind) return out; // mixed summands never relate
    if (u.is_red()) {
        if (!s.in_universe(u.next)) return {B0LiftResult::Kind::OutOfUniverse, u.next};
        if (!s.in_universe(v.next)) return {B0LiftResult::Kind::OutOfUniverse, v.next};
        out.kind = s.related(u.next, v.next) ? B0LiftResult::Kind::Related
                                             : B0LiftResult::Kind::NotRelated;
        return out;
    }
    // Fun/Fun: bodies pointwise on the pairs of r
    for (const auto& [x, xp] : r.pairs()) {
        Term left = u.apply(r.universe()[x]);
        Term right = v.apply(r.universe()[xp]);
        if (!s.in_universe(left)) return {B0LiftResult::Kind::OutOfUniverse, left};
        if (!s.in_universe(right)) return {B0LiftResult::Kind::OutOfUniverse, right};
        if (!s.related(left, right)) return out;
    }
    out.kind = B0LiftResult::Kind::Related;
    return out;
}

bool egli_milner_related(const FiniteRelation& r, const std::vector<Term>& u,
                         const std::vector<Term>& v) {
    for (const Term& a : u) {
        bool found = false;
        for (const Term& b : v)
            if (r.related(a, b)) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

std::vector<Term> subterm_closure(std::vector<Term> universe) {
    std::vector<Term> stack = universe;
    std::set<Term> seen(universe.begin(), universe.end());
    while (!stack.empty()) {
        Term t = stack.back();
        stack.pop_back();
        for (const Term& a : t.args())
            if (seen.insert(a).second) stack.push_back(a);
    }
    std::vector<Term> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

FiniteRelation parse_relation(const SpecDocument& spec, const std::string& text,
                              const std::vector<Term>& extra_universe) {
    std::vector<std::pair<Term, Term>> pairs;
    std::vector<Term> universe = extra_universe;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw != "pair") throw ParseError(lineno, "expected 'pair', got \"" + kw + "\"");
        std::string a, b;
        if (!(ls >> a >> b)) throw ParseError(lineno, "pair needs two terms");
        std::string rest;
        if (ls >> rest) throw ParseError(lineno, "trailing input: \"" + rest + "\"");
        try {
            Term ta = parse_term(spec.signature(), a);
            Term tb = parse_term(spec.signature(), b);
            universe.push_back(ta);
            universe.push_back(tb);
            pairs.emplace_back(std::move(ta), std::move(tb));
        } catch (const Error& e) {
            throw ParseError(lineno, e.what());
        }
    }
    FiniteRelation r(std::move(universe));
    for (const auto& [a, b] : pairs) r.add(a, b);
    return r;
}

std::string relation_to_string(const FiniteRelation& r) {
    std::ostringstream out;
    for (const auto& [a, b] : r.term_pairs())
        out << "pair " << a.str() << " " << b.str() << "\n";
    return out.str();
}

} // namespace hosos
