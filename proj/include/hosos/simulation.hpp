#ifndef HOSOS_SIMULATION_HPP
#define HOSOS_SIMULATION_HPP

#include <string>
#include <vector>

#include "hosos/relation.hpp"
#include "hosos/verdict.hpp"

namespace hosos {

// Verifies the two strong-premise weak-simulation clauses for every pair of
// the candidate relation. The function-argument quantifier ranges over the
// relation's universe.
Verdict check_weak_simulation(const SpecDocument& spec, const FiniteRelation& r,
                              std::size_t fuel);

// On-the-fly bounded similarity: pairs on the assumption stack are accepted,
// depth exhaustion yields Holds (up to the bounds). Strong mode matches
// single reduction steps and zero-step function behaviour.
Verdict weak_similar(const SpecDocument& spec, const Term& p, const Term& q,
                     const Bounds& bounds, SimMode mode = SimMode::Weak);

// Same, reusing a caller-owned evaluator across queries.
Verdict weak_similar(Evaluator& eval, const Term& p, const Term& q, const Bounds& bounds,
                     SimMode mode = SimMode::Weak);

} // namespace hosos

#endif
