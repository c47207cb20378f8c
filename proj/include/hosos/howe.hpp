#ifndef HOSOS_HOWE_HPP
#define HOSOS_HOWE_HPP

#include "hosos/relation.hpp"

namespace hosos {

// One inductive stage: prev plus every (f(p⃗), r) with componentwise
// prev(p⃗,q⃗), f(q⃗) in the universe and R(f(q⃗), r). The universe must be
// shared and closed under subterms.
FiniteRelation howe_stage(const SpecDocument& spec, const FiniteRelation& r,
                          const FiniteRelation& prev);

struct HoweResult {
    FiniteRelation closure;
    std::size_t stages = 0;  // iterations until the fixpoint
    std::size_t blocked = 0; // closure steps dropped because f(q⃗) left the universe
};

// Iterates howe_stage from R until the fixpoint.
HoweResult howe_closure(const SpecDocument& spec, const FiniteRelation& r);

} // namespace hosos

#endif
