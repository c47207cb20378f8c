#include "hosos/howe.hpp"

#include <functional>

namespace hosos {

namespace {

void require_decomposition_closed(const FiniteRelation& r) {
    for (const Term& t : r.universe())
        for (const Term& a : t.args())
            if (!r.in_universe(a))
                throw Error("universe is not closed under subterms: missing " + a.str());
}

FiniteRelation stage(const SpecDocument& spec, const FiniteRelation& r,
                     const FiniteRelation& prev, std::size_t* blocked) {
    FiniteRelation out = prev;

    // prev-successor lists per universe index
    std::vector<std::vector<std::size_t>> succ(prev.universe().size());
    for (const auto& [a, b] : prev.pairs()) succ[a].push_back(b);
    // r-successor lists per universe index
    std::vector<std::vector<std::size_t>> rsucc(r.universe().size());
    for (const auto& [a, b] : r.pairs()) rsucc[a].push_back(b);

    for (const Term& t : prev.universe()) {
        if (!spec.signature().contains(t.head())) continue;
        const int n = static_cast<int>(t.args().size());
        std::vector<std::size_t> arg_idx(n);
        for (int i = 0; i < n; ++i) arg_idx[i] = *prev.index_of(t.args()[i]);

        std::vector<Term> right(n);
        std::function<void(int)> walk = [&](int pos) {
            if (pos == n) {
                Term fq = Term::make(t.head(), right);
                auto idx = r.index_of(fq);
                if (!idx) {
                    if (blocked) ++*blocked;
                    return;
                }
                for (std::size_t ri : rsucc[*idx]) out.add(t, r.universe()[ri]);
                return;
            }
            for (std::size_t q : succ[arg_idx[pos]]) {
                right[pos] = prev.universe()[q];
                walk(pos + 1);
            }
        };
        walk(0);
    }
    return out;
}

} // namespace

FiniteRelation howe_stage(const SpecDocument& spec, const FiniteRelation& r,
                          const FiniteRelation& prev) {
    if (!r.same_universe(prev)) throw UniverseMismatch();
    require_decomposition_closed(r);
    return stage(spec, r, prev, nullptr);
}

HoweResult howe_closure(const SpecDocument& spec, const FiniteRelation& r) {
    require_decomposition_closed(r);
    HoweResult result;
    FiniteRelation prev = r;
    for (;;) {
        std::size_t blocked = 0;
        FiniteRelation next = stage(spec, r, prev, &blocked);
        ++result.stages;
        if (next == prev) {
            result.closure = std::move(next);
            result.blocked = blocked; // fixpoint pass counts every still-blocked step
            return result;
        }
        prev = std::move(next);
    }
}

} // namespace hosos
