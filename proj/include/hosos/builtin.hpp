#ifndef HOSOS_BUILTIN_HPP
#define HOSOS_BUILTIN_HPP

#include <string>

#include "hosos/spec.hpp"

namespace hosos {

// The extended SKI calculus: S, K, I with auxiliary unary/binary operators so
// that every combinator's behaviour is a unary function step, plus binary
// application with the two standard rules.
const std::string& ski_text();
SpecDocument ski_spec();

// The four-rule system whose weak similarity is not a congruence: c and d are
// weakly similar but u(c) and u(d) are not, since u(d) reduces to itself.
const std::string& ex34_text();
SpecDocument ex34_spec();

} // namespace hosos

#endif
