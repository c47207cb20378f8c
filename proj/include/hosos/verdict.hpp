#ifndef HOSOS_VERDICT_HPP
#define HOSOS_VERDICT_HPP

#include <string>
#include <vector>

#include "hosos/errors.hpp"

namespace hosos {

struct Bounds {
    std::size_t depth = 8;    // coinduction unfolding
    std::size_t fuel = 100;   // reduction steps per weak-transition search
    std::size_t arg_size = 2; // max size of enumerated function arguments

    void validate() const {
        if (depth < 1 || fuel < 1 || arg_size < 1) throw Error("bounds must all be >= 1");
    }
};

struct WitnessEntry {
    std::string left, right; // the pair under scrutiny
    std::string clause;      // "red" | "fun" | "fun-arg" | "closing"
    std::string detail;
};

// Three-valued outcome. Holds is always relative to the recorded bounds and
// argument set; Refuted carries a replayable path of failed obligations.
struct Verdict {
    enum class Kind { Holds, Refuted, Unknown };
    Kind kind = Kind::Unknown;
    Bounds bounds;
    std::vector<WitnessEntry> witness; // Refuted only
    std::string reason;                // Unknown only
    std::vector<std::string> args_tested;

    bool holds() const { return kind == Kind::Holds; }
    bool refuted() const { return kind == Kind::Refuted; }
    bool unknown() const { return kind == Kind::Unknown; }
    std::string kind_str() const {
        switch (kind) {
            case Kind::Holds: return "holds";
            case Kind::Refuted: return "refuted";
            default: return "unknown";
        }
    }
};

enum class SimMode { Weak, Strong };

} // namespace hosos

#endif
