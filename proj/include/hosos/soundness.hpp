#ifndef HOSOS_SOUNDNESS_HPP
#define HOSOS_SOUNDNESS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hosos/opmodel.hpp"

namespace hosos {

enum class SampleStatus { Sound, Violated, Unknown };

std::string to_string(SampleStatus s);

struct SampleReport {
    std::vector<Term> sample; // instantiation of p1..pn
    SampleStatus status = SampleStatus::Sound;
    std::string detail; // violation witness or the reason for Unknown
};

struct RuleSoundness {
    std::size_t rule_index = 0;     // index into spec.rules()
    std::size_t declared_index = 0; // 1-based declared rule
    std::vector<SampleReport> samples;
    SampleStatus status = SampleStatus::Sound;
    std::optional<SampleReport> first_violation;
};

struct SoundnessReport {
    std::vector<RuleSoundness> per_rule;
    std::map<std::size_t, SampleStatus> per_declared; // 1-based declared index
    bool any_violation = false;
    std::vector<Term> args_used; // argument set for Fun conclusions

    std::vector<std::size_t> violated_declared_rules() const;
};

struct SamplerConfig {
    std::size_t enum_size = 2;          // enumerate sample components up to this size
    std::size_t random_samples = 8;     // extra random tuples per rule
    std::size_t max_enum_tuples = 64;   // cap on enumerated tuples per rule
    std::size_t random_term_size = 4;
    std::uint64_t seed = 1;
    std::size_t arg_size = 2;           // argument enumeration for Fun conclusions
    std::size_t max_args = 8;
    std::size_t max_premise_choices = 256;
};

// Checks the weak rule obtained from `rule` on the given samples: premises
// p_j => p̄_j enumerated over all trace prefixes, p_k ⇓ p̄_k unique, and the
// conclusion compared in the operational model.
RuleSoundness check_rule_sound(const SpecDocument& spec, const HoRule& rule,
                               const std::vector<std::vector<Term>>& samples,
                               std::size_t fuel, const std::vector<Term>& args,
                               std::size_t max_premise_choices = 256);

SoundnessReport check_spec_sound(const SpecDocument& spec, const SamplerConfig& cfg,
                                 std::size_t fuel);

// A uniform-ish random closed term, std::nullopt if the signature admits none.
std::optional<Term> random_term(const Signature& sig, std::mt19937_64& rng,
                                std::size_t size_budget);

} // namespace hosos

#endif
