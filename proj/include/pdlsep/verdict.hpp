#ifndef PDLSEP_VERDICT_HPP
#define PDLSEP_VERDICT_HPP

#include <functional>
#include <optional>
#include <string>

#include "pdlsep/lts.hpp"

namespace pdlsep {

/// Three-valued answer of a bounded search.
struct Verdict3 {
    enum class Kind { Valid, Refuted, Unknown };
    Kind kind = Kind::Unknown;
    /// Re-checkable countermodel when refuted.
    std::optional<Structure> countermodel;
    /// Bound certificate or the reason for giving up.
    std::string evidence;

    static Verdict3 valid(std::string evidence) { return {Kind::Valid, std::nullopt, std::move(evidence)}; }
    static Verdict3 refuted(Structure m, std::string evidence = {}) {
        return {Kind::Refuted, std::move(m), std::move(evidence)};
    }
    static Verdict3 unknown(std::string evidence) { return {Kind::Unknown, std::nullopt, std::move(evidence)}; }

    bool is_valid() const { return kind == Kind::Valid; }
    bool is_refuted() const { return kind == Kind::Refuted; }
    bool is_unknown() const { return kind == Kind::Unknown; }
};

inline const char* to_string(Verdict3::Kind k) {
    switch (k) {
        case Verdict3::Kind::Valid: return "VALID";
        case Verdict3::Kind::Refuted: return "REFUTED";
        case Verdict3::Kind::Unknown: return "UNKNOWN";
    }
    return "?";
}

}  // namespace pdlsep

#endif
