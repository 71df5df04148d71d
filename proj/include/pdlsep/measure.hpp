#ifndef PDLSEP_MEASURE_HPP
#define PDLSEP_MEASURE_HPP

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace pdlsep {

/// An element of ω+1 = {0, 1, 2, …, ω}.
class OmegaPlusOne {
public:
    constexpr OmegaPlusOne() = default;
    static constexpr OmegaPlusOne fin(std::uint64_t n) { return OmegaPlusOne(false, n); }
    static constexpr OmegaPlusOne omega() { return OmegaPlusOne(true, 0); }

    constexpr bool is_omega() const { return omega_; }
    constexpr std::uint64_t value() const { return value_; }

    constexpr std::strong_ordering operator<=>(const OmegaPlusOne& o) const {
        if (omega_ != o.omega_) return omega_ ? std::strong_ordering::greater : std::strong_ordering::less;
        return value_ <=> o.value_;
    }
    constexpr bool operator==(const OmegaPlusOne&) const = default;

    std::string str() const { return omega_ ? "ω" : std::to_string(value_); }

private:
    constexpr OmegaPlusOne(bool omega, std::uint64_t v) : omega_(omega), value_(v) {}
    bool omega_ = false;
    std::uint64_t value_ = 0;
};

using OrdinalSeq = std::vector<OmegaPlusOne>;

/// Finite set of finite sequences over ω+1. The std::set ordering is only a
/// storage order; the well-founded orders are lex_gt and measure_gt.
using Measure = std::set<OrdinalSeq>;

/// Length-dominant lexicographic order: longer sequences are greater; equal
/// lengths compare at the first differing position.
bool lex_gt(const OrdinalSeq& u, const OrdinalSeq& v);

/// M >_𝕄 N: M ≠ N, M∖N ≠ ∅ and every element of N∖M is lex-dominated by some
/// element of M∖N.
bool measure_gt(const Measure& m, const Measure& n);

/// Reflexive closure of measure_gt, written M ≥_𝕄 N.
inline bool measure_ge(const Measure& m, const Measure& n) { return m == n || measure_gt(m, n); }

/// k :: M, prepending k to every entry.
Measure cons(OmegaPlusOne k, const Measure& m);

inline Measure nil_measure() { return Measure{OrdinalSeq{}}; }

std::string to_string(const OrdinalSeq& s);
/// Renders as {[2, ω], []}.
std::string to_string(const Measure& m);

}  // namespace pdlsep

#endif
