#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qcx/quadring.hpp"

namespace qcx {

/**
 * A finite beta-expansion sum_{i} digits[i] * beta^(top - i).
 *
 * Digits are stored most significant first with trailing zeros stripped; the
 * leading digit is nonzero unless the string is empty (value 0). Signs are not
 * stored here, see SignedExpansion.
 */
class DigitString {
public:
    explicit DigitString(const RingSpec &ring) : ring_(ring) {}
    // Strips leading and trailing zeros, adjusting top. Throws DigitOutOfRange
    // for digits outside 0..[beta].
    DigitString(const RingSpec &ring, long top, std::vector<int> digits);

    const RingSpec &ring() const noexcept { return ring_; }
    long top() const noexcept { return top_; }
    const std::vector<int> &digits() const noexcept { return digits_; }
    bool empty() const noexcept { return digits_.empty(); }
    std::size_t size() const noexcept { return digits_.size(); }

    // Exponent of the last stored digit.
    long bottom() const noexcept { return top_ - static_cast<long>(digits_.size()) + 1; }
    // Digit at exponent k, 0 outside the stored range.
    int digit_at(long k) const noexcept;

    // "d_k ... d_0 . d_-1 ...", e.g. "10.01"; the empty string renders as "0".
    std::string to_string() const;
    static DigitString parse(const RingSpec &ring, std::string_view text);

    friend bool operator==(const DigitString &x, const DigitString &y) {
        return x.ring_ == y.ring_ && x.top_ == y.top_ && x.digits_ == y.digits_;
    }

private:
    RingSpec ring_;
    long top_ = 0;
    std::vector<int> digits_;
};

struct SignedExpansion {
    bool negative = false;
    DigitString magnitude;
};

// Renyi representation of 1 as a preperiodic digit sequence a_1 a_2 ...
struct RenyiRep {
    std::vector<int> prefix;
    std::vector<int> period;  // empty when the representation is finite
};

RenyiRep renyi_rep_of_one(const RingSpec &ring);

inline constexpr int kDefaultExpansionDepth = 64;

// Greedy beta-expansion of x > 0. Throws NonPositive for x <= 0 and
// NotFiniteError once max_depth digits are emitted with a nonzero remainder.
DigitString expand_greedy(const QuadInt &x, int max_depth = kDefaultExpansionDepth);

// Expansion of |x| with a sign flag; zero yields the empty string.
SignedExpansion expand_signed(const QuadInt &x, int max_depth = kDefaultExpansionDepth);

// Parry admissibility in the form stated for quadratic units: for eps = +1 a
// digit m must be followed by 0; for eps = -1 every suffix must be strictly
// lexicographically smaller than (m-1)(m-2)(m-2)... Positions past the end are 0.
bool is_admissible(const DigitString &d);

// Checks digits against 0..[beta] before testing admissibility.
bool is_admissible(const RingSpec &ring, const std::vector<int> &digits);

QuadInt evaluate(const DigitString &d);
QuadInt evaluate(const SignedExpansion &e);

// Membership in Fin(beta): always true for eps = +1, N(x) >= 0 for eps = -1.
bool in_fin(const QuadInt &x);

// Lexicographic comparison of two strings aligned at exponents.
int compare_aligned(const DigitString &x, const DigitString &y);

}  // namespace qcx
