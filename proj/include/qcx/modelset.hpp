#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcx/quadring.hpp"

namespace qcx {

// Bounded interval with exact endpoints in Q(beta).
class Interval {
public:
    // Throws InvalidArgument when lo > hi, or lo == hi with an open end.
    Interval(QuadRat lo, QuadRat hi, bool lo_closed = true, bool hi_closed = true);

    static Interval closed(QuadRat lo, QuadRat hi) { return Interval(std::move(lo), std::move(hi)); }
    static Interval unit(const RingSpec &ring);

    const QuadRat &lo() const noexcept { return lo_; }
    const QuadRat &hi() const noexcept { return hi_; }
    bool lo_closed() const noexcept { return lo_closed_; }
    bool hi_closed() const noexcept { return hi_closed_; }
    const RingSpec &ring() const noexcept { return lo_.ring(); }

    bool contains(const QuadRat &x) const;
    QuadRat length() const { return hi_ - lo_; }

    // "[lo, hi]" style with the open ends as parentheses.
    std::string to_string() const;

    friend bool operator==(const Interval &, const Interval &) = default;

private:
    QuadRat lo_, hi_;
    bool lo_closed_, hi_closed_;
};

// Strictly increasing list of ring elements, all inside `range`.
class PointSet {
public:
    // Sorts and deduplicates; throws InvalidArgument if a point lies outside range.
    PointSet(Interval range, std::vector<QuadInt> points);

    const RingSpec &ring() const noexcept { return range_.ring(); }
    const Interval &range() const noexcept { return range_; }
    const std::vector<QuadInt> &points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool contains(const QuadInt &x) const;

    std::vector<QuadInt> conjugates() const;

private:
    Interval range_;
    std::vector<QuadInt> points_;
};

// All x in Z[beta] with x' in window and x in range.
PointSet enumerate(const RingSpec &ring, const Interval &window, const Interval &range);

struct GapCount {
    QuadInt gap;
    std::size_t count;
};

// Distinct consecutive differences in increasing order. Throws TooFewPoints.
std::vector<GapCount> gaps(const PointSet &ps);

struct ConvexityViolation {
    QuadInt x, y, z;          // z = s x + (1 - s) y, inside range but missing
    bool conj_in_window;      // whether z' lies in the supplied window
};

struct ConvexityReport {
    std::size_t pairs_checked = 0;
    std::size_t pairs_in_range = 0;
    std::vector<ConvexityViolation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

// Truncated s-convexity check over all ordered pairs of ps. Throws
// ParameterNotAdmissible unless s' lies in [0, 1].
ConvexityReport check_convexity(const PointSet &ps, const QuadInt &s, const Interval &window);

class ChainBrokenError : public Error {
public:
    ChainBrokenError(const std::string &what, QuadInt from, QuadInt to)
        : Error(Errc::ChainBroken, what), from_(std::move(from)), to_(std::move(to)) {}

    const QuadInt &from() const noexcept { return from_; }
    const QuadInt &to() const noexcept { return to_; }
    QuadInt gap() const { return to_ - from_; }

private:
    QuadInt from_, to_;
};

struct HullChain {
    Interval hull;
    // Unit intervals [c, c+1] with both ends in the input, each overlapping or
    // touching the part already covered, starting from [0, 1].
    std::vector<QuadInt> unit_starts;
};

// Convex hull of window-side points containing 0 and 1, plus a chain of unit
// intervals covering it. Throws MissingSeeds or ChainBrokenError.
HullChain hull_reconstruct(const std::vector<QuadInt> &points);

}  // namespace qcx
