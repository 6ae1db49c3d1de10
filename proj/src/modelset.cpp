#include "qcx/modelset.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace qcx {

Interval::Interval(QuadRat lo, QuadRat hi, bool lo_closed, bool hi_closed)
    : lo_(std::move(lo)), hi_(std::move(hi)), lo_closed_(lo_closed), hi_closed_(hi_closed) {
    require_same_ring(lo_.ring(), hi_.ring());
    const auto c = lo_ <=> hi_;
    if (c > 0)
        throw Error(Errc::InvalidArgument, "interval endpoints out of order");
    if (c == 0 && !(lo_closed_ && hi_closed_))
        throw Error(Errc::InvalidArgument, "degenerate interval must be closed");
}

Interval Interval::unit(const RingSpec &ring) {
    return Interval(QuadRat(ring, 0), QuadRat(ring, 1));
}

bool Interval::contains(const QuadRat &x) const {
    const auto lo = x <=> lo_;
    if (lo < 0 || (lo == 0 && !lo_closed_))
        return false;
    const auto hi = x <=> hi_;
    return hi < 0 || (hi == 0 && hi_closed_);
}

std::string Interval::to_string() const {
    std::ostringstream os;
    os << (lo_closed_ ? "[" : "(") << lo_ << ", " << hi_ << (hi_closed_ ? "]" : ")");
    return os.str();
}

PointSet::PointSet(Interval range, std::vector<QuadInt> points)
    : range_(std::move(range)), points_(std::move(points)) {
    for (const auto &p : points_) {
        require_same_ring(p.ring(), range_.ring());
        if (!range_.contains(p))
            throw Error(Errc::InvalidArgument, "point " + p.to_pair_string() + " outside range");
    }
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

bool PointSet::contains(const QuadInt &x) const {
    return std::binary_search(points_.begin(), points_.end(), x);
}

std::vector<QuadInt> PointSet::conjugates() const {
    std::vector<QuadInt> out;
    out.reserve(points_.size());
    for (const auto &p : points_)
        out.push_back(p.conj());
    return out;
}

PointSet enumerate(const RingSpec &ring, const Interval &window, const Interval &range) {
    require_same_ring(ring, window.ring());
    require_same_ring(ring, range.ring());
    // x - x' = b (beta - beta'), so b is pinned by the two strips; then a by each.
    const QuadInt beta = QuadInt::beta(ring);
    const QuadInt conj_beta = QuadInt::conj_beta(ring);
    const QuadRat delta(beta - conj_beta);
    const Integer b_min = ((range.lo() - window.hi()) / delta).ceil();
    const Integer b_max = ((range.hi() - window.lo()) / delta).floor();

    std::vector<QuadInt> points;
    for (Integer b = b_min; b <= b_max; ++b) {
        const QuadRat shift(beta * b);
        const QuadRat conj_shift(conj_beta * b);
        const Integer a_lo = std::max<Integer>((range.lo() - shift).ceil(), (window.lo() - conj_shift).ceil());
        const Integer a_hi = std::min<Integer>((range.hi() - shift).floor(), (window.hi() - conj_shift).floor());
        for (Integer a = a_lo; a <= a_hi; ++a) {
            QuadInt x(ring, a, b);
            // Only the endpoints can fail here, when an end is open.
            if (range.contains(x) && window.contains(x.conj()))
                points.push_back(std::move(x));
        }
    }
    return PointSet(range, std::move(points));
}

std::vector<GapCount> gaps(const PointSet &ps) {
    if (ps.size() < 2)
        throw Error(Errc::TooFewPoints, "gap statistics need at least two points, have " +
                                            std::to_string(ps.size()));
    std::vector<QuadInt> diffs;
    const auto &pts = ps.points();
    for (std::size_t i = 1; i < pts.size(); ++i)
        diffs.push_back(pts[i] - pts[i - 1]);
    std::sort(diffs.begin(), diffs.end());
    std::vector<GapCount> out;
    for (auto &d : diffs) {
        if (!out.empty() && out.back().gap == d)
            ++out.back().count;
        else
            out.push_back({std::move(d), 1});
    }
    return out;
}

ConvexityReport check_convexity(const PointSet &ps, const QuadInt &s, const Interval &window) {
    require_same_ring(ps.ring(), s.ring());
    if (!Interval::unit(s.ring()).contains(s.conj()))
        throw Error(Errc::ParameterNotAdmissible,
                    "conjugate of s = " + s.to_pair_string() + " is not in [0,1]");
    const QuadInt one_minus_s = QuadInt(s.ring(), 1) - s;
    const auto &pts = ps.points();
    std::unordered_set<QuadInt, QuadIntHash> members(pts.begin(), pts.end());

    std::vector<QuadInt> sx, ty;
    sx.reserve(pts.size());
    ty.reserve(pts.size());
    for (const auto &p : pts) {
        sx.push_back(s * p);
        ty.push_back(one_minus_s * p);
    }

    ConvexityReport report;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = 0; j < pts.size(); ++j) {
            ++report.pairs_checked;
            QuadInt z = sx[i] + ty[j];
            if (!ps.range().contains(z))
                continue;
            ++report.pairs_in_range;
            if (members.count(z) == 0) {
                const bool in_window = window.contains(z.conj());
                report.violations.push_back({pts[i], pts[j], std::move(z), in_window});
            }
        }
    }
    return report;
}

HullChain hull_reconstruct(const std::vector<QuadInt> &input) {
    if (input.empty())
        throw Error(Errc::MissingSeeds, "empty point list");
    const RingSpec &ring = input.front().ring();
    std::vector<QuadInt> points = input;
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    const QuadInt zero(ring, 0);
    const QuadInt one(ring, 1);
    if (!std::binary_search(points.begin(), points.end(), zero) ||
        !std::binary_search(points.begin(), points.end(), one))
        throw Error(Errc::MissingSeeds, "points must contain 0 and 1");

    std::vector<QuadInt> starts{zero};

    // Rightwards: covered up to `right`; take the farthest point within right + 1.
    QuadInt right = one;
    auto it = std::upper_bound(points.begin(), points.end(), right);
    while (it != points.end()) {
        const QuadInt limit = right + Integer(1);
        auto last = std::upper_bound(it, points.end(), limit);
        if (last == it)
            throw ChainBrokenError("gap " + (*it - right).to_pair_string() + " between " +
                                       right.to_pair_string() + " and " + it->to_pair_string() +
                                       " exceeds 1",
                                   right, *it);
        right = *(last - 1);
        starts.push_back(right - Integer(1));
        it = last;
    }

    // Leftwards, symmetric.
    QuadInt left = zero;
    auto lo_end = std::lower_bound(points.begin(), points.end(), left);
    while (lo_end != points.begin()) {
        const QuadInt limit = left - Integer(1);
        auto first = std::lower_bound(points.begin(), lo_end, limit);
        if (first == lo_end)
            throw ChainBrokenError("gap " + (left - *(lo_end - 1)).to_pair_string() + " between " +
                                       (lo_end - 1)->to_pair_string() + " and " +
                                       left.to_pair_string() + " exceeds 1",
                                   *(lo_end - 1), left);
        left = *first;
        starts.push_back(left);
        lo_end = first;
    }

    std::sort(starts.begin(), starts.end());
    return {Interval::closed(points.front(), points.back()), std::move(starts)};
}

}  // namespace qcx
