#include "qcx/convexity.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_set>

namespace qcx {

QuadRat apply_op(const QuadRat &s, const QuadRat &x, const QuadRat &y) {
    require_same_ring(s.ring(), x.ring());
    require_same_ring(s.ring(), y.ring());
    return s * x + (QuadRat(s.ring(), 1) - s) * y;
}

ParamSet::ParamSet(const RingSpec &ring, std::vector<QuadInt> params)
    : ring_(ring), params_(std::move(params)) {
    if (params_.empty())
        throw Error(Errc::InvalidArgument, "parameter set is empty");
    for (const auto &p : params_)
        require_same_ring(ring_, p.ring());
}

ParamSet ParamSet::conjugated() const {
    std::vector<QuadInt> out;
    out.reserve(params_.size());
    for (const auto &p : params_)
        out.push_back(p.conj());
    return ParamSet(ring_, std::move(out));
}

namespace {

PointSet finish(std::vector<QuadInt> values, const std::optional<Interval> &range) {
    if (range) {
        std::vector<QuadInt> kept;
        for (auto &v : values) {
            if (range->contains(v))
                kept.push_back(std::move(v));
        }
        return PointSet(*range, std::move(kept));
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return PointSet(Interval::closed(*lo, *hi), std::move(values));
}

std::string budget_message(std::size_t cap, int round) {
    return "closure exceeded " + std::to_string(cap) + " values at round " + std::to_string(round + 1);
}

// Same rounds on machine words. Returns nullopt as soon as a coordinate would
// leave +-2^61; the caller then reruns everything with big integers.
struct Small {
    std::int64_t a, b;
    bool operator==(const Small &o) const noexcept { return a == o.a && b == o.b; }
};

struct SmallHash {
    std::size_t operator()(const Small &x) const noexcept {
        const auto h = static_cast<std::uint64_t>(x.a) * 0x9e3779b97f4a7c15ULL;
        return static_cast<std::size_t>(h ^ (static_cast<std::uint64_t>(x.b) + 0x7f4a7c159e3779b9ULL + (h << 6)));
    }
};

using Wide = __int128;
constexpr std::int64_t kSmallLimit = std::int64_t{1} << 61;

bool fits(Wide v) { return v < kSmallLimit && v > -kSmallLimit; }

std::optional<Small> to_small(const QuadInt &x) {
    if (!x.a().fits_slong_p() || !x.b().fits_slong_p())
        return std::nullopt;
    const Small s{x.a().get_si(), x.b().get_si()};
    if (!fits(s.a) || !fits(s.b))
        return std::nullopt;
    return s;
}

std::optional<std::vector<QuadInt>> closure_small(const std::vector<QuadInt> &seeds, const ParamSet &params,
                                                  int depth, std::size_t node_cap) {
    const RingSpec &ring = params.ring();
    const int m = ring.m(), eps = ring.eps();
    std::vector<Small> ps, cs;
    for (const auto &p : params.params()) {
        const auto sp = to_small(p), sc = to_small(QuadInt(ring, 1) - p);
        if (!sp || !sc)
            return std::nullopt;
        ps.push_back(*sp);
        cs.push_back(*sc);
    }
    std::vector<Small> values;
    std::unordered_set<Small, SmallHash> seen;
    for (const auto &x : seeds) {
        const auto s = to_small(x);
        if (!s)
            return std::nullopt;
        if (seen.insert(*s).second)
            values.push_back(*s);
    }
    bool overflow = false;
    const auto mul = [&](const Small &x, const Small &y) -> Small {
        const Wide bd = static_cast<Wide>(x.b) * y.b;
        const Wide a = static_cast<Wide>(x.a) * y.a + eps * bd;
        const Wide b = static_cast<Wide>(x.a) * y.b + static_cast<Wide>(x.b) * y.a + m * bd;
        if (!fits(a) || !fits(b)) {
            overflow = true;
            return {0, 0};
        }
        return {static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)};
    };

    const std::size_t np = ps.size();
    std::vector<std::vector<Small>> scaled(np), comp_scaled(np);
    std::size_t old_count = 0;
    for (int round = 0; round < depth; ++round) {
        const std::size_t count = values.size();
        for (std::size_t k = 0; k < np; ++k) {
            for (std::size_t i = scaled[k].size(); i < count; ++i) {
                scaled[k].push_back(mul(ps[k], values[i]));
                comp_scaled[k].push_back(mul(cs[k], values[i]));
            }
        }
        if (overflow)
            return std::nullopt;
        std::vector<Small> fresh;
        for (std::size_t k = 0; k < np; ++k) {
            for (std::size_t i = 0; i < count; ++i) {
                const std::size_t j0 = i < old_count ? old_count : 0;
                const Small sx = scaled[k][i];
                for (std::size_t j = j0; j < count; ++j) {
                    const Small &cy = comp_scaled[k][j];
                    // Both terms are below 2^61 in magnitude, so the sums fit.
                    const Small z{sx.a + cy.a, sx.b + cy.b};
                    if (!fits(z.a) || !fits(z.b))
                        return std::nullopt;
                    if (seen.insert(z).second) {
                        fresh.push_back(z);
                        if (seen.size() > node_cap)
                            throw Error(Errc::BudgetExceeded, budget_message(node_cap, round));
                    }
                }
            }
        }
        old_count = count;
        if (fresh.empty())
            break;
        values.insert(values.end(), fresh.begin(), fresh.end());
    }
    std::vector<QuadInt> out;
    out.reserve(values.size());
    for (const auto &v : values)
        out.emplace_back(ring, Integer(v.a), Integer(v.b));
    return out;
}

}  // namespace

PointSet closure_bfs(const std::vector<QuadInt> &seeds, const ParamSet &params, int depth,
                     const std::optional<Interval> &range, std::size_t node_cap) {
    if (depth < 0)
        throw Error(Errc::InvalidArgument, "depth must be >= 0");
    if (seeds.empty())
        throw Error(Errc::InvalidArgument, "closure needs at least one seed");
    const RingSpec &ring = params.ring();
    for (const auto &s : seeds)
        require_same_ring(ring, s.ring());
    if (auto small = closure_small(seeds, params, depth, node_cap))
        return finish(std::move(*small), range);


    std::vector<QuadInt> values;
    std::unordered_set<QuadInt, QuadIntHash> seen;
    for (const auto &s : seeds) {
        require_same_ring(ring, s.ring());
        if (seen.insert(s).second)
            values.push_back(s);
    }

    // s*x and (1-s)*x are cached per value, so each pair costs one addition.
    const std::size_t np = params.size();
    std::vector<QuadInt> complements;
    for (const auto &p : params.params())
        complements.push_back(QuadInt(ring, 1) - p);
    std::vector<std::vector<QuadInt>> scaled(np), comp_scaled(np);

    std::size_t old_count = 0;
    for (int round = 0; round < depth; ++round) {
        const std::size_t count = values.size();
        for (std::size_t k = 0; k < np; ++k) {
            for (std::size_t i = scaled[k].size(); i < count; ++i) {
                scaled[k].push_back(params.params()[k] * values[i]);
                comp_scaled[k].push_back(complements[k] * values[i]);
            }
        }
        std::vector<QuadInt> fresh;
        for (std::size_t k = 0; k < np; ++k) {
            for (std::size_t i = 0; i < count; ++i) {
                // Pairs of two old values were combined in an earlier round.
                const std::size_t j0 = i < old_count ? old_count : 0;
                for (std::size_t j = j0; j < count; ++j) {
                    QuadInt z = scaled[k][i] + comp_scaled[k][j];
                    if (seen.insert(z).second) {
                        fresh.push_back(std::move(z));
                        if (seen.size() > node_cap)
                            throw Error(Errc::BudgetExceeded, budget_message(node_cap, round));
                    }
                }
            }
        }
        old_count = count;
        if (fresh.empty())
            break;
        for (auto &z : fresh)
            values.push_back(std::move(z));
    }

    return finish(std::move(values), range);
}

std::string_view divisibility_name(Divisibility d) noexcept {
    switch (d) {
    case Divisibility::DividesY: return "DividesY";
    case Divisibility::DividesYMinus1: return "DividesYMinus1";
    case Divisibility::Both: return "Both";
    case Divisibility::Neither: return "Neither";
    }
    return "Unknown";
}

Divisibility divisibility_filter(const QuadInt &y, const QuadInt &s) {
    const bool dy = divides(s, y).has_value();
    const bool dy1 = divides(s, y - Integer(1)).has_value();
    if (dy && dy1)
        return Divisibility::Both;
    if (dy)
        return Divisibility::DividesY;
    if (dy1)
        return Divisibility::DividesYMinus1;
    return Divisibility::Neither;
}

std::vector<QuadInt> classify_forcing(const RingSpec &ring) {
    // Z[s'] = Z[beta] forces s' = ±beta + k; inside (0,1) only 1/beta and 1 - 1/beta remain.
    const QuadInt one(ring, 1);
    const QuadInt two(ring, 2);
    const QuadInt inv = QuadInt::inv_beta(ring);
    std::vector<QuadInt> out;
    for (const QuadInt &s : {inv, one - inv}) {
        if (divides(s, two) && divides(one - s, two))
            out.push_back(s);
    }
    return out;
}

bool is_exceptional_ring(const RingSpec &ring) noexcept {
    return (ring.eps() > 0 && (ring.m() == 1 || ring.m() == 2)) || (ring.eps() < 0 && ring.m() == 4);
}

std::vector<SweepRow> forcing_sweep(int m_max) {
    if (m_max < 4)
        throw Error(Errc::InvalidArgument, "sweep bound must be >= 4");
    std::vector<SweepRow> rows;
    auto add = [&](const RingSpec &ring) {
        SweepRow row{ring, classify_forcing(ring), {}, is_exceptional_ring(ring)};
        for (const auto &s : row.forcing)
            row.direct_side.push_back(s.conj());
        rows.push_back(std::move(row));
    };
    for (int m = 1; m <= m_max; ++m)
        add(RingSpec::make(m, 1));
    for (int m = 4; m <= m_max; ++m)
        add(RingSpec::make(m, -1));
    return rows;
}

ParamSet param_set_N(const RingSpec &ring) {
    std::vector<QuadInt> params;
    for (int i = 1; i <= ring.reduced_op_count(); ++i)
        params.push_back(op_param(ring, i, Side::Direct));
    return ParamSet(ring, std::move(params));
}

}  // namespace qcx
