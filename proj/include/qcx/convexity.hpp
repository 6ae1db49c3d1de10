#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "qcx/modelset.hpp"
#include "qcx/quadring.hpp"
#include "qcx/witness.hpp"

namespace qcx {

// x ⊢_s y = s x + (1 - s) y
QuadRat apply_op(const QuadRat &s, const QuadRat &x, const QuadRat &y);

// Nonempty list of operation parameters over one ring.
class ParamSet {
public:
    ParamSet(const RingSpec &ring, std::vector<QuadInt> params);

    const RingSpec &ring() const noexcept { return ring_; }
    const std::vector<QuadInt> &params() const noexcept { return params_; }
    std::size_t size() const noexcept { return params_.size(); }

    ParamSet conjugated() const;

private:
    RingSpec ring_;
    std::vector<QuadInt> params_;
};

inline constexpr std::size_t kDefaultNodeCap = 1'000'000;

/**
 * Cl_params(seeds) truncated to `depth` rounds: each round applies every
 * parameter to every ordered pair of values known so far. Values are
 * deduplicated by their exact coordinates; the range filter is applied only to
 * the output. Without a range the output range is the hull of the values.
 * Throws BudgetExceeded once more than node_cap values are known.
 */
PointSet closure_bfs(const std::vector<QuadInt> &seeds, const ParamSet &params, int depth,
                     const std::optional<Interval> &range = std::nullopt,
                     std::size_t node_cap = kDefaultNodeCap);

enum class Divisibility { DividesY, DividesYMinus1, Both, Neither };

std::string_view divisibility_name(Divisibility d) noexcept;

// Whether s divides y, y - 1, both or neither in Z[beta]. Neither certifies
// y is outside Cl_s{0,1}.
Divisibility divisibility_filter(const QuadInt &y, const QuadInt &s);

// Window side parameters s' in (0,1) with Cl_{s'}{0,1} = [0,1] ∩ Z[beta] still
// possible: the two candidates 1/beta and 1 - 1/beta, kept when both s' and
// 1 - s' divide 2.
std::vector<QuadInt> classify_forcing(const RingSpec &ring);

struct SweepRow {
    RingSpec ring;
    std::vector<QuadInt> forcing;      // window side s'
    std::vector<QuadInt> direct_side;  // s = conj(s')
    bool expected_nonempty;            // exceptional rings (1,+1), (2,+1), (4,-1)
    bool matches_expectation() const { return forcing.empty() != expected_nonempty; }
};

// classify_forcing for (m,+1), m = 1..m_max and (m,-1), m = 4..m_max.
std::vector<SweepRow> forcing_sweep(int m_max);

bool is_exceptional_ring(const RingSpec &ring) noexcept;

// Direct side parameters s with s' = i/beta for i = 1..reduced_op_count().
ParamSet param_set_N(const RingSpec &ring);

}  // namespace qcx
