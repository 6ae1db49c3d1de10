#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qcx/convexity.hpp"

using namespace qcx;

namespace {

const RingSpec golden = RingSpec::make(1, 1);
const RingSpec r41 = RingSpec::make(4, -1);

QuadInt el(const RingSpec &r, long a, long b) { return QuadInt(r, a, b); }

std::vector<QuadInt> zero_one(const RingSpec &r) { return {QuadInt(r), QuadInt(r, 1)}; }

}  // namespace

TEST_CASE("operation examples") {
    const QuadRat s(el(golden, 0, -1));
    CHECK(apply_op(s, QuadRat(el(golden, 0, 0)), QuadRat(el(golden, 1, 0))) == QuadRat(el(golden, 1, 1)));
    const QuadRat x(el(golden, 3, -7), 5), y(el(golden, -2, 1), 3);
    CHECK(apply_op(QuadRat(el(golden, 1, 0)), x, y) == x);
    CHECK(apply_op(QuadRat(el(golden, 0, 0)), x, y) == y);
    for (const auto &ring : oracle::sample_rings())
        for (int j = 1; j <= ring.floor_beta(); ++j)
            CHECK(apply_op(QuadRat(op_param(ring, j)), QuadRat(QuadInt(ring, 1)), QuadRat(QuadInt(ring))) ==
                  QuadRat(op_param(ring, j)));
    CHECK_THROWS_AS(apply_op(s, x, QuadRat(el(r41, 1, 0))), Error);
}

TEST_CASE("equivariance on random triples") {
    std::mt19937_64 rng(51);
    for (const auto &ring : oracle::sample_rings()) {
        const QuadRat inv(QuadInt::inv_beta(ring));
        for (int i = 0; i < 1700; ++i) {
            const QuadRat s(oracle::random_element(rng, ring, 1000));
            const QuadRat x(oracle::random_element(rng, ring, 1000), 1 + static_cast<long>(rng() % 7));
            const QuadRat y(oracle::random_element(rng, ring, 1000));
            const QuadRat c(oracle::random_element(rng, ring, 1000));
            const QuadRat z = apply_op(s, x, y);
            CHECK(z.conj() == apply_op(s.conj(), x.conj(), y.conj()));
            CHECK(z + c == apply_op(s, x + c, y + c));
            CHECK(apply_op(s, x * inv, y * inv) == z * inv);
        }
    }
}

TEST_CASE("closure examples") {
    const ParamSet tau(golden, {el(golden, 0, -1)});
    const PointSet d1 = closure_bfs(zero_one(golden), tau, 1);
    CHECK(d1.points() == std::vector<QuadInt>{el(golden, 0, -1), el(golden, 0, 0), el(golden, 1, 0), el(golden, 1, 1)});
    CHECK(closure_bfs(zero_one(golden), tau, 0).points() == zero_one(golden));

    const Interval window = Interval::unit(golden);
    const Interval range = Interval::closed(QuadRat(QuadInt(golden)), QuadRat(QuadInt::beta(golden).pow(4)));
    const PointSet d6 = closure_bfs(zero_one(golden), tau, 6, range);
    CHECK(d6.size() > 4);
    for (const auto &p : d6.points())
        CHECK(window.contains(QuadRat(p.conj())));

    try {
        closure_bfs(zero_one(golden), tau, 6, std::nullopt, 100);
        FAIL("expected BudgetExceeded");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::BudgetExceeded);
    }
    CHECK_THROWS_AS(closure_bfs(zero_one(golden), tau, -1), Error);
    CHECK_THROWS_AS(ParamSet(golden, {}), Error);
}

TEST_CASE("closure against a naive fixpoint") {
    // Recompute every round from scratch over all ordered pairs.
    for (const auto &ring : {golden, r41, RingSpec::make(3, 1)}) {
        const ParamSet ps(ring, {QuadInt::inv_beta(ring).conj()});
        std::vector<QuadInt> cur = zero_one(ring);
        for (int depth = 0; depth <= 3; ++depth) {
            std::vector<QuadInt> sorted = cur;
            std::sort(sorted.begin(), sorted.end(), [](const QuadInt &x, const QuadInt &y) {
                return oracle::to_double(x) < oracle::to_double(y);
            });
            CHECK(closure_bfs(zero_one(ring), ps, depth).points() == sorted);
            std::vector<QuadInt> next = cur;
            const QuadInt s = ps.params()[0];
            for (const auto &x : cur)
                for (const auto &y : cur) {
                    const QuadInt z = s * x + (QuadInt(ring, 1) - s) * y;
                    if (std::find(next.begin(), next.end(), z) == next.end())
                        next.push_back(z);
                }
            cur = std::move(next);
        }
    }
}

TEST_CASE("divisibility filter") {
    const RingSpec r31 = RingSpec::make(3, 1);
    const QuadInt s(r31, 4, -1);
    const QuadInt y(r31, 20, -6);
    CHECK(y == QuadInt(r31, 2).beta_shift(-2));
    CHECK(divisibility_filter(y, s) == Divisibility::Neither);
    CHECK(divisibility_filter(QuadInt(r31), s) == Divisibility::DividesY);
    CHECK(divisibility_filter(QuadInt(r31, 1), s) == Divisibility::DividesYMinus1);
    const QuadInt unit = QuadInt::inv_beta(r31);
    CHECK(divisibility_filter(QuadInt(r31, 1), unit) == Divisibility::Both);
    CHECK(divisibility_name(Divisibility::Neither) == "Neither");
}

TEST_CASE("closure elements pass the divisibility filter") {
    for (const auto &ring : {golden, RingSpec::make(3, 1), r41}) {
        const QuadInt inv = QuadInt::inv_beta(ring);
        for (const QuadInt &sw : {inv, QuadInt(ring, 1) - inv}) {
            const PointSet cl = closure_bfs(zero_one(ring), ParamSet(ring, {sw}), 4);
            for (const auto &y : cl.points())
                CHECK(divisibility_filter(y, sw) != Divisibility::Neither);
        }
    }
}

TEST_CASE("forcing classification") {
    const auto g = classify_forcing(golden);
    CHECK(g == std::vector<QuadInt>{el(golden, -1, 1), el(golden, 2, -1)});
    CHECK(classify_forcing(RingSpec::make(3, 1)).empty());
    CHECK(classify_forcing(r41) == std::vector<QuadInt>{el(r41, 4, -1), el(r41, -3, 1)});
    CHECK(classify_forcing(RingSpec::make(5, -1)).empty());

    const auto rows = forcing_sweep(30);
    std::size_t nonempty = 0;
    for (const auto &row : rows) {
        CHECK(row.matches_expectation());
        nonempty += row.forcing.empty() ? 0 : 1;
    }
    CHECK(nonempty == 3);
    CHECK(rows.front().ring == golden);
    const auto &direct = rows.front().direct_side;
    CHECK(std::find(direct.begin(), direct.end(), el(golden, 0, -1)) != direct.end());
    CHECK_THROWS_AS(forcing_sweep(3), Error);
}

TEST_CASE("parameter sets") {
    const ParamSet g = param_set_N(golden);
    REQUIRE(g.size() == 1);
    CHECK(g.params()[0].conj() == el(golden, -1, 1));
    CHECK(param_set_N(r41).size() == 1);
    const RingSpec r51 = RingSpec::make(5, -1);
    const ParamSet p = param_set_N(r51);
    REQUIRE(p.size() == 2);
    CHECK(p.params()[0].conj() == QuadInt::inv_beta(r51));
    CHECK(p.params()[1].conj() == QuadInt::inv_beta(r51) * Integer(2));
    CHECK(param_set_N(RingSpec::make(6, 1)).size() == 3);
    CHECK(param_set_N(RingSpec::make(6, -1)).size() == 2);
}

TEST_CASE("closure with coordinates beyond machine words") {
    // Translating the seeds by a huge c translates the closure.
    for (const auto &ring : {golden, r41}) {
        const QuadInt c(ring, Integer("100000000000000000000000"), Integer("-3000000000000000000000"));
        const ParamSet ps(ring, {QuadInt::inv_beta(ring).conj()});
        const PointSet small = closure_bfs(zero_one(ring), ps, 4);
        const PointSet big = closure_bfs({c, c + Integer(1)}, ps, 4);
        REQUIRE(big.size() == small.size());
        for (std::size_t i = 0; i < small.size(); ++i)
            CHECK(big.points()[i] == small.points()[i] + c);
    }
}
