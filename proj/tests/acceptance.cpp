// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "qcx/betanum.hpp"
#include "qcx/convexity.hpp"
#include "qcx/modelset.hpp"
#include "qcx/witness.hpp"
#include "targets.hpp"

using namespace qcx;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string &what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

using Clock = std::chrono::steady_clock;

bool report(int id, const char *title, double limit_s, const std::function<Outcome()> &body) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception &e) {
        o.ok = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (o.ok && secs >= limit_s) {
        o.ok = false;
        std::ostringstream os;
        os << "runtime " << secs << " s over the " << limit_s << " s limit";
        o.detail = os.str();
    }
    std::printf("%s criterion %d: %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", id, title, secs,
                o.detail.empty() ? "" : " - ", o.detail.c_str());
    std::fflush(stdout);
    return o.ok;
}

QuadInt el(const RingSpec &r, long a, long b) { return QuadInt(r, a, b); }

std::vector<QuadInt> zero_one(const RingSpec &r) { return {QuadInt(r), QuadInt(r, 1)}; }

// ------------------------------------------------------------------ 1

Outcome forcing_classification() {
    Outcome o;
    const auto rows = forcing_sweep(30);
    struct Expected {
        int m, eps;
        std::vector<std::pair<long, long>> direct;
    };
    // -tau, tau^2 = 1 + tau;  -(1+sqrt2) = -beta, 2+sqrt2 = 1 + beta;  2+sqrt3 = beta, -1-sqrt3 = 1 - beta
    const std::vector<Expected> expected{{1, 1, {{0, -1}, {1, 1}}}, {2, 1, {{0, -1}, {1, 1}}}, {4, -1, {{0, 1}, {1, -1}}}};
    std::size_t nonempty = 0;
    for (const auto &row : rows) {
        const Expected *e = nullptr;
        for (const auto &x : expected)
            if (row.ring.m() == x.m && row.ring.eps() == x.eps)
                e = &x;
        if (row.forcing.empty()) {
            o.require(e == nullptr, "no forcing parameter found for " + row.ring.name());
            continue;
        }
        ++nonempty;
        o.require(e != nullptr, "unexpected forcing parameter for " + row.ring.name());
        if (!e)
            continue;
        std::vector<QuadInt> want;
        for (const auto &[a, b] : e->direct)
            want.push_back(el(row.ring, a, b));
        o.require(row.direct_side == want, "direct side parameters differ for " + row.ring.name());
        // s and 1 - s pair up.
        o.require(row.direct_side.size() == 2 && row.direct_side[0] + row.direct_side[1] == QuadInt(row.ring, 1),
                  "parameters of " + row.ring.name() + " are not of the form s, 1 - s");
    }
    o.require(nonempty == 3, "expected three forcing rings, got " + std::to_string(nonempty));
    return o;
}

// ------------------------------------------------------------------ 2

Outcome witness_completeness() {
    Outcome o;
    const RingSpec rings[] = {RingSpec::make(1, 1), RingSpec::make(2, 1), RingSpec::make(3, 1),
                              RingSpec::make(4, -1), RingSpec::make(5, -1), RingSpec::make(7, -1)};
    std::size_t total = 0;
    for (const auto &ring : rings) {
        const int bound = ring.reduced_op_count();
        for (const auto &t : fixtures::unit_targets(ring, 6)) {
            ++total;
            const Witness w = witness_for(t);
            const VerifyResult v = verify_witness(w, t);
            o.require(v.ok, "witness for " + t.to_pair_string() + " in " + ring.name() + " fails at " + v.location);
            const Witness r = reduce_witness(w, bound);
            o.require(r.max_op() <= bound, "reduction left index " + std::to_string(r.max_op()) + " in " + ring.name());
            o.require(verify_witness(r, t).ok, "reduced witness for " + t.to_pair_string() + " changed value");
            if (!o.ok)
                return o;
        }
    }
    const RingSpec r61 = RingSpec::make(6, -1);
    const auto probe = find_rewrite_template(r61, 3, 2, 8);
    std::ostringstream os;
    os << total << " targets; (6,-1) index 3 with operations <= 2: ";
    if (probe)
        os << "template found at depth " << Witness(r61, *probe).depth();
    else
        os << "none within depth 8";
    o.detail = os.str();
    return o;
}

// ------------------------------------------------------------------ 3

Outcome model_set_equality() {
    Outcome o;
    const RingSpec ring = RingSpec::make(1, 1);
    const Interval window = Interval::unit(ring);
    const QuadRat top(QuadInt::beta(ring).pow(6));
    const Interval range = Interval::closed(QuadRat(QuadInt(ring)), top);
    const PointSet model = enumerate(ring, window, range);

    // Window side targets, conjugated and cut to the range.
    std::vector<QuadInt> from_targets;
    for (const auto &t : fixtures::unit_targets(ring, 16)) {
        const QuadInt x = t.conj();
        if (range.contains(QuadRat(x)))
            from_targets.push_back(x);
    }
    const PointSet conjugated(range, from_targets);
    o.require(conjugated.points() == model.points(),
              "enumeration has " + std::to_string(model.size()) + " points, conjugated targets " +
                  std::to_string(conjugated.size()));

    // Every model set point has a verified direct side witness, parameter -tau.
    o.require(op_param(ring, 1, Side::Direct) == el(ring, 0, -1), "direct side parameter is not -tau");
    for (const auto &x : model.points()) {
        const Witness w = witness_for(x.conj());
        o.require(verify_witness(w, x, Side::Direct).ok, "no direct witness for " + x.to_pair_string());
    }

    const PointSet cl = closure_bfs(zero_one(ring), ParamSet(ring, {el(ring, 0, -1)}), 6);
    const oracle::Surd lo = oracle::surd_of(QuadRat(QuadInt(ring))), hi = oracle::surd_of(QuadRat(QuadInt(ring, 1)));
    for (const auto &p : cl.points()) {
        o.require(oracle::inside(oracle::surd_of(QuadRat(p), true), lo, hi, true, true, ring.discriminant()),
                  "closure element " + p.to_pair_string() + " has conjugate outside [0,1]");
        o.require(window.contains(QuadRat(p.conj())), "library window test disagrees at " + p.to_pair_string());
    }
    o.detail = std::to_string(model.size()) + " model set points, closure of " + std::to_string(cl.size());
    return o;
}

// ------------------------------------------------------------------ 4

Outcome expansion_round_trip() {
    Outcome o;
    const RingSpec rings[] = {RingSpec::make(1, 1), RingSpec::make(2, 1), RingSpec::make(3, 1),
                              RingSpec::make(4, -1), RingSpec::make(5, -1)};
    std::size_t finite = 0, infinite = 0;
    for (const auto &ring : rings) {
        for (long a = -30; a <= 30; ++a) {
            for (long b = -30; b <= 30; ++b) {
                const QuadInt x(ring, a, b);
                if (oracle::sign50(x) <= 0)
                    continue;
                if (ring.eps() < 0 && x.norm() < 0) {
                    bool threw = false;
                    try {
                        expand_greedy(x, 64);
                    } catch (const NotFiniteError &) {
                        threw = true;
                    }
                    o.require(threw, "expected NotFinite for " + x.to_pair_string() + " in " + ring.name());
                    ++infinite;
                    continue;
                }
                const DigitString d = expand_greedy(x, 64);
                o.require(evaluate(d) == x, "round trip fails for " + x.to_pair_string() + " in " + ring.name());
                o.require(is_admissible(d), "inadmissible output " + d.to_string() + " in " + ring.name());
                ++finite;
            }
        }
    }
    o.detail = std::to_string(finite) + " expansions, " + std::to_string(infinite) + " NotFinite";
    return o;
}

// ------------------------------------------------------------------ 5

Outcome divisibility_filter_check() {
    Outcome o;
    std::size_t checked = 0;
    for (const auto &ring : {RingSpec::make(1, 1), RingSpec::make(3, 1), RingSpec::make(4, -1)}) {
        const QuadInt inv = QuadInt::inv_beta(ring);
        for (const QuadInt &sw : {inv, QuadInt(ring, 1) - inv}) {
            const PointSet cl = closure_bfs(zero_one(ring), ParamSet(ring, {sw}), 6);
            for (const auto &y : cl.points()) {
                ++checked;
                if (divisibility_filter(y, sw) == Divisibility::Neither) {
                    o.require(false, y.to_pair_string() + " classified Neither in " + ring.name());
                    return o;
                }
            }
        }
    }
    const RingSpec r31 = RingSpec::make(3, 1);
    const QuadInt y = QuadInt(r31, 2).beta_shift(-2);
    o.require(y == el(r31, 20, -6), "2/beta^2 is not 20 - 6 beta");
    o.require(divisibility_filter(y, el(r31, 4, -1)) == Divisibility::Neither, "2/beta^2 is not certified absent");
    // The certificate is sound only if the norm really fails to divide.
    o.require(el(r31, 4, -1).norm() == 3, "N(4 - beta) != 3");
    o.detail = std::to_string(checked) + " closure elements";
    return o;
}

// ------------------------------------------------------------------ 6

Outcome pinch_bounds() {
    Outcome o;
    std::mt19937_64 rng(6);
    const auto rings = oracle::sample_rings();
    for (int i = 0; i < 500; ++i) {
        const RingSpec &ring = rings[static_cast<std::size_t>(i) % rings.size()];
        const int op = 1 + static_cast<int>(rng() % static_cast<unsigned>(ring.floor_beta()));
        const int max_depth = 1 + static_cast<int>(rng() % 8);
        std::function<NodePtr(int)> grow = [&](int d) -> NodePtr {
            if (d == 0 || rng() % 5 == 0)
                return make_leaf(static_cast<int>(rng() % 2));
            return make_node(op, grow(d - 1), grow(d - 1));
        };
        const Witness w(ring, grow(max_depth));
        const int n = w.depth() + static_cast<int>(rng() % 3);
        const PinchForm f = pinch_flatten(w, n);
        for (int k = 0; k <= n; ++k)
            o.require(f.coeffs[k] >= 0 && f.coeffs[k] <= binomial(n, k), "coefficient bound violated");
        o.require(evaluate_pinch(ring, f) == evaluate_witness(w), "Pinch form value differs");
        if (!o.ok)
            return o;
    }
    return o;
}

// ------------------------------------------------------------------ 7

Outcome arithmetic_suite() {
    Outcome o;
    std::mt19937_64 rng(7);
    const auto rings = oracle::sample_rings();
    for (int i = 0; i < 10000; ++i) {
        const RingSpec &ring = rings[static_cast<std::size_t>(i) % rings.size()];
        const QuadInt x = oracle::random_element(rng, ring, 1000000);
        const QuadInt y = oracle::random_element(rng, ring, 1000000);
        o.require((x * y).conj() == x.conj() * y.conj() && (x + y).conj() == x.conj() + y.conj() &&
                      x.conj().conj() == x,
                  "conjugation is not an automorphism at " + x.to_pair_string());
        o.require((x * y).norm() == x.norm() * y.norm(), "norm not multiplicative at " + x.to_pair_string());
    }
    std::size_t compared = 0;
    for (int i = 0; i < 100000; ++i) {
        const RingSpec &ring = rings[static_cast<std::size_t>(i) % rings.size()];
        const QuadInt x = oracle::random_element(rng, ring, 1000000);
        const int expect = oracle::sign50(x);
        if (expect == 0)
            continue;
        ++compared;
        if (x.sign() != expect) {
            o.require(false, "sign mismatch at " + x.to_pair_string() + " in " + ring.name());
            return o;
        }
    }
    std::uniform_int_distribution<long> den(1, 1000);
    for (int i = 0; i < 10000; ++i) {
        const RingSpec &ring = rings[static_cast<std::size_t>(i) % rings.size()];
        const QuadRat r(oracle::random_element(rng, ring, 1000000), den(rng));
        const Integer n = floor_of(r);
        const oracle::Surd s = oracle::surd_of(r);
        const long disc = ring.discriminant();
        o.require(oracle::compare(oracle::surd_of(QuadRat(QuadInt(ring, n))), s, disc) <= 0 &&
                      oracle::compare(s, oracle::surd_of(QuadRat(QuadInt(ring, n + 1))), disc) < 0,
                  "floor not certified");
    }
    o.detail = std::to_string(compared) + " signs compared";
    return o;
}

// ------------------------------------------------------------------ 8

QuadRat random_endpoint(std::mt19937_64 &rng, const RingSpec &ring) {
    std::uniform_int_distribution<long> coord(-4, 4), den(1, 4);
    return QuadRat(QuadInt(ring, coord(rng), coord(rng)), den(rng));
}

oracle::Bounds random_bounds(std::mt19937_64 &rng, const RingSpec &ring, double limit) {
    std::bernoulli_distribution flag(0.5);
    for (;;) {
        QuadRat lo = random_endpoint(rng, ring), hi = random_endpoint(rng, ring);
        if (std::abs(lo.to_double()) > limit || std::abs(hi.to_double()) > limit)
            continue;
        if (hi < lo)
            std::swap(lo, hi);
        if (lo == hi)
            return {lo, hi, true, true};
        return {lo, hi, flag(rng), flag(rng)};
    }
}

Outcome enumeration_oracle() {
    Outcome o;
    std::mt19937_64 rng(8);
    std::size_t points = 0;
    for (const auto &ring : oracle::sample_rings()) {
        const double sqrt_d = std::sqrt(static_cast<double>(ring.discriminant()));
        for (int trial = 0; trial < 50; ++trial) {
            const oracle::Bounds w = random_bounds(rng, ring, 4.0);
            const oracle::Bounds r = random_bounds(rng, ring, 12.0);
            const double bmax = (12.0 + 4.0) / sqrt_d + 1.0;
            const long box = static_cast<long>(std::ceil(12.0 + bmax * ring.beta_float() + 1.0));
            const auto expect = oracle::box_scan(ring, w, r, box);
            const PointSet got = enumerate(ring, Interval(w.lo, w.hi, w.lo_closed, w.hi_closed),
                                           Interval(r.lo, r.hi, r.lo_closed, r.hi_closed));
            points += expect.size();
            o.require(got.points() == expect, "mismatch in " + ring.name() + " trial " + std::to_string(trial));
        }
    }
    o.detail = std::to_string(points) + " points matched";
    return o;
}

}  // namespace

int main() {
    bool all = true;
    all &= report(1, "forcing classification", 1.0, forcing_classification);
    all &= report(2, "witness completeness", 10.0, witness_completeness);
    all &= report(3, "model set equals closure at desk scale", 5.0, model_set_equality);
    all &= report(4, "expansion round trip and admissibility", 10.0, expansion_round_trip);
    all &= report(5, "divisibility filter", 5.0, divisibility_filter_check);
    all &= report(6, "Pinch form bounds", 5.0, pinch_bounds);
    all &= report(7, "exact arithmetic", 10.0, arithmetic_suite);
    all &= report(8, "enumeration against box scan", 10.0, enumeration_oracle);
    return all ? 0 : 1;
}
