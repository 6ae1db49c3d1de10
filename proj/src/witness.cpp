#include "qcx/witness.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "qcx/betanum.hpp"

namespace qcx {

NodePtr make_leaf(int seed) {
    auto n = std::make_shared<WitnessNode>();
    n->leaf = seed;
    return n;
}

NodePtr make_node(int op, NodePtr left, NodePtr right) {
    auto n = std::make_shared<WitnessNode>();
    n->op = op;
    n->left = std::move(left);
    n->right = std::move(right);
    return n;
}

namespace {

using Memo = std::unordered_map<const WitnessNode *, NodePtr>;

// Replaces seed 0 and seed 1 leaves by the given subtrees, keeping sharing.
NodePtr substitute(const NodePtr &node, const NodePtr &for0, const NodePtr &for1, Memo &memo) {
    if (node->is_leaf())
        return node->leaf == 0 ? for0 : for1;
    if (auto it = memo.find(node.get()); it != memo.end())
        return it->second;
    NodePtr out = make_node(node->op, substitute(node->left, for0, for1, memo),
                            substitute(node->right, for0, for1, memo));
    memo.emplace(node.get(), out);
    return out;
}

NodePtr substitute(const NodePtr &node, const NodePtr &for0, const NodePtr &for1) {
    Memo memo;
    return substitute(node, for0, for1, memo);
}

NodePtr swap_leaves(const NodePtr &node) {
    return substitute(node, make_leaf(1), make_leaf(0));
}

template <typename F>
void for_each_node(const NodePtr &root, F &&f) {
    std::unordered_set<const WitnessNode *> seen;
    std::vector<const WitnessNode *> stack{root.get()};
    while (!stack.empty()) {
        const WitnessNode *n = stack.back();
        stack.pop_back();
        if (!seen.insert(n).second)
            continue;
        f(*n);
        if (!n->is_leaf()) {
            stack.push_back(n->left.get());
            stack.push_back(n->right.get());
        }
    }
}

}  // namespace

// ----------------------------------------------------------------- Witness

Witness::Witness(const RingSpec &ring, NodePtr root, QuadInt offset)
    : ring_(ring), root_(std::move(root)), offset_(std::move(offset)) {
    require_same_ring(ring_, offset_.ring());
    if (!root_)
        throw Error(Errc::InvalidArgument, "witness has no root");
    for_each_node(root_, [&](const WitnessNode &n) {
        if (n.is_leaf()) {
            if (n.leaf != 0 && n.leaf != 1)
                throw Error(Errc::InvalidArgument, "leaf seed index must be 0 or 1");
        } else if (n.op < 1 || n.op > ring_.floor_beta() || !n.left || !n.right) {
            throw Error(Errc::InvalidArgument, "operation index " + std::to_string(n.op) +
                                                   " outside 1.." + std::to_string(ring_.floor_beta()));
        }
    });
}

int Witness::depth() const {
    std::unordered_map<const WitnessNode *, int> memo;
    std::function<int(const NodePtr &)> rec = [&](const NodePtr &n) -> int {
        if (n->is_leaf())
            return 0;
        if (auto it = memo.find(n.get()); it != memo.end())
            return it->second;
        const int d = 1 + std::max(rec(n->left), rec(n->right));
        memo.emplace(n.get(), d);
        return d;
    };
    return rec(root_);
}

int Witness::max_op() const {
    int best = 0;
    for_each_node(root_, [&](const WitnessNode &n) { best = std::max(best, n.op); });
    return best;
}

std::vector<int> Witness::ops_used() const {
    std::set<int> ops;
    for_each_node(root_, [&](const WitnessNode &n) {
        if (!n.is_leaf())
            ops.insert(n.op);
    });
    return {ops.begin(), ops.end()};
}

std::size_t Witness::tree_size() const {
    constexpr std::size_t cap = std::numeric_limits<std::size_t>::max();
    std::unordered_map<const WitnessNode *, std::size_t> memo;
    std::function<std::size_t(const NodePtr &)> rec = [&](const NodePtr &n) -> std::size_t {
        if (n->is_leaf())
            return 1;
        if (auto it = memo.find(n.get()); it != memo.end())
            return it->second;
        const std::size_t l = rec(n->left);
        const std::size_t r = rec(n->right);
        const std::size_t s = (l >= cap - 1 - r) ? cap : l + r + 1;
        memo.emplace(n.get(), s);
        return s;
    };
    return rec(root_);
}

std::size_t Witness::dag_size() const {
    std::size_t count = 0;
    for_each_node(root_, [&](const WitnessNode &) { ++count; });
    return count;
}

QuadInt op_param(const RingSpec &ring, int i, Side side) {
    const QuadInt p = QuadInt::inv_beta(ring) * Integer(i);
    return side == Side::Window ? p : p.conj();
}

namespace {

class Evaluator {
public:
    Evaluator(const Witness &w, Side side) : ring_(w.ring()) {
        const auto seeds = w.seeds();
        seed0_ = side == Side::Window ? seeds[0] : seeds[0].conj();
        seed1_ = side == Side::Window ? seeds[1] : seeds[1].conj();
        for (int i = 1; i <= ring_.floor_beta(); ++i) {
            const QuadInt p = op_param(ring_, i, side);
            params_.push_back(p);
            complements_.push_back(QuadInt(ring_, 1) - p);
        }
    }

    const QuadInt &value(const NodePtr &n) {
        if (n->is_leaf())
            return n->leaf == 0 ? seed0_ : seed1_;
        if (auto it = memo_.find(n.get()); it != memo_.end())
            return it->second;
        QuadInt v = combine(n->op, value(n->left), value(n->right));
        return memo_.emplace(n.get(), std::move(v)).first->second;
    }

    QuadInt combine(int op, const QuadInt &x, const QuadInt &y) const {
        const auto k = static_cast<std::size_t>(op - 1);
        return params_[k] * x + complements_[k] * y;
    }

    const QuadInt &seed0() const { return seed0_; }
    const QuadInt &seed1() const { return seed1_; }

private:
    RingSpec ring_;
    QuadInt seed0_{ring_}, seed1_{ring_};
    std::vector<QuadInt> params_, complements_;
    std::unordered_map<const WitnessNode *, QuadInt> memo_;
};

// Machine-word evaluation for witnesses whose values keep small coordinates,
// which is nearly all of them. Any value leaving +-2^40 aborts the fast path
// and the caller falls back to Evaluator, so nothing can overflow silently.
class FastEvaluator {
public:
    using Wide = __int128;
    struct Small {
        std::int64_t a, b;
    };

    FastEvaluator(const Witness &w, Side side) : ring_(w.ring()) {
        const auto seeds = w.seeds();
        ok_ = load(side == Side::Window ? seeds[0] : seeds[0].conj(), seed0_) &&
              load(side == Side::Window ? seeds[1] : seeds[1].conj(), seed1_);
        for (int i = 1; ok_ && i <= ring_.floor_beta(); ++i) {
            const QuadInt p = op_param(ring_, i, side);
            Small sp{}, sc{};
            ok_ = load(p, sp) && load(QuadInt(ring_, 1) - p, sc);
            params_.push_back(sp);
            complements_.push_back(sc);
        }
    }

    bool usable() const noexcept { return ok_; }

    // False when a coordinate leaves the fast range.
    bool value(const WitnessNode *n, Small &out) {
        if (n->is_leaf()) {
            out = n->leaf == 0 ? seed0_ : seed1_;
            return true;
        }
        if (auto it = memo_.find(n); it != memo_.end()) {
            out = it->second;
            return true;
        }
        Small x{}, y{};
        if (!value(n->left.get(), x) || !value(n->right.get(), y))
            return false;
        const auto k = static_cast<std::size_t>(n->op - 1);
        const Small p = mul(params_[k], x), q = mul(complements_[k], y);
        const Wide a = static_cast<Wide>(p.a) + q.a, b = static_cast<Wide>(p.b) + q.b;
        if (!fits(a) || !fits(b) || !fits(p.a) || !fits(q.a) || !fits(p.b) || !fits(q.b))
            return false;
        out = {static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)};
        memo_.emplace(n, out);
        return true;
    }

    int sign(const Small &x) const {
        if (x.b == 0)
            return (x.a > 0) - (x.a < 0);
        const Wide p = 2 * static_cast<Wide>(x.a) + static_cast<Wide>(ring_.m()) * x.b;
        const int sp = (p > 0) - (p < 0), sb = x.b > 0 ? 1 : -1;
        if (sp >= 0 && sb > 0)
            return 1;
        if (sp <= 0 && sb < 0)
            return -1;
        const Wide lhs = p * p, rhs = static_cast<Wide>(x.b) * x.b * ring_.discriminant();
        const int c = (lhs > rhs) - (lhs < rhs);
        return sp > 0 ? c : -c;
    }

    bool inside_hull(const Small &v) const {
        return sign({v.a - seed0_.a, v.b - seed0_.b}) >= 0 && sign({v.a - seed1_.a, v.b - seed1_.b}) <= 0;
    }

    QuadInt to_quadint(const Small &v) const { return QuadInt(ring_, Integer(v.a), Integer(v.b)); }

private:
    static constexpr std::int64_t kLimit = std::int64_t{1} << 40;

    static bool fits(Wide v) { return v < kLimit && v > -kLimit; }

    static bool load(const QuadInt &x, Small &out) {
        if (!x.a().fits_slong_p() || !x.b().fits_slong_p())
            return false;
        out = {x.a().get_si(), x.b().get_si()};
        return fits(out.a) && fits(out.b);
    }

    // Inputs are below 2^40, so the 128-bit products cannot overflow; the
    // result is range checked by the caller through fits().
    Small mul(const Small &x, const Small &y) const {
        const Wide bd = static_cast<Wide>(x.b) * y.b;
        const Wide a = static_cast<Wide>(x.a) * y.a + ring_.eps() * bd;
        const Wide b = static_cast<Wide>(x.a) * y.b + static_cast<Wide>(x.b) * y.a + ring_.m() * bd;
        const auto clamp = [](Wide v) -> std::int64_t {
            return fits(v) ? static_cast<std::int64_t>(v) : (v > 0 ? kLimit : -kLimit);
        };
        return {clamp(a), clamp(b)};
    }

    RingSpec ring_;
    bool ok_ = false;
    Small seed0_{}, seed1_{};
    std::vector<Small> params_, complements_;
    std::unordered_map<const WitnessNode *, Small> memo_;
};

}  // namespace

QuadInt evaluate_witness(const Witness &w, Side side) {
    FastEvaluator fast(w, side);
    FastEvaluator::Small v{};
    if (fast.usable() && fast.value(w.root().get(), v))
        return fast.to_quadint(v);
    Evaluator ev(w, side);
    return ev.value(w.root());
}

namespace {

// True only for a confirmed witness; anything else is rechecked exactly.
bool verify_fast(const Witness &w, const QuadInt &claimed, Side side) {
    FastEvaluator fast(w, side);
    if (!fast.usable())
        return false;
    const bool hull_check = side == Side::Window;
    std::unordered_set<const WitnessNode *> checked;
    bool ok = true;
    std::function<void(const NodePtr &)> walk = [&](const NodePtr &n) {
        if (!ok || n->is_leaf() || !checked.insert(n.get()).second)
            return;
        walk(n->left);
        walk(n->right);
        FastEvaluator::Small v{};
        if (!ok || !fast.value(n.get(), v) || (hull_check && !fast.inside_hull(v)))
            ok = false;
    };
    walk(w.root());
    FastEvaluator::Small root{};
    return ok && fast.value(w.root().get(), root) && fast.to_quadint(root) == claimed;
}

}  // namespace

VerifyResult verify_witness(const Witness &w, const QuadInt &claimed, Side side) {
    if (!(claimed.ring() == w.ring()))
        return {false, "root", "claimed value lives in ring " + claimed.ring().name()};
    if (verify_fast(w, claimed, side))
        return {true, "", ""};
    // Slow path: also the one that locates failures.
    Evaluator ev(w, side);
    const bool hull_check = side == Side::Window;
    std::unordered_set<const WitnessNode *> checked;
    VerifyResult fail;

    // The path is only materialised into the result on failure.
    std::string path = "root";
    std::function<bool(const NodePtr &)> walk = [&](const NodePtr &n) -> bool {
        if (n->is_leaf() || !checked.insert(n.get()).second)
            return true;
        const std::size_t len = path.size();
        path += ".L";
        if (!walk(n->left))
            return false;
        path.replace(len, 2, ".R");
        if (!walk(n->right))
            return false;
        path.resize(len);
        const QuadInt &v = ev.value(n);
        if (hull_check && ((v - ev.seed0()).sign() < 0 || (v - ev.seed1()).sign() > 0)) {
            fail = {false, path, "intermediate value " + v.to_pair_string() + " leaves the seed hull"};
            return false;
        }
        return true;
    };
    if (!walk(w.root()))
        return fail;
    const QuadInt &v = ev.value(w.root());
    if (!(v == claimed))
        return {false, "root", "evaluates to " + v.to_pair_string() + ", claimed " + claimed.to_pair_string()};
    return {true, "", ""};
}

// ---------------------------------------------------------- witness_for

namespace {

// Witness over seeds {0, 1} for x in [0,1] ∩ Z[beta], by induction on the
// length of the beta-expansion of x.
NodePtr generate_uncached(const QuadInt &x);

// Suffixes z recur across targets, so finished subtrees are shared per ring.
// Trees are immutable; the cache is simply dropped when it grows large.
NodePtr generate(const QuadInt &x) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unordered_map<QuadInt, NodePtr, QuadIntHash>> caches;
    constexpr std::size_t kMaxEntries = 1'000'000;
    const auto key = std::make_pair(x.ring().m(), x.ring().eps());
    {
        std::lock_guard lock(mu);
        auto &cache = caches[key];
        if (auto it = cache.find(x); it != cache.end())
            return it->second;
    }
    NodePtr out = generate_uncached(x);
    std::lock_guard lock(mu);
    auto &cache = caches[key];
    if (cache.size() >= kMaxEntries)
        cache.clear();
    cache.emplace(x, out);
    return out;
}

NodePtr generate_uncached(const QuadInt &x) {
    const RingSpec &ring = x.ring();
    const int m = ring.m();
    if (x.is_zero())
        return make_leaf(0);
    if (x == QuadInt(ring, 1))
        return make_leaf(1);
    const QuadInt one(ring, 1);

    // Outside Fin(beta) (eps = -1 only) the complement 1 - x has a finite
    // expansion; generate it and exchange the seeds.
    if (!in_fin(x))
        return swap_leaves(generate(one - x));

    const QuadInt beta = QuadInt::beta(ring);
    const QuadInt bx = x * beta;
    // j/beta = 1 ⊩_j 0
    if (bx.is_integer() && bx.a() >= 1 && bx.a() <= ring.floor_beta())
        return make_node(static_cast<int>(bx.a().get_si()), make_leaf(1), make_leaf(0));

    // Leading fractional digit of the greedy expansion of x < 1.
    const int j = static_cast<int>(floor_of(QuadRat(bx)).get_si());

    if (ring.eps() > 0 && j == m) {
        // Next digit is 0: x = m/beta + z/beta^2 lies in Cl{m/beta, 1}.
        const QuadInt z = (bx - Integer(m)) * beta;
        return substitute(generate(z), make_node(m, make_leaf(1), make_leaf(0)), make_leaf(1));
    }
    if (ring.eps() < 0 && j == m - 1) {
        // x = z ⊩_1 1 where z has digits (x_2 + 1) x_3 ...
        const QuadInt z = (x - one) * beta + one;
        return make_node(1, generate(z), make_leaf(1));
    }
    // x = j/beta + z/beta lies in Cl{j/beta, (j+1)/beta}.
    const QuadInt z = bx - Integer(j);
    const NodePtr low = j == 0 ? make_leaf(0) : make_node(j, make_leaf(1), make_leaf(0));
    return substitute(generate(z), low, make_node(j + 1, make_leaf(1), make_leaf(0)));
}

}  // namespace

Witness witness_for(const QuadInt &target, const QuadInt &offset) {
    require_same_ring(target.ring(), offset.ring());
    const QuadInt x = target - offset;
    if (x.sign() < 0 || (x - Integer(1)).sign() > 0)
        throw Error(Errc::OutOfWindow, "target " + target.to_pair_string() + " is not within [c, c+1] for c = " +
                                           offset.to_pair_string());
    return Witness(target.ring(), generate(x), offset);
}

Witness witness_for(const QuadInt &target) { return witness_for(target, QuadInt(target.ring())); }

Witness witness_for(const QuadRat &target, const QuadInt &offset) {
    return witness_for(target.as_quadint(), offset);
}

// ------------------------------------------------------------ templates

namespace {

using TemplateKey = std::tuple<int, int, int, int, int, std::size_t>;

std::mutex &template_mutex() {
    static std::mutex mu;
    return mu;
}

std::mutex &rule_book_mutex() {
    static std::mutex mu;
    return mu;
}

std::map<TemplateKey, std::optional<NodePtr>> &template_cache() {
    static std::map<TemplateKey, std::optional<NodePtr>> cache;
    return cache;
}

// x-coefficient of a formal expression: its window side value with y = 0, x = 1.
QuadInt coefficient(const RingSpec &ring, const NodePtr &expr) {
    return evaluate_witness(Witness(ring, expr));
}

std::optional<NodePtr> search_template(const RingSpec &ring, int j, int max_op, int max_depth,
                                       std::size_t budget) {
    const QuadInt target = op_param(ring, j);
    std::vector<QuadInt> values{QuadInt(ring, 0), QuadInt(ring, 1)};
    std::vector<NodePtr> exprs{make_leaf(0), make_leaf(1)};
    std::unordered_set<QuadInt, QuadIntHash> seen(values.begin(), values.end());

    std::vector<QuadInt> params, complements;
    for (int i = 1; i <= max_op; ++i) {
        params.push_back(op_param(ring, i));
        complements.push_back(QuadInt(ring, 1) - params.back());
    }

    std::size_t old_count = 0;
    for (int round = 0; round < max_depth; ++round) {
        const std::size_t count = values.size();
        for (int i = 1; i <= max_op; ++i) {
            const auto k = static_cast<std::size_t>(i - 1);
            for (std::size_t a = 0; a < count; ++a) {
                const QuadInt sx = params[k] * values[a];
                for (std::size_t b = 0; b < count; ++b) {
                    if (a < old_count && b < old_count)
                        continue;
                    QuadInt v = sx + complements[k] * values[b];
                    if (!seen.insert(v).second)
                        continue;
                    NodePtr e = make_node(i, exprs[a], exprs[b]);
                    if (v == target)
                        return e;
                    values.push_back(std::move(v));
                    exprs.push_back(std::move(e));
                    if (values.size() > budget)
                        return std::nullopt;
                }
            }
        }
        old_count = count;
    }
    return std::nullopt;
}

}  // namespace

std::optional<NodePtr> find_rewrite_template(const RingSpec &ring, int j, int max_op, int max_depth,
                                             std::size_t budget) {
    if (j < 1 || j > ring.floor_beta())
        throw Error(Errc::InvalidArgument, "template index " + std::to_string(j) + " outside 1.." +
                                               std::to_string(ring.floor_beta()));
    if (max_op < 1)
        throw Error(Errc::InvalidArgument, "max_op must be >= 1");
    if (j <= max_op)
        return make_node(j, make_leaf(1), make_leaf(0));

    const TemplateKey key{ring.m(), ring.eps(), j, max_op, max_depth, budget};
    {
        std::lock_guard lock(template_mutex());
        if (auto it = template_cache().find(key); it != template_cache().end())
            return it->second;
    }
    auto found = search_template(ring, j, max_op, max_depth, budget);
    if (found && !(coefficient(ring, *found) == op_param(ring, j)))
        throw Error(Errc::InvalidArgument, "template search produced a wrong coefficient");
    std::lock_guard lock(template_mutex());
    template_cache().emplace(key, found);
    return found;
}

// ------------------------------------------------------------- reduction

namespace {

/**
 * Formal rule expressing x ⊩_i y (x = seed 1, y = seed 0) with operations
 * <= max_op. For eps = +1 and k = m - i:
 *     y ⊩_{m-k} x = (x ⊩_{k+1} y) ⊩_1 (x ⊩_k y),   with x ⊩_0 y = y,
 * for eps = -1 and k = m - 1 - i:
 *     y ⊩_{m-k-1} x = (x ⊩_k y) ⊩_1 (x ⊩_{k+1} y).
 * An identity is used only when it strictly lowers the index; otherwise a
 * searched template is substituted.
 */
class RuleBook {
public:
    RuleBook(const RingSpec &ring, int max_op) : ring_(ring), max_op_(max_op) {}

    NodePtr rule(int i) {
        if (auto it = rules_.find(i); it != rules_.end())
            return it->second;
        NodePtr r = build(i);
        if (!(coefficient(ring_, r) == op_param(ring_, i)))
            throw Error(Errc::InvalidArgument, "rewrite rule for index " + std::to_string(i) +
                                                   " failed its coefficient check");
        rules_.emplace(i, r);
        return r;
    }

private:
    NodePtr build(int i) {
        const NodePtr x = make_leaf(1);
        const NodePtr y = make_leaf(0);
        if (i <= max_op_)
            return make_node(i, x, y);
        const int m = ring_.m();
        if (ring_.eps() > 0) {
            const int k = m - i;
            if (k + 1 < i)
                return make_node(1, reversed_or_leaf(k + 1), reversed_or_leaf(k));
        } else {
            const int k = m - 1 - i;
            if (k + 1 < i)
                return make_node(1, reversed_or_leaf(k), reversed_or_leaf(k + 1));
        }
        auto tmpl = find_rewrite_template(ring_, i, max_op_);
        if (!tmpl)
            throw NoRewriteError("no rewrite for index " + std::to_string(i) + " with operations <= " +
                                     std::to_string(max_op_) + " in ring " + ring_.name(),
                                 i);
        return *tmpl;
    }

    // y ⊩_k x as a formal expression; y ⊩_0 x is x itself.
    NodePtr reversed_or_leaf(int k) {
        if (k == 0)
            return make_leaf(1);
        return swap_leaves(rule(k));
    }

    RingSpec ring_;
    int max_op_;
    std::map<int, NodePtr> rules_;
};

}  // namespace

namespace {

// Rule books are immutable once a rule is built, so one per (ring, bound) is shared.
RuleBook &rule_book(const RingSpec &ring, int max_op) {
    static std::map<std::tuple<int, int, int>, RuleBook> books;
    const auto key = std::make_tuple(ring.m(), ring.eps(), max_op);
    auto it = books.find(key);
    if (it == books.end())
        it = books.emplace(key, RuleBook(ring, max_op)).first;
    return it->second;
}

}  // namespace

Witness reduce_witness(const Witness &w, int max_op) {
    if (max_op < 1)
        throw Error(Errc::InvalidArgument, "reduction bound must be >= 1");
    if (w.max_op() <= max_op)
        return w;
    std::lock_guard lock(rule_book_mutex());
    RuleBook &book = rule_book(w.ring(), max_op);
    std::unordered_map<const WitnessNode *, NodePtr> memo;
    std::function<NodePtr(const NodePtr &)> rec = [&](const NodePtr &n) -> NodePtr {
        if (n->is_leaf())
            return n;
        if (auto it = memo.find(n.get()); it != memo.end())
            return it->second;
        NodePtr out = substitute(book.rule(n->op), rec(n->right), rec(n->left));
        memo.emplace(n.get(), out);
        return out;
    };
    return Witness(w.ring(), rec(w.root()), w.offset());
}

// ------------------------------------------------------------ Pinch form

Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

PinchForm pinch_flatten(const Witness &w, int n) {
    const auto ops = w.ops_used();
    if (ops.size() > 1)
        throw Error(Errc::MixedParameters, "witness uses " + std::to_string(ops.size()) + " distinct operations");
    const int depth = w.depth();
    if (n < depth)
        throw Error(Errc::DepthTooSmall, "n = " + std::to_string(n) + " below witness depth " + std::to_string(depth));

    // counts[l][r]: number of seed-1 leaves reached by l left and r right edges.
    using Table = std::vector<std::vector<Integer>>;
    const auto dim = static_cast<std::size_t>(depth + 1);
    std::unordered_map<const WitnessNode *, Table> memo;
    std::function<const Table &(const NodePtr &)> rec = [&](const NodePtr &node) -> const Table & {
        if (auto it = memo.find(node.get()); it != memo.end())
            return it->second;
        Table t(dim, std::vector<Integer>(dim, 0));
        if (node->is_leaf()) {
            if (node->leaf == 1)
                t[0][0] = 1;
        } else {
            const Table &l = rec(node->left);
            const Table &r = rec(node->right);
            for (std::size_t a = 0; a + 1 < dim; ++a) {
                for (std::size_t b = 0; a + b + 1 < dim; ++b) {
                    t[a + 1][b] += l[a][b];
                    t[a][b + 1] += r[a][b];
                }
            }
        }
        return memo.emplace(node.get(), std::move(t)).first->second;
    };
    const Table &counts = rec(w.root());

    // Padding a leaf at depth d = l + r to depth n multiplies by (s + (1-s))^(n-d).
    PinchForm form{ops.empty() ? 0 : ops.front(), n, std::vector<Integer>(static_cast<std::size_t>(n) + 1, 0)};
    for (std::size_t l = 0; l < dim; ++l) {
        for (std::size_t r = 0; l + r < dim; ++r) {
            if (sgn(counts[l][r]) == 0)
                continue;
            const auto pad = static_cast<unsigned long>(n) - (l + r);
            for (unsigned long e = 0; e <= pad; ++e)
                form.coeffs[l + e] += counts[l][r] * binomial(pad, e);
        }
    }
    for (std::size_t i = 0; i < form.coeffs.size(); ++i) {
        const Integer bound = binomial(static_cast<unsigned long>(n), i);
        if (sgn(form.coeffs[i]) < 0 || form.coeffs[i] > bound)
            throw Error(Errc::InvalidArgument, "Pinch coefficient b_" + std::to_string(i) + " out of bounds");
    }
    return form;
}

QuadInt evaluate_pinch(const RingSpec &ring, const PinchForm &form) {
    const QuadInt s = form.op == 0 ? QuadInt(ring) : op_param(ring, form.op);
    const QuadInt t = QuadInt(ring, 1) - s;
    QuadInt total(ring);
    for (std::size_t i = 0; i < form.coeffs.size(); ++i) {
        if (sgn(form.coeffs[i]) == 0)
            continue;
        total += s.pow(i) * t.pow(form.coeffs.size() - 1 - i) * form.coeffs[i];
    }
    return total;
}

}  // namespace qcx
