#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qcx/quadring.hpp"

namespace qcx {

/**
 * Generation certificates for closures under the operations
 *
 *     x ⊩_i y = (i/beta) x + (1 - i/beta) y,     1 <= i <= [beta].
 *
 * A witness is a binary tree whose leaves name one of two seeds {c, c+1} and
 * whose internal nodes apply ⊩_i to their children. Subtrees may be shared,
 * so a witness is stored as a DAG but always means the unfolded tree.
 *
 * Window side evaluation uses the parameters i/beta, which lie in (0, 1).
 * Direct side evaluation conjugates everything: parameters (i/beta)' and seeds
 * c', c'+1; its value is the conjugate of the window side value.
 */
enum class Side { Window, Direct };

struct WitnessNode;
using NodePtr = std::shared_ptr<const WitnessNode>;

struct WitnessNode {
    int op = 0;    // 0 for a leaf
    int leaf = 0;  // seed index for leaves
    NodePtr left;
    NodePtr right;

    bool is_leaf() const noexcept { return op == 0; }
};

NodePtr make_leaf(int seed);
NodePtr make_node(int op, NodePtr left, NodePtr right);

class Witness {
public:
    // Throws InvalidArgument for an op index outside 1..[beta] or a seed index other than 0, 1.
    Witness(const RingSpec &ring, NodePtr root, QuadInt offset);
    Witness(const RingSpec &ring, NodePtr root) : Witness(ring, std::move(root), QuadInt(ring)) {}

    const RingSpec &ring() const noexcept { return ring_; }
    const NodePtr &root() const noexcept { return root_; }
    const QuadInt &offset() const noexcept { return offset_; }
    std::array<QuadInt, 2> seeds() const { return {offset_, offset_ + Integer(1)}; }

    int depth() const;
    int max_op() const;
    std::vector<int> ops_used() const;  // sorted, distinct
    // Node count of the unfolded tree, saturating at SIZE_MAX.
    std::size_t tree_size() const;
    std::size_t dag_size() const;

private:
    RingSpec ring_;
    NodePtr root_;
    QuadInt offset_;
};

// i/beta on the window side, its conjugate on the direct side.
QuadInt op_param(const RingSpec &ring, int i, Side side = Side::Window);

QuadInt evaluate_witness(const Witness &w, Side side = Side::Window);

struct VerifyResult {
    bool ok = false;
    std::string location;  // path to the first failing node, e.g. "root.L.R"
    std::string message;
    explicit operator bool() const noexcept { return ok; }
};

// Exact evaluation compared with `claimed`. On the window side every
// intermediate value must also stay within the seed hull [c, c+1].
VerifyResult verify_witness(const Witness &w, const QuadInt &claimed, Side side = Side::Window);

// Witness for target over seeds {offset, offset+1}, following the beta-expansion
// induction. Throws OutOfWindow unless target - offset lies in [0, 1].
Witness witness_for(const QuadInt &target, const QuadInt &offset);
Witness witness_for(const QuadInt &target);
// Throws NotInRing for a non-integral target.
Witness witness_for(const QuadRat &target, const QuadInt &offset);

// Search depth used by reduce_witness when the rewrite identities are circular.
inline constexpr int kTemplateSearchDepth = 8;
inline constexpr std::size_t kTemplateSearchBudget = 1'000'000;

/**
 * Formal expression over x = seed 1 and y = seed 0 using only ⊩_i with
 * i <= max_op whose value is x ⊩_j y, found by breadth-first search over
 * x-coefficients. Results are cached per (ring, j, max_op, max_depth).
 */
std::optional<NodePtr> find_rewrite_template(const RingSpec &ring, int j, int max_op,
                                             int max_depth = kTemplateSearchDepth,
                                             std::size_t budget = kTemplateSearchBudget);

// Rewrites every ⊩_i with i > max_op into lower operations, preserving the
// exact value. Throws NoRewriteError when neither an identity nor a template applies.
Witness reduce_witness(const Witness &w, int max_op);

struct PinchForm {
    int op = 0;  // shared operation index, 0 for a bare leaf
    int n = 0;
    std::vector<Integer> coeffs;  // b_0 .. b_n
};

// Coefficients b_i with value - c = sum b_i s^i (1-s)^(n-i), s = op/beta.
// Throws MixedParameters or DepthTooSmall.
PinchForm pinch_flatten(const Witness &w, int n);

// Exact value of a Pinch form (window side, offset 0).
QuadInt evaluate_pinch(const RingSpec &ring, const PinchForm &form);

Integer binomial(unsigned long n, unsigned long k);

}  // namespace qcx
