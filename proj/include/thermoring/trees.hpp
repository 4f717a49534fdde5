#pragma once

// Ordered guessing trees with bounded arity, tree-indexed entropies, nested
// deformed-sum evaluation against a simplex brute-force oracle, operadic
// grafting, and the arity-cost recursion.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "thermoring/entropy.hpp"
#include "thermoring/rng.hpp"
#include "thermoring/tropical.hpp"
#include "thermoring/witt.hpp"

namespace thermoring {

struct TreeNode {
  int label = 0;  // >= 1 for leaves, unused for internal nodes
  std::vector<std::unique_ptr<TreeNode>> children;
  bool is_leaf() const { return children.empty(); }
};

// Ordered tree whose leaves carry a permutation of {1..n}; every internal
// node has between 2 and v children.
struct GuessingTree {
  std::unique_ptr<TreeNode> root;
  int n = 0;  // leaf count
  int v = 0;  // max arity occurring in the tree (>= 2 unless a bare leaf)
};

GuessingTree copy_tree(const GuessingTree& t);

// Parses "((1 2) 3)" style text: a tree is a label or a parenthesized list
// of two or more trees. Enforces the arity and label-permutation invariants.
GuessingTree parse_tree(const std::string& text);

std::string tree_to_string(const GuessingTree& t);

// Tree-indexed entropy: an m-ary node with child leaf-groups of total masses
// w_1..w_m contributes S_m(w_1..w_m) plus each w_j times the child's entropy
// of its renormalized block. Arguments are matched to leaves by label.
double tree_entropy(const GuessingTree& t, const NaryFamily& fam,
                    const std::vector<double>& probs);

// Nested evaluation: leaves pick up xs by label, binary nodes combine with
// the two-argument deformed sum, wider nodes with the n-ary one.
TropicalValue tree_eval(const GuessingTree& t, const WittContext& ctx,
                        const std::vector<TropicalValue>& xs);
TropicalValue tree_eval(const GuessingTree& t, const WittContext& ctx,
                        const std::vector<TropicalValue>& xs, const NaryFamily& fam);

// Brute-force min over a simplex grid of sum(p_i x_i) - T*S_tree(p), the
// direct form the nested evaluation must reproduce. Grid steps: 1/400 for
// n <= 3, 1/100 for n = 4, 1/60 for n = 5; larger n is rejected.
TropicalValue tree_eval_oracle(const GuessingTree& t, const WittContext& ctx,
                               const std::vector<TropicalValue>& xs);

// Leaf-to-root composition: the leaf labeled i is replaced by inners[i-1],
// whose labels are shifted so the result is labeled 1..sum(n_i) in leaf
// blocks ordered by the outer labels. v_limit > 0 rejects results whose
// arity would exceed it.
GuessingTree graft(const GuessingTree& outer, const std::vector<GuessingTree>& inners,
                   int v_limit = 0);

// Distribution composition: concatenates p_i * q_i over blocks.
std::vector<double> prob_compose(const std::vector<double>& p,
                                 const std::vector<std::vector<double>>& qs);

// Arity-cost recursion: a bare leaf costs 0; an m-ary node costs h[m] plus
// the deformed sum of its non-leaf children's costs (leaves are neutral for
// the sum; a node of leaves costs exactly h[m]).
TropicalValue internal_alpha(const GuessingTree& t, const std::map<int, double>& h,
                             const WittContext& ctx);

// Max over `trials` seeded random xs in [-3, 3]^n of the evaluation gap
// between two equal-n trees.
double relation_defect(const GuessingTree& t1, const GuessingTree& t2,
                       const WittContext& ctx, int trials, std::uint64_t seed);

// Uniform-ish random tree with n leaves and arities in [2, v].
GuessingTree random_tree(int n, int v, Rng& rng);

// All labeled binary trees with n leaves (shapes x leaf permutations).
std::vector<GuessingTree> all_binary_trees(int n);

// Reverses child order at every node, keeping leaf labels attached.
GuessingTree mirror_tree(const GuessingTree& t);

}  // namespace thermoring
