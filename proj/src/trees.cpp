#include "thermoring/trees.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace thermoring {

namespace {

std::unique_ptr<TreeNode> clone_node(const TreeNode& node) {
  auto out = std::make_unique<TreeNode>();
  out->label = node.label;
  out->children.reserve(node.children.size());
  for (const auto& c : node.children) out->children.push_back(clone_node(*c));
  return out;
}

void collect_labels(const TreeNode& node, std::vector<int>& labels, int& max_arity) {
  if (node.is_leaf()) {
    labels.push_back(node.label);
    return;
  }
  max_arity = std::max(max_arity, static_cast<int>(node.children.size()));
  for (const auto& c : node.children) collect_labels(*c, labels, max_arity);
}

// Recomputes n/v and enforces the label-permutation and arity invariants.
GuessingTree finalize_tree(std::unique_ptr<TreeNode> root, const char* where) {
  GuessingTree t;
  t.root = std::move(root);
  std::vector<int> labels;
  int max_arity = 0;
  collect_labels(*t.root, labels, max_arity);
  t.n = static_cast<int>(labels.size());
  t.v = max_arity;
  std::vector<int> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < t.n; ++i) {
    if (sorted[static_cast<std::size_t>(i)] != i + 1) {
      throw std::invalid_argument(std::string(where) +
                                  ": leaf labels must form a permutation of 1..n");
    }
  }
  return t;
}

struct Parser {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  std::unique_ptr<TreeNode> parse_node() {
    skip_ws();
    if (pos >= text.size()) {
      throw std::invalid_argument("parse_tree: unexpected end of input");
    }
    if (text[pos] == '(') {
      ++pos;
      auto node = std::make_unique<TreeNode>();
      while (true) {
        skip_ws();
        if (pos >= text.size()) {
          throw std::invalid_argument("parse_tree: missing ')'");
        }
        if (text[pos] == ')') {
          ++pos;
          break;
        }
        node->children.push_back(parse_node());
      }
      if (node->children.size() < 2) {
        throw std::invalid_argument("parse_tree: internal node needs at least two children");
      }
      return node;
    }
    if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
      int value = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + (text[pos] - '0');
        ++pos;
      }
      if (value < 1) throw std::invalid_argument("parse_tree: labels start at 1");
      auto node = std::make_unique<TreeNode>();
      node->label = value;
      return node;
    }
    throw std::invalid_argument(std::string("parse_tree: unexpected character '") +
                                text[pos] + "'");
  }
};

void append_node_text(const TreeNode& node, std::string& out) {
  if (node.is_leaf()) {
    out += std::to_string(node.label);
    return;
  }
  out += '(';
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    if (i > 0) out += ' ';
    append_node_text(*node.children[i], out);
  }
  out += ')';
}

// Flattened tree for the brute-force oracle: leaves in depth-first order,
// internal nodes as lists of [start, end) leaf ranges so block masses come
// from one prefix-sum pass per evaluation point.
struct FlatTree {
  std::vector<int> leaf_labels;
  std::vector<std::vector<std::pair<int, int>>> node_ranges;

  std::pair<int, int> flatten(const TreeNode& node) {
    if (node.is_leaf()) {
      leaf_labels.push_back(node.label);
      int at = static_cast<int>(leaf_labels.size());
      return {at - 1, at};
    }
    std::vector<std::pair<int, int>> ranges;
    ranges.reserve(node.children.size());
    for (const auto& c : node.children) ranges.push_back(flatten(*c));
    node_ranges.push_back(std::move(ranges));
    return {node_ranges.back().front().first, node_ranges.back().back().second};
  }
};

// Tree entropy of a flattened tree at probabilities indexed by label.
double flat_tree_entropy(const FlatTree& ft, const NaryFamily& fam,
                         const std::vector<double>& p, std::vector<double>& prefix,
                         std::vector<double>& cond) {
  const std::size_t n = ft.leaf_labels.size();
  prefix.resize(n + 1);
  prefix[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    prefix[i + 1] = prefix[i] + p[static_cast<std::size_t>(ft.leaf_labels[i] - 1)];
  }
  double total = 0.0;
  for (const auto& ranges : ft.node_ranges) {
    double w = prefix[static_cast<std::size_t>(ranges.back().second)] -
               prefix[static_cast<std::size_t>(ranges.front().first)];
    if (w <= 0.0) continue;  // zero-mass group contributes nothing
    cond.resize(ranges.size());
    for (std::size_t j = 0; j < ranges.size(); ++j) {
      double wj = prefix[static_cast<std::size_t>(ranges[j].second)] -
                  prefix[static_cast<std::size_t>(ranges[j].first)];
      cond[j] = std::max(0.0, wj / w);
    }
    total += w * fam.eval(cond);
  }
  return total;
}

void check_probs(const std::vector<double>& probs, int n, const char* where) {
  if (static_cast<int>(probs.size()) != n) {
    throw std::invalid_argument(std::string(where) + ": dimension mismatch");
  }
  double sum = 0.0;
  for (double p : probs) {
    if (std::isnan(p) || p < 0.0) {
      throw std::domain_error(std::string(where) + ": probabilities must be >= 0");
    }
    sum += p;
  }
  if (std::fabs(sum - 1.0) > 1e-12) {
    throw std::domain_error(std::string(where) + ": probabilities must sum to 1");
  }
}

}  // namespace

GuessingTree copy_tree(const GuessingTree& t) {
  GuessingTree out;
  out.root = clone_node(*t.root);
  out.n = t.n;
  out.v = t.v;
  return out;
}

GuessingTree parse_tree(const std::string& text) {
  Parser parser{text};
  auto root = parser.parse_node();
  parser.skip_ws();
  if (parser.pos != text.size()) {
    throw std::invalid_argument("parse_tree: trailing characters after tree");
  }
  return finalize_tree(std::move(root), "parse_tree");
}

std::string tree_to_string(const GuessingTree& t) {
  std::string out;
  append_node_text(*t.root, out);
  return out;
}

double tree_entropy(const GuessingTree& t, const NaryFamily& fam,
                    const std::vector<double>& probs) {
  check_probs(probs, t.n, "tree_entropy");
  FlatTree ft;
  ft.flatten(*t.root);
  std::vector<double> prefix, cond;
  return flat_tree_entropy(ft, fam, probs, prefix, cond);
}

TropicalValue tree_eval(const GuessingTree& t, const WittContext& ctx,
                        const std::vector<TropicalValue>& xs) {
  return tree_eval(t, ctx, xs, NaryFamily::chain(ctx.measure));
}

namespace {

TropicalValue eval_node(const TreeNode& node, const WittContext& ctx,
                        const std::vector<TropicalValue>& xs, const NaryFamily& fam) {
  if (node.is_leaf()) return xs[static_cast<std::size_t>(node.label - 1)];
  std::vector<TropicalValue> vals;
  vals.reserve(node.children.size());
  for (const auto& c : node.children) vals.push_back(eval_node(*c, ctx, xs, fam));
  if (vals.size() == 2) return oplus(ctx, vals[0], vals[1]).value;
  return oplus_nary(ctx, vals, fam);
}

}  // namespace

TropicalValue tree_eval(const GuessingTree& t, const WittContext& ctx,
                        const std::vector<TropicalValue>& xs, const NaryFamily& fam) {
  if (static_cast<int>(xs.size()) != t.n) {
    throw std::invalid_argument("tree_eval: dimension mismatch");
  }
  for (double x : xs) require_tropical(x, "tree_eval");
  return eval_node(*t.root, ctx, xs, fam);
}

TropicalValue tree_eval_oracle(const GuessingTree& t, const WittContext& ctx,
                               const std::vector<TropicalValue>& xs) {
  if (t.n > 5) throw std::invalid_argument("tree_eval_oracle: supports n <= 5 only");
  if (static_cast<int>(xs.size()) != t.n) {
    throw std::invalid_argument("tree_eval_oracle: dimension mismatch");
  }
  for (double x : xs) require_tropical(x, "tree_eval_oracle");
  if (ctx.T == 0.0) return *std::min_element(xs.begin(), xs.end());

  std::vector<int> free;
  for (int i = 0; i < t.n; ++i) {
    if (xs[static_cast<std::size_t>(i)] != kTropicalInf) free.push_back(i);
  }
  if (free.empty()) return kTropicalInf;

  const int G = t.n <= 3 ? 400 : (t.n == 4 ? 100 : 60);
  NaryFamily fam = NaryFamily::chain(ctx.measure);
  FlatTree ft;
  ft.flatten(*t.root);

  std::vector<double> p(static_cast<std::size_t>(t.n), 0.0);
  std::vector<double> prefix, cond;
  double best = kTropicalInf;
  const int k = static_cast<int>(free.size());

  // Enumerate all ways to spread G grid units over the finite coordinates.
  std::vector<int> units(static_cast<std::size_t>(k), 0);
  auto evaluate = [&]() {
    double lin = 0.0;
    for (int a = 0; a < k; ++a) {
      double pa = static_cast<double>(units[static_cast<std::size_t>(a)]) /
                  static_cast<double>(G);
      p[static_cast<std::size_t>(free[static_cast<std::size_t>(a)])] = pa;
      lin += pa * xs[static_cast<std::size_t>(free[static_cast<std::size_t>(a)])];
    }
    double v = lin - ctx.T * flat_tree_entropy(ft, fam, p, prefix, cond);
    best = std::min(best, v);
  };
  std::function<void(int, int)> recurse = [&](int index, int remaining) {
    if (index == k - 1) {
      units[static_cast<std::size_t>(index)] = remaining;
      evaluate();
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      units[static_cast<std::size_t>(index)] = c;
      recurse(index + 1, remaining - c);
    }
  };
  recurse(0, G);
  return best;
}

GuessingTree graft(const GuessingTree& outer, const std::vector<GuessingTree>& inners,
                   int v_limit) {
  if (static_cast<int>(inners.size()) != outer.n) {
    throw std::invalid_argument("graft: need one inner tree per outer leaf");
  }
  std::vector<int> offsets(inners.size() + 1, 0);
  for (std::size_t i = 0; i < inners.size(); ++i) {
    offsets[i + 1] = offsets[i] + inners[i].n;
  }
  std::function<std::unique_ptr<TreeNode>(const TreeNode&, int)> relabel =
      [&](const TreeNode& node, int offset) {
        auto out = std::make_unique<TreeNode>();
        if (node.is_leaf()) {
          out->label = node.label + offset;
        } else {
          out->children.reserve(node.children.size());
          for (const auto& c : node.children) out->children.push_back(relabel(*c, offset));
        }
        return out;
      };
  std::function<std::unique_ptr<TreeNode>(const TreeNode&)> build =
      [&](const TreeNode& node) {
        if (node.is_leaf()) {
          const GuessingTree& inner = inners[static_cast<std::size_t>(node.label - 1)];
          return relabel(*inner.root, offsets[static_cast<std::size_t>(node.label - 1)]);
        }
        auto out = std::make_unique<TreeNode>();
        out->children.reserve(node.children.size());
        for (const auto& c : node.children) out->children.push_back(build(*c));
        return out;
      };
  GuessingTree result = finalize_tree(build(*outer.root), "graft");
  if (v_limit > 0 && result.v > v_limit) {
    throw std::invalid_argument("graft: arity bound exceeded");
  }
  return result;
}

std::vector<double> prob_compose(const std::vector<double>& p,
                                 const std::vector<std::vector<double>>& qs) {
  if (qs.size() != p.size()) {
    throw std::invalid_argument("prob_compose: need one block distribution per weight");
  }
  check_probs(p, static_cast<int>(p.size()), "prob_compose");
  std::vector<double> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    check_probs(qs[i], static_cast<int>(qs[i].size()), "prob_compose");
    for (double q : qs[i]) out.push_back(p[i] * q);
  }
  return out;
}

namespace {

TropicalValue alpha_node(const TreeNode& node, const std::map<int, double>& h,
                         const WittContext& ctx) {
  if (node.is_leaf()) return 0.0;
  int m = static_cast<int>(node.children.size());
  auto it = h.find(m);
  if (it == h.end()) {
    throw std::invalid_argument("internal_alpha: no cost given for arity " +
                                std::to_string(m));
  }
  // Leaves are neutral for the fold: only internal children contribute.
  std::vector<TropicalValue> parts;
  for (const auto& c : node.children) {
    if (!c->is_leaf()) parts.push_back(alpha_node(*c, h, ctx));
  }
  if (parts.empty()) return it->second;
  if (parts.size() == 1) return it->second + parts[0];
  if (parts.size() == 2) return it->second + oplus(ctx, parts[0], parts[1]).value;
  return it->second + oplus_nary(ctx, parts);
}

}  // namespace

TropicalValue internal_alpha(const GuessingTree& t, const std::map<int, double>& h,
                             const WittContext& ctx) {
  return alpha_node(*t.root, h, ctx);
}

double relation_defect(const GuessingTree& t1, const GuessingTree& t2,
                       const WittContext& ctx, int trials, std::uint64_t seed) {
  if (t1.n != t2.n) throw std::invalid_argument("relation_defect: trees must share n");
  if (trials < 1) throw std::invalid_argument("relation_defect: trials must be >= 1");
  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < trials; ++k) {
    std::vector<TropicalValue> xs(static_cast<std::size_t>(t1.n));
    for (auto& x : xs) x = rng.uniform(-3.0, 3.0);
    double d = std::fabs(tree_eval(t1, ctx, xs) - tree_eval(t2, ctx, xs));
    worst = std::max(worst, d);
  }
  return worst;
}

namespace {

std::unique_ptr<TreeNode> random_shape(int size, int v, Rng& rng) {
  if (size == 1) return std::make_unique<TreeNode>();
  int max_arity = std::min(v, size);
  int m = rng.uniform_int(2, max_arity);
  // Random composition of `size` into m positive parts via distinct cuts.
  std::set<int> cuts;
  while (static_cast<int>(cuts.size()) < m - 1) {
    cuts.insert(rng.uniform_int(1, size - 1));
  }
  std::vector<int> parts;
  int prev = 0;
  for (int c : cuts) {
    parts.push_back(c - prev);
    prev = c;
  }
  parts.push_back(size - prev);
  auto node = std::make_unique<TreeNode>();
  for (int part : parts) node->children.push_back(random_shape(part, v, rng));
  return node;
}

void assign_labels(TreeNode& node, const std::vector<int>& perm, int& next) {
  if (node.is_leaf()) {
    node.label = perm[static_cast<std::size_t>(next++)];
    return;
  }
  for (auto& c : node.children) assign_labels(*c, perm, next);
}

void binary_shapes(int size, std::vector<std::unique_ptr<TreeNode>>& out) {
  if (size == 1) {
    out.push_back(std::make_unique<TreeNode>());
    return;
  }
  for (int left = 1; left < size; ++left) {
    std::vector<std::unique_ptr<TreeNode>> ls, rs;
    binary_shapes(left, ls);
    binary_shapes(size - left, rs);
    for (const auto& l : ls) {
      for (const auto& r : rs) {
        auto node = std::make_unique<TreeNode>();
        node->children.push_back(clone_node(*l));
        node->children.push_back(clone_node(*r));
        out.push_back(std::move(node));
      }
    }
  }
}

}  // namespace

GuessingTree random_tree(int n, int v, Rng& rng) {
  if (n < 1) throw std::invalid_argument("random_tree: n must be >= 1");
  if (v < 2) throw std::invalid_argument("random_tree: v must be >= 2");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  for (int i = n - 1; i > 0; --i) {
    std::swap(perm[static_cast<std::size_t>(i)],
              perm[static_cast<std::size_t>(rng.uniform_int(0, i))]);
  }
  auto root = random_shape(n, v, rng);
  int next = 0;
  assign_labels(*root, perm, next);
  return finalize_tree(std::move(root), "random_tree");
}

std::vector<GuessingTree> all_binary_trees(int n) {
  if (n < 1 || n > 6) {
    throw std::invalid_argument("all_binary_trees: n must lie in [1, 6]");
  }
  std::vector<std::unique_ptr<TreeNode>> shapes;
  binary_shapes(n, shapes);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<GuessingTree> out;
  do {
    for (const auto& shape : shapes) {
      auto root = clone_node(*shape);
      int next = 0;
      assign_labels(*root, perm, next);
      out.push_back(finalize_tree(std::move(root), "all_binary_trees"));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

namespace {

std::unique_ptr<TreeNode> mirror_node(const TreeNode& node) {
  auto out = std::make_unique<TreeNode>();
  out->label = node.label;
  for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) {
    out->children.push_back(mirror_node(**it));
  }
  return out;
}

}  // namespace

GuessingTree mirror_tree(const GuessingTree& t) {
  GuessingTree out;
  out.root = mirror_node(*t.root);
  out.n = t.n;
  out.v = t.v;
  return out;
}

}  // namespace thermoring
