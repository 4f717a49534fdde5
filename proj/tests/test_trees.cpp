#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "thermoring/entropy.hpp"
#include "thermoring/rng.hpp"
#include "thermoring/trees.hpp"
#include "thermoring/witt.hpp"

using namespace thermoring;

namespace {

double shannon_term(double p) { return p > 0.0 ? -p * std::log(p) : 0.0; }

// shannon entropy of an arbitrary-length distribution, plain sum form
double shannon_of(const std::vector<double>& ps) {
  double s = 0.0;
  for (double p : ps) s += shannon_term(p);
  return s;
}

}  // namespace

TEST_CASE("parser round trips and enforces shape invariants") {
  for (const char* text : {"1", "(1 2)", "((1 2) 3)", "(2 ((1 (4 3)) (5 6)))",
                           "(1 2 3 4)", "((3 1) (2 4 5))"}) {
    GuessingTree t = parse_tree(text);
    CHECK(tree_to_string(t) == text);
    GuessingTree again = parse_tree(tree_to_string(t));
    CHECK(tree_to_string(again) == text);
  }
  CHECK(parse_tree("((1 2) 3)").n == 3);
  CHECK(parse_tree("((1 2) 3)").v == 2);
  CHECK(parse_tree("((3 1) (2 4 5))").v == 3);
  CHECK(parse_tree("1").n == 1);
  CHECK_THROWS_AS(parse_tree("7"), std::invalid_argument);  // lone leaf must be 1

  CHECK_THROWS_AS(parse_tree("(1)"), std::invalid_argument);        // unary node
  CHECK_THROWS_AS(parse_tree("(1 2"), std::invalid_argument);       // unbalanced
  CHECK_THROWS_AS(parse_tree("(1 2) 3"), std::invalid_argument);    // trailing text
  CHECK_THROWS_AS(parse_tree("(1 1)"), std::invalid_argument);      // repeated label
  CHECK_THROWS_AS(parse_tree("(1 3)"), std::invalid_argument);      // label gap
  CHECK_THROWS_AS(parse_tree("(0 1)"), std::invalid_argument);      // labels from 1
  CHECK_THROWS_AS(parse_tree(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_tree("(1 x)"), std::invalid_argument);
}

TEST_CASE("tree entropy matches a hand-expanded nested formula") {
  // (2 ((1 (4 3)) (5 6))): querying 2 first, then splitting the rest.
  GuessingTree t = parse_tree("(2 ((1 (4 3)) (5 6)))");
  NaryFamily fam = NaryFamily::chain(Measure::shannon());
  Rng rng(42);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> p = rng.simplex(6);
    double w143 = p[0] + p[3] + p[2];
    double w43 = p[3] + p[2];
    double w56 = p[4] + p[5];
    double rest = 1.0 - p[1];
    double expect = shannon_of({p[1], rest});
    expect += rest * shannon_of({w143 / rest, w56 / rest});
    expect += w143 * shannon_of({p[0] / w143, w43 / w143});
    expect += w43 * shannon_of({p[3] / w43, p[2] / w43});
    expect += w56 * shannon_of({p[4] / w56, p[5] / w56});
    CHECK(std::fabs(tree_entropy(t, fam, p) - expect) <= 1e-12);
  }
}

TEST_CASE("left-comb trees reproduce the chain extension") {
  NaryFamily fam = NaryFamily::chain(Measure::shannon());
  GuessingTree comb = parse_tree("(((1 2) 3) 4)");
  Rng rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> p = rng.simplex(4);
    CHECK(std::fabs(tree_entropy(comb, fam, p) - shannon_of(p)) <= 1e-10);
  }
  // flat 4-ary node: one chain term, same value for shannon
  GuessingTree flat = parse_tree("(1 2 3 4)");
  std::vector<double> p = {0.1, 0.2, 0.3, 0.4};
  CHECK(std::fabs(tree_entropy(flat, fam, p) - shannon_of(p)) <= 1e-12);

  CHECK_THROWS_AS(tree_entropy(comb, fam, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(tree_entropy(comb, fam, {0.5, 0.5, 0.5, 0.5}), std::domain_error);
  CHECK_THROWS_AS(tree_entropy(comb, fam, {-0.1, 0.5, 0.3, 0.3}), std::domain_error);
}

TEST_CASE("shannon tree entropy is strategy independent, deformed ones are not") {
  NaryFamily sh = NaryFamily::chain(Measure::shannon());
  Rng rng(11);
  for (int n = 3; n <= 5; ++n) {
    std::vector<double> p = rng.simplex(n);
    GuessingTree a = random_tree(n, 2, rng);
    GuessingTree b = random_tree(n, std::min(n, 3), rng);
    CHECK(std::fabs(tree_entropy(a, sh, p) - tree_entropy(b, sh, p)) <= 1e-10);
  }
  // renyi order 1/2 distinguishes ((1 2) 3) from (1 (2 3))
  NaryFamily ry = NaryFamily::chain(Measure::renyi(0.5));
  std::vector<double> p = {0.5, 0.3, 0.2};
  double left = tree_entropy(parse_tree("((1 2) 3)"), ry, p);
  double right = tree_entropy(parse_tree("(1 (2 3))"), ry, p);
  CHECK(std::fabs(left - right) > 1e-4);
}

TEST_CASE("relabeling leaves permutes arguments without changing values") {
  NaryFamily fam = NaryFamily::chain(Measure::renyi(0.5));
  GuessingTree a = parse_tree("((1 2) 3)");
  GuessingTree b = parse_tree("((2 3) 1)");
  // same shape; probs must follow the labels
  std::vector<double> p = {0.5, 0.3, 0.2};
  std::vector<double> q = {p[2], p[0], p[1]};  // label i of b holds old label's mass
  CHECK(std::fabs(tree_entropy(a, fam, p) - tree_entropy(b, fam, q)) <= 1e-12);
}

TEST_CASE("nested evaluation agrees with closed values and the oracle") {
  WittContext ctx(Measure::shannon(), 1.0);
  GuessingTree t = parse_tree("((1 2) 3)");
  // fully associative case collapses to the flat 3-ary softmin = -log 3 at 0
  CHECK(std::fabs(tree_eval(t, ctx, {0.0, 0.0, 0.0}) - (-std::log(3.0))) <= 1e-6);
  CHECK(std::fabs(tree_eval_oracle(t, ctx, {0.0, 0.0, 0.0}) - (-std::log(3.0))) <= 1e-4);

  Rng rng(3);
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<TropicalValue> xs = {rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0),
                                     rng.uniform(-3.0, 3.0)};
    CHECK(std::fabs(tree_eval(t, ctx, xs) - tree_eval_oracle(t, ctx, xs)) <= 5e-4);
  }

  // zero temperature: any tree computes plain min
  WittContext cold(Measure::shannon(), 0.0);
  CHECK(tree_eval(t, cold, {2.0, -1.0, 0.5}) == -1.0);
  CHECK(tree_eval_oracle(t, cold, {2.0, -1.0, 0.5}) == -1.0);

  // non-associative measures see the parenthesization
  WittContext ry(Measure::renyi(0.5), 1.0);
  double lhs = tree_eval(parse_tree("((1 2) 3)"), ry, {0.0, 1.0, 2.0});
  double rhs = tree_eval(parse_tree("(1 (2 3))"), ry, {0.0, 1.0, 2.0});
  CHECK(std::fabs(lhs - rhs) > 1e-3);

  CHECK_THROWS_AS(tree_eval(t, ctx, {0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(
      tree_eval_oracle(parse_tree("(1 2 3 4 5 6)"), ctx, std::vector<TropicalValue>(6, 0.0)),
      std::invalid_argument);
}

TEST_CASE("an infinite leaf drops out of zero-boundary-cost evaluations") {
  WittContext ctx(Measure::shannon(), 1.0);
  GuessingTree t3 = parse_tree("((1 2) 3)");
  GuessingTree t2 = parse_tree("(1 2)");
  double with_inf = tree_eval(t3, ctx, {0.4, -0.7, kTropicalInf});
  double without = tree_eval(t2, ctx, {0.4, -0.7});
  CHECK(std::fabs(with_inf - without) <= 1e-8);
}

TEST_CASE("grafting composes trees operadically") {
  GuessingTree outer = parse_tree("(1 2)");
  std::vector<GuessingTree> inners;
  inners.push_back(parse_tree("1"));
  inners.push_back(parse_tree("(1 2)"));
  GuessingTree g = graft(outer, inners);
  CHECK(tree_to_string(g) == "(1 (2 3))");
  CHECK(g.n == 3);

  // grafting bare leaves is the identity
  std::vector<GuessingTree> units;
  units.push_back(parse_tree("1"));
  units.push_back(parse_tree("1"));
  GuessingTree same = graft(outer, units);
  CHECK(tree_to_string(same) == "(1 2)");

  // label blocks follow the outer leaf order, not position
  GuessingTree swapped = parse_tree("(2 1)");
  std::vector<GuessingTree> two;
  two.push_back(parse_tree("(1 2)"));  // replaces the leaf labeled 1
  two.push_back(parse_tree("1"));      // replaces the leaf labeled 2
  GuessingTree h = graft(swapped, two);
  // leaf 1's block is labels {1,2}; leaf 2's block is {3}; order on the page
  // keeps the outer arrangement
  CHECK(tree_to_string(h) == "(3 (1 2))");

  CHECK_NOTHROW(graft(outer, inners, 2));  // result stays binary, bound respected
  std::vector<GuessingTree> wide;
  wide.push_back(parse_tree("(1 2 3)"));
  wide.push_back(parse_tree("1"));
  CHECK_THROWS_AS(graft(outer, wide, 2), std::invalid_argument);
  std::vector<GuessingTree> wrong_count;
  wrong_count.push_back(parse_tree("1"));
  CHECK_THROWS_AS(graft(outer, wrong_count), std::invalid_argument);
}

TEST_CASE("grafted entropies satisfy the composition rule") {
  // S_tree(graft) at composed distribution = outer part + weighted inner parts
  NaryFamily fam = NaryFamily::chain(Measure::shannon());
  GuessingTree outer = parse_tree("(1 2)");
  std::vector<GuessingTree> inners;
  inners.push_back(parse_tree("(1 2)"));
  inners.push_back(parse_tree("(1 (2 3))"));
  GuessingTree g = graft(outer, inners);

  std::vector<double> p = {0.4, 0.6};
  std::vector<std::vector<double>> qs = {{0.25, 0.75}, {0.5, 0.3, 0.2}};
  std::vector<double> composed = prob_compose(p, qs);
  REQUIRE(composed.size() == 5);
  CHECK(std::fabs(composed[0] - 0.1) <= 1e-15);
  CHECK(std::fabs(composed[4] - 0.12) <= 1e-15);

  double whole = tree_entropy(g, fam, composed);
  double parts = tree_entropy(outer, fam, p);
  parts += p[0] * tree_entropy(inners[0], fam, qs[0]);
  parts += p[1] * tree_entropy(inners[1], fam, qs[1]);
  CHECK(std::fabs(whole - parts) <= 1e-8);

  CHECK_THROWS_AS(prob_compose({0.4, 0.7}, qs), std::domain_error);
  CHECK_THROWS_AS(prob_compose({0.4, 0.6}, {{0.5, 0.6}, {1.0}}), std::domain_error);
  CHECK_THROWS_AS(prob_compose({0.4, 0.6}, {{1.0}}), std::invalid_argument);
}

TEST_CASE("arity-cost recursion folds node costs through the deformed sum") {
  WittContext ctx(Measure::shannon(), 1.0);
  std::map<int, double> h = {{2, 1.0}, {3, 1.5}};

  CHECK(internal_alpha(parse_tree("1"), h, ctx) == 0.0);
  CHECK(internal_alpha(parse_tree("(1 2)"), h, ctx) == 1.0);
  CHECK(internal_alpha(parse_tree("(1 2 3)"), h, ctx) == 1.5);
  // one internal child: cost h2 + (child cost), leaves neutral
  CHECK(std::fabs(internal_alpha(parse_tree("((1 2) 3)"), h, ctx) - 2.0) <= 1e-12);
  // two internal children combine through the entropy-deformed sum
  double both = internal_alpha(parse_tree("((1 2) (3 4))"), h, ctx);
  double expect = 1.0 + oplus(ctx, 1.0, 1.0).value;
  CHECK(std::fabs(both - expect) <= 1e-9);

  std::map<int, double> missing = {{2, 1.0}};
  CHECK_THROWS_AS(internal_alpha(parse_tree("(1 2 3)"), missing, ctx),
                  std::invalid_argument);
}

TEST_CASE("relation defect separates trees exactly when the measure does") {
  WittContext sh(Measure::shannon(), 1.0);
  WittContext ry(Measure::renyi(0.5), 1.0);
  GuessingTree left = parse_tree("((1 2) 3)");
  GuessingTree right = parse_tree("(1 (2 3))");
  CHECK(relation_defect(left, right, sh, 20, 99) <= 1e-5);
  CHECK(relation_defect(left, right, ry, 20, 99) > 1e-3);
  // deterministic in the seed
  CHECK(relation_defect(left, right, ry, 20, 99) ==
        relation_defect(left, right, ry, 20, 99));
}

TEST_CASE("tree generators produce valid, correctly counted families") {
  Rng rng(5);
  for (int n = 2; n <= 6; ++n) {
    GuessingTree t = random_tree(n, 3, rng);
    CHECK(t.n == n);
    CHECK(t.v >= 2);
    CHECK(t.v <= 3);
    // parses back to itself: labels are a permutation and arities are legal
    CHECK(tree_to_string(parse_tree(tree_to_string(t))) == tree_to_string(t));
  }

  CHECK(all_binary_trees(1).size() == 1);
  CHECK(all_binary_trees(2).size() == 2);   // 1 shape x 2! labelings
  CHECK(all_binary_trees(3).size() == 12);  // 2 shapes x 3! labelings
  CHECK(all_binary_trees(4).size() == 120); // 5 shapes x 4! labelings
  CHECK_THROWS_AS(all_binary_trees(0), std::invalid_argument);
  CHECK_THROWS_AS(all_binary_trees(7), std::invalid_argument);

  GuessingTree m = mirror_tree(parse_tree("((1 2) 3)"));
  CHECK(tree_to_string(m) == "(3 (2 1))");
  // mirroring is a value symmetry for commutative measures
  WittContext ctx(Measure::shannon(), 1.0);
  GuessingTree t = parse_tree("(2 ((1 (4 3)) (5 6)))");
  GuessingTree mt = mirror_tree(t);
  std::vector<TropicalValue> xs = {0.3, -1.0, 0.8, 1.4, -0.2, 2.0};
  CHECK(std::fabs(tree_eval(t, ctx, xs) - tree_eval(mt, ctx, xs)) <= 1e-6);
}
