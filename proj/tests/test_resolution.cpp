#include "doctest.h"
#include "refuterlab/cri.hpp"
#include "refuterlab/formulas.hpp"
#include "refuterlab/proof_io.hpp"
#include "refuterlab/resolution.hpp"
#include "refuterlab/sat.hpp"

#include <cstdio>
#include <random>

using namespace rfl;

namespace {

RefutationInstance inst_of(Cnf f, std::vector<ResolutionNode> nodes,
                           std::optional<int> cap = std::nullopt) {
  RefutationInstance inst;
  inst.cnf = std::move(f);
  inst.nodes = BlockOracle<ResolutionNode>::materialized(std::move(nodes));
  inst.width_cap = cap;
  return inst;
}

// the tiny refutation of PHP_{2->1}: axioms {x1}, {x2}, {!x1 v !x2}
std::vector<ResolutionNode> php21_refutation() {
  // indices: axioms -3 = {1}, -2 = {2}, -1 = {-1,-2}
  return {
      ResolutionNode::resolution(make_clause({-2}), -3, -1, 1),  // resolve x1
      ResolutionNode::resolution(Clause(), -2, 0, 2),            // resolve x2
  };
}

}  // namespace

TEST_CASE("check_node on the PHP_{2->1} refutation") {
  Cnf f = gen_php(2, 1);
  REQUIRE(f.clauses.size() == 3);
  auto inst = inst_of(f, php21_refutation());
  CHECK(check_node(inst, 0).valid);
  CHECK(check_node(inst, 1).valid);
  CHECK(!verify_refutation(inst).has_value());
}

TEST_CASE("weakening of bottom onto bottom is valid") {
  Cnf f = gen_php(2, 1);
  auto nodes = php21_refutation();
  nodes.push_back(ResolutionNode::weakening(Clause(), 1));
  auto inst = inst_of(f, nodes);
  CHECK(check_node(inst, 2).valid);
}

TEST_CASE("forward references are invalid") {
  Cnf f = gen_php(2, 1);
  std::vector<ResolutionNode> nodes = {ResolutionNode::weakening(Clause(), 1),
                                       ResolutionNode::weakening(Clause(), 0)};
  auto inst = inst_of(f, nodes);
  CHECK(check_node(inst, 0).reason == InvalidReason::ForwardReference);
  CHECK(verify_refutation(inst) == 0);
}

TEST_CASE("last node must be empty; empty node lists are invalid at 0") {
  Cnf f = gen_php(2, 1);
  auto nodes = php21_refutation();
  nodes[1] = ResolutionNode::weakening(make_clause({-2}), 0);
  auto inst = inst_of(f, nodes);
  CHECK(check_node(inst, 1).reason == InvalidReason::LastNotEmpty);
  CHECK(verify_refutation(inst) == 1);

  auto empty = inst_of(f, {});
  CHECK(verify_refutation(empty) == 0);
}

TEST_CASE("pivot and resolvent mismatches are flagged") {
  Cnf f = gen_php(2, 1);
  std::vector<ResolutionNode> nodes = {
      ResolutionNode::resolution(make_clause({-2}), -3, -2, 1),  // -2 lacks !x1
      ResolutionNode::resolution(make_clause({2}), -3, -1, 1),   // wrong resolvent
  };
  auto inst = inst_of(f, nodes);
  CHECK(check_node(inst, 0).reason == InvalidReason::PivotMissing);
  CHECK(check_node(inst, 1).reason == InvalidReason::WrongResolvent);
}

TEST_CASE("check_node queries at most 3 blocks") {
  Cnf f = gen_php(2, 1);
  auto nodes = php21_refutation();
  QueryMeter meter;
  RefutationInstance inst;
  inst.cnf = f;
  inst.nodes = metered_view(BlockOracle<ResolutionNode>::materialized(nodes), meter);
  for (int64_t i = 0; i < 2; ++i) {
    meter.reset();
    (void)check_node(inst, i);
    CHECK(meter.block_depth() <= 3);
  }
}

TEST_CASE("restrict_clause") {
  Clause c = make_clause({1, -2});
  Restriction rho1;
  rho1.set(1, true);
  CHECK(restrict_clause(c, rho1).killed);

  Restriction rho2;
  rho2.set(1, false);
  auto rc = restrict_clause(c, rho2);
  CHECK(!rc.killed);
  CHECK(rc.clause == make_clause({-2}));

  Clause c3 = make_clause({1, 2, 3});
  Restriction rho3;
  rho3.set(1, false);
  rho3.set(2, false);
  rho3.set(3, false);
  auto rc3 = restrict_clause(c3, rho3);
  CHECK(!rc3.killed);
  CHECK(rc3.clause.empty());
}

TEST_CASE("mono examples") {
  // n=2: mono(!x_{0,0}) = (x_{0,1})
  CHECK(mono(make_clause({-php_var(0, 0, 2)}), 2) == make_clause({php_var(0, 1, 2)}));
  // positive untouched
  CHECK(mono(make_clause({php_var(1, 0, 2)}), 2) == make_clause({php_var(1, 0, 2)}));
  // n=3: mono(!x_{2,1} v x_{2,0}) = (x_{2,0} v x_{2,2}), dedup
  Clause c = make_clause({-php_var(2, 1, 3), php_var(2, 0, 3)});
  CHECK(mono(c, 3) == make_clause({php_var(2, 0, 3), php_var(2, 2, 3)}));
}

TEST_CASE("mono is idempotent on monotone clauses") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Clause c;
    for (int k = 0; k < 4; ++k)
      c.lits.push_back(php_var((int)(rng() % 4), (int)(rng() % 3), 3));
    c.canonicalize();
    CHECK(mono(c, 3) == mono(mono(c, 3), 3));
  }
}

TEST_CASE("width_derivable base cases") {
  Cnf php21 = gen_php(2, 1);
  CHECK(width_derivable(php21, Clause(), 3));
  Cnf php32 = gen_php(3, 2);
  CHECK(!width_derivable(php32, Clause(), 2));
  // axioms are derivable at any width above their own
  CHECK(width_derivable(php32, php32.clauses[0], 3));
  // monotone in the bound
  for (int w0 = 3; w0 <= 6; ++w0) {
    if (width_derivable(php32, Clause(), w0)) {
      CHECK(width_derivable(php32, Clause(), w0 + 1));
    }
  }
  // axioms wider than the bound fall out of the closure entirely
  CHECK(!width_derivable(php32, php32.clauses[0], 2));
}

TEST_CASE("resolution soundness at desk scale") {
  // every total assignment falsifying bottom falsifies some axiom along the
  // proof: spot-check with the PHP_{2->1} refutation by brute force
  Cnf f = gen_php(2, 1);
  CHECK(!solve_bruteforce(f).has_value());
  auto inst = inst_of(f, php21_refutation());
  CHECK(!verify_refutation(inst).has_value());
}

TEST_CASE("proof io round trips") {
  auto nodes = php21_refutation();
  nodes.push_back(ResolutionNode::weakening(make_clause({1, -2}), -3));

  std::string jsonl = "/tmp/rfl_proof_test.jsonl";
  write_proof_jsonl(nodes, jsonl);
  auto back = read_proof_jsonl(jsonl);
  REQUIRE(back.size() == nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) CHECK(back[i] == nodes[i]);

  std::string bin = "/tmp/rfl_proof_test.bin";
  write_proof_binary(nodes, 4, bin);
  auto back2 = read_proof_binary(bin);
  REQUIRE(back2.size() == nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) CHECK(back2[i] == nodes[i]);

  auto oracle = proof_file_oracle(bin);
  CHECK(oracle.length == nodes.size());
  CHECK(oracle.fetch(2) == nodes[2]);
  CHECK(oracle.fetch(0) == nodes[0]);

  std::remove(jsonl.c_str());
  std::remove(bin.c_str());
}
