#include "doctest.h"
#include "helpers.hpp"
#include "refuterlab/width_refuters.hpp"

using namespace rfl;
using rfl::testing::make_instance;
using rfl::testing::planted_width_proof;

namespace {

// the fixed hard formula for the hardness direction: parity constraints on a
// complete 4-vertex graph need refutation width 4 while the axioms have
// width 3
Cnf hard_formula() {
  Graph k4 = complete_graph(4);
  std::vector<bool> tau(4, false);
  tau[0] = true;
  return gen_tseitin(k4, tau);
}

}  // namespace

TEST_CASE("iter_to_width_refuter: invalid nodes are exactly the solutions") {
  Cnf f = hard_formula();
  for (uint64_t L = 2; L <= 5; ++L) {
    uint64_t count = 1;
    for (uint64_t i = 0; i < L; ++i) count *= L;
    for (uint64_t code = 0; code < count; ++code) {
      std::vector<uint64_t> table(L);
      uint64_t c = code;
      for (uint64_t i = 0; i < L; ++i) {
        table[i] = c % L;
        c /= L;
      }
      if (table[L - 1] == L - 1) continue;
      auto s = iter_from_table(table, Orientation::Reversed);
      auto red = iter_to_width_refuter(s, f, code == 0);
      auto invalid = scan_invalid(red.instance);
      auto sols = scan_iter_solutions(s);
      std::vector<int64_t> sols_i(sols.begin(), sols.end());
      REQUIRE(invalid == sols_i);
      for (int64_t i : invalid) CHECK(red.map_solution(i) == (uint64_t)i);
    }
  }
}

TEST_CASE("iter_to_width_refuter: per-node block depth 2 and cap bookkeeping") {
  Cnf f = hard_formula();
  QueryMeter meter;
  auto base = BlockOracle<uint64_t>::materialized({2, 0, 1, 0});
  IterInstance s{metered_view(base, meter), Orientation::Reversed};
  auto red = iter_to_width_refuter(s, f);
  CHECK(*red.instance.width_cap == f.width() + 1);
  for (uint64_t i = 0; i < 4; ++i) {
    meter.reset();
    (void)red.instance.nodes.fetch(i);
    CHECK(meter.block_depth() <= 2);
  }
  // the precondition rejects formulas refutable within their own width
  Cnf php21 = gen_php(2, 1);
  CHECK_THROWS(iter_to_width_refuter(s, php21));
}

namespace {

template <typename Verify>
void plant_and_find(const Cnf& f, int cap, WalkReduction (*build)(const RefutationInstance&, int),
                    int n, int rounds, Verify verify) {
  std::mt19937_64 rng(2024);
  int found = 0;
  for (int round = 0; round < rounds; ++round) {
    auto proof = planted_width_proof(f, cap, 6 + (int)(rng() % 10), rng, 1);
    auto inst = make_instance(f, proof.nodes, cap);
    auto red = build(inst, n);
    for (uint64_t sol : scan_iter_solutions(red.iter)) {
      auto answer = red.map_solution(sol);
      CHECK(verify(inst, answer));
      ++found;
    }
  }
  CHECK(found > 0);
}

}  // namespace

TEST_CASE("ephp walk: plant-and-find solutions map to accepted answers") {
  int n = 6;
  Cnf f = gen_ephp(n);
  int cap = (n + 2) / 3;  // width < n/3
  plant_and_find(f, cap, ephp_width_refuter_to_iter, n, 60,
                 [&](const RefutationInstance& inst, const WidthRefuterAnswer& a) {
                   return verify_ephp_width_answer(inst, 6, a);
                 });
}

TEST_CASE("mono walk: plant-and-find") {
  int n = 7;
  Cnf f = gen_php(n + 1, n);
  plant_and_find(f, n + 2, mono_width_refuter_to_iter, n, 40,
                 [&](const RefutationInstance& inst, const WidthRefuterAnswer& a) {
                   return verify_mono_width_answer(inst, 7, a);
                 });
}

TEST_CASE("mono walk on a genuine unbounded-width refutation finds a fat clause") {
  // the full binary branching refutation of PHP_{4->3} has fat monotone
  // clauses on its spine and no invalid nodes
  int n = 3;
  Cnf f = gen_php(n + 1, n);
  // build the complete tree refutation: clauses at level k enumerate
  // assignments of x_1..x_k; leaves weaken from falsified axioms
  std::vector<ResolutionNode> nodes;
  int nv = f.nvars;
  std::function<int64_t(Clause)> build = [&](Clause c) -> int64_t {
    int depth = c.width();
    if (depth == nv) {
      std::vector<bool> alpha(nv);
      for (Lit l : c.lits) alpha[var_of(l) - 1] = !positive(l);
      auto ax = f.falsified_clause(alpha);
      REQUIRE(ax.has_value());
      nodes.push_back(ResolutionNode::weakening(c, (int64_t)*ax - (int64_t)f.clauses.size()));
      return (int64_t)nodes.size() - 1;
    }
    int var = depth + 1;
    Clause c0 = c, c1 = c;
    c0.lits.push_back(var);
    c1.lits.push_back(-var);
    c0.canonicalize();
    c1.canonicalize();
    int64_t lo = build(c0), hi = build(c1);
    nodes.push_back(ResolutionNode::resolution(c, lo, hi, var));
    return (int64_t)nodes.size() - 1;
  };
  build(Clause());
  auto inst = make_instance(f, nodes, std::nullopt);
  REQUIRE(!verify_refutation(inst).has_value());

  auto red = mono_width_refuter_to_iter(inst, n >= 4 ? n : 4);
  // n=3 is below the walk's threshold guard; use n=4 semantics via PHP_{5->4}
  // instead for the genuine run
  (void)red;

  int n2 = 4;
  Cnf f2 = gen_php(n2 + 1, n2);
  nodes.clear();
  nv = f2.nvars;
  std::function<int64_t(Clause)> build2 = [&](Clause c) -> int64_t {
    int depth = c.width();
    if (depth == nv) {
      std::vector<bool> alpha(nv);
      for (Lit l : c.lits) alpha[var_of(l) - 1] = !positive(l);
      auto ax = f2.falsified_clause(alpha);
      nodes.push_back(ResolutionNode::weakening(c, (int64_t)*ax - (int64_t)f2.clauses.size()));
      return (int64_t)nodes.size() - 1;
    }
    int var = depth + 1;
    Clause c0 = c, c1 = c;
    c0.lits.push_back(var);
    c1.lits.push_back(-var);
    c0.canonicalize();
    c1.canonicalize();
    int64_t lo = build2(c0), hi = build2(c1);
    nodes.push_back(ResolutionNode::resolution(c, lo, hi, var));
    return (int64_t)nodes.size() - 1;
  };
  build2(Clause());
  auto inst2 = make_instance(f2, nodes, std::nullopt);
  REQUIRE(!verify_refutation(inst2).has_value());
  auto red2 = mono_width_refuter_to_iter(inst2, n2);
  auto sol = solve_iter_bruteforce(red2.iter);
  REQUIRE(sol.has_value());
  auto answer = red2.map_solution(*sol);
  CHECK(answer.kind == WidthRefuterAnswer::Kind::FatClause);
  CHECK(verify_mono_width_answer(inst2, n2, answer));
}

TEST_CASE("walk entries read at most 3 blocks") {
  int n = 6;
  Cnf f = gen_ephp(n);
  std::mt19937_64 rng(5);
  auto proof = planted_width_proof(f, (n + 2) / 3, 8, rng, 1);
  QueryMeter meter;
  RefutationInstance inst;
  inst.cnf = f;
  inst.nodes = metered_view(BlockOracle<ResolutionNode>::materialized(proof.nodes), meter);
  inst.width_cap = (n + 2) / 3;
  auto red = ephp_width_refuter_to_iter(inst, n);
  for (uint64_t i = 0; i < red.iter.succ.length; ++i) {
    meter.reset();
    (void)red.iter.succ.fetch(i);
    CHECK(meter.block_depth() <= 3);
  }
}

TEST_CASE("tseitin walk: planted flaw and genuine cut witness") {
  // planted flaw on C6 at claimed expansion 2 (width cap 1)
  Graph c6 = cycle_graph(6);
  std::vector<bool> tau(6, false);
  tau[0] = true;
  Cnf f6 = gen_tseitin(c6, tau);
  std::mt19937_64 rng(31);
  int found = 0;
  for (int round = 0; round < 40; ++round) {
    auto proof = planted_width_proof(f6, 2, 7, rng, 1);
    auto inst = make_instance(f6, proof.nodes, 2);
    auto red = tseitin_width_refuter_to_iter(c6, tau, 2, inst);
    for (uint64_t sol : scan_iter_solutions(red.iter)) {
      auto answer = red.map_solution(sol);
      CHECK(verify_tseitin_width_answer(c6, tau, 2, inst, answer));
      ++found;
    }
  }
  CHECK(found > 0);

  // a barbell graph has true expansion 1; at claimed e = 3 a genuine narrow
  // refutation exists and the walk surfaces the sparse cut
  Graph bb = barbell_graph(3);
  std::vector<bool> taub(bb.n, false);
  taub[1] = true;
  Cnf fb = gen_tseitin(bb, taub);
  REQUIRE(width_derivable(fb, Clause(), 4));  // refutable in width <= 3

  // materialize an actual width-<=3 refutation by replaying the saturation:
  // the brute tree over 7 edge variables is too wide, so grow a proof by
  // bounded search instead
  // (simple approach: iterative deepening over resolution closures)
  struct Deriv {
    Clause c;
    ResolutionNode node;
  };
  std::vector<ResolutionNode> nodes;
  {
    std::vector<Clause> known;
    std::vector<ResolutionNode> steps;
    auto find_known = [&](const Clause& c) {
      for (size_t i = 0; i < known.size(); ++i)
        if (known[i] == c) return (int64_t)i;
      return (int64_t)-1;
    };
    for (const auto& ax : fb.clauses) {
      known.push_back(ax);
      steps.push_back(ResolutionNode::weakening(ax, 0));  // placeholder, axioms stay negative
    }
    // closure under resolution keeping width <= 3
    bool grew = true;
    std::vector<std::pair<int64_t, int64_t>> origin(known.size(), {-1, -1});
    std::vector<int> pivot_of(known.size(), 0);
    while (grew && find_known(Clause()) < 0) {
      grew = false;
      size_t sz = known.size();
      for (size_t a = 0; a < sz && find_known(Clause()) < 0; ++a)
        for (size_t b = 0; b < sz && find_known(Clause()) < 0; ++b)
          for (Lit l : known[a].lits) {
            if (!positive(l) || !known[b].has(-l)) continue;
            Clause r = clause_union(known[a].without(l), known[b].without(-l));
            if (r.width() > 3 || r.is_tautology() || find_known(r) >= 0) continue;
            known.push_back(r);
            origin.push_back({(int64_t)a, (int64_t)b});
            pivot_of.push_back(var_of(l));
            grew = true;
          }
    }
    int64_t bot = find_known(Clause());
    REQUIRE(bot >= 0);
    // linearize the used part
    const int64_t mb = (int64_t)fb.clauses.size();
    std::map<int64_t, int64_t> emitted;
    std::function<int64_t(int64_t)> emit = [&](int64_t id) -> int64_t {
      if (id < mb) return id - mb;  // axiom
      auto it = emitted.find(id);
      if (it != emitted.end()) return it->second;
      int64_t p1 = emit(origin[(size_t)id].first);
      int64_t p2 = emit(origin[(size_t)id].second);
      nodes.push_back(ResolutionNode::resolution(known[(size_t)id], p1, p2, pivot_of[(size_t)id]));
      int64_t at = (int64_t)nodes.size() - 1;
      emitted[id] = at;
      return at;
    };
    emit(bot);
  }
  auto instb = make_instance(fb, nodes, 4);
  REQUIRE(!verify_refutation(instb).has_value());
  auto redb = tseitin_width_refuter_to_iter(bb, taub, 3, instb);
  auto solb = solve_iter_bruteforce(redb.iter);
  REQUIRE(solb.has_value());
  auto answer = redb.map_solution(*solb);
  CHECK(answer.kind == WidthRefuterAnswer::Kind::CutWitness);
  CHECK(verify_tseitin_width_answer(bb, taub, 3, instb, answer));
}

TEST_CASE("universal walk: agreement with the ephp walk on planted instances") {
  int n = 6;
  Cnf f = gen_ephp(n);
  // the saturation oracle cannot handle 90+ variables, so run the universal
  // walk on a small hard formula instead: Tseitin on K4 with w0 = 4
  Cnf php = hard_formula();
  REQUIRE(!width_derivable(php, Clause(), 4));
  std::mt19937_64 rng(77);
  int found = 0;
  for (int round = 0; round < 60; ++round) {
    auto proof = planted_width_proof(php, 4, 7, rng, 1);
    auto inst = make_instance(php, proof.nodes, 4);
    auto red = universal_width_refuter_to_iter(php, 4, inst);
    for (uint64_t sol : scan_iter_solutions(red.iter)) {
      auto answer = red.map_solution(sol);
      CHECK(answer.kind == WidthRefuterAnswer::Kind::InvalidNode);
      CHECK(!check_node(inst, answer.node).valid);
      ++found;
    }
  }
  CHECK(found > 0);
  (void)f;
  (void)n;

  // feeding a w0 that is not a lower bound is reported
  CHECK_THROWS(universal_width_refuter_to_iter(gen_php(2, 1), 3,
                                               make_instance(gen_php(2, 1), {}, 3)));
}

TEST_CASE("universal walk entries read at most 2 blocks") {
  Cnf php = hard_formula();
  std::mt19937_64 rng(78);
  auto proof = planted_width_proof(php, 4, 9, rng, 1);
  QueryMeter meter;
  RefutationInstance inst;
  inst.cnf = php;
  inst.nodes = metered_view(BlockOracle<ResolutionNode>::materialized(proof.nodes), meter);
  inst.width_cap = 4;
  auto red = universal_width_refuter_to_iter(php, 4, inst);
  for (uint64_t i = 0; i < red.iter.succ.length; ++i) {
    meter.reset();
    (void)red.iter.succ.fetch(i);
    CHECK(meter.block_depth() <= 2);
  }
}
