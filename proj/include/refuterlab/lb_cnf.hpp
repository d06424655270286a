#pragma once

#include <map>
#include <memory>
#include <string>

#include "refuterlab/cnf.hpp"
#include "refuterlab/prover.hpp"
#include "refuterlab/resolution.hpp"

namespace rfl {

// Bit layout of an L-node width-capped purported refutation of F:
// per node, [slot literals][tag][p1][p2][pivot], little groups of bits in
// that order; predecessor values v encode index v - m.
struct WlbLayout {
  int L = 0;
  int m = 0;       // axioms of F
  int nvars = 0;   // variables of F
  int slots = 0;   // w0 - 1
  int slot_bits = 0, pred_bits = 0, pivot_bits = 0;
  int group_bits = 0;

  WlbLayout(const Cnf& f, int w0, int L);

  int total_vars() const { return L * group_bits; }
  // 1-based CNF variable for a bit of node i
  int var(int node, int offset) const { return node * group_bits + offset + 1; }
  int slot_var(int node, int slot, int bit) const { return var(node, slot * slot_bits + bit); }
  int tag_var(int node) const { return var(node, slots * slot_bits); }
  int p1_var(int node, int bit) const { return var(node, slots * slot_bits + 1 + bit); }
  int p2_var(int node, int bit) const {
    return var(node, slots * slot_bits + 1 + pred_bits + bit);
  }
  int pivot_var(int node, int bit) const {
    return var(node, slots * slot_bits + 1 + 2 * pred_bits + bit);
  }

  // literal slot values: 0 empty, 2v-1 positive, 2v negative
  static int encode_lit(Lit l) { return l > 0 ? 2 * l - 1 : -2 * l; }
  static Lit decode_lit(int v) { return v % 2 == 1 ? (v + 1) / 2 : -(v / 2); }
  int max_slot_value() const { return 2 * nvars; }

  // encode a proof into an assignment over the layout's variables
  std::vector<bool> encode_proof(const std::vector<ResolutionNode>& nodes) const;
  ResolutionNode decode_node(const std::vector<bool>& assignment, int node) const;
};

// The false-clause-search formula of the width refuter: satisfying
// assignments are exactly the valid width-capped length-L refutations of F,
// so the formula is unsatisfiable whenever w0 is a true width lower bound.
// Exact clause families are generated for slots = 1.
struct WlbCnf {
  Cnf cnf;
  WlbLayout layout;
  std::map<std::string, int64_t> clause_key;  // constraint id -> clause index

  int64_t lookup(const std::string& key) const;
};

WlbCnf build_wlb_cnf(const Cnf& f, int w0, int L);

// Size-refuter variant: clauses are bitmaps (no syntactic cap), nodes encoded
// in 2*nvars + O(log) bits.
struct SlbLayout {
  int L = 0, m = 0, nvars = 0;
  int pred_bits = 0, pivot_bits = 0;
  int group_bits = 0;

  SlbLayout(const Cnf& f, int L);
  int total_vars() const { return L * group_bits; }
  int var(int node, int offset) const { return node * group_bits + offset + 1; }
  int occ_var(int node, Lit l) const {
    return var(node, l > 0 ? 2 * (l - 1) : 2 * (-l - 1) + 1);
  }
  int tag_var(int node) const { return var(node, 2 * nvars); }
  int p1_var(int node, int bit) const { return var(node, 2 * nvars + 1 + bit); }
  int p2_var(int node, int bit) const { return var(node, 2 * nvars + 1 + pred_bits + bit); }
  int pivot_var(int node, int bit) const {
    return var(node, 2 * nvars + 1 + 2 * pred_bits + bit);
  }
  std::vector<bool> encode_proof(const std::vector<ResolutionNode>& nodes) const;
};

struct SlbCnf {
  Cnf cnf;
  SlbLayout layout;
};

SlbCnf build_slb_cnf(const Cnf& f, int L);

// The walking refuter for the width-bound formula: starts at the final node,
// stays on clauses that F cannot derive in width < w0, and outputs the
// violated constraint once a local check fails. Detects (and reports) the
// non-terminating situation that arises when w0 is not actually a bound.
struct WlbRefutation {
  CompiledProof proof;
  int node_bits = 0;
};
WlbRefutation refute_wlb_cnf(const Cnf& f, int w0, int L, uint64_t step_cap = 1u << 26);

}  // namespace rfl
