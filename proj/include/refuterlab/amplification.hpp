#pragma once

#include <optional>

#include "refuterlab/rwphp.hpp"

namespace rfl {

// A sequence of pointer-following stages where each stage's oracle may depend
// on the verified answers of the earlier stages.
struct IterChainSpec {
  int d = 0;
  std::vector<uint64_t> stage_len;
  std::function<IterInstance(int, const std::vector<uint64_t>&)> stage;
};

// One forward instance over the product index space (stage, committed answer
// prefix, node). Following its pointers simulates the stages in order; a
// solution decodes to a stagewise-valid answer sequence.
struct ComposedIter {
  IterInstance iter;
  std::function<std::optional<std::vector<uint64_t>>(uint64_t)> map_solution;
};

ComposedIter compose_sequential_iter(const IterChainSpec& spec);

// Stretch amplification: the rwPHP instance produced, and a map from its
// solutions back to solutions of the input instance.
struct AmplifiedRwPhp {
  RwPhpInstance<IterInstance, uint64_t> rw;
  std::function<std::optional<RwPhpSolution<IterInstance, uint64_t>>(uint64_t, const uint64_t&)>
      map_solution;
};

// From stretch 1+1/d to stretch 2: requires in.N == in.M + in.M/d with M/d
// integral. Inner instances must all have length inner_len.
AmplifiedRwPhp amplify_small_stretch(const RwPhpInstance<IterInstance, uint64_t>& in, int d,
                                     uint64_t inner_len);

// From stretch 2 to N/M: requires in.N == 2*in.M and N a power-of-two
// multiple of M.
AmplifiedRwPhp amplify_large_stretch(const RwPhpInstance<IterInstance, uint64_t>& in, uint64_t N,
                                     uint64_t inner_len);

}  // namespace rfl
