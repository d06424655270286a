#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <stdexcept>
#include <vector>

namespace rfl {

// Counts distinct blocks touched within one metered scope. Single-owner per
// scope; concurrent metering of one scope is not supported.
struct QueryMeter {
  std::set<uint64_t> distinct_blocks;
  uint64_t total_fetches = 0;

  uint64_t block_depth() const { return distinct_blocks.size(); }
  void record(uint64_t i) {
    distinct_blocks.insert(i);
    ++total_fetches;
  }
  void reset() {
    distinct_blocks.clear();
    total_fetches = 0;
  }
};

// Query access to a sequence of blocks. fetch must be a pure function of the
// index; indices outside [0, length) are an error. Instances are immutable
// after construction and safe to share.
template <typename B>
struct BlockOracle {
  uint64_t length = 0;
  std::function<B(uint64_t)> fetch_fn;

  B fetch(uint64_t i) const {
    if (i >= length) throw std::out_of_range("oracle fetch out of range");
    return fetch_fn(i);
  }

  static BlockOracle materialized(std::vector<B> blocks) {
    auto data = std::make_shared<std::vector<B>>(std::move(blocks));
    BlockOracle o;
    o.length = data->size();
    o.fetch_fn = [data](uint64_t i) { return (*data)[i]; };
    return o;
  }
};

template <typename B>
std::vector<B> materialize(const BlockOracle<B>& o) {
  std::vector<B> out;
  out.reserve(o.length);
  for (uint64_t i = 0; i < o.length; ++i) out.push_back(o.fetch(i));
  return out;
}

// A forwarding view that records every fetched index in the meter.
template <typename B>
BlockOracle<B> metered_view(const BlockOracle<B>& o, QueryMeter& meter) {
  BlockOracle<B> v;
  v.length = o.length;
  auto inner = o;  // copy of shared state; fetches still hit the same data
  QueryMeter* m = &meter;
  v.fetch_fn = [inner, m](uint64_t i) {
    m->record(i);
    return inner.fetch(i);
  };
  return v;
}

}  // namespace rfl
