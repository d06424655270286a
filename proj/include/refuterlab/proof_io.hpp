#pragma once

#include <string>

#include "refuterlab/resolution.hpp"

namespace rfl {

// JSON-lines proof format, one node per line:
//   {"lits":[...], "tag":"res"|"wk", "p1":int, "p2":int|null, "pivot":int|null}
std::string node_to_json(const ResolutionNode& n);
ResolutionNode node_from_json(const std::string& line);

void write_proof_jsonl(const std::vector<ResolutionNode>& nodes, const std::string& path);
std::vector<ResolutionNode> read_proof_jsonl(const std::string& path);

// Fixed-record binary variant for oracle-backed instances: a 16-byte header
// (magic "RFLP", u32 slots, u64 node count), then per node little-endian
// 32-bit fields [tag, p1, p2, pivot, slots x lit] with unused literal slots
// padded with 0. Requires every clause to fit in the slot count, which is how
// width-capped instances stay capped on disk.
void write_proof_binary(const std::vector<ResolutionNode>& nodes, int slots,
                        const std::string& path);
std::vector<ResolutionNode> read_proof_binary(const std::string& path);

// File-backed node oracle over the binary format (random access, not loaded).
BlockOracle<ResolutionNode> proof_file_oracle(const std::string& path);

}  // namespace rfl
