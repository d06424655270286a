#include "refuterlab/proof_io.hpp"

#include <fstream>
#include <memory>

#include "json.hpp"

namespace rfl {

using nlohmann::json;

std::string node_to_json(const ResolutionNode& n) {
  json j;
  j["lits"] = n.clause.lits;
  if (n.tag == NodeTag::Resolution) {
    j["tag"] = "res";
    j["p1"] = n.pred1;
    j["p2"] = n.pred2;
    j["pivot"] = n.pivot;
  } else {
    j["tag"] = "wk";
    j["p1"] = n.pred1;
    j["p2"] = nullptr;
    j["pivot"] = nullptr;
  }
  return j.dump();
}

ResolutionNode node_from_json(const std::string& line) {
  json j = json::parse(line);
  ResolutionNode n;
  n.clause = Clause(j.at("lits").get<std::vector<int>>());
  std::string tag = j.at("tag").get<std::string>();
  n.pred1 = j.at("p1").get<int64_t>();
  if (tag == "res") {
    n.tag = NodeTag::Resolution;
    n.pred2 = j.at("p2").get<int64_t>();
    n.pivot = j.at("pivot").get<int>();
  } else if (tag == "wk") {
    n.tag = NodeTag::Weakening;
  } else {
    throw std::runtime_error("unknown node tag: " + tag);
  }
  return n;
}

void write_proof_jsonl(const std::vector<ResolutionNode>& nodes, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  for (const auto& n : nodes) out << node_to_json(n) << "\n";
}

std::vector<ResolutionNode> read_proof_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<ResolutionNode> nodes;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nodes.push_back(node_from_json(line));
  }
  return nodes;
}

namespace {

constexpr uint32_t kMagic = 0x504c4652;  // "RFLP"

void put_u32(std::ostream& out, uint32_t v) {
  unsigned char b[4];
  for (int k = 0; k < 4; ++k) b[k] = (v >> (8 * k)) & 0xff;
  out.write(reinterpret_cast<char*>(b), 4);
}

void put_u64(std::ostream& out, uint64_t v) {
  unsigned char b[8];
  for (int k = 0; k < 8; ++k) b[k] = (v >> (8 * k)) & 0xff;
  out.write(reinterpret_cast<char*>(b), 8);
}

uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  uint32_t v = 0;
  for (int k = 0; k < 4; ++k) v |= uint32_t(b[k]) << (8 * k);
  return v;
}

uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  uint64_t v = 0;
  for (int k = 0; k < 8; ++k) v |= uint64_t(b[k]) << (8 * k);
  return v;
}

ResolutionNode read_record(std::istream& in, uint32_t slots) {
  ResolutionNode n;
  uint32_t tag = get_u32(in);
  n.tag = tag == 0 ? NodeTag::Resolution : NodeTag::Weakening;
  n.pred1 = (int32_t)get_u32(in);
  n.pred2 = (int32_t)get_u32(in);
  n.pivot = (int32_t)get_u32(in);
  std::vector<int> lits;
  for (uint32_t s = 0; s < slots; ++s) {
    int32_t lit = (int32_t)get_u32(in);
    if (lit != 0) lits.push_back(lit);
  }
  n.clause = Clause(std::move(lits));
  return n;
}

}  // namespace

void write_proof_binary(const std::vector<ResolutionNode>& nodes, int slots,
                        const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  put_u32(out, kMagic);
  put_u32(out, (uint32_t)slots);
  put_u64(out, nodes.size());
  for (const auto& n : nodes) {
    if (n.clause.width() > slots) throw std::runtime_error("clause exceeds literal slots");
    put_u32(out, n.tag == NodeTag::Resolution ? 0 : 1);
    put_u32(out, (uint32_t)(int32_t)n.pred1);
    put_u32(out, (uint32_t)(int32_t)n.pred2);
    put_u32(out, (uint32_t)(int32_t)n.pivot);
    for (int s = 0; s < slots; ++s)
      put_u32(out, s < n.clause.width() ? (uint32_t)(int32_t)n.clause.lits[s] : 0);
  }
}

std::vector<ResolutionNode> read_proof_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  if (get_u32(in) != kMagic) throw std::runtime_error("bad proof file magic");
  uint32_t slots = get_u32(in);
  uint64_t count = get_u64(in);
  std::vector<ResolutionNode> nodes;
  nodes.reserve(count);
  for (uint64_t i = 0; i < count; ++i) nodes.push_back(read_record(in, slots));
  return nodes;
}

BlockOracle<ResolutionNode> proof_file_oracle(const std::string& path) {
  auto in = std::make_shared<std::ifstream>(path, std::ios::binary);
  if (!*in) throw std::runtime_error("cannot open " + path);
  if (get_u32(*in) != kMagic) throw std::runtime_error("bad proof file magic");
  uint32_t slots = get_u32(*in);
  uint64_t count = get_u64(*in);
  const uint64_t record = 4u * (4 + slots);
  BlockOracle<ResolutionNode> o;
  o.length = count;
  o.fetch_fn = [in, slots, record](uint64_t i) {
    in->clear();
    in->seekg((std::streamoff)(16 + i * record));
    return read_record(*in, slots);
  };
  return o;
}

}  // namespace rfl
