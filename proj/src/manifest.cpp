#include "refuterlab/manifest.hpp"

#include <fstream>

#include "json.hpp"

namespace rfl {

using nlohmann::json;

void write_u64_file(const std::vector<uint64_t>& values, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  for (uint64_t v : values) {
    unsigned char b[8];
    for (int k = 0; k < 8; ++k) b[k] = (v >> (8 * k)) & 0xff;
    out.write(reinterpret_cast<char*>(b), 8);
  }
}

std::vector<uint64_t> read_u64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<uint64_t> out;
  unsigned char b[8];
  while (in.read(reinterpret_cast<char*>(b), 8)) {
    uint64_t v = 0;
    for (int k = 0; k < 8; ++k) v |= uint64_t(b[k]) << (8 * k);
    out.push_back(v);
  }
  return out;
}

RwPhpManifest RwPhpManifest::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  RwPhpManifest m;
  m.M = j.at("M").get<uint64_t>();
  m.N = j.at("N").get<uint64_t>();
  m.small_stretch = j.value("small_stretch", false);
  m.orientation = j.value("orientation", "forward");
  m.f_file = j.at("f").get<std::string>();
  m.inner_files = j.at("inner").get<std::vector<std::string>>();
  m.label_files = j.at("labels").get<std::vector<std::string>>();
  return m;
}

void RwPhpManifest::save(const std::string& path) const {
  json j;
  j["kind"] = "rwphp";
  j["M"] = M;
  j["N"] = N;
  j["small_stretch"] = small_stretch;
  j["orientation"] = orientation;
  j["f"] = f_file;
  j["inner"] = inner_files;
  j["labels"] = label_files;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << j.dump(2) << "\n";
}

RwPhpInstance<IterInstance, uint64_t> to_instance_impl(const RwPhpManifest& m) {
  auto f_table = std::make_shared<std::vector<uint64_t>>(read_u64_file(m.f_file));
  auto inners = std::make_shared<std::vector<std::vector<uint64_t>>>();
  auto labels = std::make_shared<std::vector<std::vector<uint64_t>>>();
  for (const auto& p : m.inner_files) inners->push_back(read_u64_file(p));
  for (const auto& p : m.label_files) labels->push_back(read_u64_file(p));
  Orientation o = m.orientation == "reversed" ? Orientation::Reversed : Orientation::Forward;

  RwPhpInstance<IterInstance, uint64_t> inst;
  inst.M = m.M;
  inst.N = m.N;
  inst.allow_small_stretch = m.small_stretch;
  inst.f = [f_table](uint64_t x) { return f_table->at(x); };
  inst.inner = [inners, o](uint64_t y) {
    return iter_from_table(inners->at(y), o);
  };
  inst.label = [labels](uint64_t y, const uint64_t& ans) {
    const auto& t = labels->at(y);
    return ans < t.size() ? t[ans] : 0;
  };
  inst.problem = iter_inner_problem();
  return inst;
}

RwPhpInstance<IterInstance, uint64_t> RwPhpManifest::to_instance() const {
  return to_instance_impl(*this);
}

RwPhpManifest materialize_rwphp(const RwPhpInstance<IterInstance, uint64_t>& inst,
                                uint64_t inner_len, const std::string& stem) {
  RwPhpManifest m;
  m.M = inst.M;
  m.N = inst.N;
  m.small_stretch = inst.allow_small_stretch;
  std::vector<uint64_t> f_table;
  for (uint64_t x = 0; x < inst.M; ++x) f_table.push_back(inst.f(x));
  m.f_file = stem + ".f.u64";
  write_u64_file(f_table, m.f_file);
  for (uint64_t y = 0; y < inst.N; ++y) {
    IterInstance inner = inst.inner(y);
    if (y == 0) m.orientation = inner.orient == Orientation::Reversed ? "reversed" : "forward";
    std::vector<uint64_t> table = materialize(inner.succ);
    std::string ip = stem + ".inner" + std::to_string(y) + ".u64";
    write_u64_file(table, ip);
    m.inner_files.push_back(ip);
    std::vector<uint64_t> lab;
    for (uint64_t a = 0; a < inner_len; ++a) lab.push_back(inst.label(y, a));
    std::string lp = stem + ".labels" + std::to_string(y) + ".u64";
    write_u64_file(lab, lp);
    m.label_files.push_back(lp);
  }
  return m;
}

std::string MeterReport::json() const {
  nlohmann::json j;
  j["block_depth_max"] = block_depth_max;
  j["total_fetches"] = total_fetches;
  j["declared_budget"] = declared_budget;
  j["within_budget"] = within_budget;
  return j.dump();
}

}  // namespace rfl
