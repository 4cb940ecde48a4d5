#include "markovflb/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace markovflb {

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> entries_of(const json& j, std::size_t expect, const char* what) {
  if (!j.is_array() || j.size() != expect) {
    throw DomainError(std::string(what) + ": expected " + std::to_string(expect) + " entries");
  }
  std::vector<double> v;
  v.reserve(expect);
  for (const auto& e : j) v.push_back(e.get<double>());
  return v;
}

void check_indexing(const json& j) {
  if (j.contains("indexing") && j.at("indexing").get<std::string>() != "dest_source") {
    throw DomainError("matrix indexing must be dest_source");
  }
}

}  // namespace

JointDistribution load_joint_json(const std::string& text) {
  json j = json::parse(text);
  std::size_t nx = j.at("alphabet_x").get<std::size_t>();
  std::size_t ny = j.at("alphabet_y").get<std::size_t>();
  return JointDistribution(nx, ny, entries_of(j.at("entries"), nx * ny, "JointDistribution"));
}

MarkovSource load_source_json(const std::string& text) {
  json j = json::parse(text);
  if (j.contains("preset")) {
    PresetResult p = make_preset(j.at("preset").get<std::string>());
    if (!p.source) throw DomainError("preset does not name a Markov source");
    return *p.source;
  }
  const json& t = j.at("transition");
  check_indexing(t);
  std::size_t nx = t.at("alphabet_x").get<std::size_t>();
  std::size_t ny = t.at("alphabet_y").get<std::size_t>();
  std::size_t s = nx * ny;
  auto flat = entries_of(t.at("entries"), s * s, "PairTransitionMatrix");
  Matrix m(s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t k = 0; k < s; ++k) m.at(i, k) = flat[i * s + k];
  PairTransitionMatrix w(nx, ny, std::move(m));
  if (j.contains("initial")) {
    return MarkovSource(std::move(w),
                        ProbVector(entries_of(j.at("initial"), s, "initial distribution")));
  }
  return MarkovSource::with_stationary_initial(std::move(w));
}

RegularChannel load_channel_json(const std::string& text) {
  json j = json::parse(text);
  std::vector<int> moduli = j.at("group").get<std::vector<int>>();
  FiniteAbelianGroup g(moduli);
  std::size_t nb = j.at("outputs").get<std::size_t>();
  auto perms = j.at("permutations").get<std::vector<std::vector<int>>>();
  std::vector<double> base;
  std::vector<Rat> exact;
  const json& bj = j.at("base");
  for (const auto& e : bj) {
    if (e.is_string()) {
      Rat r = Rat::from_decimal_string(e.get<std::string>());
      exact.push_back(r);
      base.push_back(r.to_double());
    } else {
      base.push_back(e.get<double>());
    }
  }
  if (base.size() != nb) throw DomainError("RegularChannel: base size mismatch");
  if (exact.size() != base.size()) exact.clear();  // exact path needs every entry exact
  return RegularChannel(std::move(g), std::move(perms), std::move(base), std::move(exact));
}

JointDistribution load_joint_file(const std::string& path) { return load_joint_json(slurp(path)); }
MarkovSource load_source_file(const std::string& path) { return load_source_json(slurp(path)); }
RegularChannel load_channel_file(const std::string& path) {
  return load_channel_json(slurp(path));
}

std::string joint_to_json(const JointDistribution& p) {
  json j;
  j["alphabet_x"] = p.nx();
  j["alphabet_y"] = p.ny();
  j["entries"] = p.flat();
  return j.dump(2);
}

std::string source_to_json(const MarkovSource& src) {
  json j;
  j["transition"] = {{"alphabet_x", src.nx()},
                     {"alphabet_y", src.ny()},
                     {"entries", src.w().matrix().data()},
                     {"indexing", "dest_source"}};
  j["initial"] = src.initial().entries();
  switch (src.level()) {
    case AssumptionLevel::None: j["assumption_level"] = "none"; break;
    case AssumptionLevel::NonHidden: j["assumption_level"] = "non_hidden"; break;
    case AssumptionLevel::StronglyNonHidden: j["assumption_level"] = "strongly_non_hidden"; break;
  }
  return j.dump(2);
}

}  // namespace markovflb
