#include "bnlf/serialize.hpp"

#include <fstream>
#include <sstream>

#include "bnlf/error.hpp"

namespace bnlf {

using nlohmann::json;

json network_to_json(const Network& net) {
  json nodes = json::array();
  for (const auto& n : net.nodes()) nodes.push_back({{"name", n.name}, {"states", n.states}});

  json edges = json::array();
  for (const auto& a : net.arcs()) edges.push_back({{"from", a.from}, {"to", a.to}});

  json cpts = json::array();
  for (const auto& c : net.cpts()) {
    json entry = {{"child", c.child}, {"parents", c.parents}, {"rows", c.rows}, {"alpha", c.alpha}};
    entry["counts"] = c.counts.empty() ? json::array() : json(c.counts);
    cpts.push_back(std::move(entry));
  }
  return json{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}, {"cpts", std::move(cpts)}};
}

namespace {

const json& member(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key))
    throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  return obj.at(key);
}

template <typename T>
T as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("field '") + what + "': " + e.what());
  }
}

}  // namespace

Network network_from_json(const json& doc) {
  std::vector<StateSpace> nodes;
  for (const auto& n : member(doc, "nodes"))
    nodes.push_back({as<std::string>(member(n, "name"), "name"),
                     as<std::vector<std::string>>(member(n, "states"), "states")});

  std::vector<Arc> arcs;
  for (const auto& e : member(doc, "edges"))
    arcs.push_back({as<std::string>(member(e, "from"), "from"), as<std::string>(member(e, "to"), "to")});

  std::vector<Cpt> cpts;
  for (const auto& c : member(doc, "cpts")) {
    Cpt cpt;
    cpt.child = as<std::string>(member(c, "child"), "child");
    cpt.parents = as<std::vector<std::string>>(member(c, "parents"), "parents");
    cpt.rows = as<std::vector<std::vector<double>>>(member(c, "rows"), "rows");
    cpt.alpha = c.contains("alpha") ? as<double>(c.at("alpha"), "alpha") : 0.0;
    if (c.contains("counts"))
      cpt.counts = as<std::vector<std::vector<std::uint64_t>>>(c.at("counts"), "counts");
    cpts.push_back(std::move(cpt));
  }
  return Network::build(std::move(nodes), std::move(arcs), std::move(cpts));
}

std::string dump_json(const json& doc) { return doc.dump(2) + "\n"; }

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for '" + path.string() + "'");
}

}  // namespace bnlf
