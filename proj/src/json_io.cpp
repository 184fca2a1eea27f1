#include "fsw/json_io.hpp"

#include <cstdio>
#include <fstream>

#include "fsw/error.hpp"

namespace fsw {

nlohmann::json semigroup_to_json(const FiniteSemigroup& s) {
  nlohmann::json j;
  j["elements"] = s.names;
  nlohmann::json rows = nlohmann::json::array();
  int n = s.size();
  for (int i = 0; i < n; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < n; ++k)
      row.push_back(s.table[static_cast<std::size_t>(i) * n + k]);
    rows.push_back(std::move(row));
  }
  j["table"] = std::move(rows);
  if (!s.generators.empty()) j["generators"] = s.generators;
  if (s.identity) j["identity"] = *s.identity;
  if (s.has_order) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& [a, b] : s.order) pairs.push_back(nlohmann::json::array({a, b}));
    j["order"] = std::move(pairs);
  }
  return j;
}

FiniteSemigroup semigroup_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("elements") || !j.contains("table"))
    throw Error("semigroup json needs 'elements' and 'table'");
  FiniteSemigroup s;
  for (const auto& nm : j.at("elements")) {
    if (!nm.is_string()) throw Error("semigroup json: element names must be strings");
    s.names.push_back(nm.get<std::string>());
  }
  int n = static_cast<int>(s.names.size());
  const auto& rows = j.at("table");
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw Error("semigroup json: table must have one row per element");
  s.table.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw Error("semigroup json: table rows must match the element count");
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw Error("semigroup json: table entries must be integers");
      s.table.push_back(v.get<int>());
    }
  }
  if (j.contains("generators")) {
    for (const auto& v : j.at("generators")) s.generators.push_back(v.get<int>());
  }
  if (j.contains("identity")) s.identity = j.at("identity").get<int>();
  if (j.contains("order")) {
    s.has_order = true;
    for (const auto& pr : j.at("order")) {
      if (!pr.is_array() || pr.size() != 2)
        throw Error("semigroup json: order entries must be pairs");
      s.order.push_back({pr[0].get<int>(), pr[1].get<int>()});
    }
  }
  validate(s);
  return s;
}

nlohmann::json digraph_to_json(const LabeledDigraph& g) {
  nlohmann::json j;
  j["vertices"] = g.vertex_names;
  nlohmann::json es = nlohmann::json::array();
  for (const auto& [src, label, dst] : g.edges)
    es.push_back(nlohmann::json::array({src, std::string(1, label), dst}));
  j["edges"] = std::move(es);
  nlohmann::json bp = nlohmann::json::object();
  for (const auto& [nm, v] : g.basepoints) bp[nm] = v;
  j["basepoints"] = std::move(bp);
  return j;
}

LabeledDigraph digraph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw Error("digraph json needs 'vertices' and 'edges'");
  LabeledDigraph g;
  for (const auto& nm : j.at("vertices")) {
    if (!nm.is_string()) throw Error("digraph json: vertex names must be strings");
    g.vertex_names.push_back(nm.get<std::string>());
  }
  int n = g.size();
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3)
      throw Error("digraph json: edges must be [src,label,dst] triples");
    int src = e[0].get<int>();
    int dst = e[2].get<int>();
    std::string label = e[1].get<std::string>();
    if (label.size() != 1) throw Error("digraph json: labels must be single characters");
    if (src < 0 || src >= n || dst < 0 || dst >= n)
      throw Error("digraph json: edge endpoint out of range");
    g.edges.push_back({src, label[0], dst});
  }
  if (j.contains("basepoints")) {
    for (const auto& [nm, v] : j.at("basepoints").items()) {
      int idx = v.get<int>();
      if (idx < 0 || idx >= n) throw Error("digraph json: basepoint out of range");
      g.basepoints[nm] = idx;
    }
  }
  return g;
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const std::exception& e) {
    throw Error("invalid json in " + path + ": " + e.what());
  }
}

void save_text_file(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp);
    out << content;
    if (!out) throw IoError("short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw IoError("cannot move " + tmp + " into place");
  }
}

}  // namespace fsw
