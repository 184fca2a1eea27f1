// JSON import/export for the two on-disk formats: semigroups and
// labeled digraphs. Import validates; export writes fields in a fixed
// order so round-trips are byte-stable.

#pragma once

#include <string>

#include <json.hpp>

#include "fsw/digraph.hpp"
#include "fsw/semigroup.hpp"

namespace fsw {

nlohmann::json semigroup_to_json(const FiniteSemigroup& s);
FiniteSemigroup semigroup_from_json(const nlohmann::json& j);

nlohmann::json digraph_to_json(const LabeledDigraph& g);
LabeledDigraph digraph_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
// writes via a temporary file next to the target, then renames
void save_text_file(const std::string& path, const std::string& content);

}  // namespace fsw
