#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "bnlf/network.hpp"

namespace bnlf {

// Network document layout:
//   { "nodes": [{"name", "states"}], "edges": [{"from", "to"}],
//     "cpts":  [{"child", "parents", "rows", "alpha", "counts"}] }
// Doubles are written in shortest round-trip form, so parse(dump(net))
// reproduces every probability bit for bit.

nlohmann::json network_to_json(const Network& net);

/// Throws ParseError on schema violations and the usual build errors on an
/// invalid network.
Network network_from_json(const nlohmann::json& doc);

std::string dump_json(const nlohmann::json& doc);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace bnlf
