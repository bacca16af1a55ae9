#pragma once

// Canonical JSON documents: .bag.json, .dist.json and .report.json.
//
//   tree:  {"leaf":0|1} or {"hi":<tree>,"lo":<tree>,"var":i}
//   bag:   {"n_vars":l,"trees":[<tree>,...]}
//   dist:  {"l":l,"type":"uniform"} or {"l":l,"type":"table","weights":[...]}
//
// Keys are sorted, there is no whitespace, and every number is an integer.
// Serialized output is byte-identical to nlohmann::json::dump() of the same
// document.

#include "forestsmith/bag.hpp"
#include "forestsmith/distribution.hpp"
#include "forestsmith/lossy_reduce.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace forestsmith {

/// Expanded trees above this many nodes per bag are refused by the writers.
inline constexpr std::uint64_t kMaxSerializedNodes = 10'000'000;

void write_tree(std::ostream& out, const Tree& tree);
/// Throws CapacityError when the bag's total expanded size exceeds
/// kMaxSerializedNodes.
void write_bag(std::ostream& out, const Bag& bag);

std::string serialize_tree(const Tree& tree);
std::string serialize_bag(const Bag& bag);
std::string serialize_distribution(const Distribution& dist);

/// `path` is used as the location prefix of SchemaError messages.
Tree tree_from_json(const nlohmann::json& doc, int n_vars, const std::string& path = "$");
Bag bag_from_json(const nlohmann::json& doc);
Distribution distribution_from_json(const nlohmann::json& doc);

/// Parse + validate; malformed JSON is reported as SchemaError too.
Bag deserialize_bag(std::string_view text);
Distribution deserialize_distribution(std::string_view text);

nlohmann::json report_to_json(const ReductionReport& step);
nlohmann::json report_to_json(const IteratedReport& report);

std::string read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& writer);
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace forestsmith
