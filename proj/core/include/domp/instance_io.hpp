#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "domp/instance.hpp"

namespace domp {

// Instance files are JSON with 0-based indices:
//   {"n":3,"p":1,"lambda":[...],"C":[[...],...],
//    "D":{"entries":[{"j":0,"k":0,"jp":1,"kp":1,"value":4.0}]},
//    "H":{"entries":[{"j":0,"l":0,"p":1,"q":1,"value":10.0}]}}
// D and H are optional. Each listed entry is mirrored to its symmetric
// counterpart; conflicting duplicates are rejected.

Instance instance_from_json(std::string_view text);
std::string instance_to_json(const Instance& instance, int indent = 2);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& instance, const std::filesystem::path& path);

/// Reads a whole file; throws InvalidArgument when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace domp
