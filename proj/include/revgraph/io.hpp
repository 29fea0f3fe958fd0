#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace revgraph {

inline constexpr const char* kVersion = "0.1.0";

// RFC-4180-style field quoting.
std::string csv_field(const std::string& value);
std::string csv_field(double value);
std::string csv_field(std::uint64_t value);
std::string csv_field(int value);

// Shortest round-trippable decimal form.
std::string format_double(double value);

// Everything needed to reproduce a run bit-for-bit.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;  // resolved, defaults included
  std::uint64_t master_seed = 0;
  std::string version = kVersion;
  std::string started_at;   // ISO 8601 UTC
  std::string finished_at;
  std::vector<std::string> outputs;
};

void write_manifest(const RunManifest& manifest, const std::string& path);
RunManifest read_manifest(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

std::string iso8601_utc_now();

}  // namespace revgraph
