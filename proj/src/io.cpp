#include "revgraph/io.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "revgraph/errors.hpp"

namespace revgraph {

std::string csv_field(const std::string& value) {
  const bool needs_quoting =
      value.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs_quoting) return value;
  std::string out = "\"";
  for (char ch : value) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  // Prefer the shortest representation that round-trips.
  for (int prec = 1; prec <= 16; ++prec) {
    char shorter[64];
    std::snprintf(shorter, sizeof(shorter), "%.*g", prec, value);
    double parsed = 0.0;
    std::sscanf(shorter, "%lf", &parsed);
    if (parsed == value) return shorter;
  }
  return buf;
}

std::string csv_field(double value) { return format_double(value); }
std::string csv_field(std::uint64_t value) { return std::to_string(value); }
std::string csv_field(int value) { return std::to_string(value); }

void write_manifest(const RunManifest& manifest, const std::string& path) {
  nlohmann::json doc;
  doc["command"] = manifest.command;
  doc["parameters"] = manifest.parameters;
  doc["master_seed"] = manifest.master_seed;
  doc["version"] = manifest.version;
  doc["started_at"] = manifest.started_at;
  doc["finished_at"] = manifest.finished_at;
  doc["outputs"] = manifest.outputs;
  write_text_file(path, doc.dump(2) + "\n");
}

RunManifest read_manifest(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw io_error("manifest is not valid JSON: " + path + " (" + e.what() + ")");
  }
  RunManifest manifest;
  try {
    manifest.command = doc.at("command").get<std::string>();
    manifest.parameters =
        doc.at("parameters").get<std::map<std::string, std::string>>();
    manifest.master_seed = doc.at("master_seed").get<std::uint64_t>();
    manifest.version = doc.at("version").get<std::string>();
    manifest.started_at = doc.value("started_at", "");
    manifest.finished_at = doc.value("finished_at", "");
    manifest.outputs = doc.value("outputs", std::vector<std::string>{});
  } catch (const nlohmann::json::exception& e) {
    throw io_error("manifest missing fields: " + path + " (" + e.what() + ")");
  }
  return manifest;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("cannot open for writing: " + path);
  os << content;
  if (!os) throw io_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  if (is.bad()) throw io_error("read failed: " + path);
  return ss.str();
}

std::string iso8601_utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace revgraph
