#include "pmlab/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pmlab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_num(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw std::invalid_argument("empty number for key " + key);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size())
    throw std::invalid_argument("bad number '" + t + "' for key " + key);
  return v;
}

}  // namespace

// ============================ run configuration ===========================

Config Config::from_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line.erase(hash_pos);
    const std::string s = trim(line);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  " has no '='");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  " has an empty key");
    if (!cfg.values.emplace(key, val).second)
      throw std::invalid_argument("duplicate config key: " + key);
  }
  return cfg;
}

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_string(buf.str());
}

bool Config::has(const std::string& key) const { return values.count(key) > 0; }

std::string Config::get_str(const std::string& key,
                            const std::string& fallback) const {
  const auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

double Config::get_num(const std::string& key, double fallback) const {
  const auto it = values.find(key);
  return it == values.end() ? fallback : parse_num(key, it->second);
}

long Config::get_int(const std::string& key, long fallback) const {
  const double v = get_num(key, static_cast<double>(fallback));
  const long r = std::lround(v);
  if (static_cast<double>(r) != v)
    throw std::invalid_argument("key " + key + " is not an integer");
  return r;
}

bool Config::get_flag(const std::string& key, bool fallback) const {
  const auto it = values.find(key);
  if (it == values.end()) return fallback;
  const std::string v = it->second;
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw std::invalid_argument("key " + key + " is not a flag: " + v);
}

std::vector<double> Config::get_list(const std::string& key,
                                     const std::vector<double>& fallback) const {
  const auto it = values.find(key);
  if (it == values.end()) return fallback;
  std::vector<double> out;
  std::string item;
  std::istringstream in(it->second);
  while (std::getline(in, item, ',')) out.push_back(parse_num(key, item));
  return out;
}

void Config::require_known(const std::vector<std::string>& allowed) const {
  for (const auto& [key, val] : values) {
    (void)val;
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw std::invalid_argument("unknown config key: " + key);
  }
}

std::string Config::canonical() const {
  std::string out;
  for (const auto& [key, val] : values) {
    out += key;
    out += '=';
    out += val;
    out += '\n';
  }
  return out;
}

std::string Config::hash() const {
  const std::string text = canonical();
  std::uint64_t h = 14695981039346656037ULL;
  for (const unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ============================ tabular output ==============================

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& columns)
    : path_(path), width_(columns.size()) {
  if (columns.empty()) throw std::invalid_argument("csv needs columns");
  f_ = std::fopen(path.c_str(), "wb");
  if (!f_) throw std::runtime_error("cannot open for writing: " + path);
  std::string header;
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) header += ',';
    header += columns[i];
  }
  header += '\n';
  std::fwrite(header.data(), 1, header.size(), f_);
}

CsvWriter::~CsvWriter() {
  if (f_) std::fclose(f_);
}

void CsvWriter::row(const std::vector<double>& values) {
  if (!f_) throw std::logic_error("csv already closed: " + path_);
  if (values.size() != width_)
    throw std::invalid_argument("csv row width mismatch in " + path_);
  std::string line;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) line += ',';
    line += format_full(values[i]);
  }
  line += '\n';
  std::fwrite(line.data(), 1, line.size(), f_);
}

void CsvWriter::close() {
  if (!f_) return;
  if (std::fclose(f_) != 0) {
    f_ = nullptr;
    throw std::runtime_error("failed to close " + path_);
  }
  f_ = nullptr;
}

// ============================ output staging ==============================

OutputDir::OutputDir(const std::string& final_dir)
    : final_(final_dir), staging_(final_dir + ".pending") {
  if (final_dir.empty()) throw std::invalid_argument("empty output directory");
  std::error_code ec;
  std::filesystem::remove_all(staging_, ec);  // stale leftovers
  if (!std::filesystem::create_directories(staging_))
    throw std::runtime_error("cannot create staging directory: " +
                             staging_.string());
}

OutputDir::~OutputDir() {
  if (!committed_) {
    std::error_code ec;
    std::filesystem::remove_all(staging_, ec);
  }
}

std::string OutputDir::path(const std::string& filename) const {
  return (staging_ / filename).string();
}

void OutputDir::commit() {
  if (committed_) throw std::logic_error("output directory already committed");
  if (std::filesystem::exists(final_))
    throw std::runtime_error("output directory already exists: " +
                             final_.string());
  std::filesystem::rename(staging_, final_);
  committed_ = true;
}

// ============================ metadata sidecar ============================

void write_metadata(const std::string& path, const Config& cfg,
                    const std::string& tool, const std::string& note) {
  nlohmann::json j;
  j["tool"] = tool;
  if (!note.empty()) j["note"] = note;
  j["config"] = nlohmann::json::object();
  for (const auto& [key, val] : cfg.values) j["config"][key] = val;
  j["config_hash"] = cfg.hash();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
}

}  // namespace pmlab
