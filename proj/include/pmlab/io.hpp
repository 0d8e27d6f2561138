#pragma once

#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace pmlab {

// ============================ run configuration ===========================

// Flat key=value text: one pair per line, '#' starts a comment, blank lines
// are skipped. Keys may not repeat.
struct Config {
  std::map<std::string, std::string> values;

  static Config from_string(const std::string& text);
  static Config from_file(const std::string& path);

  bool has(const std::string& key) const;
  std::string get_str(const std::string& key, const std::string& fallback) const;
  double get_num(const std::string& key, double fallback) const;
  long get_int(const std::string& key, long fallback) const;
  bool get_flag(const std::string& key, bool fallback) const;
  std::vector<double> get_list(const std::string& key,
                               const std::vector<double>& fallback) const;

  // Throws std::invalid_argument naming the first key outside the allowed set.
  void require_known(const std::vector<std::string>& allowed) const;

  // Sorted key=value dump, one pair per line.
  std::string canonical() const;

  // FNV-1a 64-bit hash of the canonical dump as 16 hex digits.
  std::string hash() const;
};

// ============================ tabular output ==============================

// Full round-trip precision for doubles; the same value always prints the
// same bytes.
std::string format_full(double v);

// Streams comma-separated rows of doubles under a fixed header.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& columns);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(const std::vector<double>& values);
  void close();

 private:
  std::string path_;
  std::FILE* f_ = nullptr;
  size_t width_ = 0;
};

// ============================ output staging ==============================

// Fills <dir>.pending and renames it to <dir> on commit, so a finished
// directory is always complete. Refuses to overwrite an existing <dir>;
// an abandoned staging directory is removed.
class OutputDir {
 public:
  explicit OutputDir(const std::string& final_dir);
  ~OutputDir();
  OutputDir(const OutputDir&) = delete;
  OutputDir& operator=(const OutputDir&) = delete;

  std::string path(const std::string& filename) const;
  std::string final_path() const { return final_.string(); }
  void commit();

 private:
  std::filesystem::path final_;
  std::filesystem::path staging_;
  bool committed_ = false;
};

// JSON sidecar recording the tool name, the full configuration, and its hash.
void write_metadata(const std::string& path, const Config& cfg,
                    const std::string& tool, const std::string& note);

}  // namespace pmlab
