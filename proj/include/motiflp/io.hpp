#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace motiflp {

// Shortest representation that round-trips exactly (via std::to_chars), so
// artifacts are byte-stable and lossless.
std::string format_double(double x);

double parse_double(const std::string& s);
long long parse_int(const std::string& s);
std::uint64_t parse_uint(const std::string& s);

std::vector<std::string> split_csv(const std::string& line);
std::string join_csv(const std::vector<std::string>& fields);

// Resolved run configuration embedded in artifacts as "# key=value" comment
// lines. Order is preserved.
class KvConfig {
public:
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, std::uint64_t value);
  void add(const std::string& key, long long value);
  void add(const std::string& key, int value);
  void add(const std::string& key, double value);
  const std::string* find(const std::string& key) const;
  const std::string& require(const std::string& key) const;
  const std::vector<std::pair<std::string, std::string>>& items() const {
    return items_;
  }

private:
  std::vector<std::pair<std::string, std::string>> items_;
};

void write_config_comments(const KvConfig& config, std::ostream& out);

struct CsvFile {
  KvConfig config;                              // "# key=value" before header
  std::vector<std::string> header;              // column names
  std::vector<std::vector<std::string>> rows;   // data cells
  std::vector<std::string> trailing_comments;   // comments after data rows
};

CsvFile read_csv(std::istream& in);
CsvFile read_csv_file(const std::string& path);

// Writes content to path via a temp file + rename so readers never observe a
// half-written file.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);
bool file_exists(const std::string& path);

}  // namespace motiflp
