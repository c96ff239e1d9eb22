#include "motiflp/io.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "motiflp/errors.hpp"

namespace motiflp {

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) throw NumericError("cannot format double");
  return {buf, end};
}

double parse_double(const std::string& s) {
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw DataError("not a number: '" + s + "'");
  return v;
}

long long parse_int(const std::string& s) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw DataError("not an integer: '" + s + "'");
  return v;
}

std::uint64_t parse_uint(const std::string& s) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw DataError("not a non-negative integer: '" + s + "'");
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string join_csv(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  return out;
}

void KvConfig::add(const std::string& key, const std::string& value) {
  items_.emplace_back(key, value);
}
void KvConfig::add(const std::string& key, std::uint64_t value) {
  items_.emplace_back(key, std::to_string(value));
}
void KvConfig::add(const std::string& key, long long value) {
  items_.emplace_back(key, std::to_string(value));
}
void KvConfig::add(const std::string& key, int value) {
  items_.emplace_back(key, std::to_string(value));
}
void KvConfig::add(const std::string& key, double value) {
  items_.emplace_back(key, format_double(value));
}

const std::string* KvConfig::find(const std::string& key) const {
  for (const auto& [k, v] : items_)
    if (k == key) return &v;
  return nullptr;
}

const std::string& KvConfig::require(const std::string& key) const {
  const std::string* v = find(key);
  if (!v) throw DataError("missing config key in file header: " + key);
  return *v;
}

void write_config_comments(const KvConfig& config, std::ostream& out) {
  for (const auto& [k, v] : config.items()) out << "# " << k << '=' << v << '\n';
}

CsvFile read_csv(std::istream& in) {
  CsvFile file;
  std::string line;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::size_t start = line.find_first_not_of("# \t");
      const std::string body =
          start == std::string::npos ? std::string() : line.substr(start);
      if (!saw_header) {
        const std::size_t eq = body.find('=');
        if (eq != std::string::npos && eq > 0)
          file.config.add(body.substr(0, eq), body.substr(eq + 1));
      } else {
        file.trailing_comments.push_back(line);
      }
      continue;
    }
    auto cells = split_csv(line);
    if (!saw_header) {
      file.header = std::move(cells);
      saw_header = true;
    } else {
      if (cells.size() != file.header.size())
        throw DataError("csv row has " + std::to_string(cells.size()) +
                        " cells, expected " + std::to_string(file.header.size()));
      file.rows.push_back(std::move(cells));
    }
  }
  if (!saw_header) throw DataError("csv file has no header row");
  return file;
}

CsvFile read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  return read_csv(in);
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write file: " + tmp);
    out << content;
    if (!out) throw DataError("write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw DataError("cannot move " + tmp + " to " + path + ": " + ec.message());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool file_exists(const std::string& path) {
  std::error_code ec;
  return std::filesystem::exists(path, ec);
}

}  // namespace motiflp
