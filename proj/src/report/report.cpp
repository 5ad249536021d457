#include "kgsym/report.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

namespace kgsym {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Flagged: return "flagged";
  }
  return "?";
}

void Report::append(const Report& other) { records.insert(records.end(), other.records.begin(), other.records.end()); }

std::size_t Report::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [s](const CheckRecord& r) { return r.status == s; }));
}

const DataEntry* DataSection::find(std::string_view key) const {
  for (const auto& e : entries)
    if (e.key == key) return &e;
  return nullptr;
}

std::vector<const DataEntry*> DataSection::all(std::string_view key) const {
  std::vector<const DataEntry*> out;
  for (const auto& e : entries)
    if (e.key == key) out.push_back(&e);
  return out;
}

const DataEntry& DataSection::require(std::string_view key) const {
  if (const auto* e = find(key)) return *e;
  throw DataError("section [" + name + "] at line " + std::to_string(line) + " lacks key '" + std::string(key) + "'");
}

const DataSection* DataFile::find(std::string_view name) const {
  for (const auto& s : sections)
    if (s.name == name) return &s;
  return nullptr;
}

std::string DataFile::location(int line) const {
  return std::filesystem::path(path).filename().string() + ":" + std::to_string(line);
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto p = s.find(sep, start);
    out.push_back(trim(s.substr(start, p == std::string_view::npos ? p : p - start)));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

DataFile read_data_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("missing data file: " + path.string());
  DataFile f;
  f.path = path.string();
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      f.sections.push_back({trim(std::string_view(line).substr(1, line.size() - 2)), n, {}});
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw DataError(f.location(n) + ": expected 'key = value'");
    if (f.sections.empty()) throw DataError(f.location(n) + ": entry outside any [section]");
    f.sections.back().entries.push_back({trim(std::string_view(line).substr(0, eq)),
                                         trim(std::string_view(line).substr(eq + 1)), n});
  }
  return f;
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("KGSYM_DATA_DIR"); env && *env) return env;
  return KGSYM_DATA_DIR;
}

}  // namespace kgsym
