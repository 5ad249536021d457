#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace kgsym {

enum class Status { Pass, Fail, Flagged };
std::string_view to_string(Status s);

struct CheckRecord {
  std::string id;
  std::string location;  // data file and line the check came from
  Status status = Status::Pass;
  std::string residual;  // printed residual, set on failure
  std::string note;
};

struct Report {
  std::string suite;
  std::vector<CheckRecord> records;

  void add(CheckRecord r) { records.push_back(std::move(r)); }
  void append(const Report& other);
  std::size_t count(Status s) const;
  bool ok() const { return count(Status::Fail) == 0; }
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Line-oriented record files:
//
//   # comment
//   [section name]
//   key = value
//
// Keys may repeat within a section; order is preserved.
struct DataEntry {
  std::string key;
  std::string value;
  int line = 0;
};

struct DataSection {
  std::string name;
  int line = 0;
  std::vector<DataEntry> entries;

  const DataEntry* find(std::string_view key) const;
  std::vector<const DataEntry*> all(std::string_view key) const;
  const DataEntry& require(std::string_view key) const;
};

struct DataFile {
  std::string path;
  std::vector<DataSection> sections;

  const DataSection* find(std::string_view name) const;
  std::string location(int line) const;
};

DataFile read_data_file(const std::filesystem::path& path);

// Default data directory: $KGSYM_DATA_DIR if set, else the build-time path.
std::filesystem::path default_data_dir();

std::vector<std::string> split(std::string_view s, char sep);
std::string trim(std::string_view s);

}  // namespace kgsym
