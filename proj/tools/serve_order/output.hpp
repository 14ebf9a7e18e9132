#pragma once

#include <fstream>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kValidation = 3 };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Csv, Jsonl };
Format parse_format(std::string_view text);
std::string_view extension(Format f);

/// 12 significant digits, enough for 1e-12 identity checks.
std::string num(double v);

using Meta = std::vector<std::pair<std::string, std::string>>;

/// A file path, or stdout when the path is empty or "-".
class Sink {
 public:
  explicit Sink(const std::string& path);
  std::ostream& out() { return *stream_; }
  void finish();

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

/// Missing values are written as empty CSV cells / JSON null.
struct Missing {};
using Cell = std::variant<Missing, std::string, double, long long>;

/// Writes a metadata line, then a header row and data rows (CSV), or a
/// "_meta" object followed by one object per row (JSONL).
class TableWriter {
 public:
  TableWriter(std::ostream& out, Format format, const Meta& meta, std::vector<std::string> columns);
  void row(const std::vector<Cell>& cells);

 private:
  std::ostream& out_;
  Format format_;
  std::vector<std::string> columns_;
};

void write_table(const std::string& path, Format format, const Meta& meta, std::vector<std::string> columns,
                 const std::vector<std::vector<Cell>>& rows);

/// Joins `dir` and `name`, creating `dir` if needed.
std::string output_path(const std::string& dir, const std::string& name);

}  // namespace cli
