#pragma once

#include <array>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "serve_order/empirical.hpp"

namespace serve_order {

/// Maps logical fields to CSV header names. Defaults follow the public
/// ATP/WTA match files (w_svpt, l_bpFaced, ...).
class ColumnMap {
 public:
  ColumnMap();

  /// Applies "field=column" pairs separated by commas; throws
  /// std::invalid_argument for unknown fields or malformed pairs.
  void apply_overrides(std::string_view spec);

  const std::string& column(std::string_view field) const;
  void set(std::string_view field, std::string column);

  static const std::vector<std::string>& required_fields();
  static const std::vector<std::string>& optional_fields();

 private:
  std::map<std::string, std::string, std::less<>> columns_;
};

/// Thrown when a required column is missing from the header row.
class MissingColumnError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct YearRange {
  int first = 0;
  int last = 9999;

  /// "2010-2024" or "2019"; throws std::invalid_argument otherwise.
  static YearRange parse(std::string_view text);
  bool contains(int year) const noexcept { return year >= first && year <= last; }
};

struct IngestOptions {
  ColumnMap columns;
  std::optional<YearRange> years;
};

struct RejectionCounts {
  std::map<Rejection, std::size_t> counts;

  void add(Rejection r) { ++counts[r]; }
  std::size_t total() const noexcept;
  RejectionCounts& merge(const RejectionCounts& other);
};

/// A record that passed every filter, with its serve estimate.
struct AcceptedMatch {
  MatchRecord record;
  ServeEstimate estimate;
};

struct IngestResult {
  std::size_t rows_read = 0;
  std::vector<AcceptedMatch> accepted;
  RejectionCounts rejections;
};

/// Splits one CSV line (RFC 4180 quoting, no embedded newlines).
std::vector<std::string> split_csv_line(std::string_view line);

/// Reads a header row and then one match per row. Records failing a filter
/// are counted in `rejections`, never thrown. Throws MissingColumnError for
/// unmapped required columns.
IngestResult ingest_csv(std::istream& in, Tour tour, const IngestOptions& options);

/// Tour implied by a file name ("wta_matches_2019.csv" -> WTA), if any.
std::optional<Tour> tour_from_filename(std::string_view path);

}  // namespace serve_order
