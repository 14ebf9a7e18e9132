#include "serve_order/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <string>

namespace serve_order {

namespace {

const std::vector<std::pair<std::string, std::string>>& default_columns() {
  static const std::vector<std::pair<std::string, std::string>> cols = {
      {"score", "score"},
      {"best_of", "best_of"},
      {"w_svpt", "w_svpt"},
      {"w_1stWon", "w_1stWon"},
      {"w_2ndWon", "w_2ndWon"},
      {"w_bpSaved", "w_bpSaved"},
      {"w_bpFaced", "w_bpFaced"},
      {"l_svpt", "l_svpt"},
      {"l_1stWon", "l_1stWon"},
      {"l_2ndWon", "l_2ndWon"},
      {"l_bpSaved", "l_bpSaved"},
      {"l_bpFaced", "l_bpFaced"},
      // optional
      {"tourney_id", "tourney_id"},
      {"match_num", "match_num"},
      {"tourney_date", "tourney_date"},
      {"w_1stIn", "w_1stIn"},
      {"l_1stIn", "l_1stIn"},
  };
  return cols;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::optional<long> read_count(const std::string& field) {
  const std::string t = trim(field);
  if (t.empty()) return std::nullopt;
  long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec == std::errc() && ptr == t.data() + t.size()) return v;
  // Some exports write counts as floats ("45.0").
  try {
    std::size_t used = 0;
    const double d = std::stod(t, &used);
    if (used == t.size() && d == static_cast<double>(static_cast<long>(d))) return static_cast<long>(d);
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

}  // namespace

ColumnMap::ColumnMap() {
  for (const auto& [field, column] : default_columns()) columns_.emplace(field, column);
}

const std::vector<std::string>& ColumnMap::required_fields() {
  static const std::vector<std::string> fields = [] {
    std::vector<std::string> f;
    for (std::size_t i = 0; i < 12; ++i) f.push_back(default_columns()[i].first);
    return f;
  }();
  return fields;
}

const std::vector<std::string>& ColumnMap::optional_fields() {
  static const std::vector<std::string> fields = [] {
    std::vector<std::string> f;
    for (std::size_t i = 12; i < default_columns().size(); ++i) f.push_back(default_columns()[i].first);
    return f;
  }();
  return fields;
}

const std::string& ColumnMap::column(std::string_view field) const {
  const auto it = columns_.find(field);
  if (it == columns_.end()) throw std::invalid_argument("unknown column field '" + std::string(field) + "'");
  return it->second;
}

void ColumnMap::set(std::string_view field, std::string column) {
  const auto it = columns_.find(field);
  if (it == columns_.end()) throw std::invalid_argument("unknown column field '" + std::string(field) + "'");
  it->second = std::move(column);
}

void ColumnMap::apply_overrides(std::string_view spec) {
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t comma = std::min(spec.find(',', start), spec.size());
    const std::string pair = trim(spec.substr(start, comma - start));
    if (!pair.empty()) {
      const auto eq = pair.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == pair.size()) {
        throw std::invalid_argument("column override must look like field=column, got '" + pair + "'");
      }
      set(trim(pair.substr(0, eq)), trim(pair.substr(eq + 1)));
    }
    start = comma + 1;
  }
}

YearRange YearRange::parse(std::string_view text) {
  const std::string t = trim(text);
  const auto dash = t.find('-');
  const auto to_year = [&](std::string_view s) {
    int y = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), y);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw std::invalid_argument("bad year range '" + t + "'");
    }
    return y;
  };
  YearRange r;
  if (dash == std::string::npos) {
    r.first = r.last = to_year(t);
  } else {
    r.first = to_year(std::string_view(t).substr(0, dash));
    r.last = to_year(std::string_view(t).substr(dash + 1));
  }
  if (r.first > r.last) throw std::invalid_argument("year range is reversed: '" + t + "'");
  return r;
}

std::size_t RejectionCounts::total() const noexcept {
  std::size_t s = 0;
  for (const auto& [r, c] : counts) s += c;
  return s;
}

RejectionCounts& RejectionCounts::merge(const RejectionCounts& other) {
  for (const auto& [r, c] : other.counts) counts[r] += c;
  return *this;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

IngestResult ingest_csv(std::istream& in, Tour tour, const IngestOptions& options) {
  IngestResult result;
  std::string line;
  if (!std::getline(in, line)) return result;  // empty input

  const std::vector<std::string> header = split_csv_line(line);
  const auto find = [&](const std::string& field) -> std::optional<std::size_t> {
    const std::string& name = options.columns.column(field);
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (trim(header[i]) == name) return i;
    }
    return std::nullopt;
  };

  std::map<std::string, std::size_t, std::less<>> index;
  for (const std::string& field : ColumnMap::required_fields()) {
    const auto i = find(field);
    if (!i) {
      throw MissingColumnError("required column '" + options.columns.column(field) + "' (field " + field +
                               ") not found in header");
    }
    index[field] = *i;
  }
  for (const std::string& field : ColumnMap::optional_fields()) {
    if (const auto i = find(field)) index[field] = *i;
  }

  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++result.rows_read;
    const std::vector<std::string> row = split_csv_line(line);
    const auto get = [&](std::string_view field) -> std::string {
      const auto it = index.find(field);
      if (it == index.end() || it->second >= row.size()) return {};
      return row[it->second];
    };

    MatchRecord rec;
    rec.tour = tour;
    rec.score = trim(get("score"));
    const std::string tid = trim(get("tourney_id")), num = trim(get("match_num"));
    rec.match_id = tid.empty() && num.empty() ? "row-" + std::to_string(result.rows_read) : tid + "-" + num;
    const auto best_of = read_count(get("best_of"));
    rec.best_of = best_of ? static_cast<int>(*best_of) : 0;
    if (const std::string date = trim(get("tourney_date")); date.size() >= 4) {
      if (const auto y = read_count(date.substr(0, 4))) rec.year = static_cast<int>(*y);
    }
    rec.winner = PlayerServeStats{read_count(get("w_svpt")),    read_count(get("w_1stIn")),
                                  read_count(get("w_1stWon")),  read_count(get("w_2ndWon")),
                                  read_count(get("w_bpFaced")), read_count(get("w_bpSaved"))};
    rec.loser = PlayerServeStats{read_count(get("l_svpt")),    read_count(get("l_1stIn")),
                                 read_count(get("l_1stWon")),  read_count(get("l_2ndWon")),
                                 read_count(get("l_bpFaced")), read_count(get("l_bpSaved"))};

    if (options.years && (!rec.year || !options.years->contains(*rec.year))) {
      result.rejections.add(Rejection::OutOfRange);
      continue;
    }
    if (const auto r = complete_record(rec)) {
      result.rejections.add(*r);
      continue;
    }
    auto est = estimate_serve_probs(rec);
    if (const auto* r = std::get_if<Rejection>(&est)) {
      result.rejections.add(*r);
      continue;
    }
    result.accepted.push_back(AcceptedMatch{std::move(rec), std::get<ServeEstimate>(est)});
  }
  return result;
}

std::optional<Tour> tour_from_filename(std::string_view path) {
  const auto slash = path.find_last_of("/\\");
  std::string name(slash == std::string_view::npos ? path : path.substr(slash + 1));
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
  if (name.find("wta") != std::string::npos) return Tour::WTA;
  if (name.find("atp") != std::string::npos) return Tour::ATP;
  return std::nullopt;
}

}  // namespace serve_order
