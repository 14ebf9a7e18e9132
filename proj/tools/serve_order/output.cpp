#include "output.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <json.hpp>

namespace cli {

Format parse_format(std::string_view text) {
  if (text == "csv") return Format::Csv;
  if (text == "jsonl") return Format::Jsonl;
  throw std::invalid_argument("format must be csv or jsonl");
}

std::string_view extension(Format f) { return f == Format::Csv ? ".csv" : ".jsonl"; }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Sink::Sink(const std::string& path) : path_(path), stream_(&std::cout) {
  if (path.empty() || path == "-") return;
  if (const auto parent = std::filesystem::path(path).parent_path(); !parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
    if (ec) throw IoError("cannot create directory '" + parent.string() + "': " + ec.message());
  }
  file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
  if (!*file_) throw IoError("cannot open '" + path + "' for writing");
  stream_ = file_.get();
}

void Sink::finish() {
  stream_->flush();
  if (!*stream_) throw IoError("write failed for '" + (path_.empty() ? std::string("stdout") : path_) + "'");
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

nlohmann::json json_cell(const Cell& c) {
  if (std::holds_alternative<Missing>(c)) return nullptr;
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  // Round through the printed form so CSV and JSONL carry the same digits.
  return std::stod(num(std::get<double>(c)));
}

std::string csv_cell(const Cell& c) {
  if (std::holds_alternative<Missing>(c)) return {};
  if (const auto* s = std::get_if<std::string>(&c)) return csv_field(*s);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return num(std::get<double>(c));
}

}  // namespace

TableWriter::TableWriter(std::ostream& out, Format format, const Meta& meta, std::vector<std::string> columns)
    : out_(out), format_(format), columns_(std::move(columns)) {
  if (format_ == Format::Csv) {
    out_ << "# serve_order " << SERVE_ORDER_VERSION;
    for (const auto& [k, v] : meta) out_ << ' ' << k << '=' << v;
    out_ << '\n';
    for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << csv_field(columns_[i]);
    out_ << '\n';
  } else {
    nlohmann::ordered_json m;
    m["tool"] = "serve_order";
    m["version"] = SERVE_ORDER_VERSION;
    for (const auto& [k, v] : meta) m[k] = v;
    out_ << nlohmann::ordered_json{{"_meta", m}}.dump() << '\n';
  }
}

void TableWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != columns_.size()) throw std::logic_error("row width does not match the header");
  if (format_ == Format::Csv) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << csv_cell(cells[i]);
    out_ << '\n';
  } else {
    nlohmann::ordered_json o;
    for (std::size_t i = 0; i < cells.size(); ++i) o[columns_[i]] = json_cell(cells[i]);
    out_ << o.dump() << '\n';
  }
}

void write_table(const std::string& path, Format format, const Meta& meta, std::vector<std::string> columns,
                 const std::vector<std::vector<Cell>>& rows) {
  Sink sink(path);
  TableWriter w(sink.out(), format, meta, std::move(columns));
  for (const auto& r : rows) w.row(r);
  sink.finish();
}

std::string output_path(const std::string& dir, const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
  return (std::filesystem::path(dir) / name).string();
}

}  // namespace cli
