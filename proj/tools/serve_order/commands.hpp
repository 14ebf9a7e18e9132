#pragma once

#include <CLI11.hpp>
#include <cstdint>
#include <string>
#include <vector>

namespace cli {

inline const std::vector<double> kDefaultLines{18.5, 19.5, 20.5, 21.5, 22.5};

struct PointOptions {
  double pa = 0.70, pb = 0.60;
  std::string server = "A";
  std::vector<double> lines = kDefaultLines;
  std::string format = "csv";
  std::string out;
};

struct ScanOptions {
  std::string quantity;
  double grid_min = 0.50, grid_max = 0.70;
  double step = 0;  // 0: per-quantity default
  std::vector<double> lines = kDefaultLines;
  unsigned threads = 1;
  std::string format = "csv";
  std::string out;
};

struct SimulateOptions {
  double pa = 0.65, pb = 0.60;
  std::string server = "A";
  std::uint64_t n = 1'000'000;
  std::uint64_t seed = 1;
  unsigned partitions = 1;
  std::vector<double> lines = kDefaultLines;
  std::string format = "csv";
  std::string out;
};

enum class Stage { Ingest = 0, Infer = 1, Residuals = 2, Logit = 3 };

struct PipelineOptions {
  Stage stage = Stage::Ingest;
  std::vector<std::string> inputs;
  std::string tour;
  std::string columns;
  std::string years;
  std::string indeterminate = "exclude";
  std::string format = "csv";
  std::string out;
};

void add_point(CLI::App& app, PointOptions& o);
void add_scan(CLI::App& app, ScanOptions& o);
void add_simulate(CLI::App& app, SimulateOptions& o);
void add_pipeline(CLI::App& app, const std::string& name, Stage stage, PipelineOptions& o);

int run_point(const PointOptions& o);
int run_scan(const ScanOptions& o);
int run_simulate(const SimulateOptions& o);
int run_pipeline(const PipelineOptions& o);

}  // namespace cli
