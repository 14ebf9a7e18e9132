#include <iostream>
#include <map>

#include "commands.hpp"
#include "output.hpp"
#include "serve_order/ingest.hpp"
#include "serve_order/logit.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Serve-order effects in best-of-three tennis: exact engine, simulator and match-data pipeline"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SERVE_ORDER_VERSION);

  cli::PointOptions point;
  cli::ScanOptions scan;
  cli::SimulateOptions simulate;
  std::map<std::string, cli::PipelineOptions> pipeline{{"ingest", {}}, {"infer", {}}, {"residuals", {}}, {"logit", {}}};

  cli::add_point(app, point);
  cli::add_scan(app, scan);
  cli::add_simulate(app, simulate);
  cli::add_pipeline(app, "ingest", cli::Stage::Ingest, pipeline["ingest"]);
  cli::add_pipeline(app, "infer", cli::Stage::Infer, pipeline["infer"]);
  cli::add_pipeline(app, "residuals", cli::Stage::Residuals, pipeline["residuals"]);
  cli::add_pipeline(app, "logit", cli::Stage::Logit, pipeline["logit"]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? cli::kOk : cli::kUsage;
  }

  try {
    if (app.got_subcommand("point")) return cli::run_point(point);
    if (app.got_subcommand("scan")) return cli::run_scan(scan);
    if (app.got_subcommand("simulate")) return cli::run_simulate(simulate);
    for (auto& [name, opts] : pipeline) {
      if (app.got_subcommand(name)) return cli::run_pipeline(opts);
    }
  } catch (const cli::IoError& e) {
    std::cerr << "serve_order: " << e.what() << '\n';
    return cli::kIo;
  } catch (const serve_order::MissingColumnError& e) {
    std::cerr << "serve_order: " << e.what() << '\n';
    return cli::kValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "serve_order: " << e.what() << '\n';
    return cli::kValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "serve_order: " << e.what() << '\n';
    return cli::kValidation;
  }
  return cli::kUsage;
}
