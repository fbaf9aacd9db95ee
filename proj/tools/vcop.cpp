#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vcop/error.hpp"
#include "vcop/ingest.hpp"
#include "vcop/mlm.hpp"
#include "vcop/panel.hpp"
#include "vcop/pipeline.hpp"
#include "vcop/report.hpp"
#include "vcop/synth.hpp"
#include "vcop/util.hpp"
#include "vcop/version.hpp"

namespace fs = std::filesystem;

namespace {

struct IngestArgs {
  std::string input;
  std::string format = "jsonl";
};

struct SynthArgs {
  std::string spec;
  std::string out;
};

struct MetricsArgs {
  std::string input;
  std::string format = "jsonl";
  std::string out;
  vcop::MetricsOptions options;
  std::string launch_rule = "or";
  std::string dump_graphs;
};

struct PanelArgs {
  std::string metrics_dir;
  std::string out;
  std::vector<int> seasonal_months = {12};
};

struct FitArgs {
  std::string panel;
  std::string models;
  std::string out;
  std::string criterion = "ml";
};

struct ReportArgs {
  std::string panel;
  std::string out;
  std::string models;
  std::string criterion = "ml";
};

vcop::Criterion parse_criterion(const std::string& name) {
  if (name == "ml") return vcop::Criterion::ml;
  if (name == "reml") return vcop::Criterion::reml;
  throw vcop::Error("unknown criterion: " + name + " (expected ml or reml)");
}

std::vector<std::string> split_commas(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream stream(list);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<vcop::ModelFit> fit_models(const vcop::Panel& panel, const std::string& models,
                                       vcop::Criterion criterion) {
  std::vector<vcop::ModelFit> fits;
  for (const auto& token : split_commas(models)) {
    fits.push_back(vcop::fit_lmm(panel, vcop::resolve_model_token(token), criterion));
  }
  return fits;
}

int run_ingest(const IngestArgs& args) {
  const auto result = vcop::load_archive(args.input, vcop::parse_format(args.format));
  std::cout << vcop::render_ingest_report(result);
  return 0;
}

int run_synth(const SynthArgs& args) {
  const auto specs = vcop::load_community_specs(args.spec);
  const vcop::Archive archive = vcop::generate_archive(specs);
  std::ostringstream out;
  vcop::write_jsonl(out, archive);
  vcop::write_atomic(args.out, out.str());
  std::cout << "wrote " << archive.posts.size() << " posts for " << specs.size()
            << " communities to " << args.out << '\n';
  return 0;
}

int run_metrics(MetricsArgs& args) {
  args.options.dynamics.launch.require_both = args.launch_rule == "and";
  if (args.launch_rule != "or" && args.launch_rule != "and") {
    throw vcop::Error("--launch-rule must be or|and");
  }
  if (!args.dump_graphs.empty()) args.options.dump_graphs_dir = args.dump_graphs;
  if (args.options.lexicon_pos.empty() != args.options.lexicon_neg.empty()) {
    throw vcop::Error("--lexicon-pos and --lexicon-neg must be given together");
  }
  const auto result = vcop::load_archive(args.input, vcop::parse_format(args.format));
  for (const auto& d : result.diagnostics) {
    std::cerr << "line " << d.line << ": " << d.message << '\n';
  }
  const auto bundle = vcop::compute_metrics(result.archive, args.options);
  vcop::write_metrics_csv(args.out, bundle);
  std::cout << "wrote dynamics.csv, language.csv, structure.csv ("
            << bundle.dynamics.size() << " community-months) to " << args.out << '\n';
  return 0;
}

int run_panel(const PanelArgs& args) {
  const auto bundle = vcop::read_metrics_csv(args.metrics_dir);
  vcop::Panel panel =
      vcop::assemble_panel(bundle.dynamics, bundle.language, bundle.structure);
  vcop::apply_maturity(panel, vcop::maturity_factor(panel));
  vcop::add_seasonal_covariates(panel, args.seasonal_months);
  std::ostringstream out;
  vcop::write_panel_csv(out, panel);
  fs::create_directories(args.out);
  vcop::write_atomic((fs::path(args.out) / "panel.csv").string(), out.str());
  std::cout << "wrote panel.csv (" << panel.rows.size() << " rows) to " << args.out << '\n';
  return 0;
}

vcop::Panel load_panel(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw vcop::Error("cannot open panel file: " + path);
  return vcop::read_panel_csv(in);
}

int run_fit(const FitArgs& args) {
  const vcop::Panel panel = load_panel(args.panel);
  const auto fits = fit_models(panel, args.models, parse_criterion(args.criterion));
  if (fits.empty()) throw vcop::Error("--models named no model");
  fs::create_directories(args.out);
  for (const auto& fit : fits) {
    vcop::write_atomic((fs::path(args.out) / ("fit_" + fit.name + ".json")).string(),
                       vcop::render_fit_json(fit));
  }
  vcop::write_atomic((fs::path(args.out) / "fit_models.txt").string(),
                     vcop::render_model_table(fits));
  std::cout << "wrote " << fits.size() << " fit JSONs and fit_models.txt to "
            << args.out << '\n';
  return 0;
}

int run_report(const ReportArgs& args, const std::string& command_line) {
  const vcop::Panel panel = load_panel(args.panel);
  const auto correlations = vcop::correlation_report(panel, vcop::report_columns());
  const auto maturity = vcop::maturity_factor(panel);
  std::vector<vcop::ModelFit> fits;
  if (!args.models.empty()) {
    fits = fit_models(panel, args.models, parse_criterion(args.criterion));
  }
  vcop::ReportMetadata metadata;
  metadata.tool_version = vcop::kVersion;
  metadata.command_line = command_line;
  metadata.input_path = args.panel;
  metadata.input_digest = vcop::fnv1a_hex(vcop::read_file(args.panel));
  fs::create_directories(args.out);
  vcop::write_atomic((fs::path(args.out) / "report.txt").string(),
                     vcop::render_report(metadata, correlations, maturity, fits));
  std::cout << "wrote report.txt to " << args.out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"growth analytics for online communities of practice"};
  app.set_version_flag("--version", std::string(vcop::kVersion));
  app.require_subcommand(1);

  IngestArgs ingest_args;
  auto* ingest = app.add_subcommand("ingest", "validate an archive and print a report");
  ingest->add_option("--input", ingest_args.input, "archive file")->required();
  ingest->add_option("--format", ingest_args.format, "jsonl|csv");

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "generate a synthetic archive");
  synth->add_option("--spec", synth_args.spec, "community spec JSON")->required();
  synth->add_option("--out", synth_args.out, "output jsonl path")->required();

  MetricsArgs metrics_args;
  auto* metrics = app.add_subcommand("metrics", "compute per-month metric CSVs");
  metrics->add_option("--input", metrics_args.input, "archive file")->required();
  metrics->add_option("--format", metrics_args.format, "jsonl|csv");
  metrics->add_option("--out", metrics_args.out, "output directory")->required();
  metrics->add_option("--snapshot-days", metrics_args.options.dynamics.series.snapshot_days,
                      "betweenness snapshot spacing");
  metrics->add_option("--trail-days", metrics_args.options.dynamics.series.trail_days,
                      "trailing window for snapshot graphs");
  metrics->add_option("--launch-age", metrics_args.options.dynamics.launch.age_months,
                      "launch phase age threshold (months)");
  metrics->add_option("--launch-size", metrics_args.options.dynamics.launch.size_members,
                      "launch phase size threshold (members)");
  metrics->add_option("--launch-rule", metrics_args.launch_rule,
                      "or|and combination of the launch thresholds");
  metrics->add_option("--lexicon-pos", metrics_args.options.lexicon_pos,
                      "positive lexicon file");
  metrics->add_option("--lexicon-neg", metrics_args.options.lexicon_neg,
                      "negative lexicon file");
  metrics->add_option("--jobs", metrics_args.options.jobs, "worker threads");
  metrics->add_option("--dump-graphs", metrics_args.dump_graphs,
                      "also write per-window edge lists to this directory");

  PanelArgs panel_args;
  auto* panel = app.add_subcommand("panel", "assemble the monthly panel CSV");
  panel->add_option("--metrics", panel_args.metrics_dir, "directory written by metrics")
      ->required();
  panel->add_option("--out", panel_args.out, "output directory")->required();
  panel->add_option("--seasonal-months", panel_args.seasonal_months,
                    "calendar months that get 0/1 dummy columns");

  FitArgs fit_args;
  auto* fit = app.add_subcommand("fit", "fit random-intercept models");
  fit->add_option("--panel", fit_args.panel, "panel.csv path")->required();
  fit->add_option("--models", fit_args.models,
                  "comma list: null,maturity,language,structure,full or name:cov+cov")
      ->required();
  fit->add_option("--out", fit_args.out, "output directory")->required();
  fit->add_option("--criterion", fit_args.criterion, "ml|reml");

  ReportArgs report_args;
  auto* report = app.add_subcommand("report", "render correlation and model tables");
  report->add_option("--panel", report_args.panel, "panel.csv path")->required();
  report->add_option("--out", report_args.out, "output directory")->required();
  report->add_option("--models", report_args.models, "optional comma list of models");
  report->add_option("--criterion", report_args.criterion, "ml|reml");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string command_line;
  for (int i = 0; i < argc; ++i) {
    if (i) command_line += ' ';
    command_line += argv[i];
  }

  try {
    if (app.got_subcommand(ingest)) return run_ingest(ingest_args);
    if (app.got_subcommand(synth)) return run_synth(synth_args);
    if (app.got_subcommand(metrics)) return run_metrics(metrics_args);
    if (app.got_subcommand(panel)) return run_panel(panel_args);
    if (app.got_subcommand(fit)) return run_fit(fit_args);
    if (app.got_subcommand(report)) return run_report(report_args, command_line);
  } catch (const vcop::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
