#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vcop/dynamics.hpp"
#include "vcop/graph.hpp"
#include "vcop/language.hpp"
#include "vcop/panel.hpp"

namespace vcop {

struct MetricsOptions {
  DynamicsOptions dynamics;
  std::string lexicon_pos;  // both empty: builtin lexicon
  std::string lexicon_neg;
  int jobs = 1;
  std::optional<std::string> dump_graphs_dir;
};

struct MetricsBundle {
  std::vector<DynamicsRow> dynamics;
  std::vector<LanguageRow> language;
  std::vector<CentralizationRow> structure;
};

// Runs the three metric producers over the windowed archive.
MetricsBundle compute_metrics(const Archive& archive, const MetricsOptions& options);

// Per-window edge lists, one "<community>_<month>.csv" per window with
// columns from,to,weight (directed reply counts, self-replies included).
void dump_graphs(const Archive& archive, const std::vector<MonthWindow>& windows,
                 const PostIndex& index, const std::string& dir);

// Stage handoff files: dynamics.csv, language.csv, structure.csv in `dir`.
void write_metrics_csv(const std::string& dir, const MetricsBundle& bundle);
MetricsBundle read_metrics_csv(const std::string& dir);

// Temp-file-plus-rename so readers never observe partial output.
void write_atomic(const std::string& path, std::string_view content);
std::string read_file(const std::string& path);

}  // namespace vcop
