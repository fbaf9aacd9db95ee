#include "vcop/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "vcop/csv.hpp"
#include "vcop/error.hpp"
#include "vcop/util.hpp"

namespace vcop {
namespace {

namespace fs = std::filesystem;

std::optional<double> opt_field(const std::string& field) {
  if (field.empty()) return std::nullopt;
  const auto v = parse_double(field);
  if (!v) throw Error("bad numeric field: " + field);
  return v;
}

std::string opt_text(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

int int_field(const std::string& field) {
  const auto v = parse_int(field);
  if (!v) throw Error("bad integer field: " + field);
  return static_cast<int>(*v);
}

YearMonth month_field(const std::string& field) {
  const auto m = YearMonth::parse(field);
  if (!m) throw Error("bad month label: " + field);
  return *m;
}

void expect_header(CsvReader& reader, const std::vector<std::string>& expected,
                   const std::string& path) {
  std::vector<std::string> row;
  if (!reader.next_row(row) || row != expected) {
    throw Error("unexpected header in " + path);
  }
}

}  // namespace

MetricsBundle compute_metrics(const Archive& archive, const MetricsOptions& options) {
  const auto windows = window_by_month(archive);
  const auto index = build_post_index(archive);

  MetricsBundle bundle;
  bundle.dynamics = compute_dynamics(archive, index, windows, options.dynamics,
                                     options.jobs);
  const Lexicon lexicon = options.lexicon_pos.empty() && options.lexicon_neg.empty()
                              ? Lexicon::builtin()
                              : Lexicon::load(options.lexicon_pos, options.lexicon_neg);
  const LexiconScorer scorer(lexicon);
  const Dictionary dictionary = Dictionary::build(archive);
  bundle.language = compute_language(archive, windows, scorer, dictionary, options.jobs);
  bundle.structure = compute_centralization(archive, windows, index, options.jobs);

  if (options.dump_graphs_dir) {
    dump_graphs(archive, windows, index, *options.dump_graphs_dir);
  }
  return bundle;
}

void dump_graphs(const Archive& archive, const std::vector<MonthWindow>& windows,
                 const PostIndex& index, const std::string& dir) {
  fs::create_directories(dir);
  for (const auto& w : windows) {
    const InteractionGraph g = InteractionGraph::build(archive, w.post_index, index);
    std::ostringstream out;
    write_csv_row(out, std::vector<std::string>{"from", "to", "weight"});
    for (const auto& [edge, weight] : g.reply_edges()) {
      write_csv_row(out, std::vector<std::string>{
                             g.node_ids()[static_cast<std::size_t>(edge.first)],
                             g.node_ids()[static_cast<std::size_t>(edge.second)],
                             std::to_string(weight)});
    }
    write_atomic((fs::path(dir) / (w.community_id + "_" + w.month.label() + ".csv")).string(),
                 out.str());
  }
}

void write_metrics_csv(const std::string& dir, const MetricsBundle& bundle) {
  fs::create_directories(dir);

  std::ostringstream dyn;
  write_csv_row(dyn, std::vector<std::string>{"community_id", "month", "joiners", "age",
                                              "size", "launch_phase", "past_activity",
                                              "rotating_leadership"});
  for (const auto& r : bundle.dynamics) {
    write_csv_row(dyn, std::vector<std::string>{
                           r.community_id, r.month.label(), std::to_string(r.joiners),
                           std::to_string(r.age), std::to_string(r.size),
                           std::to_string(r.launch_phase ? 1 : 0),
                           std::to_string(r.past_activity),
                           format_double(r.rotating_leadership)});
  }
  write_atomic((fs::path(dir) / "dynamics.csv").string(), dyn.str());

  std::ostringstream lang;
  write_csv_row(lang, std::vector<std::string>{"community_id", "month", "sentiment",
                                               "emotionality", "complexity"});
  for (const auto& r : bundle.language) {
    write_csv_row(lang, std::vector<std::string>{r.community_id, r.month.label(),
                                                 opt_text(r.sentiment),
                                                 opt_text(r.emotionality),
                                                 opt_text(r.complexity)});
  }
  write_atomic((fs::path(dir) / "language.csv").string(), lang.str());

  std::ostringstream str;
  write_csv_row(str, std::vector<std::string>{"community_id", "month", "group_betweenness"});
  for (const auto& r : bundle.structure) {
    write_csv_row(str, std::vector<std::string>{r.community_id, r.month.label(),
                                                opt_text(r.group_betweenness)});
  }
  write_atomic((fs::path(dir) / "structure.csv").string(), str.str());
}

MetricsBundle read_metrics_csv(const std::string& dir) {
  MetricsBundle bundle;
  std::vector<std::string> row;

  {
    const std::string path = (fs::path(dir) / "dynamics.csv").string();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    CsvReader reader(in);
    expect_header(reader, {"community_id", "month", "joiners", "age", "size",
                           "launch_phase", "past_activity", "rotating_leadership"},
                  path);
    while (reader.next_row(row)) {
      if (row.size() != 8) throw Error("bad row in " + path);
      DynamicsRow r;
      r.community_id = row[0];
      r.month = month_field(row[1]);
      r.joiners = int_field(row[2]);
      r.age = int_field(row[3]);
      r.size = int_field(row[4]);
      r.launch_phase = int_field(row[5]) != 0;
      r.past_activity = int_field(row[6]);
      const auto rl = opt_field(row[7]);
      if (!rl) throw Error("missing rotating_leadership in " + path);
      r.rotating_leadership = *rl;
      bundle.dynamics.push_back(std::move(r));
    }
  }
  {
    const std::string path = (fs::path(dir) / "language.csv").string();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    CsvReader reader(in);
    expect_header(reader, {"community_id", "month", "sentiment", "emotionality",
                           "complexity"},
                  path);
    while (reader.next_row(row)) {
      if (row.size() != 5) throw Error("bad row in " + path);
      LanguageRow r;
      r.community_id = row[0];
      r.month = month_field(row[1]);
      r.sentiment = opt_field(row[2]);
      r.emotionality = opt_field(row[3]);
      r.complexity = opt_field(row[4]);
      bundle.language.push_back(std::move(r));
    }
  }
  {
    const std::string path = (fs::path(dir) / "structure.csv").string();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    CsvReader reader(in);
    expect_header(reader, {"community_id", "month", "group_betweenness"}, path);
    while (reader.next_row(row)) {
      if (row.size() != 3) throw Error("bad row in " + path);
      bundle.structure.push_back({row[0], month_field(row[1]), opt_field(row[2])});
    }
  }
  return bundle;
}

void write_atomic(const std::string& path, std::string_view content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("short write to " + tmp);
  }
  fs::rename(tmp, path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace vcop
