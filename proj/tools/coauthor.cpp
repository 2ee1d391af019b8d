// Command-line front end: one subcommand per pipeline stage plus `run`.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "coauthor/analysis.hpp"
#include "coauthor/cluster.hpp"
#include "coauthor/geo.hpp"
#include "coauthor/graph.hpp"
#include "coauthor/ingest.hpp"
#include "coauthor/meso.hpp"
#include "coauthor/metrics.hpp"
#include "coauthor/pajek.hpp"
#include "coauthor/report.hpp"
#include "coauthor/synth.hpp"

#ifndef COAUTHOR_CONFIG_DIR
#define COAUTHOR_CONFIG_DIR "config"
#endif

namespace fs = std::filesystem;
using namespace coauthor;

namespace {

struct Options {
  std::string config;
  bool quiet = false;

  // inputs
  std::string input;
  std::string format = "auto";
  std::string aliases = std::string(COAUTHOR_CONFIG_DIR) + "/country_aliases.txt";
  std::string continents = std::string(COAUTHOR_CONFIG_DIR) + "/continents.txt";
  std::string corpus;
  std::string net;
  std::string clu;
  std::string clusters;
  std::string spec;
  std::vector<std::string> analysis;
  std::vector<std::string> fields;

  // parameters
  int slices = 3;
  bool reduced = false;
  std::uint64_t seed = 42;
  bool seed_set = false;
  int trials = 10;
  std::string objective = "map";
  std::vector<int> neighborhoods;
  std::string field = "field";
  bool resume = false;

  // outputs
  std::string out;
  std::string truth;
};

bool g_quiet = false;

void log(const std::string& msg) {
  if (!g_quiet) std::clog << msg << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes through a temporary file and renames it into place.
void write_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw Error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

Objective parse_objective(const std::string& s) {
  if (s == "map") return Objective::map_equation;
  if (s == "module-matrix") return Objective::module_matrix;
  throw Error("unknown objective '" + s + "' (expected map or module-matrix)");
}

// ---- stages ---------------------------------------------------------------

Corpus load_raw_corpus(const Options& o) {
  std::string text = read_file(o.input);
  std::string format = o.format;
  if (format == "auto") {
    std::string_view first;
    for (auto line : text::lines(text))
      if (!text::trim(line).empty()) {
        first = text::trim(line);
        break;
      }
    format = first.starts_with("record_id") ? "tabular" : "tagged";
  }
  ParseOutcome parsed;
  if (format == "tabular") {
    parsed = parse_tabular(text);
  } else if (format == "tagged") {
    auto aliases = fs::exists(o.aliases) ? CountryAliases::parse(read_file(o.aliases)) : CountryAliases::defaults();
    parsed = parse_field_tagged(text, aliases);
  } else {
    throw Error("unknown input format '" + format + "' (expected auto, tagged or tabular)");
  }
  for (const auto& w : parsed.warnings) log("warning: " + w);
  const std::size_t read = parsed.records.size();
  auto filtered = filter_corpus(std::move(parsed.records));
  auto stats = corpus_stats(filtered.corpus);
  log("ingest: " + std::to_string(read) + " records read, " + std::to_string(filtered.removed_too_few_authors) +
      " with fewer than two authors and " + std::to_string(filtered.removed_few_references) +
      " with at most one reference removed; " + std::to_string(stats.records) + " records, " +
      std::to_string(stats.authors) + " authors kept");
  return std::move(filtered.corpus);
}

Corpus load_corpus_file(const std::string& path) {
  auto parsed = parse_tabular(read_file(path));
  for (const auto& w : parsed.warnings) log("warning: " + w);
  return Corpus::from_records(std::move(parsed.records));
}

std::vector<YearRange> age_slices(const Corpus& corpus) {
  if (corpus.empty() || corpus.last_year - corpus.first_year + 1 < kAgeSlices) return {};
  return partition_years(corpus.first_year, corpus.last_year, kAgeSlices);
}

/// Giant component of the reduced network (or the full network when
/// `reduced` is false in the standalone build command).
CoauthorNetwork build_stage(const Corpus& corpus, bool reduced) {
  if (corpus.empty()) throw Error("empty corpus");
  auto slices = age_slices(corpus);
  auto full = build_network(corpus, slices);
  if (!reduced) return full;
  auto red = reduce_single_paper_authors(full);
  if (red.empty()) throw Error("no author has more than one paper");
  auto giant = giant_component(red);
  log("build: " + std::to_string(full.size()) + " authors, " + std::to_string(red.size()) + " after reduction, giant " +
      std::to_string(giant.net.size()) + " (" + text::format_fixed(100 * giant.relative_size, 1) + "%), " +
      std::to_string(giant.net.edge_count()) + " links");
  return giant.net;
}

struct LoadedNetwork {
  CoauthorNetwork net;
  std::vector<int> vertex_order;
};

LoadedNetwork load_network(const std::string& path, const Corpus* corpus) {
  auto imported = read_pajek(read_file(path));
  LoadedNetwork out{std::move(imported.net), std::move(imported.vertex_order)};
  if (corpus) out.net = annotate_from_corpus(out.net, *corpus, age_slices(*corpus));
  return out;
}

std::optional<CountryTable> load_continents(const std::string& path) {
  if (path.empty()) return std::nullopt;
  if (!fs::exists(path)) {
    log("warning: continent table '" + path + "' not found; geography labels will be 'unknown'");
    return std::nullopt;
  }
  return CountryTable::parse(read_file(path));
}

struct MetricsOutputs {
  std::vector<ClusterInfo> clusters;
  std::vector<NodeRoleProfile> profiles;
  std::vector<ClusterRow> rows;
};

MetricsOutputs metrics_stage(const CoauthorNetwork& net, const Clustering& clustering, const Corpus* corpus,
                             const CountryTable* table, const fs::path& dir) {
  MetricsOutputs m;
  m.clusters = cluster_aggregates(net, clustering, corpus);
  m.profiles = node_profiles(net, clustering);
  m.rows = cluster_rows(net, m.clusters, m.profiles, AnalysisInputs{corpus, table});
  write_atomic(dir / "nodes.csv", nodes_csv(net, m.profiles));
  write_atomic(dir / "clusters.csv", clusters_csv(m.rows));
  log("metrics: " + std::to_string(m.rows.size()) + " clusters, " + std::to_string(net.size()) + " nodes profiled");
  return m;
}

std::vector<InterClusterConnection> classify_stage(const CoauthorNetwork& net, const Clustering& clustering,
                                                   const std::vector<ClusterInfo>& clusters,
                                                   std::span<const ClusterRow> rows, const fs::path& dir) {
  auto connections = classify_connections(net, clustering, clusters);
  auto attrs = cluster_attributes(rows);
  write_atomic(dir / "connections.csv", connections_csv(net, connections));
  for (auto kind : kLinkTypes) {
    auto g = build_cluster_network(connections, kind, clusters.size());
    std::string name(to_string(kind));
    write_atomic(dir / (name + ".net"), cluster_network_pajek(g));
    write_atomic(dir / (name + ".dot"), cluster_network_dot(g, attrs));
    log("classify: " + name + " network " + std::to_string(g.stats.nodes) + " clusters, " +
        std::to_string(g.stats.edges) + " links");
  }
  return connections;
}

FieldData load_field(const fs::path& dir, std::string name) {
  FieldData f;
  f.name = std::move(name);
  f.clusters = parse_clusters_csv(read_file((dir / "clusters.csv").string()));
  f.connections = parse_connections_csv(read_file((dir / "connections.csv").string()));
  f.roles = parse_role_distribution(read_file((dir / "nodes.csv").string()));
  return f;
}

void write_report(std::span<const FieldData> fields, const fs::path& dir) {
  auto report = field_report(fields);
  write_atomic(dir / "report.csv", report_csv(report));
  write_atomic(dir / "report.txt", report_text(report));
  log("report: " + std::to_string(fields.size()) + " field(s) written to " + dir.string());
}

// ---- subcommands ----------------------------------------------------------

int cmd_ingest(const Options& o) {
  auto corpus = load_raw_corpus(o);
  write_atomic(o.out, write_tabular(corpus.records));
  return 0;
}

int cmd_build(const Options& o) {
  auto corpus = load_corpus_file(o.corpus);
  auto net = build_stage(corpus, o.reduced);
  write_atomic(o.out, export_pajek(net));
  fs::path growth = fs::path(o.out).replace_extension(".growth.csv");
  write_atomic(growth, growth_csv(growth_curve(corpus, o.slices)));
  return 0;
}

int cmd_cluster(const Options& o) {
  auto loaded = load_network(o.net, nullptr);
  auto c = detect_communities(loaded.net, o.seed, o.trials, parse_objective(o.objective));
  // CLU lines follow the NET file's vertex order.
  std::vector<int> ids(loaded.vertex_order.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = c.cluster_of[loaded.vertex_order[i]];
  write_atomic(o.out, export_clu(std::span<const int>(ids)));
  log("cluster: " + std::to_string(c.cluster_count) + " clusters, description length " +
      text::format_fixed(c.quality, 4) + " bits");
  return 0;
}

int cmd_metrics(const Options& o) {
  std::optional<Corpus> corpus;
  if (!o.corpus.empty()) corpus = load_corpus_file(o.corpus);
  auto loaded = load_network(o.net, corpus ? &*corpus : nullptr);
  auto c = load_clustering(read_file(o.clu), loaded.net, loaded.vertex_order);
  auto table = load_continents(o.continents);
  metrics_stage(loaded.net, c, corpus ? &*corpus : nullptr, table ? &*table : nullptr, o.out);
  return 0;
}

int cmd_classify(const Options& o) {
  std::optional<Corpus> corpus;
  if (!o.corpus.empty()) corpus = load_corpus_file(o.corpus);
  auto loaded = load_network(o.net, corpus ? &*corpus : nullptr);
  auto c = load_clustering(read_file(o.clu), loaded.net, loaded.vertex_order);
  auto clusters = cluster_aggregates(loaded.net, c, corpus ? &*corpus : nullptr);
  std::vector<ClusterRow> rows;
  if (!o.clusters.empty()) {
    rows = parse_clusters_csv(read_file(o.clusters));
  } else {
    auto profiles = node_profiles(loaded.net, c);
    rows = cluster_rows(loaded.net, clusters, profiles, AnalysisInputs{corpus ? &*corpus : nullptr, nullptr});
  }
  if (rows.size() != clusters.size()) throw Error("clusters table does not match the clustering");
  classify_stage(loaded.net, c, clusters, rows, o.out);
  for (int id : o.neighborhoods) {
    auto h = extract_neighborhood(loaded.net, c, id);
    write_atomic(fs::path(o.out) / ("neighborhood_" + std::to_string(id) + ".dot"), neighborhood_dot(h));
  }
  return 0;
}

int cmd_report(const Options& o) {
  if (!o.fields.empty() && o.fields.size() != o.analysis.size())
    throw Error("give one --field name per --analysis directory");
  std::vector<FieldData> fields;
  for (std::size_t i = 0; i < o.analysis.size(); ++i) {
    std::string name = o.fields.empty() ? fs::path(o.analysis[i]).lexically_normal().filename().string() : o.fields[i];
    if (name.empty()) name = "field" + std::to_string(i + 1);
    fields.push_back(load_field(o.analysis[i], name));
  }
  write_report(fields, o.out);
  return 0;
}

int cmd_synth(const Options& o) {
  auto spec = parse_planted_spec(read_file(o.spec));
  if (o.seed_set) spec.seed = o.seed;
  auto s = generate(spec);
  write_atomic(o.out, write_tabular(s.records));
  if (!o.truth.empty()) write_atomic(o.truth, write_ground_truth(s.truth));
  log("synth: " + std::to_string(s.records.size()) + " records, " + std::to_string(s.truth.groups.size()) +
      " groups, " + std::to_string(s.truth.events.size()) + " planted events");
  return 0;
}

const char* kFailureMarker = "FAILED";

int cmd_run(const Options& o) {
  const fs::path dir = o.out;
  fs::create_directories(dir);
  fs::remove(dir / kFailureMarker);
  auto exists = [&](std::initializer_list<const char*> names) {
    if (!o.resume) return false;
    return std::all_of(names.begin(), names.end(), [&](const char* n) { return fs::exists(dir / n); });
  };
  std::string stage;
  try {
    if (o.slices < 1) throw Error("slices must be at least 1");
    if (o.trials < 1) throw Error("trials must be at least 1");
    parse_objective(o.objective);

    stage = "ingest";
    Corpus corpus;
    if (exists({"corpus.csv"})) {
      corpus = load_corpus_file((dir / "corpus.csv").string());
      log("ingest: reusing corpus.csv");
    } else {
      corpus = load_raw_corpus(o);
      write_atomic(dir / "corpus.csv", write_tabular(corpus.records));
    }

    stage = "build";
    CoauthorNetwork net;
    if (exists({"net.net", "growth.csv"})) {
      net = load_network((dir / "net.net").string(), &corpus).net;
      log("build: reusing net.net");
    } else {
      net = build_stage(corpus, true);
      write_atomic(dir / "growth.csv", growth_csv(growth_curve(corpus, o.slices)));
      write_atomic(dir / "net.net", export_pajek(net));
    }

    stage = "cluster";
    Clustering clustering;
    if (!o.clu.empty()) {
      clustering = load_clustering(read_file(o.clu), net);
      write_atomic(dir / "net.clu", export_clu(clustering));
      log("cluster: loaded " + std::to_string(clustering.cluster_count) + " clusters from " + o.clu);
    } else if (exists({"net.clu"})) {
      clustering = load_clustering(read_file((dir / "net.clu").string()), net);
      log("cluster: reusing net.clu");
    } else {
      clustering = detect_communities(net, o.seed, o.trials, parse_objective(o.objective));
      write_atomic(dir / "net.clu", export_clu(clustering));
      log("cluster: " + std::to_string(clustering.cluster_count) + " clusters, description length " +
          text::format_fixed(clustering.quality, 4) + " bits");
    }

    stage = "metrics";
    auto table = load_continents(o.continents);
    auto metrics = metrics_stage(net, clustering, &corpus, table ? &*table : nullptr, dir);

    stage = "classify";
    classify_stage(net, clustering, metrics.clusters, metrics.rows, dir);

    stage = "report";
    std::vector<FieldData> fields = {load_field(dir, o.field)};
    write_report(fields, dir / "report");
  } catch (const std::exception& e) {
    write_atomic(dir / kFailureMarker, "stage: " + stage + "\ncause: " + e.what() + "\n");
    std::cerr << "error: stage " << stage << " failed: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

// ---- command-line wiring --------------------------------------------------

struct Commands {
  CLI::App* ingest;
  CLI::App* build;
  CLI::App* cluster;
  CLI::App* metrics;
  CLI::App* classify;
  CLI::App* report;
  CLI::App* synth;
  CLI::App* run;
};

Commands configure(CLI::App& app, Options& o) {
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", o.config, "Flat key=value file supplying option defaults");
  app.add_flag("-q,--quiet", o.quiet, "Suppress progress messages");

  auto add_input = [&](CLI::App* c) {
    c->add_option("--input", o.input, "Raw corpus: field-tagged export or tabular CSV")->required();
    c->add_option("--format", o.format, "auto, tagged or tabular")->capture_default_str();
    c->add_option("--aliases", o.aliases, "Country alias table (raw,canonical)")->capture_default_str();
  };
  auto add_clustering = [&](CLI::App* c) {
    c->add_option("--seed", o.seed, "Random seed for community detection")->capture_default_str();
    c->add_option("--trials", o.trials, "Independent restarts; the best is kept")->capture_default_str();
    c->add_option("--objective", o.objective, "map or module-matrix")->capture_default_str();
  };

  Commands cmd{};
  cmd.ingest = app.add_subcommand("ingest", "Parse and filter a raw corpus into the canonical CSV format");
  add_input(cmd.ingest);
  cmd.ingest->add_option("--out", o.out, "Canonical corpus CSV")->required();

  cmd.build = app.add_subcommand("build", "Build the co-author network of a canonical corpus");
  cmd.build->add_option("--corpus", o.corpus, "Canonical corpus CSV")->required();
  cmd.build->add_flag("--reduced", o.reduced, "Drop single-paper authors and keep the giant component");
  cmd.build->add_option("--slices", o.slices, "Time slices for the growth curve")->capture_default_str();
  cmd.build->add_option("--out", o.out, "Pajek NET file (growth curve written next to it)")->required();

  cmd.cluster = app.add_subcommand("cluster", "Detect co-author groups");
  cmd.cluster->add_option("--net", o.net, "Pajek NET file")->required();
  add_clustering(cmd.cluster);
  cmd.cluster->add_option("--out", o.out, "Pajek CLU file")->required();

  cmd.metrics = app.add_subcommand("metrics", "Node roles and per-cluster statistics");
  cmd.metrics->add_option("--net", o.net, "Pajek NET file")->required();
  cmd.metrics->add_option("--clu", o.clu, "Pajek CLU file")->required();
  cmd.metrics->add_option("--corpus", o.corpus, "Canonical corpus (paper counts, age, geography)");
  cmd.metrics->add_option("--continents", o.continents, "Country to continent table")->capture_default_str();
  cmd.metrics->add_option("--out", o.out, "Output directory")->required();

  cmd.classify = app.add_subcommand("classify", "Classify inter-cluster connections");
  cmd.classify->add_option("--net", o.net, "Pajek NET file")->required();
  cmd.classify->add_option("--clu", o.clu, "Pajek CLU file")->required();
  cmd.classify->add_option("--corpus", o.corpus, "Canonical corpus (paper counts for lead authors)");
  cmd.classify->add_option("--clusters", o.clusters, "clusters.csv from metrics, for DOT attributes");
  cmd.classify->add_option("--neighborhood", o.neighborhoods, "Also export the neighborhood of this cluster id");
  cmd.classify->add_option("--out", o.out, "Output directory")->required();

  cmd.report = app.add_subcommand("report", "Field report from metrics and classify outputs");
  cmd.report->add_option("--analysis", o.analysis, "Directory with clusters.csv, connections.csv, nodes.csv")
      ->required();
  cmd.report->add_option("--field", o.fields, "Field name per analysis directory");
  cmd.report->add_option("--out", o.out, "Output directory")->required();

  cmd.synth = app.add_subcommand("synth", "Generate a planted synthetic corpus");
  cmd.synth->add_option("--spec", o.spec, "Planted spec (key=value)")->required();
  cmd.synth->add_option("--seed", o.seed, "Override the spec seed")->each([&](const std::string&) { o.seed_set = true; });
  cmd.synth->add_option("--out", o.out, "Canonical corpus CSV")->required();
  cmd.synth->add_option("--truth", o.truth, "Ground-truth CSV");

  cmd.run = app.add_subcommand("run", "Run every stage from raw corpus to report");
  add_input(cmd.run);
  cmd.run->add_option("--slices", o.slices, "Time slices for the growth curve")->capture_default_str();
  add_clustering(cmd.run);
  cmd.run->add_option("--continents", o.continents, "Country to continent table")->capture_default_str();
  cmd.run->add_option("--clu", o.clu, "Use this clustering instead of detecting one");
  cmd.run->add_option("--field", o.field, "Field name used in the report")->capture_default_str();
  cmd.run->add_flag("--resume", o.resume, "Reuse artifacts already present in the output directory");
  cmd.run->add_option("--out", o.out, "Output directory")->required();
  return cmd;
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::map<std::string, std::string> values;
  std::size_t number = 0;
  const std::string content = read_file(path);
  for (auto line : text::lines(content)) {
    ++number;
    auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string_view::npos) throw ParseError(path + ": expected key=value", number);
    std::string key(text::trim(t.substr(0, eq)));
    std::string value(text::trim(t.substr(eq + 1)));
    if (key.starts_with("--")) key.erase(0, 2);
    values[key] = value;
  }
  return values;
}

bool truthy(const std::string& v) {
  auto l = text::to_lower(v);
  if (l == "1" || l == "true" || l == "yes" || l == "on") return true;
  if (l == "0" || l == "false" || l == "no" || l == "off") return false;
  throw Error("expected a boolean, got '" + v + "'");
}

/// Command-line arguments for config keys the user did not give explicitly.
/// Keys that belong to another subcommand are ignored; unknown keys fail.
std::vector<std::string> config_arguments(CLI::App& app, CLI::App* selected,
                                          const std::map<std::string, std::string>& values) {
  std::vector<std::string> extra;
  for (const auto& [key, value] : values) {
    if (key == "config") throw Error("config files cannot include other config files");
    CLI::Option* opt = selected->get_option_no_throw("--" + key);
    if (!opt) opt = app.get_option_no_throw("--" + key);
    if (!opt) {
      bool known = false;
      for (auto* sub : app.get_subcommands({}))
        known = known || sub->get_option_no_throw("--" + key) != nullptr;
      if (!known) throw Error("unknown config key '" + key + "'");
      continue;
    }
    if (opt->count() > 0) continue;
    if (opt->get_expected_min() == 0) {
      if (truthy(value)) extra.push_back("--" + key);
    } else if (opt->get_expected_max() > 1) {
      for (auto& item : text::split(value, ',')) {
        extra.push_back("--" + key);
        extra.emplace_back(text::trim(item));
      }
    } else {
      extra.push_back("--" + key);
      extra.push_back(value);
    }
  }
  return extra;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  Options o;
  CLI::App app{"Co-author network analysis: research groups and their inter-group connections"};
  auto cmd = configure(app, o);
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (!o.config.empty()) {
      auto selected = app.get_subcommands().front();
      auto extra = config_arguments(app, selected, read_config(o.config));
      std::vector<std::string> full = args;
      full.insert(full.end(), extra.begin(), extra.end());
      o = Options{};
      CLI::App again{app.get_description()};
      cmd = configure(again, o);
      std::vector<std::string> rev(full.rbegin(), full.rend());
      again.parse(rev);
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  g_quiet = o.quiet;

  try {
    if (cmd.ingest->parsed()) return cmd_ingest(o);
    if (cmd.build->parsed()) return cmd_build(o);
    if (cmd.cluster->parsed()) return cmd_cluster(o);
    if (cmd.metrics->parsed()) return cmd_metrics(o);
    if (cmd.classify->parsed()) return cmd_classify(o);
    if (cmd.report->parsed()) return cmd_report(o);
    if (cmd.synth->parsed()) return cmd_synth(o);
    if (cmd.run->parsed()) return cmd_run(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
