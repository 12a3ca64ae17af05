// hgkit command line tool: ingestion, analysis and export as batch commands.
//
// Every command is a pure function from (options, input files) to
// (stdout text, output files). main() writes the results and a run manifest
// with SHA-256 digests; `replay` re-runs a manifest in memory and compares.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hgkit/hgkit.hpp"

#ifndef HGKIT_VERSION
#define HGKIT_VERSION "0.0.0"
#endif

namespace {

using namespace hgkit;

enum Exit : int {
  kOk = 0,
  kUsage = 2,
  kIo = 3,
  kFormat = 4,
  kIdentity = 5,
  kDomain = 6,
  kNumeric = 7,
  kReplayMismatch = 8,
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::string input;
  std::string format;  // input format, inferred from the extension when empty
  std::string to;
  std::string output;
  std::string manifest;
  std::string algo = "hyper-lp";
  std::vector<std::string> files;  // positional inputs of nmi / correlate
  std::uint64_t seed = 0;
  std::size_t max_iter = 100;
  std::size_t s = 1;
  std::vector<int> stars;
  std::optional<std::size_t> top_k;
  unsigned threads = 1;
  bool deterministic = false;
  bool full_precision = false;
};

struct Run {
  std::string out;                             // standard output
  std::map<std::string, std::string> files;    // path -> content
  std::vector<std::string> inputs;             // paths read
};

std::string sha256(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw IoError("sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned i = 0; i < len; ++i) {
    s += hex[md[i] >> 4];
    s += hex[md[i] & 15];
  }
  return s;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !out.write(data.data(), static_cast<std::streamsize>(data.size()))) {
    throw IoError("cannot write " + path);
  }
}

bool blank(std::string_view text) { return text.find_first_not_of(" \t\r\n") == std::string_view::npos; }

std::string ends(const std::string& path) {
  return std::filesystem::path(path).extension().string();
}

std::string input_format(const Options& o) {
  if (!o.format.empty()) return o.format;
  const auto ext = ends(o.input);
  if (ext == ".json") return "json";
  if (ext == ".csv") return "reviews-csv";
  return "hgf";
}

std::optional<std::set<int>> star_filter(const Options& o) {
  if (o.stars.empty()) return std::nullopt;
  return std::set<int>(o.stars.begin(), o.stars.end());
}

std::string real(double x, const Options& o) { return format_real(x, o.full_precision); }

// Reads the main input as a labeled hypergraph. A zero-byte (or blank) file
// is an empty hypergraph in every format.
LabeledHypergraph load(const Options& o, Run& run) {
  if (o.input.empty()) throw UsageError("--input is required");
  const std::string text = slurp(o.input);
  run.inputs.push_back(o.input);
  const auto fmt = input_format(o);
  LabeledHypergraph out;
  if (fmt == "reviews-csv") {
    if (blank(text)) return out;
    return build_from_reviews(parse_reviews_csv(text), star_filter(o));
  }
  if (fmt == "scenes-json") {
    if (blank(text)) return out;
    return build_from_scenes(parse_scenes_json(text));
  }
  if (fmt == "hgf") {
    if (!blank(text)) out.hypergraph = read_hgf(text);
  } else if (fmt == "json") {
    if (!blank(text)) out.hypergraph = read_json(text);
  } else {
    throw UsageError("unknown input format \"" + fmt + "\"");
  }
  out.vertex_labels = vertex_display_labels(out.hypergraph);
  return out;
}

void emit(const Options& o, Run& run, std::string data) {
  if (o.output.empty()) {
    run.out += data;
  } else {
    run.files[o.output] = std::move(data);
  }
}

template <class Map>
std::string histogram(const Map& counts) {
  std::string s;
  for (const auto& [value, count] : counts) s += " " + std::to_string(value) + ":" + std::to_string(count);
  return s;
}

void cmd_stats(const Options& o, Run& run) {
  const auto h = load(o, run).hypergraph;
  const auto summary = degree_summary(h);
  std::map<std::size_t, std::size_t> degrees;
  for (auto d : summary.degrees) ++degrees[d];
  const auto comps = connected_components(h);
  std::vector<std::size_t> sizes;
  for (const auto& c : comps) sizes.push_back(c.size());
  std::sort(sizes.rbegin(), sizes.rend());

  std::string r;
  r += "vertices " + std::to_string(h.nhv()) + "\n";
  r += "hyperedges " + std::to_string(h.nhe()) + "\n";
  r += "incidences " + std::to_string(h.incidence_count()) + "\n";
  r += "hyperedge_sizes" + histogram(summary.sizes) + "\n";
  r += "vertex_degrees" + histogram(degrees) + "\n";
  r += "components " + std::to_string(comps.size()) + "\n";
  r += "component_sizes";
  for (auto s : sizes) r += " " + std::to_string(s);
  r += "\n";
  emit(o, run, r);
}

void cmd_convert(const Options& o, Run& run) {
  const auto d = load(o, run);
  const auto& h = d.hypergraph;
  if (o.to == "hgf") {
    emit(o, run, write_hgf(h));
  } else if (o.to == "json") {
    emit(o, run, write_json(h));
  } else if (o.to == "dot-bipartite") {
    emit(o, run, write_dot(materialize(BipartiteView(h)), h.nhv()));
  } else if (o.to == "dot-twosection") {
    emit(o, run, write_dot(materialize(TwoSectionView(h))));
  } else {
    throw UsageError("unknown output format \"" + o.to + "\"");
  }
}

void cmd_communities(const Options& o, Run& run) {
  const auto h = load(o, run).hypergraph;
  const LpConfig cfg{o.max_iter, o.seed};
  LpResult r;
  std::optional<double> q;
  try {
    if (o.algo == "hyper-lp") {
      r = hypergraph_label_propagation(h, cfg);
      if (h.nhv() > 0) q = hypergraph_modularity(h, r.partition);
    } else if (o.algo == "graph-lp") {
      const TwoSectionView view(h);
      r = graph_label_propagation(view, cfg);
      if (h.nhv() > 0) q = graph_modularity(view, r.partition);
    } else {
      throw UsageError("unknown algorithm \"" + o.algo + "\"");
    }
  } catch (const Error& e) {
    // no usable hyperedges or edges: the partition still stands
    if (e.family() != ErrorFamily::Numeric) throw;
  }
  const bool csv = ends(o.output) == ".csv";
  emit(o, run, csv ? write_partition_csv(r.partition) : write_partition_json(r.partition));
  std::string report = "communities " + std::to_string(r.partition.community_count()) + "\n";
  report += "modularity " + (q ? real(*q, o) : std::string("undefined")) + "\n";
  report += "iterations " + std::to_string(r.iterations) + "\n";
  if (o.output.empty()) {
    std::cerr << report;
  } else {
    run.out += report;
  }
}

std::pair<std::string, std::string> two_files(const Options& o, Run& run) {
  if (o.files.size() != 2) throw UsageError(o.command + " takes exactly two files");
  auto a = slurp(o.files[0]);
  auto b = slurp(o.files[1]);
  run.inputs.push_back(o.files[0]);
  run.inputs.push_back(o.files[1]);
  return {std::move(a), std::move(b)};
}

void cmd_nmi(const Options& o, Run& run) {
  const auto [a, b] = two_files(o, run);
  const auto x = read_partition(a);
  const auto y = read_partition(b);
  std::set<std::size_t> dx, dy;
  for (const auto& [v, l] : x) dx.insert(v);
  for (const auto& [v, l] : y) dy.insert(v);
  if (dx != dy) throw Error(ErrorCode::DomainMismatch, "partitions cover different vertex sets");
  emit(o, run, real(nmi(to_partition(x), to_partition(y)), o) + "\n");
}

void cmd_betweenness(const Options& o, Run& run) {
  const auto d = load(o, run);
  const BetweennessOptions opts{std::max(1u, o.threads), o.deterministic || o.threads <= 1};
  const auto scores = s_betweenness(d.hypergraph, o.s, opts);
  emit(o, run, write_centrality_csv(scores, d.vertex_labels, o.top_k, o.full_precision));
}

void cmd_forecast(const Options& o, Run& run) {
  if (o.input.empty()) throw UsageError("--input is required");
  const std::string text = slurp(o.input);
  run.inputs.push_back(o.input);
  const auto records = blank(text) ? std::vector<ReviewRecord>{} : parse_reviews_csv(text);
  const auto d = build_from_reviews(records, star_filter(o));

  // ground truth: mean stars of each item over all of its reviews
  const auto all = build_from_reviews(records);
  const auto means = item_ratings(records);
  std::map<std::string, double> by_item;
  for (std::size_t i = 0; i < all.vertex_labels.size(); ++i) by_item[all.vertex_labels[i]] = means.values()[i];
  std::vector<double> truth;
  for (const auto& label : d.vertex_labels) truth.push_back(by_item.at(label));
  const RatingTable ratings(truth);

  const auto p1 = forecast_hypergraph(d.hypergraph, ratings);
  const auto p2 = forecast_graph(TwoSectionView(d.hypergraph), ratings);
  std::string csv = "vertex,label,true_stars,pred_hyper,pred_graph\n";
  for (std::size_t i = 0; i < truth.size(); ++i) {
    csv += std::to_string(i + 1) + "," + d.vertex_labels[i] + "," + real(truth[i], o) + ",";
    csv += (p1[i] ? real(*p1[i], o) : "") + "," + (p2[i] ? real(*p2[i], o) : "") + "\n";
  }
  const auto e1 = average_error(p1, ratings);
  const auto e2 = average_error(p2, ratings);
  emit(o, run, csv);
  std::string summary = "err_hyper " + real(e1.mean_absolute_error, o) + " evaluated " +
                        std::to_string(e1.evaluated) + "\n";
  summary += "err_graph " + real(e2.mean_absolute_error, o) + " evaluated " + std::to_string(e2.evaluated) + "\n";
  if (o.output.empty()) {
    std::cerr << summary;
  } else {
    run.out += summary;
  }
}

void cmd_correlate(const Options& o, Run& run) {
  const auto [a, b] = two_files(o, run);
  const auto x = read_centrality_csv(a);
  const auto y = read_centrality_csv(b);
  std::vector<double> xs, ys;
  for (const auto& [v, score] : x) {
    const auto it = y.find(v);
    if (it == y.end()) throw Error(ErrorCode::DomainMismatch, "vertex " + std::to_string(v) + " missing");
    xs.push_back(score);
    ys.push_back(it->second);
  }
  if (x.size() != y.size()) throw Error(ErrorCode::DomainMismatch, "score files cover different vertices");
  emit(o, run, real(pearson(CentralityVector(xs), CentralityVector(ys)), o) + "\n");
}

Run execute(const Options& o) {
  Run run;
  if (o.command == "stats") cmd_stats(o, run);
  else if (o.command == "convert") cmd_convert(o, run);
  else if (o.command == "communities") cmd_communities(o, run);
  else if (o.command == "nmi") cmd_nmi(o, run);
  else if (o.command == "betweenness") cmd_betweenness(o, run);
  else if (o.command == "forecast") cmd_forecast(o, run);
  else if (o.command == "correlate") cmd_correlate(o, run);
  else throw UsageError("no command given");
  return run;
}

// ---------------------------------------------------------------------------
// argument parsing

struct Cli {
  CLI::App app{"hgkit: hypergraph analytics", "hgkit"};
  Options o;
  std::string replay_manifest;

  Cli() {
    app.require_subcommand(1);
    const std::set<std::string> inputs{"hgf", "json", "reviews-csv", "scenes-json"};

    auto input = [&](CLI::App* c) {
      c->add_option("--input,-i", o.input, "input file")->required();
      c->add_option("--format", o.format, "hgf|json|reviews-csv|scenes-json (default: by extension)")
          ->check(CLI::IsMember(inputs));
      c->add_option("--stars", o.stars, "keep reviews with these star values")->delimiter(',');
    };
    auto common = [&](CLI::App* c) {
      c->add_option("--output,-o", o.output, "output file (default: standard output)");
      c->add_option("--manifest", o.manifest, "manifest path (default: <output>.manifest.json)");
      c->add_flag("--full-precision", o.full_precision, "17 significant digits instead of 6");
    };

    auto* stats = app.add_subcommand("stats", "sizes, histograms and components");
    input(stats);
    common(stats);

    auto* convert = app.add_subcommand("convert", "change format");
    input(convert);
    convert->add_option("--from", o.format, "alias of --format")->check(CLI::IsMember(inputs));
    convert->add_option("--to", o.to, "hgf|json|dot-bipartite|dot-twosection")
        ->required()
        ->check(CLI::IsMember({"hgf", "json", "dot-bipartite", "dot-twosection"}));
    common(convert);

    auto* comm = app.add_subcommand("communities", "label propagation");
    input(comm);
    comm->add_option("--algo", o.algo, "hyper-lp|graph-lp")->check(CLI::IsMember({"hyper-lp", "graph-lp"}));
    comm->add_option("--seed", o.seed);
    comm->add_option("--max-iter", o.max_iter)->check(CLI::PositiveNumber);
    common(comm);

    auto* nmi_cmd = app.add_subcommand("nmi", "compare two partition files");
    nmi_cmd->add_option("files", o.files, "two partition files")->required()->expected(2);
    common(nmi_cmd);

    auto* btw = app.add_subcommand("betweenness", "s-betweenness centrality CSV");
    input(btw);
    btw->add_option("--s", o.s)->check(CLI::PositiveNumber);
    btw->add_option("--top-k", o.top_k);
    btw->add_option("--threads", o.threads);
    btw->add_flag("--deterministic", o.deterministic, "fixed summation order across thread counts");
    common(btw);

    auto* fc = app.add_subcommand("forecast", "star forecast from a reviews CSV");
    fc->add_option("--input,-i", o.input, "reviews CSV")->required();
    fc->add_option("--stars", o.stars, "keep reviews with these star values")->delimiter(',');
    common(fc);

    auto* corr = app.add_subcommand("correlate", "Pearson correlation of two score CSVs");
    corr->add_option("files", o.files, "two centrality CSVs")->required()->expected(2);
    common(corr);

    auto* replay = app.add_subcommand("replay", "re-run a manifest and compare digests");
    replay->add_option("manifest", replay_manifest)->required();
  }

  void parse(std::vector<std::string> args) {
    std::reverse(args.begin(), args.end());
    app.parse(args);
    for (auto* sub : app.get_subcommands()) o.command = sub->get_name();
  }
};

nlohmann::json parameters(const Options& o) {
  nlohmann::json p;
  p["format"] = input_format(o);
  p["seed"] = o.seed;
  p["max_iterations"] = o.max_iter;
  p["s"] = o.s;
  p["star_filter"] = o.stars;
  p["top_k"] = o.top_k ? nlohmann::json(*o.top_k) : nlohmann::json();
  p["algo"] = o.algo;
  p["to"] = o.to;
  p["deterministic"] = o.deterministic;
  p["full_precision"] = o.full_precision;
  return p;
}

nlohmann::json digests(const Run& run) {
  nlohmann::json outs = nlohmann::json::array();
  outs.push_back({{"path", "-"}, {"sha256", sha256(run.out)}});
  for (const auto& [path, data] : run.files) outs.push_back({{"path", path}, {"sha256", sha256(data)}});
  return outs;
}

int replay(const std::string& path) {
  nlohmann::json m;
  try {
    m = nlohmann::json::parse(slurp(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SchemaViolation, std::string("manifest: ") + e.what());
  }
  if (!m.contains("argv") || !m["argv"].is_array()) throw Error(ErrorCode::SchemaViolation, "manifest has no argv");
  if (m.value("version", "") != HGKIT_VERSION) {
    std::cerr << "warning: manifest written by version " << m.value("version", "?") << "\n";
  }

  int status = kOk;
  for (const auto& in : m.value("inputs", nlohmann::json::array())) {
    const auto p = in.at("path").get<std::string>();
    if (sha256(slurp(p)) != in.at("sha256").get<std::string>()) {
      std::cerr << "input changed: " << p << "\n";
      status = kReplayMismatch;
    }
  }
  if (status != kOk) return status;

  Cli cli;
  cli.parse(m["argv"].get<std::vector<std::string>>());
  const auto fresh = digests(execute(cli.o));
  if (fresh != m.value("outputs", nlohmann::json::array())) {
    std::cerr << "outputs differ from manifest\n";
    return kReplayMismatch;
  }
  std::cout << "replay ok\n";
  return kOk;
}

int exit_code(ErrorFamily f) {
  switch (f) {
    case ErrorFamily::Identity: return kIdentity;
    case ErrorFamily::Format: return kFormat;
    case ErrorFamily::Domain: return kDomain;
    case ErrorFamily::Numeric: return kNumeric;
  }
  return kFormat;
}

int run_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  Cli cli;
  try {
    cli.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return cli.app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return cli.app.exit(e);
  } catch (const CLI::ParseError& e) {
    cli.app.exit(e);
    return kUsage;
  }
  if (cli.o.command == "replay") return replay(cli.replay_manifest);

  const auto run = execute(cli.o);
  for (const auto& [path, data] : run.files) spill(path, data);
  std::cout << run.out << std::flush;

  std::string mpath = cli.o.manifest;
  if (mpath.empty() && !cli.o.output.empty()) mpath = cli.o.output + ".manifest.json";
  if (!mpath.empty()) {
    nlohmann::json m;
    m["tool"] = "hgkit";
    m["version"] = HGKIT_VERSION;
    m["command"] = cli.o.command;
    m["argv"] = args;
    m["parameters"] = parameters(cli.o);
    m["inputs"] = nlohmann::json::array();
    for (const auto& p : run.inputs) m["inputs"].push_back({{"path", p}, {"sha256", sha256(slurp(p))}});
    m["outputs"] = digests(run);
    spill(mpath, m.dump(2) + "\n");
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_main(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code(e.family());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
}
