// portline: layered drawings of port graphs from plan files.
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "portline/generator.hpp"
#include "portline/io.hpp"
#include "portline/metrics.hpp"
#include "portline/pipeline.hpp"

namespace fs = std::filesystem;
using namespace portline;

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PORTLINE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring PORTLINE_SEED='" << env << "'\n";
    }
  }
  return 1;
}

struct PipelineFlags {
  std::string orient = "fd";
  std::string cross = "ports";
  std::string sink = "relpos";
  int fd_iterations = 500;
  int fd_restarts = 1;
  int reps = 1;
  double delta = 8;
  double break_multiple = 16;
  int runs = 1;
  std::uint64_t seed = 1;
  std::string timing = "on";

  void add(CLI::App& app, int default_runs) {
    runs = default_runs;
    seed = default_seed();
    app.add_option("--orient", orient, "edge orientation")->check(CLI::IsMember({"fd", "bfs", "rand"}));
    app.add_option("--fd-iterations", fd_iterations, "spring embedder iterations")->check(CLI::PositiveNumber);
    app.add_option("--fd-restarts", fd_restarts, "spring embedder restarts")->check(CLI::PositiveNumber);
    app.add_option("--cross", cross, "crossing minimization granularity")
        ->check(CLI::IsMember({"vertices", "ports", "mixed"}));
    app.add_option("--sink", sink, "handling of local sources and sinks")
        ->check(CLI::IsMember({"pseudo", "opposite", "relpos"}));
    app.add_option("--reps", reps, "crossing minimization repetitions")->check(CLI::PositiveNumber);
    app.add_option("--min-port-distance", delta, "port pitch and line distance")->check(CLI::PositiveNumber);
    app.add_option("--break-threshold-multiple", break_multiple, "break blocks at gaps above M times the pitch")
        ->check(CLI::PositiveNumber);
    app.add_option("--runs", runs, "seeded runs per plan, best kept")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "base seed (default: PORTLINE_SEED or 1)");
    app.add_option("--timing", timing, "record wall-clock time in CSV output")->check(CLI::IsMember({"on", "off"}));
  }

  PipelineConfig config() const {
    PipelineConfig c;
    c.orient = *orient_method_from_string(orient);
    c.fd.iterations = fd_iterations;
    c.fd.restarts = fd_restarts;
    c.sweep.granularity = *granularity_from_string(cross);
    c.sweep.sink = *sink_strategy_from_string(sink);
    c.sweep.repetitions = reps;
    c.coords.delta = delta;
    c.coords.break_multiple = break_multiple;
    c.routing.delta = delta;
    c.runs = runs;
    c.seed = seed;
    return c;
  }
};

std::vector<fs::path> plan_files(const std::string& dir) {
  std::vector<fs::path> out;
  if (fs::is_regular_file(dir)) return {fs::path(dir)};
  if (!fs::is_directory(dir)) throw std::runtime_error("no such corpus '" + dir + "'");
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  if (out.empty()) throw std::runtime_error("corpus '" + dir + "' has no .json plans");
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

io::NormalizedPlan load(const fs::path& path, bool quiet) {
  auto plan = io::normalize(io::read_plan_file(path.string()));
  if (!quiet)
    for (const auto& w : plan.warnings) std::cerr << path.filename().string() << ": " << w << "\n";
  return plan;
}

void print_violations(const std::vector<Violation>& violations) {
  for (const auto& v : violations) {
    std::cerr << "violation: " << v.rule;
    for (const auto& e : v.elements) std::cerr << " " << e;
    std::cerr << "\n";
  }
}

int cmd_layout(const std::string& plan_path, const PipelineFlags& flags, const std::string& svg_path,
               const std::string& csv_path, bool quiet) {
  const auto plan = load(plan_path, quiet);
  const auto config = flags.config();
  const auto result = run_layout(plan, config);
  if (!quiet)
    for (const auto& line : result.best.log) std::cerr << "repair: " << line << "\n";
  const auto violations = validate_drawing(result.best.drawing, result.best.graph);
  print_violations(violations);
  if (!svg_path.empty()) write_text(svg_path, io::emit_svg(result.display).text);
  if (!csv_path.empty()) {
    std::string csv = csv_header();
    const std::string instance = fs::path(plan_path).stem().string();
    for (std::size_t r = 0; r < result.runs.size(); ++r) {
      auto m = result.runs[r];
      if (flags.timing == "off") m.elapsed_ms = 0;
      csv += csv_row({instance, variant_name(config), config.seed + r, m});
    }
    write_text(csv_path, csv);
  }
  if (!quiet) {
    const auto& m = result.best.metrics;
    std::fprintf(stderr, "crossings %zu, bends %zu, %.1f x %.1f (seed %llu)\n", m.crossings, m.bends, m.width,
                 m.height, static_cast<unsigned long long>(result.best.seed));
  }
  return violations.empty() ? 0 : 2;
}

std::vector<io::RawPlan> read_corpus(const std::string& dir, std::vector<std::string>* names = nullptr) {
  std::vector<io::RawPlan> plans;
  for (const auto& f : plan_files(dir)) {
    plans.push_back(io::read_plan_file(f.string()));
    if (names) names->push_back(f.stem().string());
  }
  return plans;
}

std::string stats_table(const gen::CorpusStats& s) {
  std::ostringstream out;
  out << "| feature | mean | std |\n|---|---|---|\n";
  auto row = [&](const char* name, const gen::FeatureStat& f) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "| %s | %.3f | %.3f |\n", name, f.mean, f.std);
    out << buf;
  };
  row("vertex groups", s.vertex_groups);
  row("vertices", s.vertices);
  row("ports", s.ports);
  row("port pairings", s.pairings);
  row("edges", s.edges);
  row("self loops", s.self_loops);
  row("parallel edge mean", s.parallel_edge_mean);
  row("connected ports", s.connected_ports);
  row("diameter", s.diameter);
  auto dist = [&](const char* name, const gen::Distribution& d) {
    out << name << ":";
    for (const auto& [k, p] : d) {
      char buf[64];
      std::snprintf(buf, sizeof buf, " %d=%.3f", k, p);
      out << buf;
    }
    out << "\n";
  };
  out << "\n";
  dist("ports per edge", s.ports_per_edge);
  dist("edges per port", s.edges_per_port);
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Layered drawings of port graphs with port groups and pairings"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "suppress warnings and repair notes");

  auto* layout = app.add_subcommand("layout", "draw one plan");
  PipelineFlags layout_flags;
  layout_flags.add(*layout, 1);
  std::string plan_path, svg_path, csv_path;
  layout->add_option("plan", plan_path, "plan file")->required()->check(CLI::ExistingFile);
  layout->add_option("-o,--svg", svg_path, "SVG output ('-' for stdout)");
  layout->add_option("--csv", csv_path, "metrics CSV output, one row per run ('-' for stdout)");

  auto* stats = app.add_subcommand("stats", "corpus statistics");
  std::string stats_corpus, compare_corpus;
  double band = 0.1;
  stats->add_option("--corpus", stats_corpus, "directory of plans")->required();
  stats->add_option("--compare", compare_corpus, "second corpus for a similarity report");
  stats->add_option("--band", band, "flag relative deviations above this");

  auto* generate = app.add_subcommand("generate", "pseudo plans from a corpus");
  std::string gen_corpus, gen_out;
  int per_plan = 3;
  gen::GenConfig gen_config;
  gen_config.seed = default_seed();
  generate->add_option("--corpus", gen_corpus, "directory of source plans")->required();
  generate->add_option("--out", gen_out, "output directory")->required();
  generate->add_option("--per-plan", per_plan, "pseudo plans per source")->check(CLI::PositiveNumber);
  generate->add_option("--q", gen_config.q, "fraction of elements replaced")->check(CLI::Range(0.0, 1.0));
  generate->add_option("--c", gen_config.candidates, "candidate endpoint sets per edge")->check(CLI::PositiveNumber);
  generate->add_option("--std-scale", gen_config.std_scale, "divisor constant for target deviations")
      ->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen_config.seed, "seed (default: PORTLINE_SEED or 1)");

  auto* synth = app.add_subcommand("synth", "synthetic source plans");
  std::string synth_out;
  int synth_count = 10;
  std::uint64_t synth_seed = default_seed();
  gen::SynthConfig synth_config;
  synth->add_option("--out", synth_out, "output directory")->required();
  synth->add_option("--count", synth_count, "number of plans")->check(CLI::PositiveNumber);
  synth->add_option("--seed", synth_seed, "seed (default: PORTLINE_SEED or 1)");
  synth->add_option("--min-vertices", synth_config.min_vertices)->check(CLI::PositiveNumber);
  synth->add_option("--max-vertices", synth_config.max_vertices)->check(CLI::PositiveNumber);

  auto* bench = app.add_subcommand("bench", "variant comparison over a corpus");
  PipelineFlags bench_flags;
  bench_flags.add(*bench, 10);
  std::string bench_corpus, bench_csv, bench_table = "-", baseline;
  std::vector<std::string> variants;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  bench->add_option("--corpus", bench_corpus, "directory of plans")->required();
  bench->add_option("--variants", variants, "orient/cross/sink names, e.g. rand/ports/relpos")->delimiter(',');
  bench->add_option("--baseline", baseline, "variant all ratios refer to (default: the first)");
  bench->add_option("--jobs", jobs, "plans processed concurrently")->check(CLI::PositiveNumber);
  bench->add_option("--csv", bench_csv, "per-run CSV output ('-' for stdout)");
  bench->add_option("--table", bench_table, "mu/beta Markdown table output ('-' for stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*layout) return cmd_layout(plan_path, layout_flags, svg_path, csv_path, quiet);

    if (*stats) {
      const auto original = gen::corpus_stats(read_corpus(stats_corpus));
      std::cout << stats_table(original);
      if (!compare_corpus.empty()) {
        const auto other = gen::corpus_stats(read_corpus(compare_corpus));
        std::cout << "\n" << gen::format_report(gen::similarity_report(original, other, band));
      }
      return 0;
    }

    if (*generate) {
      std::vector<std::string> names;
      const auto sources = read_corpus(gen_corpus, &names);
      const auto corpus = gen::corpus_stats(sources);
      fs::create_directories(gen_out);
      int bad = 0;
      for (std::size_t i = 0; i < sources.size(); ++i) {
        for (int k = 0; k < per_plan; ++k) {
          const auto variant = static_cast<std::uint64_t>(i) * 1000 + static_cast<std::uint64_t>(k);
          auto out = gen::generate(sources[i], corpus, gen_config, variant);
          const std::string name = names[i] + "-pseudo" + std::to_string(k);
          if (!quiet)
            for (const auto& w : out.warnings) std::cerr << name << ": " << w << "\n";
          const auto norm = io::normalize(out.plan);
          if (!validate(norm.graph).empty()) {
            std::cerr << name << ": generated plan does not normalize to a valid graph\n";
            ++bad;
          }
          io::write_plan_file((fs::path(gen_out) / (name + ".json")).string(), out.plan);
        }
      }
      return bad ? 2 : 0;
    }

    if (*synth) {
      if (synth_config.max_vertices < synth_config.min_vertices) throw std::runtime_error("max below min vertices");
      fs::create_directories(synth_out);
      for (int k = 0; k < synth_count; ++k) {
        char name[32];
        std::snprintf(name, sizeof name, "plan%03d.json", k);
        io::write_plan_file((fs::path(synth_out) / name).string(),
                            gen::synthesize_plan(synth_config, synth_seed + static_cast<std::uint64_t>(k)));
      }
      return 0;
    }

    if (*bench) {
      std::vector<BenchInstance> instances;
      for (const auto& f : plan_files(bench_corpus)) instances.push_back({f.stem().string(), load(f, quiet)});
      if (variants.empty()) variants = {"fd/ports/relpos", "bfs/ports/relpos", "rand/ports/relpos"};
      std::vector<PipelineConfig> configs;
      for (const auto& v : variants) {
        PipelineConfig c = bench_flags.config();
        if (!apply_variant(c, v)) throw std::runtime_error("malformed variant '" + v + "'");
        configs.push_back(c);
      }
      if (baseline.empty()) baseline = variant_name(configs.front());
      auto outcome = run_bench(instances, configs, jobs);
      if (bench_flags.timing == "off")
        for (auto& r : outcome.runs) r.metrics.elapsed_ms = 0;
      for (const auto& v : outcome.violations) std::cerr << "violation: " << v << "\n";
      std::vector<std::string> names;
      for (const auto& c : configs) names.push_back(variant_name(c));
      if (!bench_csv.empty()) {
        std::string csv = csv_header();
        for (const auto& r : outcome.runs) csv += csv_row(r);
        write_text(bench_csv, csv);
      }
      if (!bench_table.empty()) write_text(bench_table, markdown_table(aggregate(outcome.runs, baseline), names));
      return outcome.violations.empty() ? 0 : 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
