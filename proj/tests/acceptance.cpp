// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number
// of failed criteria. Tolerances are the constants below.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "portline/generator.hpp"
#include "portline/io.hpp"
#include "portline/metrics.hpp"
#include "portline/pipeline.hpp"

using namespace portline;

namespace {

constexpr int kDagCount = 200;
constexpr std::size_t kDagMaxVertices = 8, kDagMaxArcs = 14;
constexpr double kDagSeconds = 10;

constexpr int kSources = 40;
constexpr int kPerSource = 3;
constexpr std::size_t kBenchPlans = 100;
constexpr int kBenchRuns = 10;
constexpr double kMinVertices = 40, kMaxVertices = 150;

constexpr double kFdOverRand = 0.85;
constexpr double kBfsOverRand = 0.90;
constexpr double kRelposOverPseudo = 0.90;
constexpr double kVertexMeanBand = 0.10;
constexpr double kReplaced = 0.05;
constexpr double kMedianMs = 2000;

constexpr int kLineInstances = 2000;

int failures = 0;

void report(int criterion, bool ok, const std::string& what) {
  std::printf("criterion %d %s: %s\n", criterion, ok ? "PASS" : "FAIL", what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void layering_optimality() {
  Rng rng(2024);
  int optimal = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < kDagCount; ++i) {
    const std::size_t n = 2 + rng.index(kDagMaxVertices - 1);
    const std::size_t extra = rng.index(kDagMaxArcs - (n - 1) + 1);
    const auto arcs = oracle::random_dag(n, extra, rng);
    const auto r = assign_layers(n, arcs);
    if (respects_arcs(r.layering, arcs) && total_span(r.layering, arcs) == oracle::min_total_span(n, arcs)) ++optimal;
  }
  const double s = seconds_since(t0);
  report(1, optimal == kDagCount && s < kDagSeconds,
         fmt("%.0f/%.0f layerings optimal, %.2f s including the exhaustive oracle (limit %.0f s)", optimal, kDagCount, s,
             kDagSeconds));
}

struct Corpus {
  std::vector<io::RawPlan> sources;
  std::vector<io::RawPlan> generated;
  std::vector<std::string> names;
};

Corpus build_corpus() {
  Corpus c;
  for (int i = 0; i < kSources; ++i)
    c.sources.push_back(gen::synthesize_plan(gen::SynthConfig{}, 1000 + static_cast<std::uint64_t>(i)));
  const auto stats = gen::corpus_stats(c.sources);
  gen::GenConfig cfg;
  for (int i = 0; i < kSources; ++i)
    for (int k = 0; k < kPerSource; ++k) {
      c.generated.push_back(gen::generate(c.sources[static_cast<std::size_t>(i)], stats, cfg,
                                          static_cast<std::uint64_t>(i) * 1000 + static_cast<std::uint64_t>(k))
                                .plan);
      char name[64];
      std::snprintf(name, sizeof name, "src%02d-pseudo%d", i, k);
      c.names.emplace_back(name);
    }
  return c;
}

void generator_fidelity(const Corpus& c) {
  const auto src = gen::corpus_stats(c.sources);
  const auto out = gen::corpus_stats(c.generated);
  double worst = 1;
  std::size_t per = 0;
  for (std::size_t i = 0; i < c.generated.size(); ++i) {
    worst = std::min(worst, gen::replaced_fraction(c.sources[i / kPerSource], c.generated[i]));
    ++per;
  }
  const double dev = std::abs(out.vertices.mean - src.vertices.mean) / src.vertices.mean;
  report(7, dev <= kVertexMeanBand && worst >= kReplaced && per == static_cast<std::size_t>(kSources * kPerSource),
         fmt("vertex mean %.2f vs source %.2f (%.1f%%, limit 10%%); least replaced fraction %.3f (limit 0.05)",
             out.vertices.mean, src.vertices.mean, 100 * dev, worst));
}

std::vector<BenchInstance> bench_instances(const Corpus& c) {
  std::vector<BenchInstance> out;
  for (std::size_t i = 0; i < c.generated.size() && out.size() < kBenchPlans; ++i) {
    auto plan = io::normalize(c.generated[i]);
    const double n = static_cast<double>(plan.graph.vertex_count());
    if (n < kMinVertices || n > kMaxVertices || !validate(plan.graph).empty()) continue;
    out.push_back({c.names[i], std::move(plan)});
  }
  return out;
}

void drawing_criteria(const std::vector<BenchInstance>& inst) {
  const std::vector<std::string> names{"fd/ports/relpos", "rand/ports/relpos", "bfs/ports/relpos", "fd/ports/pseudo"};
  std::vector<PipelineConfig> variants;
  for (const auto& n : names) {
    PipelineConfig cfg;
    apply_variant(cfg, n);
    cfg.runs = kBenchRuns;
    variants.push_back(cfg);
  }
  const int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const auto t0 = std::chrono::steady_clock::now();
  const auto outcome = run_bench(inst, variants, jobs);
  const double wall = seconds_since(t0);

  for (std::size_t i = 0; i < std::min<std::size_t>(outcome.violations.size(), 5); ++i)
    std::printf("  violation: %s\n", outcome.violations[i].c_str());
  report(2, inst.size() >= kBenchPlans && outcome.violations.empty(),
         fmt("%.0f plans x %.0f variants x %.0f runs, %.0f violations", static_cast<double>(inst.size()),
             static_cast<double>(variants.size()), kBenchRuns, static_cast<double>(outcome.violations.size())));

  const auto vs_rand = aggregate(outcome.runs, "rand/ports/relpos");
  const double fd = vs_rand.at("fd/ports/relpos").at(Metric::Crossings).mu;
  const double bfs = vs_rand.at("bfs/ports/relpos").at(Metric::Crossings).mu;
  report(5, inst.size() >= kBenchPlans && fd <= kFdOverRand && bfs <= kBfsOverRand,
         fmt("best-crossings ratio FD/Rand %.3f (limit %.2f), BFS/Rand %.3f (limit %.2f)", fd, kFdOverRand, bfs,
             kBfsOverRand));

  const auto vs_pseudo = aggregate(outcome.runs, "fd/ports/pseudo");
  const double rel = vs_pseudo.at("fd/ports/relpos").at(Metric::Crossings).mu;
  double sum_rel = 0, sum_pseudo = 0;  // ratio of the mean best values, for the log
  {
    std::map<std::pair<std::string, std::string>, double> best;
    for (const auto& r : outcome.runs) {
      auto key = std::pair{r.instance, r.variant};
      const double v = static_cast<double>(r.metrics.crossings);
      if (!best.count(key) || v < best[key]) best[key] = v;
    }
    for (const auto& [key, v] : best) {
      if (key.second == "fd/ports/relpos") sum_rel += v;
      if (key.second == "fd/ports/pseudo") sum_pseudo += v;
    }
  }
  report(6, rel <= kRelposOverPseudo,
         fmt("best-crossings ratio RelPos/PseudoBC %.3f (limit %.2f); ratio of mean best crossings %.3f", rel,
             kRelposOverPseudo, sum_pseudo > 0 ? sum_rel / sum_pseudo : 1));

  // Per plan: mean run time of the default variant; then the median over plans.
  std::map<std::string, std::pair<double, int>> per_plan;
  for (const auto& r : outcome.runs)
    if (r.variant == "fd/ports/relpos") {
      auto& [sum, n] = per_plan[r.instance];
      sum += r.metrics.elapsed_ms;
      ++n;
    }
  std::vector<double> ms;
  for (const auto& [name, sn] : per_plan) ms.push_back(sn.first / sn.second);
  std::sort(ms.begin(), ms.end());
  const double median = ms.empty() ? 0 : ms[ms.size() / 2];
  report(9, !ms.empty() && median <= kMedianMs,
         fmt("median %.1f ms per run (slowest plan %.1f ms, limit %.0f ms); bench wall time %.0f s", median,
             ms.empty() ? 0 : ms.back(), kMedianMs, wall));
}

void crossing_consistency(const std::vector<BenchInstance>& inst) {
  std::size_t checked = 0, equal = 0;
  for (const auto& bi : inst) {
    PipelineConfig cfg;
    const auto run = run_once(bi.plan.graph, cfg, 1);
    ++checked;
    if (measure(run.drawing).crossings == naive_crossings(run.drawing)) ++equal;
  }
  // Hand-built drawing with one proper crossing and touching ends.
  Drawing d;
  d.edges.push_back({"e1", "", "", {{-5, 0}, {0, 0}, {0, 10}, {10, 10}}});
  d.edges.push_back({"e2", "", "", {{5, 5}, {5, 15}, {15, 15}, {15, 20}}});
  d.edges.push_back({"e3", "", "", {{10, 10}, {10, 30}}});
  ++checked;
  if (measure(d).crossings == naive_crossings(d) && naive_crossings(d) == 2) ++equal;
  report(3, checked == equal, fmt("%.0f/%.0f drawings agree with the pairwise oracle", equal, checked));
}

void line_assignment() {
  Rng rng(77);
  int single = 0, single_ok = 0, combined = 0, combined_ok = 0;
  for (int i = 0; i < kLineInstances; ++i) {
    oracle::Boundaries b(rng);
    std::vector<BandPiece> pieces;
    const Band band = rng.uniform() < 0.5 ? Band::Right : Band::Left;
    for (std::size_t k = 1 + rng.index(6); k-- > 0;)
      if (auto p = oracle::random_piece(band, b, rng)) pieces.push_back(*p);
    const int opt = oracle::min_lines(pieces);
    const auto t = greedy_band_lines(pieces);
    const int got = t.empty() ? 0 : *std::max_element(t.begin(), t.end()) + 1;
    ++single;
    if (got == opt) ++single_ok;
  }
  for (int i = 0; i < kLineInstances; ++i) {
    oracle::Boundaries b(rng);
    std::vector<BandPiece> pieces;
    for (std::size_t k = 2 + rng.index(5); k-- > 0;) {
      const Band band = std::array{Band::Right, Band::Left, Band::Cap, Band::Cup}[rng.index(4)];
      if (auto p = oracle::random_piece(band, b, rng)) pieces.push_back(*p);
    }
    const auto la = assign_lines(pieces, 8);
    const int opt = oracle::min_lines(pieces);
    if (opt < 0) continue;  // needs the detour line; no plain optimum to compare with
    ++combined;
    if (lines_valid(pieces, la) && la.line_count <= 2 * opt) ++combined_ok;
  }
  report(4, single == single_ok && combined == combined_ok,
         fmt("single direction optimal %.0f/%.0f; combined valid and within 2x optimum %.0f/%.0f", single_ok, single,
             combined_ok, combined));
}

void determinism(const std::vector<BenchInstance>& inst) {
  auto once = [&](const BenchInstance& bi) {
    PipelineConfig cfg;
    cfg.runs = 3;
    cfg.seed = 5;
    const auto lr = run_layout(bi.plan, cfg);
    std::string csv = csv_header();
    for (std::size_t k = 0; k < lr.runs.size(); ++k) {
      RunRecord r{bi.name, variant_name(cfg), cfg.seed + k, lr.runs[k]};
      r.metrics.elapsed_ms = 0;
      csv += csv_row(r);
    }
    return std::pair{io::emit_svg(lr.display).text, csv};
  };
  int same = 0, total = 0;
  for (std::size_t i = 0; i < inst.size() && i < 10; ++i) {
    ++total;
    if (once(inst[i]) == once(inst[i])) ++same;
  }
  report(8, total > 0 && same == total, fmt("%.0f/%.0f plans give byte-identical SVG and CSV", same, total));
}

}  // namespace

int main() {
  layering_optimality();
  const auto corpus = build_corpus();
  const auto inst = bench_instances(corpus);
  std::printf("corpus: %d sources, %zu generated plans, %zu with %.0f..%.0f vertices used\n", kSources,
              corpus.generated.size(), inst.size(), kMinVertices, kMaxVertices);
  crossing_consistency(inst);
  line_assignment();
  generator_fidelity(corpus);
  determinism(inst);
  drawing_criteria(inst);
  std::printf("%d criteria failed\n", failures);
  return failures;
}
