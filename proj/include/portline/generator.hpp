#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "portline/io.hpp"
#include "portline/random.hpp"

namespace portline::gen {

/// Histogram normalized to sum 1; key is a count (ports per edge, edges per port).
using Distribution = std::map<int, double>;

/// Characteristic values of one raw plan.
struct PlanFeatures {
  double vertex_groups = 0;
  double vertices = 0;
  double ports = 0;
  double pairings = 0;
  double edges = 0;
  double self_loops = 0;          // edges with two ends on one vertex
  double parallel_edge_mean = 0;  // mean over edges of the edges sharing its terminal vertices
  double connected_ports = 0;     // fraction of ports with at least one edge
  double diameter = 0;            // of the largest component
  Distribution ports_per_edge;
  Distribution edges_per_port;    // over ports with at least one edge
};

PlanFeatures plan_features(const io::RawPlan& plan);

struct FeatureStat {
  double mean = 0;
  double std = 0;  // population standard deviation
};

struct CorpusStats {
  std::size_t plan_count = 0;
  FeatureStat vertex_groups, vertices, ports, pairings, edges, self_loops, parallel_edge_mean, connected_ports,
      diameter;
  Distribution ports_per_edge;  // pooled over the corpus
  Distribution edges_per_port;
  std::vector<PlanFeatures> plans;
};

/// Throws std::invalid_argument on an empty corpus.
CorpusStats corpus_stats(const std::vector<io::RawPlan>& plans);

struct GenConfig {
  double q = 0.05;         // fraction of original elements replaced
  int candidates = 1000;   // candidate endpoint sets drawn per inserted edge
  double std_scale = 1;    // target sd = corpus sd / (corpus size * std_scale)
  std::uint64_t seed = 1;
};

struct Targets {
  long vertex_groups = 0, vertices = 0, ports = 0, pairings = 0, edges = 0, self_loops = 0;
  double parallel_edge_mean = 1;
  double connected_ports = 1;
  Distribution ports_per_edge;
  Distribution edges_per_port;
};

/// Normal draws centred on the plan's own values; counts are rounded and
/// clamped at zero. Distributions are taken over from the plan (the corpus
/// pool when the plan has no edges).
Targets sample_targets(const CorpusStats& stats, const PlanFeatures& original, const GenConfig& config, Rng& rng);

/// Removes ceil(q * count) elements per category, in the order vertex groups,
/// vertices, pairings, ports, edges, each with everything that depends on it.
io::RawPlan delete_phase(const io::RawPlan& plan, double q, Rng& rng);

struct InsertReport {
  std::vector<std::string> warnings;
  std::size_t reconnecting_edges = 0;
};

/// Adds elements up to the targets in the same order; reconnects components
/// first, then inserts edges choosing the best of `candidates` random endpoint
/// sets. New ids never reuse a deleted id.
io::RawPlan insert_phase(const io::RawPlan& plan, const Targets& targets, const GenConfig& config, Rng& rng,
                         InsertReport* report = nullptr);

struct Generated {
  io::RawPlan plan;
  std::vector<std::string> warnings;
};

/// One pseudo plan: targets, delete phase, insert phase. `variant` selects
/// the stream so several pseudo plans can come from one source.
Generated generate(const io::RawPlan& source, const CorpusStats& stats, const GenConfig& config, std::uint64_t variant);

/// Fraction of the source's elements (vertex groups, vertices, ports,
/// pairings, edges) whose ids no longer occur in the output.
double replaced_fraction(const io::RawPlan& source, const io::RawPlan& output);

struct SimilarityRow {
  std::string feature;
  double original_mean = 0, original_median = 0;
  double generated_mean = 0, generated_median = 0;
  double deviation = 0;  // relative difference of the means
  bool flagged = false;
};

std::vector<SimilarityRow> similarity_report(const CorpusStats& original, const CorpusStats& generated,
                                             double band = 0.1);
std::string format_report(const std::vector<SimilarityRow>& rows);

/// Shape of synthetic source plans: devices with connector groups, cables
/// (some parallel, some multi-port) and a few bundled devices with plugs.
struct SynthConfig {
  int min_vertices = 50;
  int max_vertices = 130;
  double extra_edge_ratio = 0.35;  // edges beyond a spanning tree, per vertex
  double parallel_probability = 0.3;
  double hyperedge_probability = 0.03;
  double shared_port_probability = 0.05;
  double vertex_group_fraction = 0.06;
  double sided_group_probability = 0.08;
};

io::RawPlan synthesize_plan(const SynthConfig& config, std::uint64_t seed);

}  // namespace portline::gen
