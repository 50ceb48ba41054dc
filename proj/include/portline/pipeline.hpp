#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "portline/coords.hpp"
#include "portline/crossmin.hpp"
#include "portline/drawing.hpp"
#include "portline/io.hpp"
#include "portline/metrics.hpp"
#include "portline/orient.hpp"
#include "portline/routing.hpp"

namespace portline {

struct PipelineConfig {
  OrientMethod orient = OrientMethod::FD;
  FdConfig fd;
  SweepConfig sweep;
  CoordsConfig coords;
  RoutingConfig routing;
  int runs = 1;
  std::uint64_t seed = 1;
};

/// Outcome of one seeded run of all six phases.
struct RunOutput {
  Drawing drawing;           // normalized ports, one per edge end
  PortGraph graph;           // the graph the drawing satisfies (after repairs)
  MetricsRecord metrics;
  std::vector<std::string> log;
  std::size_t layer_count = 0;
  std::size_t order_crossings = 0;  // crossings counted on the layer order
  bool layering_cap_hit = false;
  std::uint64_t seed = 0;
};

RunOutput run_once(const PortGraph& graph, const PipelineConfig& config, std::uint64_t seed);

struct LayoutResult {
  RunOutput best;                  // fewest crossings, earliest run on ties
  std::vector<MetricsRecord> runs; // every run in seed order
  Drawing display;                 // split ports merged back
};

/// config.runs seeded runs (seed + run index).
LayoutResult run_layout(const io::NormalizedPlan& plan, const PipelineConfig& config);

/// "orient/cross/sink", e.g. "fd/ports/relpos".
std::string variant_name(const PipelineConfig& config);
/// Applies a variant name to the configuration; false if malformed.
bool apply_variant(PipelineConfig& config, const std::string& name);

struct BenchInstance {
  std::string name;
  io::NormalizedPlan plan;
};

struct BenchOutcome {
  std::vector<RunRecord> runs;          // instance order, then variant, then seed
  std::vector<std::string> violations;  // "instance variant seed: rule [elements]"
};

/// Every instance under every variant, config.runs seeded runs each. Up to
/// `jobs` instances run concurrently; output order does not depend on it.
BenchOutcome run_bench(const std::vector<BenchInstance>& instances, const std::vector<PipelineConfig>& variants,
                       int jobs, bool validate = true);

}  // namespace portline
