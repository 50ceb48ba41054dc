#include "portline/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>
#include <sstream>

#include "portline/layering.hpp"
#include "portline/portside.hpp"

namespace portline {

namespace {

bool has_left_right(const PortGraph& graph) {
  for (const auto& g : graph.groups())
    if (g.side == Side::Left || g.side == Side::Right) return true;
  return false;
}

}  // namespace

RunOutput run_once(const PortGraph& graph, const PipelineConfig& config, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  RunOutput out;
  out.seed = seed;

  FdConfig fd = config.fd;
  fd.seed = seed;
  const Orientation orientation = orient(graph, config.orient, fd);

  PortGraph working = graph;
  std::vector<ShrinkInstruction> shrink;
  const bool left_right = has_left_right(graph);
  if (left_right) {
    auto lr = transform_left_right_groups(graph, orientation, config.coords.delta);
    working = std::move(lr.graph);
    shrink = std::move(lr.shrink);
    out.log.insert(out.log.end(), lr.log.begin(), lr.log.end());
  }

  const auto layering = assign_layers(working, orientation);
  out.layering_cap_hit = layering.cap_hit;
  auto ps = build_layered_structure(working, orientation, layering.layering);
  out.log.insert(out.log.end(), ps.log.begin(), ps.log.end());
  out.layer_count = ps.structure.layer_count();

  SweepConfig sweep_config = config.sweep;
  sweep_config.seed = seed;
  out.order_crossings = sweep(ps.structure, sweep_config).crossings;

  const Geometry geo = assign_coordinates(ps.structure, ps.repaired, config.coords);
  auto routed = build_drawing(ps.structure, ps.repaired, geo, config.routing, shrink);
  out.drawing = std::move(routed.drawing);

  if (!left_right) {
    out.graph = std::move(ps.repaired);
  } else {
    auto rec = reconcile_left_right(graph, ps.repaired);
    out.graph = std::move(rec.graph);
    out.log.insert(out.log.end(), rec.log.begin(), rec.log.end());
  }

  const auto stop = std::chrono::steady_clock::now();
  out.metrics = measure(out.drawing, std::chrono::duration<double, std::milli>(stop - start).count());
  return out;
}

LayoutResult run_layout(const io::NormalizedPlan& plan, const PipelineConfig& config) {
  LayoutResult result;
  const int runs = std::max(1, config.runs);
  for (int r = 0; r < runs; ++r) {
    RunOutput run = run_once(plan.graph, config, config.seed + static_cast<std::uint64_t>(r));
    result.runs.push_back(run.metrics);
    if (r == 0 || run.metrics.crossings < result.best.metrics.crossings) result.best = std::move(run);
  }
  result.display = io::denormalize_for_display(result.best.drawing, plan.provenance);
  return result;
}

std::string variant_name(const PipelineConfig& config) {
  std::string out(to_string(config.orient));
  out += "/";
  out += to_string(config.sweep.granularity);
  out += "/";
  out += to_string(config.sweep.sink);
  return out;
}

bool apply_variant(PipelineConfig& config, const std::string& name) {
  std::vector<std::string> parts;
  std::stringstream ss(name);
  for (std::string part; std::getline(ss, part, '/');) parts.push_back(part);
  if (parts.size() != 3) return false;
  const auto o = orient_method_from_string(parts[0]);
  const auto g = granularity_from_string(parts[1]);
  const auto s = sink_strategy_from_string(parts[2]);
  if (!o || !g || !s) return false;
  config.orient = *o;
  config.sweep.granularity = *g;
  config.sweep.sink = *s;
  return true;
}

BenchOutcome run_bench(const std::vector<BenchInstance>& instances, const std::vector<PipelineConfig>& variants,
                       int jobs, bool validate) {
  std::vector<BenchOutcome> per(instances.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < instances.size();) {
      const auto& inst = instances[i];
      auto& out = per[i];
      for (const auto& config : variants) {
        const std::string name = variant_name(config);
        for (int r = 0; r < std::max(1, config.runs); ++r) {
          const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(r);
          try {
            auto run = run_once(inst.plan.graph, config, seed);
            out.runs.push_back({inst.name, name, seed, run.metrics});
            if (!validate) continue;
            for (const auto& v : validate_drawing(run.drawing, run.graph)) {
              std::string line = inst.name + " " + name + " " + std::to_string(seed) + ": " + v.rule;
              for (const auto& e : v.elements) line += " " + e;
              out.violations.push_back(std::move(line));
            }
          } catch (const std::exception& e) {
            out.violations.push_back(inst.name + " " + name + " " + std::to_string(seed) + ": error " + e.what());
          }
        }
      }
    }
  };
  const auto n = static_cast<std::size_t>(std::clamp(jobs, 1, 64));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(n, instances.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  BenchOutcome all;
  for (auto& o : per) {
    all.runs.insert(all.runs.end(), o.runs.begin(), o.runs.end());
    all.violations.insert(all.violations.end(), o.violations.begin(), o.violations.end());
  }
  return all;
}

}  // namespace portline
