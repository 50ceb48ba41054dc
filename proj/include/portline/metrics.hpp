#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "portline/drawing.hpp"
#include "portline/model.hpp"

namespace portline {

struct MetricsRecord {
  std::size_t crossings = 0;
  std::size_t bends = 0;
  double width = 0;
  double height = 0;
  double area = 0;
  double aspect = 1;  // width / height
  double elapsed_ms = 0;
};

/// Proper crossings of different edges, corners, and the bounding box.
MetricsRecord measure(const Drawing& drawing, double elapsed_ms = 0);

/// Crossings by brute force over all segment pairs; reference for measure().
std::size_t naive_crossings(const Drawing& drawing);
std::size_t count_bends(const Drawing& drawing);

/// Checks a drawing against the graph it was computed for: sizes, port
/// placement and sides, group contiguity and order along the boundary,
/// pairing alignment, orthogonal edges, and contacts other than point crossings.
std::vector<Violation> validate_drawing(const Drawing& drawing, const PortGraph& graph);

/// The graph-free part of validate_drawing (for drawings whose ports were merged).
std::vector<Violation> validate_geometry(const Drawing& drawing);

enum class Metric { Crossings, Bends, Width, Height, Area, Aspect, Time };
inline constexpr Metric kAllMetrics[] = {Metric::Crossings, Metric::Bends, Metric::Width, Metric::Height,
                                         Metric::Area,      Metric::Aspect, Metric::Time};
std::string_view to_string(Metric m) noexcept;
double metric_value(const MetricsRecord& r, Metric m);

struct RunRecord {
  std::string instance;
  std::string variant;
  std::uint64_t seed = 0;
  MetricsRecord metrics;
};

struct AggregateCell {
  double mu = 0;             // mean ratio to the baseline's best
  double beta = 0;           // percent of instances where the variant is (tied) best
  std::size_t instances = 0; // instances with a defined ratio
};

/// Per variant and metric: mu and beta over instances, best of the runs per
/// instance (aspect: closest to 1). Throws if the baseline is missing.
std::map<std::string, std::map<Metric, AggregateCell>> aggregate(const std::vector<RunRecord>& runs,
                                                                 const std::string& baseline);

std::string csv_header();
std::string csv_row(const RunRecord& r);
std::string markdown_table(const std::map<std::string, std::map<Metric, AggregateCell>>& table,
                           const std::vector<std::string>& variants);

}  // namespace portline
