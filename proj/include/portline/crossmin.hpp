#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "portline/layered.hpp"

namespace portline {

enum class Granularity { Vertices, Ports, Mixed };
enum class SinkStrategy { PseudoBC, OppositeBC, RelPos };

std::string_view to_string(Granularity g) noexcept;
std::string_view to_string(SinkStrategy s) noexcept;
std::optional<Granularity> granularity_from_string(std::string_view s) noexcept;
std::optional<SinkStrategy> sink_strategy_from_string(std::string_view s) noexcept;

struct SweepConfig {
  Granularity granularity = Granularity::Ports;
  SinkStrategy sink = SinkStrategy::RelPos;
  int repetitions = 1;
  int max_sweeps = 10;
  int patience = 2;  // stop after this many sweeps without improvement
  bool random_start = true;
  std::uint64_t seed = 1;
};

struct SweepResult {
  std::size_t crossings = 0;
  std::size_t initial_crossings = 0;
  int sweeps = 0;
};

/// Mean of the neighbour positions (each entry counts once, so parallel edges
/// weigh by multiplicity). Empty input has no barycenter.
std::optional<double> barycenter(const std::vector<double>& neighbor_positions);

/// Stand-in for a node without neighbours on the reference layer: its own
/// position rescaled to the reference layer.
double pseudo_barycenter(double position, std::size_t own_size, std::size_t reference_size);

/// Barycenter toward the opposite layer, rescaled to the reference layer.
double opposite_barycenter(double opposite_bc, std::size_t reference_size, std::size_t opposite_size);

/// Segment pairs between adjacent rows whose endpoint orders invert. Segments
/// that share a slot never count.
std::size_t count_crossings(const LayeredStructure& s);
std::size_t count_gap_crossings(const LayeredStructure& s, std::size_t gap);

/// Alternating layer sweeps; the structure ends in the best order seen over all
/// repetitions.
SweepResult sweep(LayeredStructure& s, const SweepConfig& config);

/// Realigns the ports paired across a node after one side was reordered. The
/// side given as primary keeps its order when possible.
bool align_pairings(LayeredStructure& s, std::uint32_t node, bool top_primary);

/// True iff every real node's slot sequences respect its trees and pairings.
bool orders_consistent(const LayeredStructure& s);

}  // namespace portline
