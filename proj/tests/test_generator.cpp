#include <cmath>
#include <set>

#include "doctest.h"
#include "support.hpp"

using namespace portline;

namespace {

/// n vertices in a path; vertex i has ports "v{i}.l" and "v{i}.r".
io::RawPlan path_plan(int n, const std::string& prefix = "v") {
  io::RawPlan p;
  for (int i = 0; i < n; ++i) {
    const std::string v = prefix + std::to_string(i);
    p.vertices.push_back({v, "", 40, 24});
    p.ports.push_back({v + ".l", v, ""});
    p.ports.push_back({v + ".r", v, ""});
  }
  for (int i = 1; i < n; ++i)
    p.edges.push_back({"e" + prefix + std::to_string(i),
                       {prefix + std::to_string(i - 1) + ".r", prefix + std::to_string(i) + ".l"}});
  return p;
}

std::set<std::string> all_ids(const io::RawPlan& p) {
  std::set<std::string> ids;
  for (const auto& x : p.vertices) ids.insert(x.id);
  for (const auto& x : p.vertex_groups) ids.insert(x.id);
  for (const auto& x : p.ports) ids.insert(x.id);
  for (const auto& x : p.port_groups) ids.insert(x.id);
  for (const auto& x : p.pairings) ids.insert(x.id);
  for (const auto& x : p.edges) ids.insert(x.id);
  return ids;
}

bool connected(const io::RawPlan& p) { return contracted_graph(io::normalize(p).graph).connected(); }

std::vector<io::RawPlan> synth_corpus(int count, std::uint64_t seed) {
  std::vector<io::RawPlan> out;
  for (int i = 0; i < count; ++i) out.push_back(gen::synthesize_plan(gen::SynthConfig{}, seed + static_cast<std::uint64_t>(i)));
  return out;
}

}  // namespace

TEST_CASE("features of a hand-built plan") {
  auto p = path_plan(4);
  p.edges.push_back({"par", {"v0.r", "v1.l"}});          // parallel to e1, shares ports
  p.edges.push_back({"loop", {"v2.l", "v2.r"}});         // self-loop
  p.edges.push_back({"hyper", {"v0.l", "v2.r", "v3.r"}});  // three terminals
  const auto f = gen::plan_features(p);
  CHECK(f.vertices == 4);
  CHECK(f.ports == 8);
  CHECK(f.edges == 6);
  CHECK(f.self_loops == 1);
  CHECK(f.connected_ports == doctest::Approx(1.0));
  CHECK(f.diameter == 2);  // the hyperedge joins v0 and v3
  CHECK(f.ports_per_edge.at(2) == doctest::Approx(5.0 / 6));
  CHECK(f.ports_per_edge.at(3) == doctest::Approx(1.0 / 6));
  // {v0, v1}: 2 edges, {v1, v2}: 1, {v2, v3}: 1, hyper: 1 -> (4 + 1 + 1 + 1) / 5
  CHECK(f.parallel_edge_mean == doctest::Approx(7.0 / 5));
}

TEST_CASE("corpus statistics") {
  const auto s = gen::corpus_stats({path_plan(100), path_plan(110)});
  CHECK(s.vertices.mean == doctest::Approx(105));
  CHECK(s.vertices.std == doctest::Approx(5));
  const auto one = gen::corpus_stats({path_plan(30)});
  CHECK(one.vertices.std == 0);
  CHECK(one.edges.std == 0);
  CHECK(one.diameter.std == 0);
  CHECK_THROWS_AS(gen::corpus_stats({}), std::invalid_argument);
}

TEST_CASE("targets center on the plan with the scaled corpus spread") {
  const auto stats = gen::corpus_stats({path_plan(100), path_plan(110)});
  const auto f = gen::plan_features(path_plan(100));
  gen::GenConfig cfg;
  Rng rng(1);
  double sum = 0, sq = 0;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    const auto t = gen::sample_targets(stats, f, cfg, rng);
    sum += static_cast<double>(t.vertices);
    sq += static_cast<double>(t.vertices * t.vertices);
  }
  const double mean = sum / n, sd = std::sqrt(sq / n - mean * mean);
  const double want = 5.0 / 2;  // corpus sd / (corpus size * scale)
  CHECK(mean == doctest::Approx(100).epsilon(0.01));
  CHECK(std::abs(sd - want) <= 0.15 * want);

  Rng a(9), b(9);
  CHECK(gen::sample_targets(stats, f, cfg, a).vertices == gen::sample_targets(stats, f, cfg, b).vertices);
  const auto fixed = gen::corpus_stats({path_plan(50)});
  const auto t = gen::sample_targets(fixed, gen::plan_features(path_plan(50)), cfg, rng);
  CHECK(t.vertices == 50);
  CHECK(t.edges == 49);
}

TEST_CASE("deletion removes ceil(q n) per category and leaves no dangling references") {
  const auto p = path_plan(100);
  Rng rng(2);
  const auto d = gen::delete_phase(p, 0.05, rng);
  CHECK(d.vertices.size() == 95);
  CHECK(io::check_references(d) == "");
  // The ports of every deleted vertex went with it.
  std::set<std::string> vs;
  for (const auto& v : d.vertices) vs.insert(v.id);
  for (const auto& port : d.ports) CHECK(vs.count(port.vertex) == 1);
  CHECK(d.edges.size() <= 99 - 5);

  Rng r2(3);
  const auto small = gen::delete_phase(path_plan(3), 0.05, r2);
  CHECK(small.vertices.size() == 2);  // ceil(0.15) = 1
}

TEST_CASE("deleting a vertex group takes its members along") {
  auto p = path_plan(10);
  p.vertex_groups.push_back({"vg", {"v0", "v1"}});
  p.pairings.push_back({"pp", "v0.r", "v1.l"});
  Rng rng(4);
  const auto d = gen::delete_phase(p, 0.05, rng);
  CHECK(d.vertex_groups.empty());
  for (const auto& v : d.vertices) {
    CHECK(v.id != "v0");
    CHECK(v.id != "v1");
  }
  CHECK(d.pairings.empty());
  CHECK(io::check_references(d) == "");
}

TEST_CASE("insertion reconnects components and reaches the targets") {
  auto p = path_plan(8, "a");
  const auto b = path_plan(8, "b");
  p.vertices.insert(p.vertices.end(), b.vertices.begin(), b.vertices.end());
  p.ports.insert(p.ports.end(), b.ports.begin(), b.ports.end());
  p.edges.insert(p.edges.end(), b.edges.begin(), b.edges.end());
  REQUIRE_FALSE(connected(p));
  const auto stats = gen::corpus_stats({p});
  auto f = gen::plan_features(p);
  gen::GenConfig cfg;
  Rng rng(5);
  auto t = gen::sample_targets(stats, f, cfg, rng);
  t.edges += 3;
  t.ports += 4;
  gen::InsertReport report;
  const auto out = gen::insert_phase(p, t, cfg, rng, &report);
  CHECK(connected(out));
  CHECK(report.reconnecting_edges >= 1);
  CHECK(static_cast<long>(out.ports.size()) == t.ports);
  CHECK(static_cast<long>(out.edges.size()) == t.edges);
  CHECK(io::check_references(out) == "");
}

TEST_CASE("a single candidate per edge still yields a valid plan") {
  const auto corpus = synth_corpus(3, 40);
  const auto stats = gen::corpus_stats(corpus);
  gen::GenConfig cfg;
  cfg.candidates = 1;
  const auto g = gen::generate(corpus[0], stats, cfg, 1);
  CHECK(io::check_references(g.plan) == "");
  CHECK(validate(io::normalize(g.plan).graph).empty());
}

TEST_CASE("new ids never reuse deleted ones") {
  const auto src = gen::synthesize_plan(gen::SynthConfig{}, 77);
  const auto stats = gen::corpus_stats({src});
  gen::GenConfig cfg;
  Rng rng(6);
  const auto t = gen::sample_targets(stats, gen::plan_features(src), cfg, rng);
  const auto del = gen::delete_phase(src, cfg.q, rng);
  const auto out = gen::insert_phase(del, t, cfg, rng);
  const auto before = all_ids(src), kept = all_ids(del), after = all_ids(out);
  for (const auto& id : after)
    if (before.count(id)) CHECK_MESSAGE(kept.count(id) == 1, id);
}

TEST_CASE("generation is deterministic per variant and replaces at least q") {
  const auto corpus = synth_corpus(4, 50);
  const auto stats = gen::corpus_stats(corpus);
  gen::GenConfig cfg;
  const auto a = gen::generate(corpus[1], stats, cfg, 3);
  const auto b = gen::generate(corpus[1], stats, cfg, 3);
  const auto c = gen::generate(corpus[1], stats, cfg, 4);
  CHECK(io::serialize_plan(a.plan) == io::serialize_plan(b.plan));
  CHECK(io::serialize_plan(a.plan) != io::serialize_plan(c.plan));
  CHECK(gen::replaced_fraction(corpus[1], a.plan) >= cfg.q);
  CHECK(gen::replaced_fraction(corpus[1], corpus[1]) == 0);
  const auto n = io::normalize(a.plan);
  CHECK(testing::violations_text(validate(n.graph)) == "");
}

TEST_CASE("generated plans keep the corpus vertex mean") {
  const auto corpus = synth_corpus(10, 60);
  const auto stats = gen::corpus_stats(corpus);
  gen::GenConfig cfg;
  std::vector<io::RawPlan> out;
  for (int k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < corpus.size(); ++i)
      out.push_back(gen::generate(corpus[i], stats, cfg, i * 1000 + static_cast<std::uint64_t>(k)).plan);
  REQUIRE(out.size() == 30);
  const auto gs = gen::corpus_stats(out);
  CHECK(std::abs(gs.vertices.mean - stats.vertices.mean) <= 0.10 * stats.vertices.mean);
  const auto rows = gen::similarity_report(stats, gs);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].feature == "vertices");
  CHECK_FALSE(rows[0].flagged);
}

TEST_CASE("similarity report") {
  const auto s = gen::corpus_stats({path_plan(10), path_plan(20)});
  const auto same = gen::similarity_report(s, s);
  for (const auto& r : same) {
    CHECK(r.deviation == 0);
    CHECK_FALSE(r.flagged);
  }
  CHECK(gen::format_report(same) == gen::format_report(gen::similarity_report(s, s)));
  const auto bigger = gen::corpus_stats({path_plan(12), path_plan(24)});
  const auto rows = gen::similarity_report(s, bigger);
  CHECK(rows[0].deviation == doctest::Approx(0.2));
  CHECK(rows[0].flagged);
  CHECK(rows[0].original_median == doctest::Approx(15));
}

TEST_CASE("synthetic plans are valid and within the size range") {
  gen::SynthConfig sc;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto p = gen::synthesize_plan(sc, seed);
    CHECK(p.vertices.size() >= static_cast<std::size_t>(sc.min_vertices));
    CHECK(p.vertices.size() <= static_cast<std::size_t>(sc.max_vertices));
    CHECK(io::parse_plan(io::serialize_plan(p)) == p);
    CHECK(validate(io::normalize(p).graph).empty());
  }
}
