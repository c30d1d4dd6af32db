#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "srw/error.hpp"
#include "srw/wireframe.hpp"
#include "support.hpp"

using namespace srw;

namespace {

LineScores line_scores(double invalid, double wall) {
  LineScores s{};
  s[index_of(LineLabel::invalid)] = invalid;
  s[index_of(LineLabel::wall)] = wall;
  return s;
}

ScoredJunction junction(double x, double y) { return {Vec2(x, y), {0.0, 0.0, 1.0}}; }

Wireframe2D random_wireframe(std::mt19937_64& gen, int n, int m) {
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_real_distribution<double> u(0.0, 128.0);
  Wireframe2D w;
  for (int i = 0; i < n; ++i) w.junctions.push_back(junction(u(gen), u(gen)));
  std::set<std::pair<int, int>> used;
  for (int tries = 0; static_cast<int>(w.segments.size()) < m && tries < 10 * m; ++tries) {
    const int a = pick(gen);
    const int b = pick(gen);
    if (a == b || !used.insert({std::min(a, b), std::max(a, b)}).second) continue;
    w.segments.push_back({a, b, line_scores(0.1, 0.9)});
  }
  return w;
}

}  // namespace

TEST_CASE("matching to exact junctions") {
  const std::vector<ScoredJunction> js{junction(0, 0), junction(50, 0), junction(50, 50)};
  const std::vector<RawSegment> segs{{{0, 0}, {50, 0}, line_scores(0.1, 0.8)},
                                     {{50, 50}, {50, 0}, line_scores(0.2, 0.7)}};
  const auto r = match_to_junctions(segs, js);
  REQUIRE(r.wireframe.segments.size() == 2);
  CHECK(r.wireframe.segments[0].j1 == 0);
  CHECK(r.wireframe.segments[0].j2 == 1);
  CHECK(r.wireframe.segments[1].j1 == 2);
  CHECK(r.wireframe.segments[1].j2 == 1);
  r.wireframe.validate();
}

TEST_CASE("matching distance is strict") {
  const std::vector<ScoredJunction> js{junction(0, 0), junction(100, 0)};
  const std::vector<RawSegment> at_tau{{{0, 10}, {100, 0}, {}}};
  const auto r = match_to_junctions(at_tau, js, 10.0);
  CHECK(r.wireframe.segments.empty());
  CHECK(r.dropped_far == 1);
  const std::vector<RawSegment> inside{{{0, 9.999}, {100, 0}, {}}};
  CHECK(match_to_junctions(inside, js, 10.0).wireframe.segments.size() == 1);
}

TEST_CASE("collapsed and duplicate segments") {
  const std::vector<ScoredJunction> js{junction(0, 0), junction(100, 0)};
  const std::vector<RawSegment> segs{{{1, 1}, {2, 2}, {}},
                                     {{0, 1}, {100, 1}, line_scores(0.5, 0.2)},
                                     {{100, -1}, {0, -1}, line_scores(0.1, 0.6)}};
  const auto r = match_to_junctions(segs, js);
  CHECK(r.dropped_collapsed == 1);
  CHECK(r.merged_duplicates == 1);
  REQUIRE(r.wireframe.segments.size() == 1);
  CHECK(r.wireframe.segments[0].scores[index_of(LineLabel::invalid)] == 0.5);
  CHECK(r.wireframe.segments[0].scores[index_of(LineLabel::wall)] == 0.6);
}

TEST_CASE("matching agrees with an all-pairs oracle") {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> u(0.0, 128.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<ScoredJunction> js;
    for (int i = 0; i < 30; ++i) js.push_back(junction(u(gen), u(gen)));
    std::vector<RawSegment> segs;
    for (int i = 0; i < 80; ++i) segs.push_back({{u(gen), u(gen)}, {u(gen), u(gen)}, line_scores(u(gen) / 128, 0)});
    const auto r = match_to_junctions(segs, js, 10.0);

    // Oracle: nearest junction by full scan, lowest index on ties.
    std::map<std::pair<int, int>, double> expected;
    std::vector<std::pair<int, int>> order;
    for (const auto& s : segs) {
      int ends[2];
      bool ok = true;
      for (int e = 0; e < 2; ++e) {
        const Vec2& p = e == 0 ? s.p1 : s.p2;
        int best = 0;
        for (int j = 1; j < 30; ++j) {
          if ((js[j].position - p).norm() < (js[best].position - p).norm()) best = j;
        }
        ok = ok && (js[best].position - p).norm() < 10.0;
        ends[e] = best;
      }
      if (!ok || ends[0] == ends[1]) continue;
      const auto key = std::pair{std::min(ends[0], ends[1]), std::max(ends[0], ends[1])};
      const double inv = s.scores[index_of(LineLabel::invalid)];
      if (!expected.count(key)) order.push_back(key);
      expected[key] = std::max(expected[key], inv);
    }
    REQUIRE(r.wireframe.segments.size() == order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      const auto& s = r.wireframe.segments[i];
      CHECK(std::pair{std::min(s.j1, s.j2), std::max(s.j1, s.j2)} == order[i]);
      CHECK(s.scores[index_of(LineLabel::invalid)] == expected[order[i]]);
    }
    r.wireframe.validate();
  }
}

TEST_CASE("matching is idempotent on matched wireframes") {
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto w = random_wireframe(gen, 20, 40);
    std::vector<RawSegment> raw;
    for (const auto& s : w.segments) {
      raw.push_back({w.junctions[s.j1].position, w.junctions[s.j2].position, s.scores});
    }
    const auto r = match_to_junctions(raw, w.junctions, 10.0);
    REQUIRE(r.wireframe.segments.size() == w.segments.size());
    for (std::size_t i = 0; i < w.segments.size(); ++i) {
      CHECK(r.wireframe.segments[i].j1 == w.segments[i].j1);
      CHECK(r.wireframe.segments[i].j2 == w.segments[i].j2);
      CHECK(r.wireframe.segments[i].scores == w.segments[i].scores);
    }
  }
}

TEST_CASE("small graphs") {
  Wireframe2D tri;
  tri.junctions = {junction(0, 0), junction(10, 0), junction(0, 10)};
  tri.segments = {{0, 1, {}}, {1, 2, {}}, {2, 0, {}}};
  const auto jg = junction_graph(tri);
  CHECK(jg.node_count == 3);
  CHECK(jg.edges.size() == 3);
  const auto lg = line_graph(tri);
  CHECK(lg.node_count == 3);
  CHECK(lg.edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});

  Wireframe2D path;
  path.junctions = {junction(0, 0), junction(10, 0), junction(20, 0)};
  path.segments = {{0, 1, {}}, {1, 2, {}}};
  CHECK(line_graph(path).edges == std::vector<std::pair<int, int>>{{0, 1}});
  path.segments.pop_back();
  CHECK(junction_graph(path).edges == std::vector<std::pair<int, int>>{{0, 1}});
  CHECK(line_graph(path).edges.empty());
}

TEST_CASE("line graph identity and brute-force adjacency") {
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 50; ++trial) {
    const auto w = random_wireframe(gen, 25, 60);
    const auto lg = line_graph(w);
    CHECK(lg.node_count == static_cast<int>(w.segments.size()));
    CHECK(junction_graph(w).edges.size() == w.segments.size());

    std::vector<std::size_t> deg(w.junctions.size(), 0);
    for (const auto& s : w.segments) {
      ++deg[s.j1];
      ++deg[s.j2];
    }
    std::size_t identity = 0;
    for (auto d : deg) identity += d * (d - 1) / 2;
    CHECK(lg.edges.size() == identity);

    std::vector<std::pair<int, int>> brute;
    for (std::size_t a = 0; a < w.segments.size(); ++a) {
      for (std::size_t b = a + 1; b < w.segments.size(); ++b) {
        const auto& s = w.segments[a];
        const auto& t = w.segments[b];
        if (s.j1 == t.j1 || s.j1 == t.j2 || s.j2 == t.j1 || s.j2 == t.j2) {
          brute.emplace_back(static_cast<int>(a), static_cast<int>(b));
        }
      }
    }
    CHECK(lg.edges == brute);
  }
}

TEST_CASE("validation") {
  Wireframe2D w;
  w.junctions = {junction(0, 0), junction(1, 0)};
  w.segments = {{0, 1, {}}, {1, 0, {}}};
  CHECK_THROWS_AS(w.validate(), TopologyError);
  w.segments = {{0, 0, {}}};
  CHECK_THROWS_AS(w.validate(), TopologyError);
  w.segments = {{0, 5, {}}};
  CHECK_THROWS_AS(w.validate(), TopologyError);
}

TEST_CASE("non-semantic scores") {
  CHECK(nonsemantic_score(line_scores(0.2, 0.5)) == doctest::Approx(0.8));
  CHECK(nonsemantic_score(line_scores(1.0, 0.5)) == 0.0);
  std::mt19937_64 gen(9);
  auto w = random_wireframe(gen, 10, 15);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto& s : w.segments) s.scores[index_of(LineLabel::invalid)] = u(gen);
  for (auto& j : w.junctions) j.scores[index_of(JunctionLabel::invalid)] = u(gen);
  const auto ns = to_nonsemantic(w);
  REQUIRE(ns.segment_scores.size() == w.segments.size());
  for (std::size_t i = 0; i < w.segments.size(); ++i) {
    CHECK(ns.segment_scores[i] == 1.0 - w.segments[i].scores[0]);
    CHECK(ns.segments[i] == std::pair{w.segments[i].j1, w.segments[i].j2});
  }
  for (std::size_t i = 0; i < w.junctions.size(); ++i) {
    CHECK(ns.junction_scores[i] == 1.0 - w.junctions[i].scores[0]);
  }
}

TEST_CASE("prediction files") {
  Prediction p;
  p.view_id = "v";
  p.width = 256;
  p.height = 512;
  p.junctions = {{{128, 256}, {0.1, 0.2, 0.7}}};
  p.segments = {{{0, 0}, {256, 512}, line_scores(0.1, 0.9)}};
  const auto doc = prediction_to_json(p);
  CHECK(doc["segments"][0]["xy"].size() == 4);
  CHECK(doc["segments"][0]["scores"]["wall"] == 0.9);
  CHECK(doc["junctions"][0]["scores"]["proper"] == 0.7);
  const auto back = parse_prediction(doc);
  CHECK(back.segments[0].p2 == Vec2(256, 512));
  CHECK(back.junctions[0].scores == p.junctions[0].scores);

  const auto r = rescaled(p, 128.0);
  CHECK(r.segments[0].p2 == Vec2(128, 128));
  CHECK(r.junctions[0].position == Vec2(64, 64));

  auto bad = doc;
  bad["segments"][0]["scores"].erase("door");
  CHECK_THROWS_AS(parse_prediction(bad), ParseError);
  bad = doc;
  bad["segments"][0]["scores"]["wall"] = 1.5;
  CHECK_THROWS_AS(parse_prediction(bad), ParseError);
  bad = doc;
  bad["segments"][0]["xy"] = {1, 2, 3};
  CHECK_THROWS_AS(parse_prediction(bad), ParseError);
}
