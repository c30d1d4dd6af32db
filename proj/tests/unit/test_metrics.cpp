#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles/ap_oracle.hpp"
#include "srw/annotation_io.hpp"
#include "srw/metrics.hpp"
#include "support.hpp"

using namespace srw;

namespace {

LabeledSegment seg(double x1, double y1, double x2, double y2, int label = 1, double score = 1.0,
                   int view = 0) {
  return {view, {x1, y1}, {x2, y2}, label, score};
}

// Three GT lines; predictions ranked TP, FP, TP, FP, TP.
struct HandCase {
  std::vector<LabeledSegment> gt{seg(0, 0, 50, 0), seg(0, 20, 50, 20), seg(0, 40, 50, 40)};
  std::vector<LabeledSegment> pred{seg(0, 0, 50, 1, 1, 0.9), seg(90, 90, 120, 90, 1, 0.8),
                                   seg(0, 20, 51, 20, 1, 0.7), seg(0, 0, 50, 0, 1, 0.6),
                                   seg(1, 40, 50, 40, 1, 0.5)};
};

std::vector<LabeledSegment> random_segments(std::mt19937_64& gen, int n, int views, int labels) {
  std::uniform_real_distribution<double> u(0.0, 128.0);
  std::uniform_int_distribution<int> v(0, views - 1);
  std::uniform_int_distribution<int> l(1, labels);
  std::vector<LabeledSegment> out;
  for (int i = 0; i < n; ++i) out.push_back(seg(u(gen), u(gen), u(gen), u(gen), l(gen), 1.0, v(gen)));
  return out;
}

std::vector<LabeledSegment> perturbed(std::mt19937_64& gen, const std::vector<LabeledSegment>& gt,
                                      double sigma) {
  std::normal_distribution<double> n(0.0, sigma);
  std::uniform_real_distribution<double> s(0.0, 1.0);
  std::vector<LabeledSegment> out;
  for (const auto& g : gt) {
    auto p = g;
    p.p1 += Vec2(n(gen), n(gen));
    p.p2 += Vec2(n(gen), n(gen));
    p.score = s(gen);
    out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_CASE("segment distance") {
  CHECK(segment_delta({0, 0}, {10, 0}, {0, 0}, {10, 0}) == 0.0);
  CHECK(segment_delta({0, 0}, {10, 0}, {1, 0}, {10, 2}) == 5.0);
  CHECK(segment_delta({0, 0}, {10, 0}, {10, 0}, {0, 0}) == 0.0);
}

TEST_CASE("average precision by hand") {
  const std::vector<ScoredMatch> all{{1.0, true}, {1.0, true}};
  CHECK(average_precision(all, 2).ap == 100.0);
  const std::vector<ScoredMatch> one{{0.9, true}};
  CHECK(average_precision(one, 2).ap == doctest::Approx(50.0));
  const auto none = average_precision({}, 0);
  CHECK(none.ap == 0.0);
  CHECK(none.zero_gt);
  // TP FP TP: the second TP is counted at precision 2/3.
  const std::vector<ScoredMatch> mixed{{0.9, true}, {0.8, false}, {0.7, true}};
  CHECK(average_precision(mixed, 2).ap == doctest::Approx(100.0 * (1.0 + 2.0 / 3.0) / 2.0));
}

TEST_CASE("five predictions, three GT lines") {
  HandCase h;
  const auto r = sap(h.pred, h.gt, 5.0, 1);
  const double oracle = oracle::threshold_sweep_ap(h.pred, h.gt, 5.0, 1, oracle::line_distance);
  CHECK(r.ap == oracle);
  CHECK(r.ap == doctest::Approx(100.0 * (1.0 + 2.0 / 3.0 + 3.0 / 5.0) / 3.0));
  CHECK(r.tp == 3);
  CHECK(r.fp == 2);
  for (std::size_t k = 1; k < r.pr.size(); ++k) CHECK(r.pr[k].recall >= r.pr[k - 1].recall);
}

TEST_CASE("sAP and jAP agree with the threshold-sweep oracle") {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const auto gt = random_segments(gen, 20, 3, 2);
    auto pred = perturbed(gen, gt, 2.0);
    const auto extra = random_segments(gen, 8, 3, 2);
    std::uniform_real_distribution<double> s(0.0, 1.0);
    for (auto e : extra) {
      e.score = s(gen);
      pred.push_back(e);
    }
    for (double beta : {5.0, 10.0, 15.0}) {
      for (int label : {1, 2}) {
        const auto r = sap(pred, gt, beta, label);
        CHECK(r.ap == doctest::Approx(oracle::threshold_sweep_ap(pred, gt, beta, label,
                                                                 oracle::line_distance))
                           .epsilon(1e-12));
        CHECK(r.ap >= 0.0);
        CHECK(r.ap <= 100.0);
        CHECK(r.tp <= r.gt);
      }
    }

    std::vector<LabeledPoint> gj;
    std::vector<LabeledPoint> pj;
    for (const auto& g : gt) gj.push_back({g.view, g.p1, g.label, 1.0});
    for (const auto& p : pred) pj.push_back({p.view, p.p1, p.label, p.score});
    for (double theta : {0.5, 1.0, 2.0}) {
      CHECK(jap(pj, gj, theta, 1).ap ==
            doctest::Approx(oracle::threshold_sweep_ap(pj, gj, theta, 1, oracle::point_distance))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("AP monotone in the threshold") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto gt = random_segments(gen, 30, 2, 3);
    const auto pred = perturbed(gen, gt, 1.5);
    for (int label = 1; label <= 3; ++label) {
      const double a5 = sap(pred, gt, 5.0, label).ap;
      const double a10 = sap(pred, gt, 10.0, label).ap;
      const double a15 = sap(pred, gt, 15.0, label).ap;
      CHECK(a5 <= a10 + 1e-12);
      CHECK(a10 <= a15 + 1e-12);
    }
  }
}

TEST_CASE("AP is invariant to prediction order") {
  std::mt19937_64 gen(6);
  const auto gt = random_segments(gen, 25, 2, 2);
  auto pred = perturbed(gen, gt, 2.0);
  const double before = sap(pred, gt, 10.0, 1).ap;
  for (int k = 0; k < 10; ++k) {
    std::shuffle(pred.begin(), pred.end(), gen);
    CHECK(sap(pred, gt, 10.0, 1).ap == before);
  }
}

TEST_CASE("jAP offsets") {
  const std::vector<LabeledPoint> gt{{0, {10, 10}, 2, 1.0}};
  const std::vector<LabeledPoint> off{{0, {11, 10}, 2, 1.0}};
  CHECK(jap(off, gt, 0.5, 2).ap == 0.0);
  CHECK(jap(off, gt, 1.0, 2).ap == 100.0);
  const std::vector<LabeledPoint> other_view{{1, {10, 10}, 2, 1.0}};
  CHECK(jap(other_view, gt, 2.0, 2).ap == 0.0);
}

TEST_CASE("NMS") {
  const std::vector<LabeledSegment> dup{seg(0, 0, 50, 0, 1, 0.9), seg(0, 1, 50, 1, 1, 0.8)};
  CHECK(line_nms(dup) == std::vector<std::size_t>{0});
  const std::vector<LabeledSegment> labels{seg(0, 0, 50, 0, 1, 0.9), seg(0, 0, 50, 0, 4, 0.8)};
  CHECK(line_nms(labels).size() == 2);
  // delta = 9 exactly is kept, just below is removed.
  const std::vector<LabeledSegment> edge{seg(0, 0, 50, 0, 1, 0.9), seg(0, 3, 50, 0, 1, 0.8)};
  CHECK(line_nms(edge, 3.0).size() == 2);
  const std::vector<LabeledSegment> inside{seg(0, 0, 50, 0, 1, 0.9), seg(0, 2.999, 50, 0, 1, 0.8)};
  CHECK(line_nms(inside, 3.0).size() == 1);
  // Equal scores: the earlier one wins.
  const std::vector<LabeledSegment> tie{seg(0, 0, 50, 0, 1, 0.5), seg(0, 1, 50, 0, 1, 0.5)};
  CHECK(line_nms(tie) == std::vector<std::size_t>{0});
  // Other views never suppress.
  const std::vector<LabeledSegment> views{seg(0, 0, 50, 0, 1, 0.9, 0), seg(0, 0, 50, 0, 1, 0.8, 1)};
  CHECK(line_nms(views).size() == 2);
}

TEST_CASE("NMS is single pass, idempotent and keeps the top segment") {
  // A chain where B is removed by A, and C would survive if B were gone but
  // is still removed by B in a single pass over the original set.
  const std::vector<LabeledSegment> chain{seg(0, 0, 50, 0, 1, 0.9), seg(0, 2, 50, 2, 1, 0.8),
                                          seg(0, 4, 50, 4, 1, 0.7)};
  CHECK(line_nms(chain) == std::vector<std::size_t>{0});

  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 30; ++trial) {
    const auto gt = random_segments(gen, 15, 2, 2);
    auto pred = perturbed(gen, gt, 3.0);
    const auto more = perturbed(gen, gt, 3.0);
    pred.insert(pred.end(), more.begin(), more.end());
    const auto kept = line_nms(pred, 3.0);
    std::vector<LabeledSegment> once;
    for (auto k : kept) once.push_back(pred[k]);
    const auto again = line_nms(once, 3.0);
    CHECK(again.size() == once.size());
    for (int label : {1, 2}) {
      for (int view : {0, 1}) {
        int top = -1;
        for (std::size_t i = 0; i < pred.size(); ++i) {
          if (pred[i].label != label || pred[i].view != view) continue;
          if (top < 0 || pred[i].score > pred[static_cast<std::size_t>(top)].score) top = static_cast<int>(i);
        }
        if (top >= 0) CHECK(std::count(kept.begin(), kept.end(), static_cast<std::size_t>(top)) == 1);
      }
    }
  }
}

TEST_CASE("aggregation") {
  const auto ceiling = aggregate({{35.5, 42.4, 46.5}});
  CHECK(std::round(ceiling.mean_per_label[0] * 10.0) / 10.0 == 41.5);
  const auto flat = aggregate({{50, 50, 50}, {50, 50, 50}, {50, 50, 50}, {50, 50, 50}, {50, 50, 50}});
  CHECK(flat.mean_per_threshold == std::vector<double>{50, 50, 50});
  CHECK(aggregate({{30, 40, 50}}).mean_per_label[0] == doctest::Approx(40.0));
  CHECK(aggregate({{30, 40, 50}, {10, 20, 30}}).mean == doctest::Approx(30.0));
}

TEST_CASE("ground truth as prediction scores 100") {
  std::vector<ViewPair> pairs;
  for (const char* v : {"view_000", "view_001", "view_002"}) {
    const auto truth = load_annotation(test::data(std::string("box_room_golden/") + v + ".json"));
    pairs.push_back({test::perfect_prediction(truth), truth});
  }
  for (bool semantic : {true, false}) {
    EvalOptions o;
    o.semantic = semantic;
    {
      const auto r = evaluate(pairs, o);
      for (const auto& l : r.sap.labels) {
        for (const auto& t : l.by_threshold) {
          if (!t.zero_gt) CHECK_MESSAGE(t.ap == 100.0, l.label);
        }
      }
      for (const auto& l : r.jap.labels) {
        for (const auto& t : l.by_threshold) {
          if (!t.zero_gt) CHECK_MESSAGE(t.ap == 100.0, l.label);
        }
      }
    }
  }
  // NMS may drop a true line when two GT lines are within gamma at 128 x 128,
  // but it can never add a false positive.
  EvalOptions nms;
  nms.nms = true;
  const auto with_nms = evaluate(pairs, nms);
  for (const auto& c : with_nms.sap.counts) CHECK(c.fp == 0);

  // Without junctions the raw segments are scored directly.
  std::vector<ViewPair> bare;
  for (const auto& p : pairs) bare.push_back({test::perfect_prediction(p.truth, false), p.truth});
  const auto r = evaluate(bare, EvalOptions{});
  for (const auto& l : r.sap.labels) {
    for (const auto& t : l.by_threshold) {
      if (!t.zero_gt) CHECK(t.ap == 100.0);
    }
  }
}

TEST_CASE("empty predictions score 0") {
  const auto truth = load_annotation(test::data("box_room_golden/view_000.json"));
  Prediction empty;
  empty.view_id = truth.view_id;
  empty.width = truth.width;
  empty.height = truth.height;
  const std::vector<ViewPair> pairs{{empty, truth}};
  const auto r = evaluate(pairs, EvalOptions{});
  CHECK(r.sap.mean == 0.0);
  CHECK(r.jap.mean == 0.0);
}

TEST_CASE("threshold names") {
  CHECK(threshold_name(5.0) == "5");
  CHECK(threshold_name(0.5) == "0.5");
}
