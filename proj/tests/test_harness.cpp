#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "kcm/constructions.hpp"
#include "kcm/harness.hpp"

using namespace kcm;

namespace {

SearchOptions with_workers(unsigned w) {
  SearchOptions o;
  o.workers = w;
  return o;
}

}  // namespace

TEST_CASE("east threshold report") {
  const RunReport rep = verify_east_threshold(3);
  CHECK(rep.pass());
  CHECK(rep.cases.size() == 2 + 4 + 8);
  for (const CaseResult& c : rep.cases) CHECK(c.verdict == Verdict::Pass);
  const Json j = run_report_to_json(rep);
  CHECK(j["task"] == "east-threshold");
  CHECK(j["pass"] == true);
  CHECK_FALSE(j["cases"][0].contains("millis"));
  CHECK(run_report_to_json(rep, true)["cases"][0].contains("millis"));
}

TEST_CASE("report JSON is identical across worker counts") {
  const std::string one = run_report_to_json(verify_east_threshold(3, with_workers(1))).dump();
  CHECK(run_report_to_json(verify_east_threshold(3, with_workers(4))).dump() == one);

  const std::string thm = run_report_to_json(verify_theorem_box(east2d(), 2, with_workers(1))).dump();
  CHECK(run_report_to_json(verify_theorem_box(east2d(), 2, with_workers(3))).dump() == thm);
}

TEST_CASE("fa1f mobility report") {
  const RunReport rep = verify_fa1f_mobility({0, 1, 5, 100}, 5);
  CHECK(rep.pass());
  CHECK_FALSE(rep.cases.empty());
}

TEST_CASE("theorem and lemma on rooted families") {
  for (const UpdateFamily& fam : {east1d(), east2d(), rooted_corner_2d()}) {
    for (unsigned n = 1; n <= 2; ++n) {
      CHECK(verify_theorem_box(fam, n).pass());
      CHECK(verify_lemma_zero_outside(fam, n).pass());
    }
  }
  CHECK(verify_theorem_box(east1d(), 0).pass());
}

TEST_CASE("theorem window") {
  const TheoremWindow w = theorem_window(east1d(), 3);
  CHECK(w.r == 1);
  CHECK_FALSE(w.basis.has_value());
  CHECK(w.pn->size() == 20);
  REQUIRE(w.pn_prev);
  CHECK(w.pn_prev->size() == 8);

  const TheoremWindow c = theorem_window(rooted_corner_2d(), 2);
  CHECK(c.pn->size() == 64);
  CHECK_FALSE(c.basis.has_value());
}

TEST_CASE("unrooted families are refuted as expected") {
  const RunReport rep = verify_theorem_box(fa1f(1), 2);
  REQUIRE_FALSE(rep.cases.empty());
  CHECK(rep.cases.front().verdict == Verdict::ExpectedRefutation);
  CHECK(rep.pass());
  CHECK(run_report_to_json(rep)["cases"][0]["verdict"] == "expected_refutation");
}

TEST_CASE("classification and basis reports") {
  CHECK(verify_classification().pass());
  const RunReport b = verify_basis_properties(20, 20, 7);
  CHECK(b.pass());
  CHECK(run_report_to_json(verify_basis_properties(5, 5, 7)).dump() ==
        run_report_to_json(verify_basis_properties(5, 5, 7)).dump());
}

TEST_CASE("random stable samples are stable") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 2 + t % 2;
    const StableSample s = random_stable_sample(d, rng);
    CHECK(s.family.dim() == d);
    CHECK(s.u.size() == d);
    for (const Direction& u : s.u) CHECK(is_stable(s.family, u));
  }
}

TEST_CASE("run_task dispatches") {
  VerificationTask t;
  t.kind = TaskKind::TheoremBox;
  t.family = east2d();
  t.n = 1;
  CHECK(run_task(t).pass());
  t.kind = TaskKind::EastThreshold;
  t.n_max = 2;
  CHECK(run_task(t).task == "east-threshold");
}

TEST_CASE("sweep agrees with the threshold") {
  const std::string csv = sweep_csv(east1d(), "east1d", 3, std::nullopt, {}, false);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "family,n,N,reachable,states,millis");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    REQUIRE(f.size() >= 4);
    const unsigned n = static_cast<unsigned>(std::stoul(f[1]));
    const Coord N = std::stoll(f[2]);
    CHECK((f[3] == "true") == (N <= cdg_threshold(n)));
  }
  CHECK(rows == 2 + 4 + 8);
}
