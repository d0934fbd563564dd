#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "kcm/constructions.hpp"
#include "kcm/error.hpp"
#include "kcm/search.hpp"
#include "oracle.hpp"

using namespace kcm;

namespace {

std::vector<Site> zeros_of(const StateKey& key, const Domain& d) {
  std::vector<Site> z;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (key.test(i)) z.push_back(d.site(i));
  return z;
}

std::set<std::vector<Site>> engine_states(const UpdateFamily& fam, const DomainPtr& dom, std::size_t n,
                                          BoundaryMode mode, unsigned workers = 1) {
  SearchOptions opt;
  opt.collect_states = true;
  opt.workers = workers;
  const SearchReport rep = explore(fam, dom, n, mode, opt);
  REQUIRE_FALSE(rep.truncated);
  std::set<std::vector<Site>> out;
  for (const StateKey& k : rep.states) out.insert(zeros_of(k, *dom));
  return out;
}

UpdateFamily random_family_1d(std::mt19937_64& rng) {
  std::uniform_int_distribution<Coord> c(-2, 2);
  std::uniform_int_distribution<int> count(1, 3);
  std::vector<std::vector<Site>> rules(static_cast<std::size_t>(count(rng)));
  for (auto& rule : rules) {
    for (int k = count(rng) % 2 + 1; k > 0; --k) {
      Coord x;
      do x = c(rng);
      while (x == 0);
      rule.push_back(Site{x});
    }
  }
  return UpdateFamily(1, rules);
}

UpdateFamily random_family_2d(std::mt19937_64& rng) {
  std::uniform_int_distribution<Coord> c(-1, 1);
  std::uniform_int_distribution<int> count(1, 3);
  std::vector<std::vector<Site>> rules(static_cast<std::size_t>(count(rng)));
  for (auto& rule : rules) {
    for (int k = count(rng) % 2 + 1; k > 0; --k) {
      Site s;
      do s = Site{c(rng), c(rng)};
      while (s.is_origin());
      rule.push_back(s);
    }
  }
  return UpdateFamily(2, rules);
}

}  // namespace

TEST_CASE("StateKey round trip") {
  const DomainPtr box = make_box({{0, 0}, {9, 9}});
  const Configuration cfg(box, {Site{0, 0}, Site{4, 7}, Site{9, 9}});
  const StateKey key = StateKey::encode(cfg);
  CHECK(key.zero_count() == 3);
  CHECK(key.words().size() == 2);
  CHECK(key.decode(box, BoundaryMode::OutsideAllZero) == cfg);
}

TEST_CASE("explore: East examples") {
  const UpdateFamily east = east1d();
  const DomainPtr line = make_box({{-2}, {2}});

  const SearchReport zero_budget = explore(east, line, 0, BoundaryMode::OutsideAllZero);
  CHECK(zero_budget.states_visited == 1);
  CHECK(zero_budget.v_n_size == 1u);

  // One zero: only the leftmost site can be flipped.
  const SearchReport one = explore(east, line, 1, BoundaryMode::OutsideAllZero);
  CHECK(one.v_n_size == 2u);

  CHECK(origin_reachable(east, line, 2, BoundaryMode::OutsideAllZero).reached_target);
  CHECK_FALSE(origin_reachable(east, line, 1, BoundaryMode::OutsideAllZero).reached_target);
  CHECK_FALSE(origin_reachable(east, line, 3, BoundaryMode::OutsideAllOne).reached_target);

  const DomainPtr single = make_box({{0}, {0}});
  CHECK(origin_reachable(east, single, 1, BoundaryMode::OutsideAllZero).reached_target);
}

TEST_CASE("explore agrees with the reference fixed point") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 60; ++t) {
    const bool two = t % 2;
    const UpdateFamily fam = two ? random_family_2d(rng) : random_family_1d(rng);
    const DomainPtr dom = two ? make_box({{-1, -1}, {1, 2}}) : make_box({{-5}, {4}});
    const std::size_t n = static_cast<std::size_t>(t % 3);
    for (BoundaryMode mode : {BoundaryMode::OutsideAllZero, BoundaryMode::OutsideAllOne}) {
      const auto want = oracle::reachable(fam, dom->sites(), n, mode == BoundaryMode::OutsideAllZero);
      CHECK(engine_states(fam, dom, n, mode) == want);
    }
  }
}

TEST_CASE("V(n) grows with n and with an open boundary") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 30; ++t) {
    const UpdateFamily fam = random_family_2d(rng);
    const DomainPtr dom = make_box({{-2, -2}, {1, 1}});
    std::set<std::vector<Site>> prev;
    for (std::size_t n = 0; n <= 3; ++n) {
      const auto open = engine_states(fam, dom, n, BoundaryMode::OutsideAllZero);
      const auto closed = engine_states(fam, dom, n, BoundaryMode::OutsideAllOne);
      CHECK(std::includes(open.begin(), open.end(), prev.begin(), prev.end()));
      CHECK(std::includes(open.begin(), open.end(), closed.begin(), closed.end()));
      for (const auto& z : open) CHECK(z.size() <= n);
      prev = open;
    }
  }
}

TEST_CASE("certificates to reachable states replay and reverse") {
  std::mt19937_64 rng(44);
  const UpdateFamily fam = fa1f(2);
  const DomainPtr dom = make_box({{-2, -2}, {2, 1}});
  const std::size_t n = 3;
  SearchOptions all;
  all.collect_states = true;
  const SearchReport rep = explore(fam, dom, n, BoundaryMode::OutsideAllZero, all);
  REQUIRE(rep.states.size() > 100);

  for (int t = 0; t < 100; ++t) {
    const StateKey& goal = rep.states[rng() % rep.states.size()];
    SearchOptions opt;
    opt.target = equals_state(goal);
    opt.want_certificate = true;
    const SearchReport hit = explore(fam, dom, n, BoundaryMode::OutsideAllZero, opt);
    REQUIRE(hit.reached_target);
    REQUIRE(hit.certificate);
    const CertificateCheck fwd = verify_certificate(*hit.certificate, fam);
    CHECK(fwd.ok);
    CHECK(fwd.peak_zeros <= n);
    REQUIRE(fwd.final_state);
    CHECK(StateKey::encode(*fwd.final_state) == goal);

    const CertificateCheck back = verify_certificate(reverse_certificate(*hit.certificate), fam);
    CHECK(back.ok);
    REQUIRE(back.final_state);
    CHECK(back.final_state->zero_count() == 0);
  }
}

TEST_CASE("counts and certificates do not depend on the worker count") {
  const UpdateFamily fam(2, {{Site{-1, 0}, Site{0, -1}}, {Site{1, 0}}, {Site{0, 1}, Site{1, 1}}});
  const DomainPtr dom = make_box({{-3, -3}, {3, 2}});
  std::optional<SearchReport> base;
  for (unsigned w : {1u, 2u, 8u}) {
    SearchOptions opt;
    opt.workers = w;
    opt.want_certificate = true;
    const SearchReport rep = origin_reachable(fam, dom, 3, BoundaryMode::OutsideAllZero, opt);
    SearchOptions full;
    full.workers = w;
    const SearchReport ex = explore(fam, dom, 3, BoundaryMode::OutsideAllZero, full);
    if (!base) {
      base = rep;
      base->max_frontier = ex.states_visited;
      continue;
    }
    CHECK(rep.reached_target == base->reached_target);
    CHECK(rep.states_visited == base->states_visited);
    CHECK(rep.depth == base->depth);
    CHECK(ex.states_visited == base->max_frontier);
    REQUIRE(rep.certificate.has_value() == base->certificate.has_value());
    if (rep.certificate) CHECK(rep.certificate->flips == base->certificate->flips);
  }
}

TEST_CASE("verify_certificate rejects bad paths") {
  const UpdateFamily east = east1d();
  const DomainPtr line = make_box({{-2}, {2}});

  PathCertificate good{line, BoundaryMode::OutsideAllZero, 2, {}, {Site{-2}, Site{-1}, Site{-2}, Site{0}}};
  CHECK(verify_certificate(good, east).ok);

  PathCertificate illegal = good;
  illegal.flips = {Site{-2}, Site{0}};
  const CertificateCheck a = verify_certificate(illegal, east);
  CHECK_FALSE(a.ok);
  CHECK(a.failure_index == 1u);

  PathCertificate over = good;
  over.n = 1;
  const CertificateCheck b = verify_certificate(over, east);
  CHECK_FALSE(b.ok);
  CHECK(b.failure_index == 1u);

  PathCertificate outside = good;
  outside.flips = {Site{-3}};
  const CertificateCheck c = verify_certificate(outside, east);
  CHECK_FALSE(c.ok);
  CHECK(c.failure_index == 0u);

  PathCertificate closed = good;
  closed.boundary = BoundaryMode::OutsideAllOne;
  CHECK_FALSE(verify_certificate(closed, east).ok);
}

TEST_CASE("min_zero_budget") {
  CHECK(min_zero_budget(east1d(), make_box({{-2}, {2}}), BoundaryMode::OutsideAllZero, 5) == 2u);
  CHECK(min_zero_budget(east1d(), make_box({{-6}, {6}}), BoundaryMode::OutsideAllZero, 5) == 3u);
  CHECK(min_zero_budget(east1d(), make_box({{0}, {0}}), BoundaryMode::OutsideAllZero, 5) == 1u);
  CHECK(min_zero_budget(fa1f(1), make_box({{-10}, {10}}), BoundaryMode::OutsideAllZero, 4) == 2u);
  CHECK_FALSE(min_zero_budget(east1d(), make_box({{-2}, {2}}), BoundaryMode::OutsideAllOne, 5).has_value());
}

TEST_CASE("a small state cap truncates the search") {
  SearchOptions opt;
  opt.caps.max_states = 10;
  const SearchReport rep = explore(fa1f(2), make_box({{-3, -3}, {3, 3}}), 3, BoundaryMode::OutsideAllZero, opt);
  CHECK(rep.truncated);
  CHECK_FALSE(rep.v_n_size.has_value());
  CHECK(rep.states_visited <= 10);

  try {
    min_zero_budget(fa1f(2), make_box({{-3, -3}, {3, 3}}), BoundaryMode::OutsideAllZero, 3, opt);
    FAIL("expected ResourceCapExceeded");
  } catch (const KcmError& e) {
    CHECK(e.code() == ErrorCode::ResourceCapExceeded);
  }
}

TEST_CASE("site_is_zero rejects sites outside the domain") {
  const DomainPtr line = make_box({{0}, {3}});
  CHECK_THROWS_AS(site_is_zero(*line, Site{4}), KcmError);
}
