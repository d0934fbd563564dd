// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Time limits are wall-clock and pinned below.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "kcm/constructions.hpp"
#include "kcm/dynamics.hpp"
#include "kcm/harness.hpp"
#include "kcm/io.hpp"
#include "kcm/search.hpp"
#include "oracle.hpp"

using namespace kcm;

namespace {

constexpr double kEastSmallLimitMs = 1000;    // n <= 3
constexpr double kEastLargeLimitMs = 60000;   // n = 4
constexpr double kFa1fLimitMs = 10000;
constexpr double kTheorem1dLimitMs = 5000;
constexpr double kTheorem2dLimitMs = 5000;
constexpr double kLemmaLimitMs = 5000;
constexpr std::size_t kBasisSamples = 200;
constexpr std::size_t kBasisPoints = 100;
constexpr std::uint64_t kBasisSeed = 20180501;
constexpr std::size_t kOracleMaxSites = 12;
constexpr std::size_t kOracleMaxBudget = 2;
constexpr int kPropertyInstances = 120;
constexpr unsigned kManyWorkers = 8;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string ms(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.0f ms", v);
  return buf;
}

SearchOptions workers(unsigned w) {
  SearchOptions o;
  o.workers = w;
  return o;
}

// Criterion 1 reports, split by the two time limits.
struct EastRun {
  RunReport small, large;
  double small_ms = 0, large_ms = 0;
};

EastRun east_threshold(unsigned w) {
  EastRun r;
  auto t0 = Clock::now();
  r.small = verify_east_threshold(3, workers(w));
  r.small_ms = ms_since(t0);
  t0 = Clock::now();
  r.large = verify_east_threshold(4, workers(w));
  r.large_ms = ms_since(t0);
  return r;
}

struct TheoremRun {
  std::vector<RunReport> east, corner;
  double east_ms = 0, corner2_ms = 0;
};

TheoremRun theorem(unsigned w) {
  TheoremRun r;
  auto t0 = Clock::now();
  for (unsigned n = 1; n <= 4; ++n) r.east.push_back(verify_theorem_box(east1d(), n, workers(w), "east1d"));
  r.east_ms = ms_since(t0);
  r.corner.push_back(verify_theorem_box(rooted_corner_2d(), 1, workers(w), "rooted_corner_2d"));
  t0 = Clock::now();
  r.corner.push_back(verify_theorem_box(rooted_corner_2d(), 2, workers(w), "rooted_corner_2d"));
  r.corner2_ms = ms_since(t0);
  return r;
}

std::string dump(const std::vector<RunReport>& reports) {
  Json arr = Json::array();
  for (const auto& rep : reports) arr.push_back(run_report_to_json(rep));
  return arr.dump();
}

// Criterion 7: |V(n, box)| from the engine against the naive fixed point.
struct OracleRun {
  Json sizes = Json::array();
  int mismatches = 0;
  int instances = 0;
};

OracleRun oracle_equivalence(unsigned w) {
  OracleRun r;
  const std::vector<std::pair<std::string, UpdateFamily>> families{{"east1d", east1d()}, {"fa1f1d", fa1f(1)}};
  for (const auto& [label, fam] : families) {
    for (std::size_t m = 1; m <= kOracleMaxSites; ++m) {
      // Origin at the left end, middle and right end.
      for (Coord lo : {Coord{0}, -static_cast<Coord>(m / 2), -static_cast<Coord>(m - 1)}) {
        const DomainPtr box = make_box({{lo}, {lo + static_cast<Coord>(m) - 1}});
        for (std::size_t n = 0; n <= kOracleMaxBudget; ++n) {
          for (BoundaryMode mode : {BoundaryMode::OutsideAllZero, BoundaryMode::OutsideAllOne}) {
            const SearchReport rep = explore(fam, box, n, mode, workers(w));
            const std::size_t want = oracle::reachable(fam, box->sites(), n, mode == BoundaryMode::OutsideAllZero).size();
            ++r.instances;
            if (rep.truncated || !rep.v_n_size || *rep.v_n_size != want) ++r.mismatches;
            r.sizes.push_back({label, lo, m, n, std::string(to_string(mode)), rep.v_n_size.value_or(0)});
          }
        }
      }
    }
  }
  return r;
}

std::vector<Site> zeros_of(const StateKey& key, const Domain& d) {
  std::vector<Site> z;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (key.test(i)) z.push_back(d.site(i));
  return z;
}

UpdateFamily random_family(std::mt19937_64& rng, std::size_t d) {
  std::uniform_int_distribution<Coord> c(d == 1 ? -2 : -1, d == 1 ? 2 : 1);
  std::uniform_int_distribution<int> count(1, 3);
  std::vector<std::vector<Site>> rules(static_cast<std::size_t>(count(rng)));
  for (auto& rule : rules) {
    for (int k = count(rng) % 2 + 1; k > 0; --k) {
      std::vector<Coord> v(d);
      do
        for (auto& x : v) x = c(rng);
      while (std::all_of(v.begin(), v.end(), [](Coord x) { return x == 0; }));
      rule.emplace_back(v);
    }
  }
  return UpdateFamily(d, rules);
}

DomainPtr random_box(std::mt19937_64& rng, std::size_t d) {
  std::uniform_int_distribution<Coord> lo(d == 1 ? -5 : -2, 0), hi(0, d == 1 ? 5 : 2);
  std::vector<Coord> a(d), b(d);
  for (std::size_t i = 0; i < d; ++i) {
    a[i] = lo(rng);
    b[i] = hi(rng);
  }
  return make_box({a, b});
}

std::set<std::vector<Site>> reachable_set(const UpdateFamily& fam, const DomainPtr& box, std::size_t n, BoundaryMode mode) {
  SearchOptions o;
  o.collect_states = true;
  const SearchReport rep = explore(fam, box, n, mode, o);
  std::set<std::vector<Site>> out;
  for (const StateKey& k : rep.states) out.insert(zeros_of(k, *box));
  return out;
}

}  // namespace

int main() {
  // 1. East threshold.
  {
    const EastRun run = east_threshold(1);
    report(1, "East threshold n<=3", run.small.pass() && run.small_ms < kEastSmallLimitMs,
           std::to_string(run.small.cases.size()) + " cases, " + ms(run.small_ms) + " (limit " + ms(kEastSmallLimitMs) + ")");
    report(1, "East threshold n<=4", run.large.pass() && run.large_ms < kEastLargeLimitMs,
           std::to_string(run.large.cases.size()) + " cases, " + ms(run.large_ms) + " (limit " + ms(kEastLargeLimitMs) + ")");
  }

  // 2. FA1f mobility.
  {
    const auto t0 = Clock::now();
    const RunReport bfs = verify_fa1f_mobility({0, 1, 2, 3, 4, 5, 6, 7, 8, 10000}, 8);
    const PathCertificate cert = interval_walk_1d(fa1f(1), make_centered_box(10000, 1));
    const CertificateCheck check = verify_certificate(cert, fa1f(1));
    const bool origin_zero = check.final_state && check.final_state->is_zero(Site{0});
    const double t = ms_since(t0);
    report(2, "FA1f mobility", bfs.pass() && check.ok && check.peak_zeros == 2 && origin_zero && t < kFa1fLimitMs,
           std::to_string(bfs.cases.size()) + " cases, N=10^4 walk of " + std::to_string(cert.flips.size()) +
               " flips, peak " + std::to_string(check.peak_zeros) + ", " + ms(t));
  }

  // 3. Theorem desk check.
  const TheoremRun thm = theorem(1);
  {
    bool east_ok = true, corner_ok = true;
    std::uint64_t states = 0;
    for (const auto& r : thm.east) east_ok = east_ok && r.pass() && r.cases.front().verdict == Verdict::Pass;
    for (const auto& r : thm.corner) corner_ok = corner_ok && r.pass() && r.cases.front().verdict == Verdict::Pass;
    for (const auto& r : thm.corner) states += r.cases.front().states;
    const TheoremWindow w = theorem_window(rooted_corner_2d(), 2);
    report(3, "Theorem on P_n, East n=1..4", east_ok && thm.east_ms < kTheorem1dLimitMs, ms(thm.east_ms));
    report(3, "Theorem on P_n, rooted_corner_2d n=1,2",
           corner_ok && w.pn->size() == 64 && thm.corner2_ms < kTheorem2dLimitMs,
           std::to_string(states) + " states, |P_2|=" + std::to_string(w.pn->size()) + ", n=2 in " + ms(thm.corner2_ms));
  }

  // 4. Lemma desk check.
  {
    const auto t0 = Clock::now();
    bool ok = true;
    for (unsigned n = 1; n <= 3; ++n) ok = ok && verify_lemma_zero_outside(east1d(), n, {}, "east1d").pass();
    const double t = ms_since(t0);
    report(4, "Lemma zero outside P_{n-1}, East n=1..3", ok && t < kLemmaLimitMs, ms(t));
  }

  // 5. Classification.
  {
    const bool builtins = classify(east1d()) == Classification::NotSupercriticalUnrooted &&
                          classify(fa1f(1)) == Classification::SupercriticalUnrooted &&
                          classify(fa1f(2)) == Classification::SupercriticalUnrooted &&
                          classify(east2d()) == Classification::NotSupercriticalUnrooted &&
                          classify(rooted_corner_2d()) == Classification::NotSupercriticalUnrooted;
    const RunReport arcs = verify_classification();
    report(5, "Classification and arc sets", builtins && arcs.pass(),
           std::to_string(arcs.cases.size()) + " cases");
  }

  // 6. Basis properties.
  {
    const RunReport rep = verify_basis_properties(kBasisSamples, kBasisPoints, kBasisSeed);
    std::string detail = std::to_string(kBasisSamples) + " sets x " + std::to_string(kBasisPoints) + " points per d";
    for (const auto& c : rep.cases)
      if (c.verdict == Verdict::Fail) detail += "; " + c.label + ": " + c.detail;
    report(6, "Adapted basis properties", rep.pass(), detail);
  }

  // 7. Oracle equivalence.
  const OracleRun orc = oracle_equivalence(1);
  report(7, "Engine vs naive fixed point", orc.mismatches == 0,
         std::to_string(orc.instances) + " instances, " + std::to_string(orc.mismatches) + " mismatches");

  // 8. Property suites.
  {
    std::mt19937_64 rng(8);
    int reversal_fail = 0, monotone_fail = 0, boundary_fail = 0, bootstrap_fail = 0;
    for (int t = 0; t < kPropertyInstances; ++t) {
      const std::size_t d = 1 + static_cast<std::size_t>(t % 2);
      const UpdateFamily fam = random_family(rng, d);
      const DomainPtr box = random_box(rng, d);
      const std::size_t n = 1 + static_cast<std::size_t>(rng() % 3);

      // Path reversal: a certificate to a random reachable state, reversed,
      // is an n-legal path back to all ones.
      SearchOptions all;
      all.collect_states = true;
      const SearchReport rep = explore(fam, box, n, BoundaryMode::OutsideAllZero, all);
      const StateKey& goal = rep.states[rng() % rep.states.size()];
      SearchOptions to_goal;
      to_goal.target = equals_state(goal);
      to_goal.want_certificate = true;
      const SearchReport hit = explore(fam, box, n, BoundaryMode::OutsideAllZero, to_goal);
      bool rev_ok = hit.reached_target && hit.certificate.has_value();
      if (rev_ok) {
        const CertificateCheck back = verify_certificate(reverse_certificate(*hit.certificate), fam);
        rev_ok = back.ok && back.peak_zeros <= n && back.final_state && back.final_state->zero_count() == 0;
      }
      if (!rev_ok) ++reversal_fail;

      // Budget monotonicity.
      const auto vn = reachable_set(fam, box, n, BoundaryMode::OutsideAllZero);
      const auto vn1 = reachable_set(fam, box, n + 1, BoundaryMode::OutsideAllZero);
      if (!std::includes(vn1.begin(), vn1.end(), vn.begin(), vn.end())) ++monotone_fail;

      // Boundary restriction: closed-boundary states are open-boundary states.
      const auto closed = reachable_set(fam, box, n, BoundaryMode::OutsideAllOne);
      if (!std::includes(vn.begin(), vn.end(), closed.begin(), closed.end())) ++boundary_fail;

      // Bootstrap monotonicity and idempotence.
      std::bernoulli_distribution coin(0.2);
      std::vector<Site> a, b;
      for (const Site& s : box->sites()) {
        const bool in_a = coin(rng);
        if (in_a) a.push_back(s);
        if (in_a || coin(rng)) b.push_back(s);
      }
      const BootstrapState sa(box, a), sb(box, b);
      const ClosureResult ca = bootstrap_closure(sa, fam), cb = bootstrap_closure(sb, fam);
      const bool boot_ok = sa.infected.is_subset_of(bootstrap_step(sa, fam).infected) &&
                           bootstrap_step(sa, fam).infected.is_subset_of(bootstrap_step(sb, fam).infected) &&
                           ca.state.infected.is_subset_of(cb.state.infected) &&
                           bootstrap_closure(ca.state, fam).state.infected == ca.state.infected;
      if (!boot_ok) ++bootstrap_fail;
    }
    const std::string inst = std::to_string(kPropertyInstances) + " instances";
    report(8, "Path reversal", reversal_fail == 0, inst + ", " + std::to_string(reversal_fail) + " failures");
    report(8, "Budget monotonicity", monotone_fail == 0, inst + ", " + std::to_string(monotone_fail) + " failures");
    report(8, "Boundary restriction", boundary_fail == 0, inst + ", " + std::to_string(boundary_fail) + " failures");
    report(8, "Bootstrap monotone and idempotent", bootstrap_fail == 0,
           inst + ", " + std::to_string(bootstrap_fail) + " failures");
  }

  // 9. Determinism across worker counts.
  {
    const EastRun e1 = east_threshold(1), e8 = east_threshold(kManyWorkers);
    const bool east_same = dump({e1.small, e1.large}) == dump({e8.small, e8.large});
    const TheoremRun t8 = theorem(kManyWorkers);
    const bool thm_same = dump(thm.east) == dump(t8.east) && dump(thm.corner) == dump(t8.corner);
    const bool orc_same = orc.sizes.dump() == oracle_equivalence(kManyWorkers).sizes.dump();
    report(9, "Identical reports with 1 and " + std::to_string(kManyWorkers) + " workers",
           east_same && thm_same && orc_same,
           std::string("east ") + (east_same ? "same" : "differs") + ", theorem " + (thm_same ? "same" : "differs") +
               ", oracle " + (orc_same ? "same" : "differs"));
  }

  std::printf("%s: %d failing criteria lines\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
