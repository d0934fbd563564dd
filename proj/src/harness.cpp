#include "kcm/harness.hpp"

#include <chrono>
#include <sstream>

#include "kcm/constructions.hpp"
#include "kcm/error.hpp"

namespace kcm {

std::string_view to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::EastThreshold: return "east-threshold";
    case TaskKind::Fa1fMobility: return "fa1f";
    case TaskKind::TheoremBox: return "theorem";
    case TaskKind::LemmaZeroOutside: return "lemma";
    case TaskKind::Classification: return "classification";
    case TaskKind::BasisProperties: return "basis";
  }
  return "unknown";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::ExpectedRefutation: return "expected_refutation";
  }
  return "fail";
}

bool RunReport::any_truncated() const {
  return std::any_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.truncated; });
}

bool RunReport::pass() const {
  if (any_truncated()) return false;
  return std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.verdict != Verdict::Fail; });
}

Json run_report_to_json(const RunReport& report, bool include_timing) {
  Json doc;
  doc["task"] = report.task;
  doc["params"] = report.params;
  Json cases = Json::array();
  for (const CaseResult& c : report.cases) {
    Json j;
    j["label"] = c.label;
    j["verdict"] = std::string(to_string(c.verdict));
    j["states"] = c.states;
    j["truncated"] = c.truncated;
    j["detail"] = c.detail;
    if (include_timing) j["millis"] = c.millis;
    cases.push_back(std::move(j));
  }
  doc["cases"] = std::move(cases);
  doc["truncated"] = report.any_truncated();
  doc["pass"] = report.pass();
  return doc;
}

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

bool is_identity(const AdaptedBasis& basis) {
  for (std::size_t i = 0; i < basis.dim(); ++i)
    for (std::size_t k = 0; k < basis.dim(); ++k)
      if (basis.v[i][k] != (i == k ? 1 : 0)) return false;
  return true;
}

std::string describe(const Domain& d) {
  std::ostringstream os;
  os << d.size() << " sites";
  if (d.is_box()) {
    os << ", box [";
    for (std::size_t i = 0; i < d.dim(); ++i) os << (i ? "," : "") << d.lo()[i];
    os << "]..[";
    for (std::size_t i = 0; i < d.dim(); ++i) os << (i ? "," : "") << d.hi()[i];
    os << "]";
  }
  return os.str();
}

}  // namespace

TheoremWindow theorem_window(const UpdateFamily& family, unsigned n) {
  TheoremWindow w;
  w.classification = classify(family);
  if (w.classification != Classification::SupercriticalUnrooted) {
    if (auto u = find_spanning_stable_directions(family)) {
      AdaptedBasis basis = construct_basis(*u);
      if (!is_identity(basis)) w.basis = std::move(basis);
    }
  }
  const AdaptedBasis* basis = w.basis ? &*w.basis : nullptr;
  w.r = range(family, basis);
  w.pn = make_pn(n, w.r, family.dim(), basis);
  if (n > 0) w.pn_prev = make_pn(n - 1, w.r, family.dim(), basis);
  return w;
}

RunReport verify_theorem_box(const UpdateFamily& family, unsigned n, const SearchOptions& options,
                             const std::string& family_label) {
  const auto t0 = Clock::now();
  const TheoremWindow w = theorem_window(family, n);
  const PnSpec spec{n, w.r};

  RunReport report;
  report.task = "theorem";
  report.params = {{"family", family_label},
                   {"n", n},
                   {"classification", std::string(to_string(w.classification))},
                   {"r", w.r},
                   {"a_n", spec.a()},
                   {"b_n", spec.b()},
                   {"adapted_basis", w.basis.has_value()},
                   {"window_sites", w.pn->size()}};

  const SearchReport sr = origin_reachable(family, w.pn, n, BoundaryMode::OutsideAllZero, options);
  CaseResult c;
  c.label = "n=" + std::to_string(n) + " P_n=" + describe(*w.pn);
  c.states = sr.states_visited;
  c.truncated = sr.truncated;
  const bool unrooted = w.classification == Classification::SupercriticalUnrooted;
  if (sr.reached_target) {
    c.verdict = unrooted ? Verdict::ExpectedRefutation : Verdict::Fail;
    c.detail = unrooted ? "origin reached: the claim does not apply to supercritical unrooted families"
                        : "origin reached inside P_n";
  } else if (sr.truncated) {
    c.verdict = Verdict::Fail;
    c.detail = "search truncated before exhausting V(n, P_n)";
  } else {
    c.verdict = Verdict::Pass;
    c.detail = "|V(n,P_n)| = " + std::to_string(*sr.v_n_size) + ", origin never at 0";
  }
  c.millis = millis_since(t0);
  report.cases.push_back(std::move(c));
  return report;
}

RunReport verify_lemma_zero_outside(const UpdateFamily& family, unsigned n, const SearchOptions& options,
                                    const std::string& family_label) {
  if (n == 0) throw KcmError(ErrorCode::InvalidBudget, "the zero-outside check needs n >= 1");
  const auto t0 = Clock::now();
  const TheoremWindow w = theorem_window(family, n);

  RunReport report;
  report.task = "lemma";
  report.params = {{"family", family_label},
                   {"n", n},
                   {"classification", std::string(to_string(w.classification))},
                   {"r", w.r},
                   {"window_sites", w.pn->size()},
                   {"inner_sites", w.pn_prev->size()}};

  // Bits of P_n sites that lie in P_{n-1}.
  const Domain& pn = *w.pn;
  std::vector<std::uint64_t> inner((pn.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < pn.size(); ++i)
    if (w.pn_prev->contains(pn.site(i))) inner[i / 64] |= std::uint64_t{1} << (i % 64);

  SearchOptions opts = options;
  opts.target = [inner](const StateView& v) {
    if (v.zero_count() == 0) return false;
    for (std::size_t k = 0; k < inner.size(); ++k)
      if (v.words()[k] & ~inner[k]) return false;
    return true;
  };
  const SearchReport sr = explore(family, w.pn, n, BoundaryMode::OutsideAllZero, opts);

  CaseResult c;
  c.label = "n=" + std::to_string(n) + " P_n=" + describe(pn);
  c.states = sr.states_visited;
  c.truncated = sr.truncated;
  const bool unrooted = w.classification == Classification::SupercriticalUnrooted;
  if (sr.reached_target) {
    c.verdict = unrooted ? Verdict::ExpectedRefutation : Verdict::Fail;
    c.detail = "found a reachable state with every zero inside P_{n-1}";
  } else if (sr.truncated) {
    c.verdict = Verdict::Fail;
    c.detail = "search truncated before exhausting V(n, P_n)";
  } else {
    c.verdict = Verdict::Pass;
    c.detail = "|V(n,P_n)| = " + std::to_string(*sr.v_n_size) + ", each nonempty zero set leaves P_{n-1}";
  }
  c.millis = millis_since(t0);
  report.cases.push_back(std::move(c));
  return report;
}

RunReport verify_east_threshold(unsigned n_max, const SearchOptions& options) {
  if (n_max < 1) throw KcmError(ErrorCode::InvalidBudget, "n_max must be at least 1");
  RunReport report;
  report.task = "east-threshold";
  report.params = {{"n_max", n_max}};
  const UpdateFamily east = east1d();
  for (unsigned n = 1; n <= n_max; ++n) {
    const Coord threshold = cdg_threshold(n);
    for (Coord N = 0; N <= threshold + 1; ++N) {
      const auto t0 = Clock::now();
      const SearchReport sr =
          origin_reachable(east, make_centered_box(N, 1), n, BoundaryMode::OutsideAllZero, options);
      const bool expected = N <= threshold;
      CaseResult c;
      c.label = "n=" + std::to_string(n) + " N=" + std::to_string(N);
      c.states = sr.states_visited;
      c.truncated = sr.truncated;
      c.verdict = (!sr.truncated && sr.reached_target == expected) ? Verdict::Pass : Verdict::Fail;
      c.detail = std::string(sr.reached_target ? "reachable" : "unreachable") + ", expected " +
                 (expected ? "reachable" : "unreachable");
      c.millis = millis_since(t0);
      report.cases.push_back(std::move(c));
    }
  }
  return report;
}

RunReport verify_fa1f_mobility(const std::vector<Coord>& half_widths, Coord bfs_limit,
                               const SearchOptions& options) {
  RunReport report;
  report.task = "fa1f";
  report.params = {{"N", half_widths}, {"bfs_limit", bfs_limit}};
  const UpdateFamily fam = fa1f(1);
  for (Coord N : half_widths) {
    const DomainPtr box = make_centered_box(N, 1);
    if (N <= bfs_limit) {
      const auto t0 = Clock::now();
      const SearchReport sr = origin_reachable(fam, box, 2, BoundaryMode::OutsideAllZero, options);
      CaseResult c;
      c.label = "N=" + std::to_string(N) + " search n=2";
      c.states = sr.states_visited;
      c.truncated = sr.truncated;
      c.verdict = sr.reached_target ? Verdict::Pass : Verdict::Fail;
      c.detail = sr.reached_target ? "origin reachable" : "origin unreachable";
      c.millis = millis_since(t0);
      report.cases.push_back(std::move(c));
    }
    const auto t0 = Clock::now();
    PathCertificate cert = interval_walk_1d(fam, box);
    const CertificateCheck check = verify_certificate(cert, fam);
    CaseResult c;
    c.label = "N=" + std::to_string(N) + " interval walk";
    const bool origin_zero = check.ok && check.final_state->is_zero(Site{0});
    c.verdict = (check.ok && origin_zero && check.peak_zeros <= 2) ? Verdict::Pass : Verdict::Fail;
    c.detail = check.ok ? std::to_string(cert.flips.size()) + " flips, peak " + std::to_string(check.peak_zeros) +
                              " zeros" + (origin_zero ? ", origin at 0" : ", origin at 1")
                        : check.reason;
    c.millis = millis_since(t0);
    report.cases.push_back(std::move(c));
  }
  return report;
}

namespace {

std::vector<Direction> primitive_square(Coord bound) {
  std::vector<Direction> out;
  for (Coord x = -bound; x <= bound; ++x)
    for (Coord y = -bound; y <= bound; ++y)
      if (std::gcd(std::abs(x), std::abs(y)) == 1) out.push_back(Direction({x, y}));
  return out;
}

}  // namespace

RunReport verify_classification() {
  RunReport report;
  report.task = "classification";
  report.params = {{"arc_check_bound", 8}};

  struct Expectation {
    const char* name;
    Classification expected;
  };
  const Expectation expectations[] = {
      {"east1d", Classification::NotSupercriticalUnrooted},
      {"fa1f1d", Classification::SupercriticalUnrooted},
      {"fa1f2d", Classification::SupercriticalUnrooted},
      {"east2d", Classification::NotSupercriticalUnrooted},
      {"rooted_corner_2d", Classification::NotSupercriticalUnrooted},
  };
  for (const auto& e : expectations) {
    const auto t0 = Clock::now();
    const auto fam = builtin_family(e.name);
    const Classification got = classify(fam->family);
    CaseResult c;
    c.label = std::string("classify ") + e.name;
    c.verdict = got == e.expected ? Verdict::Pass : Verdict::Fail;
    c.detail = std::string(to_string(got));
    c.millis = millis_since(t0);
    report.cases.push_back(std::move(c));
  }

  const auto dirs = primitive_square(8);
  for (const char* name : {"fa1f2d", "east2d", "rooted_corner_2d"}) {
    const auto t0 = Clock::now();
    const UpdateFamily fam = builtin_family(name)->family;
    const ArcSet arcs = stable_arcs_2d(fam);
    std::size_t mismatches = 0;
    for (const Direction& w : dirs)
      if (arcs.contains(w) != is_stable(fam, w)) ++mismatches;
    CaseResult c;
    c.label = std::string("arcs ") + name;
    c.verdict = mismatches == 0 ? Verdict::Pass : Verdict::Fail;
    c.detail = std::to_string(dirs.size()) + " directions, " + std::to_string(mismatches) + " mismatches";
    c.millis = millis_since(t0);
    report.cases.push_back(std::move(c));
  }
  return report;
}

StableSample random_stable_sample(std::size_t d, std::mt19937_64& rng) {
  std::uniform_int_distribution<Coord> coord(-4, 4);
  std::vector<Direction> u;
  while (u.size() < d) {
    u.clear();
    std::vector<std::vector<Coord>> rows;
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<Coord> v(d);
      do {
        for (auto& x : v) x = coord(rng);
      } while (std::all_of(v.begin(), v.end(), [](Coord x) { return x == 0; }));
      rows.push_back(v);
      u.emplace_back(v);
    }
    if (rank(rows) < d) u.clear();
  }

  auto random_site = [&] {
    std::uniform_int_distribution<Coord> c(-3, 3);
    std::vector<Coord> s(d);
    do {
      for (auto& x : s) x = c(rng);
    } while (std::all_of(s.begin(), s.end(), [](Coord x) { return x == 0; }));
    return Site(std::move(s));
  };

  std::uniform_int_distribution<int> rule_count(1, 4);
  std::uniform_int_distribution<int> rule_size(1, 3);
  std::vector<std::vector<Site>> rules(static_cast<std::size_t>(rule_count(rng)));
  for (auto& rule : rules) {
    for (int k = rule_size(rng); k > 0; --k) rule.push_back(random_site());
    // Each u_i needs a site of the rule outside the open half-space H_{u_i}.
    for (const Direction& ui : u) {
      const bool inside = std::all_of(rule.begin(), rule.end(), [&](const Site& x) { return dot(x.coords, ui.vec()) < 0; });
      if (!inside) continue;
      Site extra;
      do extra = random_site();
      while (dot(extra.coords, ui.vec()) < 0);
      rule.push_back(std::move(extra));
    }
  }
  return StableSample{UpdateFamily(d, std::move(rules)), std::move(u)};
}

RunReport verify_basis_properties(std::size_t samples, std::size_t points_per_sample, std::uint64_t seed) {
  RunReport report;
  report.task = "basis";
  report.params = {{"samples_per_dimension", samples}, {"points_per_sample", points_per_sample}, {"seed", seed}};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Coord> coord(-20, 20);

  for (std::size_t d : {std::size_t{2}, std::size_t{3}}) {
    const auto t0 = Clock::now();
    std::size_t failures = 0;
    std::string first_failure;
    auto fail = [&](const std::string& why) {
      if (failures++ == 0) first_failure = why;
    };
    for (std::size_t s = 0; s < samples; ++s) {
      const StableSample sample = random_stable_sample(d, rng);
      for (const Direction& ui : sample.u)
        if (!is_stable(sample.family, ui)) fail("sample direction " + to_string(ui) + " not stable");
      const AdaptedBasis basis = construct_basis(sample.u);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          Rational ip = 0;
          for (std::size_t k = 0; k < d; ++k) ip += basis.v[i][k] * sample.u[j][k];
          if (i != j && ip != 0) fail("<v_i,u_j> != 0 for " + to_string(sample.u[j]));
          if (i == j && ip >= 0) fail("<v_i,u_i> >= 0 for " + to_string(sample.u[i]));
        }
      }
      RationalMatrix cols(d, RationalVector(d));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) cols[k][i] = basis.v[i][k];
      if (determinant(cols) == 0) fail("singular basis");

      for (std::size_t p = 0; p < points_per_sample; ++p) {
        std::vector<Coord> c(d);
        for (auto& x : c) x = coord(rng);
        const Site x(c);
        const RationalVector bc = to_basis_coords(x, basis);
        for (std::size_t i = 0; i < d; ++i)
          if ((bc[i] > 0) != (dot(c, sample.u[i].vec()) < 0)) fail("half-space mismatch at " + to_string(x));
        const RationalVector back = from_basis_coords(bc, basis);
        for (std::size_t k = 0; k < d; ++k)
          if (back[k] != c[k]) fail("round trip mismatch at " + to_string(x));
      }
    }
    CaseResult c;
    c.label = "d=" + std::to_string(d);
    c.verdict = failures == 0 ? Verdict::Pass : Verdict::Fail;
    c.detail = std::to_string(samples) + " bases, " + std::to_string(failures) + " violations" +
               (failures ? " (first: " + first_failure + ")" : "");
    c.millis = millis_since(t0);
    report.cases.push_back(std::move(c));
  }
  return report;
}

RunReport run_task(const VerificationTask& task) {
  switch (task.kind) {
    case TaskKind::EastThreshold: return verify_east_threshold(task.n_max, task.search);
    case TaskKind::Fa1fMobility: return verify_fa1f_mobility(task.half_widths, task.bfs_limit, task.search);
    case TaskKind::TheoremBox:
      if (!task.family) throw KcmError(ErrorCode::InvalidInput, "theorem task needs a family");
      return verify_theorem_box(*task.family, task.n, task.search, task.family_label);
    case TaskKind::LemmaZeroOutside:
      if (!task.family) throw KcmError(ErrorCode::InvalidInput, "lemma task needs a family");
      return verify_lemma_zero_outside(*task.family, task.n, task.search, task.family_label);
    case TaskKind::Classification: return verify_classification();
    case TaskKind::BasisProperties: return verify_basis_properties(task.samples, task.points_per_sample, task.seed);
  }
  throw KcmError(ErrorCode::InvalidInput, "unknown task kind");
}

std::string sweep_csv(const UpdateFamily& family, const std::string& label, unsigned n_max, std::optional<Coord> N_max,
                      const SearchOptions& options, bool include_timing) {
  std::ostringstream os;
  os << "family,n,N,reachable,states,millis\n";
  for (unsigned n = 1; n <= n_max; ++n) {
    const Coord last = N_max ? *N_max : (Coord{1} << n) - 1;
    for (Coord N = 0; N <= last; ++N) {
      const auto t0 = Clock::now();
      const SearchReport sr =
          origin_reachable(family, make_centered_box(N, family.dim()), n, BoundaryMode::OutsideAllZero, options);
      const double ms = include_timing ? millis_since(t0) : 0.0;
      os << label << ',' << n << ',' << N << ',' << (sr.truncated && !sr.reached_target ? "truncated" : sr.reached_target ? "true" : "false") << ','
         << sr.states_visited << ',' << ms << '\n';
    }
  }
  return os.str();
}

}  // namespace kcm
