#include "kcm/cli.hpp"

#include "CLI11.hpp"

#include <charconv>
#include <optional>
#include <ostream>
#include <sstream>

#include "kcm/constructions.hpp"
#include "kcm/dynamics.hpp"
#include "kcm/error.hpp"
#include "kcm/harness.hpp"
#include "kcm/io.hpp"
#include "kcm/lattice.hpp"
#include "kcm/search.hpp"

namespace kcm {

namespace {

struct FamilyChoice {
  std::string file;
  std::string name;

  void add_to(CLI::App* cmd, bool required = true) {
    auto* f = cmd->add_option("-f,--file", file, "Family JSON file {\"d\":..,\"rules\":[..]}");
    auto* n = cmd->add_option("--family", name, "Builtin family: east1d, fa1f1d, fa1f2d, fa1f:<d>, east2d, rooted_corner_2d");
    f->excludes(n);
    if (required) cmd->require_option(1, 0);
  }

  bool given() const { return !file.empty() || !name.empty(); }

  BuiltinFamily load() const {
    if (!file.empty()) return BuiltinFamily{file, load_family_file(file)};
    if (name.empty()) throw KcmError(ErrorCode::InvalidInput, "pass a family with -f FILE or --family NAME");
    auto b = builtin_family(name);
    if (!b) throw KcmError(ErrorCode::InvalidInput, "unknown builtin family \"" + name + "\"");
    return *b;
  }
};

Coord parse_int(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  Coord v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw KcmError(ErrorCode::InvalidInput, "not an integer: \"" + std::string(s) + "\"");
  return v;
}

std::vector<Coord> parse_coords(std::string_view s) {
  std::vector<Coord> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    out.push_back(parse_int(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// "LO..HI" with scalar bounds (broadcast to every axis) or comma-separated
// vectors, e.g. "-3..3" or "-1,-2..1,2".
BoxSpec parse_box(const std::string& text, std::size_t d) {
  const std::size_t dots = text.find("..");
  if (dots == std::string::npos) throw KcmError(ErrorCode::InvalidInput, "box must look like LO..HI");
  std::vector<Coord> lo = parse_coords(std::string_view(text).substr(0, dots));
  std::vector<Coord> hi = parse_coords(std::string_view(text).substr(dots + 2));
  if (lo.size() == 1 && d > 1) lo.assign(d, lo[0]);
  if (hi.size() == 1 && d > 1) hi.assign(d, hi[0]);
  if (lo.size() != d || hi.size() != d)
    throw KcmError(ErrorCode::DimensionMismatch, "box bounds must have " + std::to_string(d) + " coordinates");
  return BoxSpec{lo, hi};
}

// Sites separated by ';', coordinates by ','.
std::vector<Site> parse_sites(const std::string& text) {
  std::vector<Site> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t semi = text.find(';', start);
    const std::string part = text.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
    if (part.find_first_not_of(' ') != std::string::npos) out.emplace_back(parse_coords(part));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return out;
}

std::string describe_stable_set(const UpdateFamily& family) {
  std::ostringstream os;
  if (family.dim() == 1) {
    os << '{';
    const auto s = stable_set_1d(family);
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? ", " : "") << (s[i][0] > 0 ? "+1" : "-1");
    os << '}';
  } else if (family.dim() == 2) {
    const ArcSet arcs = stable_arcs_2d(family);
    if (arcs.is_full()) return "all directions";
    if (arcs.empty()) return "{}";
    for (std::size_t i = 0; i < arcs.arcs().size(); ++i) {
      const auto& a = arcs.arcs()[i];
      os << (i ? " u " : "");
      if (a.is_point())
        os << '{' << to_string(a.start) << '}';
      else
        os << (a.start_closed ? '[' : '(') << to_string(a.start) << " ccw " << to_string(a.end)
           << (a.end_closed ? ']' : ')');
    }
  } else {
    const auto u = find_spanning_stable_directions(family);
    if (!u) return "no spanning set found within the search bound";
    os << "spanning set ";
    for (std::size_t i = 0; i < u->size(); ++i) os << (i ? ", " : "") << to_string((*u)[i]);
  }
  return os.str();
}

int report_exit(const RunReport& report) {
  if (report.pass()) return kExitOk;
  return report.any_truncated() ? kExitTruncated : kExitVerificationFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact reachability toolkit for kinetically constrained models"};
  app.require_subcommand(1);

  unsigned workers = 1;
  std::uint64_t max_states = default_max_states();
  app.add_option("--workers", workers, "Search worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--max-states", max_states,
                 "Visited-state cap (default 2^26 or $KCM_MAX_STATES)");

  // classify
  FamilyChoice classify_family;
  bool classify_json = false;
  auto* classify_cmd = app.add_subcommand("classify", "Stable directions, classification and range of a family");
  classify_family.add_to(classify_cmd);
  classify_cmd->add_flag("--json", classify_json, "Print JSON");

  // reach
  FamilyChoice reach_family;
  std::string reach_box, reach_boundary = "zero", reach_cert;
  std::size_t reach_budget = 0;
  auto* reach_cmd = app.add_subcommand("reach", "Is the origin reachable with at most n zeros?");
  reach_family.add_to(reach_cmd);
  reach_cmd->add_option("--box", reach_box, "Domain LO..HI")->required();
  reach_cmd->add_option("--budget,-n", reach_budget, "Zero budget n")->required();
  reach_cmd->add_option("--boundary", reach_boundary, "Outside sites: zero|one")->check(CLI::IsMember({"zero", "one"}));
  reach_cmd->add_option("--certificate", reach_cert, "Write a certificate JSON when reachable");

  // bootstrap
  FamilyChoice boot_family;
  std::string boot_box, boot_seed;
  auto* boot_cmd = app.add_subcommand("bootstrap", "Bootstrap percolation closure on a finite region");
  boot_family.add_to(boot_cmd);
  boot_cmd->add_option("--box", boot_box, "Region LO..HI")->required();
  boot_cmd->add_option("--seed", boot_seed, "Initially infected sites, e.g. \"0;3\" or \"0,0;1,0\"")->required();

  // check
  FamilyChoice check_family;
  std::string check_cert;
  auto* check_cmd = app.add_subcommand("check", "Replay a certificate");
  check_family.add_to(check_cmd);
  check_cmd->add_option("--certificate,-c", check_cert, "Certificate JSON")->required()->check(CLI::ExistingFile);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification task and print its report");
  verify_cmd->require_subcommand(1);
  bool verify_no_timing = false;
  verify_cmd->add_flag("--no-timing", verify_no_timing, "Omit timing fields from the report");

  unsigned east_n_max = 3;
  auto* v_east = verify_cmd->add_subcommand("east-threshold", "East: origin reachable on {-N..N} iff N <= 2^n - 2");
  v_east->add_option("--n-max", east_n_max, "Largest budget")->check(CLI::Range(1u, 12u));

  std::vector<Coord> fa_N{0, 1, 2, 3, 4, 5, 6, 7, 8, 1000};
  Coord fa_bfs_limit = 8;
  auto* v_fa = verify_cmd->add_subcommand("fa1f", "FA1f: two zeros reach the origin of any box");
  v_fa->add_option("--N", fa_N, "Half-widths N")->delimiter(',');
  v_fa->add_option("--bfs-limit", fa_bfs_limit, "Use search for N up to this value");

  FamilyChoice thm_family;
  unsigned thm_n = 2;
  auto* v_thm = verify_cmd->add_subcommand("theorem", "Every state of V(n, P_n) keeps the origin at 1");
  thm_family.add_to(v_thm);
  v_thm->add_option("--n", thm_n, "Zero budget")->check(CLI::Range(0u, 12u));

  FamilyChoice lem_family;
  unsigned lem_n = 2;
  auto* v_lem = verify_cmd->add_subcommand("lemma", "Nonempty states of V(n, P_n) have a zero outside P_{n-1}");
  lem_family.add_to(v_lem);
  v_lem->add_option("--n", lem_n, "Zero budget")->check(CLI::Range(1u, 12u));

  std::size_t basis_samples = 200, basis_points = 100;
  std::uint64_t basis_seed = 20180501;
  auto* v_basis = verify_cmd->add_subcommand("basis", "Adapted basis properties on random stable direction sets");
  v_basis->add_option("--samples", basis_samples, "Random direction sets per dimension");
  v_basis->add_option("--points", basis_points, "Random lattice points per set");
  v_basis->add_option("--seed", basis_seed, "RNG seed");

  auto* v_class = verify_cmd->add_subcommand("classification", "Builtin family classes and arc-set cross-check");

  // sweep
  FamilyChoice sweep_family;
  unsigned sweep_n_max = 3;
  std::optional<Coord> sweep_N_max;
  auto* sweep_cmd = app.add_subcommand("sweep", "CSV of origin reachability over budgets and box sizes");
  sweep_family.add_to(sweep_cmd, false);
  sweep_cmd->add_option("--n-max", sweep_n_max, "Largest budget")->check(CLI::Range(1u, 12u));
  sweep_cmd->add_option("--N-max", sweep_N_max, "Largest half-width (default 2^n - 1)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  SearchOptions search;
  search.workers = workers;
  search.caps.max_states = max_states;

  try {
    if (*classify_cmd) {
      const BuiltinFamily fam = classify_family.load();
      const Classification c = classify(fam.family);
      const auto u = c == Classification::SupercriticalUnrooted ? std::nullopt
                                                                : find_spanning_stable_directions(fam.family);
      std::optional<AdaptedBasis> basis;
      if (u) basis = construct_basis(*u);
      if (classify_json) {
        Json doc;
        doc["family"] = fam.name;
        doc["d"] = fam.family.dim();
        doc["classification"] = std::string(to_string(c));
        doc["stable"] = describe_stable_set(fam.family);
        doc["r"] = range(fam.family);
        if (basis) {
          Json dirs = Json::array();
          for (const auto& x : basis->u) dirs.push_back(x.vec());
          doc["basis_directions"] = dirs;
          doc["r_basis"] = range(fam.family, &*basis);
        }
        out << doc.dump(2) << "\n";
      } else {
        out << "family: " << fam.name << "\n";
        out << "d: " << fam.family.dim() << "\n";
        out << "classification: " << to_string(c) << "\n";
        out << "stable directions: " << describe_stable_set(fam.family) << "\n";
        out << "r: " << range(fam.family) << "\n";
        if (basis) {
          out << "adapted basis directions:";
          for (const auto& x : basis->u) out << ' ' << to_string(x);
          out << "\nr (adapted basis): " << range(fam.family, &*basis) << "\n";
        }
      }
      return kExitOk;
    }

    if (*reach_cmd) {
      const BuiltinFamily fam = reach_family.load();
      const DomainPtr domain = make_box(parse_box(reach_box, fam.family.dim()));
      if (!domain->contains(origin(fam.family.dim())))
        throw KcmError(ErrorCode::InvalidInput, "the box must contain the origin");
      search.want_certificate = !reach_cert.empty();
      const SearchReport r =
          origin_reachable(fam.family, domain, reach_budget, boundary_from_string(reach_boundary), search);
      Json doc = report_to_json(r);
      doc.erase("certificate");
      out << doc.dump(2) << "\n";
      if (r.certificate) write_json_file(reach_cert, certificate_to_json(*r.certificate));
      if (r.truncated && !r.reached_target) {
        err << "ResourceCapExceeded: search truncated after " << r.states_visited << " states\n";
        return kExitTruncated;
      }
      return kExitOk;
    }

    if (*boot_cmd) {
      const BuiltinFamily fam = boot_family.load();
      const DomainPtr region = make_box(parse_box(boot_box, fam.family.dim()));
      const ClosureResult res = bootstrap_closure(BootstrapState(region, parse_sites(boot_seed)), fam.family);
      Json doc;
      doc["region"] = domain_to_json(*region);
      doc["steps"] = res.steps;
      Json infected = Json::array();
      for (const Site& s : res.state.infected_sites()) infected.push_back(site_to_json(s));
      doc["infected_count"] = infected.size();
      doc["infected"] = std::move(infected);
      const auto o = region->index_of(origin(fam.family.dim()));
      doc["origin_step"] = (o && res.infection_step[*o] >= 0) ? Json(res.infection_step[*o]) : Json();
      out << doc.dump(2) << "\n";
      return kExitOk;
    }

    if (*check_cmd) {
      const BuiltinFamily fam = check_family.load();
      const PathCertificate cert = certificate_from_json(read_json_file(check_cert));
      const CertificateCheck c = verify_certificate(cert, fam.family);
      Json doc;
      doc["ok"] = c.ok;
      doc["failure_index"] = c.failure_index ? Json(*c.failure_index) : Json();
      doc["reason"] = c.reason;
      doc["peak_zeros"] = c.peak_zeros;
      if (c.final_state) {
        Json zeros = Json::array();
        for (const Site& s : c.final_state->zeros()) zeros.push_back(site_to_json(s));
        doc["final_zeros"] = std::move(zeros);
      }
      out << doc.dump(2) << "\n";
      return c.ok ? kExitOk : kExitVerificationFailed;
    }

    if (*verify_cmd) {
      RunReport report;
      if (*v_east) {
        report = verify_east_threshold(east_n_max, search);
      } else if (*v_fa) {
        report = verify_fa1f_mobility(fa_N, fa_bfs_limit, search);
      } else if (*v_thm) {
        const BuiltinFamily fam = thm_family.load();
        report = verify_theorem_box(fam.family, thm_n, search, fam.name);
      } else if (*v_lem) {
        const BuiltinFamily fam = lem_family.load();
        report = verify_lemma_zero_outside(fam.family, lem_n, search, fam.name);
      } else if (*v_basis) {
        report = verify_basis_properties(basis_samples, basis_points, basis_seed);
      } else if (*v_class) {
        report = verify_classification();
      }
      out << run_report_to_json(report, !verify_no_timing).dump(2) << "\n";
      return report_exit(report);
    }

    if (*sweep_cmd) {
      const BuiltinFamily fam = sweep_family.given() ? sweep_family.load() : *builtin_family("east1d");
      out << sweep_csv(fam.family, fam.name, sweep_n_max, sweep_N_max, search);
      return kExitOk;
    }
  } catch (const KcmError& e) {
    err << "error: " << e.what();
    if (e.rule_index()) err << " (rule index " << *e.rule_index() << ")";
    err << "\n";
    return e.code() == ErrorCode::ResourceCapExceeded ? kExitTruncated : kExitUsage;
  }
  return kExitUsage;
}

}  // namespace kcm
