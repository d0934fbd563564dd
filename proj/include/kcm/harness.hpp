#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "kcm/family.hpp"
#include "kcm/io.hpp"
#include "kcm/lattice.hpp"
#include "kcm/search.hpp"

namespace kcm {

enum class TaskKind { EastThreshold, Fa1fMobility, TheoremBox, LemmaZeroOutside, Classification, BasisProperties };

std::string_view to_string(TaskKind kind);

struct VerificationTask {
  TaskKind kind = TaskKind::EastThreshold;
  // TheoremBox / LemmaZeroOutside
  std::string family_label = "custom";
  std::optional<UpdateFamily> family;
  unsigned n = 1;
  // EastThreshold
  unsigned n_max = 3;
  // Fa1fMobility
  std::vector<Coord> half_widths;
  Coord bfs_limit = 8;
  // BasisProperties
  std::size_t samples = 200;
  std::size_t points_per_sample = 100;
  std::uint64_t seed = 20180501;

  SearchOptions search;
};

enum class Verdict {
  Pass,
  Fail,
  // The claim is refuted, as expected for a supercritical unrooted family.
  ExpectedRefutation,
};

std::string_view to_string(Verdict v);

struct CaseResult {
  std::string label;
  Verdict verdict = Verdict::Fail;
  std::uint64_t states = 0;
  bool truncated = false;
  std::string detail;
  double millis = 0;
};

struct RunReport {
  std::string task;
  Json params;
  std::vector<CaseResult> cases;

  bool any_truncated() const;
  // Every case passes (or is an expected refutation) and none is truncated.
  bool pass() const;
};

// Stable field order; timing fields only when requested.
Json run_report_to_json(const RunReport& report, bool include_timing = false);

// The window P_n together with the coordinates it is measured in.
struct TheoremWindow {
  Classification classification = Classification::Undecided;
  std::optional<AdaptedBasis> basis;  // absent: canonical coordinates
  Coord r = 1;
  DomainPtr pn;
  DomainPtr pn_prev;  // P_{n-1}, absent for n = 0
};

TheoremWindow theorem_window(const UpdateFamily& family, unsigned n);

// Every state of V(n, P_n) keeps the origin at 1.
RunReport verify_theorem_box(const UpdateFamily& family, unsigned n, const SearchOptions& options = {},
                             const std::string& family_label = "custom");

// Every state of V(n, P_n) other than all ones has a zero outside P_{n-1}.
RunReport verify_lemma_zero_outside(const UpdateFamily& family, unsigned n, const SearchOptions& options = {},
                                    const std::string& family_label = "custom");

// For n = 1..n_max and N = 0..2^n - 1, the origin of {-N..N} is reachable
// with n zeros iff N <= 2^n - 2.
RunReport verify_east_threshold(unsigned n_max, const SearchOptions& options = {});

// Two zeros always reach the origin of {-N..N}: by search for N <= bfs_limit,
// by the interval walk certificate for every N.
RunReport verify_fa1f_mobility(const std::vector<Coord>& half_widths, Coord bfs_limit = 8,
                               const SearchOptions& options = {});

RunReport verify_classification();

// A random family together with d linearly independent directions that are
// stable for it.
struct StableSample {
  UpdateFamily family;
  std::vector<Direction> u;
};

StableSample random_stable_sample(std::size_t d, std::mt19937_64& rng);

RunReport verify_basis_properties(std::size_t samples = 200, std::size_t points_per_sample = 100,
                                  std::uint64_t seed = 20180501);

RunReport run_task(const VerificationTask& task);

// Origin reachability on {-N..N}^d for n = 1..n_max and N = 0..N_max
// (default N_max = 2^n - 1), as CSV with header
// family,n,N,reachable,states,millis
std::string sweep_csv(const UpdateFamily& family, const std::string& label, unsigned n_max,
                      std::optional<Coord> N_max = std::nullopt, const SearchOptions& options = {},
                      bool include_timing = true);

}  // namespace kcm
