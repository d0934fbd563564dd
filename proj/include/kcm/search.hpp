#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kcm/dynamics.hpp"
#include "kcm/family.hpp"
#include "kcm/lattice.hpp"

namespace kcm {

// Canonical bit-packed encoding of a zero set over a domain's fixed site
// enumeration (bit i = site i is at 0).
class StateKey {
 public:
  StateKey() = default;
  explicit StateKey(std::vector<std::uint64_t> words) : words_(std::move(words)) {}

  static StateKey encode(const Configuration& cfg);
  Configuration decode(DomainPtr domain, BoundaryMode mode) const;

  const std::vector<std::uint64_t>& words() const { return words_; }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
  std::size_t zero_count() const;

  friend auto operator<=>(const StateKey&, const StateKey&) = default;
  friend bool operator==(const StateKey&, const StateKey&) = default;

 private:
  std::vector<std::uint64_t> words_;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const;
};

// Read-only view of a search state handed to target predicates. Predicates
// may be called concurrently and must be pure.
class StateView {
 public:
  StateView(const Domain& domain, std::span<const std::uint64_t> words, std::size_t zero_count)
      : domain_(&domain), words_(words), zero_count_(zero_count) {}

  const Domain& domain() const { return *domain_; }
  std::size_t zero_count() const { return zero_count_; }
  bool is_zero_index(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
  std::span<const std::uint64_t> words() const { return words_; }

 private:
  const Domain* domain_;
  std::span<const std::uint64_t> words_;
  std::size_t zero_count_;
};

using TargetPredicate = std::function<bool(const StateView&)>;

// Target: the given site is at 0. Throws SiteOutsideDomain.
TargetPredicate site_is_zero(const Domain& domain, const Site& s);
// Target: the state equals the given configuration.
TargetPredicate equals_state(const StateKey& key);

// An explicit flip sequence. Replay starts from `start` (empty = all ones).
struct PathCertificate {
  DomainPtr domain;
  BoundaryMode boundary = BoundaryMode::OutsideAllZero;
  std::size_t n = 0;
  std::vector<Site> start;
  std::vector<Site> flips;
};

// Default visited-state cap: 2^26, or the KCM_MAX_STATES environment value.
std::uint64_t default_max_states();

struct ResourceCaps {
  std::uint64_t max_states = default_max_states();
  std::uint64_t max_memory_bytes = std::uint64_t{8} << 30;
};

struct SearchOptions {
  TargetPredicate target;
  bool want_certificate = false;
  unsigned workers = 1;
  ResourceCaps caps;
  // Return the sorted visited set in the report.
  bool collect_states = false;
};

struct SearchReport {
  bool reached_target = false;
  std::uint64_t states_visited = 0;
  std::uint64_t max_frontier = 0;
  std::uint64_t depth = 0;
  // |V(n, domain)| whenever the search ran to exhaustion.
  std::optional<std::uint64_t> v_n_size;
  std::optional<PathCertificate> certificate;
  bool truncated = false;
  std::vector<StateKey> states;
};

// Breadth-first closure of the legal-move relation restricted to at most n
// zeros, started from all ones. Levels are expanded completely, so counts
// are independent of the worker count; with a target the search stops after
// the level on which the target first appears.
SearchReport explore(const UpdateFamily& family, DomainPtr domain, std::size_t n, BoundaryMode mode,
                     const SearchOptions& options = {});

// explore() with the target "origin at 0".
SearchReport origin_reachable(const UpdateFamily& family, DomainPtr domain, std::size_t n,
                              BoundaryMode mode, SearchOptions options = {});

// Smallest n <= n_max for which the origin is reachable. Throws
// ResourceCapExceeded when a search is truncated before a verdict.
std::optional<std::size_t> min_zero_budget(const UpdateFamily& family, DomainPtr domain,
                                           BoundaryMode mode, std::size_t n_max,
                                           SearchOptions options = {});

struct CertificateCheck {
  bool ok = false;
  // Index of the first offending flip (start-state violations report 0).
  std::optional<std::size_t> failure_index;
  std::string reason;
  std::size_t peak_zeros = 0;
  std::optional<Configuration> final_state;
};

CertificateCheck verify_certificate(const PathCertificate& cert, const UpdateFamily& family);

// Reversed flips, starting from the original path's end state.
PathCertificate reverse_certificate(const PathCertificate& cert);

}  // namespace kcm
