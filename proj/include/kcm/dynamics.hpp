#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "kcm/family.hpp"
#include "kcm/lattice.hpp"

namespace kcm {

enum class BoundaryMode { OutsideAllZero, OutsideAllOne };

std::string_view to_string(BoundaryMode mode);

// Fixed-width bitset over a domain's site enumeration.
class SiteBits {
 public:
  SiteBits() = default;
  explicit SiteBits(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  std::size_t size() const { return nbits_; }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }
  std::size_t count() const;
  bool is_subset_of(const SiteBits& other) const;
  const std::vector<std::uint64_t>& words() const { return words_; }
  std::vector<std::uint64_t>& words() { return words_; }

  friend bool operator==(const SiteBits&, const SiteBits&) = default;

 private:
  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

// A state in {0,1}^domain stored as its zero set; everything else is 1.
class Configuration {
 public:
  // All ones.
  Configuration(DomainPtr domain, BoundaryMode mode = BoundaryMode::OutsideAllZero);
  // Throws SiteOutsideDomain when a zero is not in the domain.
  Configuration(DomainPtr domain, const std::vector<Site>& zeros,
                BoundaryMode mode = BoundaryMode::OutsideAllZero);
  Configuration(DomainPtr domain, SiteBits zeros, BoundaryMode mode);

  const Domain& domain() const { return *domain_; }
  const DomainPtr& domain_ptr() const { return domain_; }
  BoundaryMode boundary() const { return mode_; }
  std::size_t zero_count() const { return zero_count_; }
  const SiteBits& zero_bits() const { return zeros_; }

  bool is_zero_index(std::size_t i) const { return zeros_.test(i); }
  // Throws SiteOutsideDomain.
  bool is_zero(const Site& s) const;
  // State of an arbitrary site of Z^d under the boundary mode.
  bool reads_zero(const Site& s) const;
  std::vector<Site> zeros() const;

  void toggle_index(std::size_t i);

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.domain_ == b.domain_ && a.mode_ == b.mode_ && a.zeros_ == b.zeros_;
  }

 private:
  DomainPtr domain_;
  BoundaryMode mode_;
  SiteBits zeros_;
  std::size_t zero_count_ = 0;
};

// Some rule X has every site of s + X at zero. The same condition governs
// both flip directions. Throws SiteOutsideDomain.
bool legal_flip(const Configuration& cfg, const Site& s, const UpdateFamily& family);

// Toggles s without checking legality. Throws SiteOutsideDomain.
Configuration apply_flip(const Configuration& cfg, const Site& s);

struct BootstrapState {
  DomainPtr region;
  SiteBits infected;

  BootstrapState(DomainPtr region, const std::vector<Site>& seeds);
  BootstrapState(DomainPtr region, SiteBits infected);

  std::vector<Site> infected_sites() const;
  bool is_infected(const Site& s) const;
};

BootstrapState bootstrap_step(const BootstrapState& state, const UpdateFamily& family);

struct ClosureResult {
  BootstrapState state;
  // Number of steps that infected at least one site.
  std::size_t steps = 0;
  // Step at which each region site became infected, or -1.
  std::vector<std::int64_t> infection_step;
};

ClosureResult bootstrap_closure(const BootstrapState& state, const UpdateFamily& family);

}  // namespace kcm
