#include "kcm/dynamics.hpp"

#include <algorithm>
#include <bit>

#include "kcm/error.hpp"

namespace kcm {

std::string_view to_string(BoundaryMode mode) {
  return mode == BoundaryMode::OutsideAllZero ? "zero" : "one";
}

std::size_t SiteBits::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool SiteBits::is_subset_of(const SiteBits& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

namespace {

std::size_t require_index(const Domain& domain, const Site& s) {
  const auto idx = domain.index_of(s);
  if (!idx) throw KcmError(ErrorCode::SiteOutsideDomain, "site " + to_string(s) + " is not in the domain");
  return *idx;
}

}  // namespace

Configuration::Configuration(DomainPtr domain, BoundaryMode mode)
    : domain_(std::move(domain)), mode_(mode), zeros_(domain_->size()) {}

Configuration::Configuration(DomainPtr domain, const std::vector<Site>& zeros, BoundaryMode mode)
    : Configuration(std::move(domain), mode) {
  for (const Site& s : zeros) {
    const std::size_t i = require_index(*domain_, s);
    if (!zeros_.test(i)) {
      zeros_.set(i);
      ++zero_count_;
    }
  }
}

Configuration::Configuration(DomainPtr domain, SiteBits zeros, BoundaryMode mode)
    : domain_(std::move(domain)), mode_(mode), zeros_(std::move(zeros)) {
  if (zeros_.size() != domain_->size())
    throw KcmError(ErrorCode::DimensionMismatch, "bitset width differs from domain size");
  zero_count_ = zeros_.count();
}

bool Configuration::is_zero(const Site& s) const { return zeros_.test(require_index(*domain_, s)); }

bool Configuration::reads_zero(const Site& s) const {
  const auto idx = domain_->index_of(s);
  if (!idx) return mode_ == BoundaryMode::OutsideAllZero;
  return zeros_.test(*idx);
}

std::vector<Site> Configuration::zeros() const {
  std::vector<Site> out;
  for (std::size_t i = 0; i < domain_->size(); ++i)
    if (zeros_.test(i)) out.push_back(domain_->site(i));
  return out;
}

void Configuration::toggle_index(std::size_t i) {
  if (zeros_.test(i)) {
    zeros_.reset(i);
    --zero_count_;
  } else {
    zeros_.set(i);
    ++zero_count_;
  }
}

bool legal_flip(const Configuration& cfg, const Site& s, const UpdateFamily& family) {
  require_index(cfg.domain(), s);
  for (const UpdateRule& rule : family.rules()) {
    const bool all_zero = std::all_of(rule.sites().begin(), rule.sites().end(),
                                      [&](const Site& x) { return cfg.reads_zero(s + x); });
    if (all_zero) return true;
  }
  return false;
}

Configuration apply_flip(const Configuration& cfg, const Site& s) {
  const std::size_t i = require_index(cfg.domain(), s);
  Configuration next = cfg;
  next.toggle_index(i);
  return next;
}

BootstrapState::BootstrapState(DomainPtr r, const std::vector<Site>& seeds)
    : region(std::move(r)), infected(region->size()) {
  for (const Site& s : seeds) infected.set(require_index(*region, s));
}

BootstrapState::BootstrapState(DomainPtr r, SiteBits bits) : region(std::move(r)), infected(std::move(bits)) {
  if (infected.size() != region->size())
    throw KcmError(ErrorCode::DimensionMismatch, "bitset width differs from region size");
}

std::vector<Site> BootstrapState::infected_sites() const {
  std::vector<Site> out;
  for (std::size_t i = 0; i < region->size(); ++i)
    if (infected.test(i)) out.push_back(region->site(i));
  return out;
}

bool BootstrapState::is_infected(const Site& s) const {
  const auto idx = region->index_of(s);
  return idx && infected.test(*idx);
}

BootstrapState bootstrap_step(const BootstrapState& state, const UpdateFamily& family) {
  BootstrapState next = state;
  const Domain& region = *state.region;
  for (std::size_t i = 0; i < region.size(); ++i) {
    if (state.infected.test(i)) continue;
    const Site& s = region.site(i);
    for (const UpdateRule& rule : family.rules()) {
      const bool covered = std::all_of(rule.sites().begin(), rule.sites().end(),
                                       [&](const Site& x) { return state.is_infected(s + x); });
      if (covered) {
        next.infected.set(i);
        break;
      }
    }
  }
  return next;
}

ClosureResult bootstrap_closure(const BootstrapState& state, const UpdateFamily& family) {
  ClosureResult result{state, 0, std::vector<std::int64_t>(state.region->size(), -1)};
  for (std::size_t i = 0; i < state.region->size(); ++i)
    if (state.infected.test(i)) result.infection_step[i] = 0;
  while (true) {
    BootstrapState next = bootstrap_step(result.state, family);
    if (next.infected == result.state.infected) break;
    ++result.steps;
    for (std::size_t i = 0; i < next.region->size(); ++i)
      if (next.infected.test(i) && !result.state.infected.test(i))
        result.infection_step[i] = static_cast<std::int64_t>(result.steps);
    result.state = std::move(next);
  }
  return result;
}

}  // namespace kcm
