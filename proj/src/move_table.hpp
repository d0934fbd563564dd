#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kcm/dynamics.hpp"
#include "kcm/family.hpp"
#include "kcm/lattice.hpp"

namespace kcm::detail {

// Legality compiled against one domain and boundary mode: every rule
// translate is reduced to the in-domain site indices it reads.
class MoveTable {
 public:
  MoveTable(const UpdateFamily& family, const Domain& domain, BoundaryMode mode);

  std::size_t size() const { return nsites_; }

  bool legal(std::size_t site, std::span<const std::uint64_t> zeros) const {
    for (std::uint32_t r = rule_offsets_[site]; r < rule_offsets_[site + 1]; ++r) {
      bool all_zero = true;
      for (std::uint32_t k = site_offsets_[r]; k < site_offsets_[r + 1]; ++k) {
        const std::uint32_t j = rule_sites_[k];
        if (!((zeros[j / 64] >> (j % 64)) & 1)) {
          all_zero = false;
          break;
        }
      }
      if (all_zero) return true;
    }
    return false;
  }

  // Sites legal regardless of the configuration.
  std::span<const std::uint32_t> free_sites() const { return free_sites_; }
  // Sites whose legality can depend on site j.
  std::span<const std::uint32_t> influenced_by(std::size_t j) const {
    return {influence_.data() + influence_offsets_[j], influence_.data() + influence_offsets_[j + 1]};
  }

 private:
  std::size_t nsites_;
  std::vector<std::uint32_t> rule_offsets_;
  std::vector<std::uint32_t> site_offsets_;
  std::vector<std::uint32_t> rule_sites_;
  std::vector<std::uint32_t> free_sites_;
  std::vector<std::uint32_t> influence_offsets_;
  std::vector<std::uint32_t> influence_;
};

}  // namespace kcm::detail
