#include "move_table.hpp"

#include <algorithm>

namespace kcm::detail {

MoveTable::MoveTable(const UpdateFamily& family, const Domain& domain, BoundaryMode mode)
    : nsites_(domain.size()) {
  std::vector<std::vector<std::uint32_t>> influence(nsites_);
  rule_offsets_.push_back(0);
  site_offsets_.push_back(0);
  for (std::size_t i = 0; i < nsites_; ++i) {
    const Site& s = domain.site(i);
    bool is_free = false;
    for (const UpdateRule& rule : family.rules()) {
      std::vector<std::uint32_t> inside;
      bool blocked = false;
      for (const Site& x : rule.sites()) {
        const auto j = domain.index_of(s + x);
        if (j) {
          inside.push_back(static_cast<std::uint32_t>(*j));
        } else if (mode == BoundaryMode::OutsideAllOne) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      if (inside.empty()) is_free = true;
      for (std::uint32_t j : inside) influence[j].push_back(static_cast<std::uint32_t>(i));
      rule_sites_.insert(rule_sites_.end(), inside.begin(), inside.end());
      site_offsets_.push_back(static_cast<std::uint32_t>(rule_sites_.size()));
    }
    rule_offsets_.push_back(static_cast<std::uint32_t>(site_offsets_.size() - 1));
    if (is_free) free_sites_.push_back(static_cast<std::uint32_t>(i));
  }

  influence_offsets_.push_back(0);
  for (auto& list : influence) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    influence_.insert(influence_.end(), list.begin(), list.end());
    influence_offsets_.push_back(static_cast<std::uint32_t>(influence_.size()));
  }
}

}  // namespace kcm::detail
