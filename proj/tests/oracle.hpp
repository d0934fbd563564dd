#pragma once

// Reference implementations for tests. They work directly from the
// definitions (sets of sites, full 2^|domain| state graph) and share no code
// with the search engine's compiled move tables or visited store.

#include <cstdint>
#include <set>
#include <vector>

#include "kcm/family.hpp"

namespace oracle {

using kcm::Site;
using kcm::UpdateFamily;

// A site flip is legal iff some rule translate is entirely at zero; sites
// outside the domain read as `outside_zero`.
inline bool legal(const UpdateFamily& family, const std::set<Site>& domain, const std::set<Site>& zeros,
                  const Site& s, bool outside_zero) {
  for (const auto& rule : family.rules()) {
    bool ok = true;
    for (const Site& x : rule.sites()) {
      Site t = s;
      for (std::size_t i = 0; i < t.coords.size(); ++i) t.coords[i] += x.coords[i];
      const bool zero = domain.count(t) ? zeros.count(t) > 0 : outside_zero;
      if (!zero) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

// Naive V(n, domain): fixed point over the full state graph of all 2^|domain|
// configurations, no pruning. Each state is returned as its sorted zero set.
inline std::set<std::vector<Site>> reachable(const UpdateFamily& family, const std::vector<Site>& sites,
                                             std::size_t n, bool outside_zero) {
  const std::size_t m = sites.size();
  const std::set<Site> domain(sites.begin(), sites.end());
  const std::uint64_t total = std::uint64_t{1} << m;
  std::vector<char> reached(total, 0);
  reached[0] = 1;

  auto zeros_of = [&](std::uint64_t mask) {
    std::set<Site> z;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) z.insert(sites[i]);
    return z;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      if (!reached[mask]) continue;
      const std::set<Site> z = zeros_of(mask);
      for (std::size_t i = 0; i < m; ++i) {
        const std::uint64_t next = mask ^ (std::uint64_t{1} << i);
        if (reached[next]) continue;
        if (static_cast<std::size_t>(__builtin_popcountll(next)) > n) continue;
        if (!legal(family, domain, z, sites[i], outside_zero)) continue;
        reached[next] = 1;
        changed = true;
      }
    }
  }

  std::set<std::vector<Site>> out;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (!reached[mask]) continue;
    const std::set<Site> z = zeros_of(mask);
    out.emplace(z.begin(), z.end());
  }
  return out;
}

}  // namespace oracle
