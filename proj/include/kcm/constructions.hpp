#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kcm/family.hpp"
#include "kcm/lattice.hpp"
#include "kcm/search.hpp"

namespace kcm {

UpdateFamily east1d();
// {{e_1},...,{e_d},{-e_1},...,{-e_d}}
UpdateFamily fa1f(std::size_t d);
UpdateFamily east2d();
UpdateFamily rooted_corner_2d();

struct BuiltinFamily {
  std::string name;
  UpdateFamily family;
};

// Accepts east1d, east2d, rooted_corner_2d, fa1f (d = 1), fa1f1d, fa1f2d,
// or fa1f:<d>.
std::optional<BuiltinFamily> builtin_family(std::string_view name);
std::vector<std::string> builtin_family_names();

// East reachability threshold 2^n - 2 for boxes {-N..N}. Throws
// InvalidBudget for n = 0.
Coord cdg_threshold(unsigned n);

// Slides a window of r zeros in from the left boundary until the origin is
// at 0. Peak zero usage is at most r + 1. Throws NotUnrooted or
// NoContiguousDomain.
PathCertificate interval_walk_1d(const UpdateFamily& family, DomainPtr domain);

}  // namespace kcm
