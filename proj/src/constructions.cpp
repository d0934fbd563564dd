#include "kcm/constructions.hpp"

#include <charconv>

#include "kcm/error.hpp"

namespace kcm {

namespace {

Site unit(std::size_t d, std::size_t i, Coord sign) {
  std::vector<Coord> c(d, 0);
  c[i] = sign;
  return Site(std::move(c));
}

}  // namespace

UpdateFamily east1d() { return UpdateFamily(1, {{Site{-1}}}); }

UpdateFamily fa1f(std::size_t d) {
  std::vector<std::vector<Site>> rules;
  for (std::size_t i = 0; i < d; ++i) rules.push_back({unit(d, i, 1)});
  for (std::size_t i = 0; i < d; ++i) rules.push_back({unit(d, i, -1)});
  return UpdateFamily(d, std::move(rules));
}

UpdateFamily east2d() { return UpdateFamily(2, {{Site{-1, 0}}}); }

UpdateFamily rooted_corner_2d() { return UpdateFamily(2, {{Site{-1, 0}}, {Site{0, -1}}}); }

std::optional<BuiltinFamily> builtin_family(std::string_view name) {
  if (name == "east1d" || name == "east") return BuiltinFamily{"east1d", east1d()};
  if (name == "east2d") return BuiltinFamily{"east2d", east2d()};
  if (name == "rooted_corner_2d") return BuiltinFamily{"rooted_corner_2d", rooted_corner_2d()};
  if (name == "fa1f" || name == "fa1f1d") return BuiltinFamily{"fa1f1d", fa1f(1)};
  if (name == "fa1f2d") return BuiltinFamily{"fa1f2d", fa1f(2)};
  if (name.starts_with("fa1f:")) {
    std::size_t d = 0;
    const auto digits = name.substr(5);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), d);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && d >= 1 && d <= 16)
      return BuiltinFamily{"fa1f:" + std::to_string(d), fa1f(d)};
  }
  return std::nullopt;
}

std::vector<std::string> builtin_family_names() {
  return {"east1d", "fa1f1d", "fa1f2d", "fa1f:<d>", "east2d", "rooted_corner_2d"};
}

Coord cdg_threshold(unsigned n) {
  if (n == 0) throw KcmError(ErrorCode::InvalidBudget, "threshold needs n >= 1");
  return (Coord{1} << n) - 2;
}

PathCertificate interval_walk_1d(const UpdateFamily& family, DomainPtr domain) {
  if (family.dim() != 1 || classify(family) != Classification::SupercriticalUnrooted)
    throw KcmError(ErrorCode::NotUnrooted, "interval walk needs a one-dimensional supercritical unrooted family");
  if (domain->dim() != 1 || !domain->is_box() || !domain->contains(Site{0}))
    throw KcmError(ErrorCode::NoContiguousDomain, "interval walk needs a contiguous interval containing 0");

  const Coord r = range(family);
  const Coord left = domain->lo()[0];
  PathCertificate cert{domain, BoundaryMode::OutsideAllZero, static_cast<std::size_t>(r + 1), {}, {}};

  // Zeros occupy [tail, s]; sites left of the domain read as zero, so every
  // new right site sees r zeros on its left, and once r + 1 zeros are held
  // the tail sees r zeros on its right.
  Coord tail = left;
  for (Coord s = left; s <= 0; ++s) {
    cert.flips.push_back(Site{s});
    if (s == 0) break;
    if (s - tail + 1 == r + 1) {
      cert.flips.push_back(Site{tail});
      ++tail;
    }
  }
  return cert;
}

}  // namespace kcm
