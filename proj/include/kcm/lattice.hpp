#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "kcm/family.hpp"

namespace kcm {

// Finite nonempty set of sites of Z^d. Sites are enumerated in row-major
// (lexicographic) order, which fixes the bit layout of configurations.
class Domain {
 public:
  explicit Domain(std::vector<Site> sites);

  std::size_t dim() const { return d_; }
  std::size_t size() const { return sites_.size(); }
  const std::vector<Site>& sites() const { return sites_; }
  const Site& site(std::size_t index) const { return sites_[index]; }
  const std::vector<Coord>& lo() const { return lo_; }
  const std::vector<Coord>& hi() const { return hi_; }
  // True when the domain is its whole bounding box.
  bool is_box() const { return is_box_; }

  std::optional<std::size_t> index_of(const Site& s) const;
  bool contains(const Site& s) const { return index_of(s).has_value(); }

 private:
  std::size_t d_ = 0;
  std::vector<Site> sites_;
  std::vector<Coord> lo_, hi_;
  bool is_box_ = false;
  // Dense lookup over the bounding box when it is small enough, otherwise a
  // hash map keyed by the row-major bounding-box offset.
  std::vector<std::int64_t> dense_;
  std::unordered_map<std::uint64_t, std::size_t> sparse_;
  std::optional<std::uint64_t> box_offset(const Site& s) const;
};

using DomainPtr = std::shared_ptr<const Domain>;

struct BoxSpec {
  std::vector<Coord> lo;
  std::vector<Coord> hi;
};

// Throws EmptyBox when lo_i > hi_i for some axis.
DomainPtr make_box(const BoxSpec& spec);

// Symmetric box {-N..N}^d.
DomainPtr make_centered_box(Coord half_width, std::size_t d);

struct PnSpec {
  unsigned n = 0;
  Coord r = 1;

  Coord a() const;  // r (2^n - 1)
  Coord b() const;  // r n 2^(n-1)
};

// Lattice sites whose coordinates (basis coordinates when a basis is given)
// all lie in [-a_n, b_n].
DomainPtr make_pn(unsigned n, Coord r, std::size_t d, const AdaptedBasis* basis = nullptr);

RationalVector to_basis_coords(const Site& s, const AdaptedBasis& basis);
// Inverse transform; the result need not be a lattice point in general.
RationalVector from_basis_coords(const RationalVector& x, const AdaptedBasis& basis);

// Membership of a site in [-a_n, b_n]^d measured in the given coordinates.
bool in_pn(const Site& s, const PnSpec& spec, const AdaptedBasis* basis = nullptr);

}  // namespace kcm
