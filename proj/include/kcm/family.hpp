#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kcm/rational.hpp"

namespace kcm {

using Coord = std::int64_t;

// A point of Z^d.
struct Site {
  std::vector<Coord> coords;

  Site() = default;
  explicit Site(std::vector<Coord> c) : coords(std::move(c)) {}
  Site(std::initializer_list<Coord> c) : coords(c) {}

  std::size_t dim() const { return coords.size(); }
  Coord operator[](std::size_t i) const { return coords[i]; }
  bool is_origin() const;

  friend auto operator<=>(const Site&, const Site&) = default;
  friend bool operator==(const Site&, const Site&) = default;
};

Site operator+(const Site& a, const Site& b);
Site operator-(const Site& a, const Site& b);
Site origin(std::size_t d);
std::string to_string(const Site& s);

// Finite nonempty set of nonzero sites, stored sorted and deduplicated.
class UpdateRule {
 public:
  explicit UpdateRule(std::vector<Site> sites);

  const std::vector<Site>& sites() const { return sites_; }
  std::size_t size() const { return sites_.size(); }

  friend bool operator==(const UpdateRule&, const UpdateRule&) = default;

 private:
  std::vector<Site> sites_;
};

class UpdateFamily {
 public:
  // Validates; throws KcmError with codes NoRules, EmptyRule,
  // RuleContainsOrigin or DimensionMismatch (carrying the rule index).
  UpdateFamily(std::size_t d, std::vector<std::vector<Site>> rules);

  std::size_t dim() const { return d_; }
  const std::vector<UpdateRule>& rules() const { return rules_; }

 private:
  std::size_t d_;
  std::vector<UpdateRule> rules_;
};

UpdateFamily validate_family(std::size_t d, std::vector<std::vector<Site>> rules);

// A ray of R^d represented by its primitive integer vector.
class Direction {
 public:
  // Reduces `v` by the gcd of its entries; throws InvalidInput on zero.
  explicit Direction(std::vector<Coord> v);
  Direction(std::initializer_list<Coord> v) : Direction(std::vector<Coord>(v)) {}

  const std::vector<Coord>& vec() const { return vec_; }
  std::size_t dim() const { return vec_.size(); }
  Coord operator[](std::size_t i) const { return vec_[i]; }
  Direction operator-() const;

  friend auto operator<=>(const Direction&, const Direction&) = default;
  friend bool operator==(const Direction&, const Direction&) = default;

 private:
  std::vector<Coord> vec_;
};

std::string to_string(const Direction& u);

Coord dot(const std::vector<Coord>& a, const std::vector<Coord>& b);

// Union of closed/open arcs of the circle of directions of R^2. Each arc
// runs counterclockwise from `start` to `end`; a single point has
// start == end with both ends closed.
class ArcSet {
 public:
  struct Arc {
    Direction start;
    Direction end;
    bool start_closed = true;
    bool end_closed = true;

    bool is_point() const { return start == end; }
  };

  ArcSet() = default;
  static ArcSet full_circle();
  explicit ArcSet(std::vector<Arc> arcs) : arcs_(std::move(arcs)) {}

  bool empty() const { return !full_ && arcs_.empty(); }
  bool is_full() const { return full_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  bool contains(const Direction& w) const;

 private:
  bool full_ = false;
  std::vector<Arc> arcs_;
};

// Counterclockwise angular order of planar directions starting from (1,0).
bool angle_less(const Direction& a, const Direction& b);

struct AdaptedBasis {
  std::vector<Direction> u;
  // Columns of the change of basis, kept rational and unnormalized.
  std::vector<RationalVector> v;
  // Maps canonical lattice coordinates to basis coordinates.
  RationalMatrix inverse;

  std::size_t dim() const { return u.size(); }
};

// Range of interactions. With a basis, distances are measured in basis
// coordinates and the rational maximum is rounded up.
Coord range(const UpdateFamily& family, const AdaptedBasis* basis = nullptr);

bool is_stable(const UpdateFamily& family, const Direction& u);

// Stable elements of {+1, -1} for a one-dimensional family, listed as -1
// before +1.
std::vector<Direction> stable_set_1d(const UpdateFamily& family);

ArcSet stable_arcs_2d(const UpdateFamily& family);

enum class Classification { SupercriticalUnrooted, NotSupercriticalUnrooted, Undecided };

std::string_view to_string(Classification c);

struct SearchBound {
  Coord max_norm = 5;
};

Classification classify(const UpdateFamily& family,
                        const std::vector<Direction>& hints = {},
                        SearchBound bound = {});

std::optional<std::vector<Direction>> find_spanning_stable_directions(
    const UpdateFamily& family, SearchBound bound = {});

// Throws NotLinearlyIndependent (or DimensionMismatch).
AdaptedBasis construct_basis(const std::vector<Direction>& u);

}  // namespace kcm
