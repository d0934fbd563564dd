#include "kcm/family.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "kcm/error.hpp"

namespace kcm {

bool Site::is_origin() const {
  return std::all_of(coords.begin(), coords.end(), [](Coord c) { return c == 0; });
}

Site operator+(const Site& a, const Site& b) {
  Site s = a;
  for (std::size_t i = 0; i < s.coords.size(); ++i) s.coords[i] += b.coords[i];
  return s;
}

Site operator-(const Site& a, const Site& b) {
  Site s = a;
  for (std::size_t i = 0; i < s.coords.size(); ++i) s.coords[i] -= b.coords[i];
  return s;
}

Site origin(std::size_t d) { return Site(std::vector<Coord>(d, 0)); }

namespace {

std::string join_coords(const std::vector<Coord>& c) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ')';
  return os.str();
}

}  // namespace

std::string to_string(const Site& s) {
  if (s.dim() == 1) return std::to_string(s[0]);
  return join_coords(s.coords);
}

UpdateRule::UpdateRule(std::vector<Site> sites) : sites_(std::move(sites)) {
  std::sort(sites_.begin(), sites_.end());
  sites_.erase(std::unique(sites_.begin(), sites_.end()), sites_.end());
}

UpdateFamily::UpdateFamily(std::size_t d, std::vector<std::vector<Site>> rules) : d_(d) {
  if (d == 0) throw KcmError(ErrorCode::DimensionMismatch, "dimension must be positive");
  if (rules.empty()) throw KcmError(ErrorCode::NoRules, "update family has no rules");
  for (std::size_t k = 0; k < rules.size(); ++k) {
    if (rules[k].empty())
      throw KcmError(ErrorCode::EmptyRule, "rule " + std::to_string(k) + " is empty", k);
    for (const Site& s : rules[k]) {
      if (s.dim() != d)
        throw KcmError(ErrorCode::DimensionMismatch,
                       "rule " + std::to_string(k) + " has a site of dimension " +
                           std::to_string(s.dim()) + ", expected " + std::to_string(d),
                       k);
      if (s.is_origin())
        throw KcmError(ErrorCode::RuleContainsOrigin,
                       "rule " + std::to_string(k) + " contains the origin", k);
    }
    rules_.emplace_back(std::move(rules[k]));
  }
}

UpdateFamily validate_family(std::size_t d, std::vector<std::vector<Site>> rules) {
  return UpdateFamily(d, std::move(rules));
}

Direction::Direction(std::vector<Coord> v) : vec_(std::move(v)) {
  Coord g = 0;
  for (Coord x : vec_) g = std::gcd(g, std::abs(x));
  if (g == 0) throw KcmError(ErrorCode::InvalidInput, "direction vector is zero");
  for (Coord& x : vec_) x /= g;
}

Direction Direction::operator-() const {
  std::vector<Coord> w = vec_;
  for (Coord& x : w) x = -x;
  return Direction(std::move(w));
}

std::string to_string(const Direction& u) {
  if (u.dim() == 1) return u[0] > 0 ? "+1" : "-1";
  return join_coords(u.vec());
}

Coord dot(const std::vector<Coord>& a, const std::vector<Coord>& b) {
  Coord s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Coord range(const UpdateFamily& family, const AdaptedBasis* basis) {
  const std::size_t d = family.dim();
  if (basis && basis->dim() != d)
    throw KcmError(ErrorCode::DimensionMismatch, "basis dimension differs from family");

  auto coords = [&](const Site& s) {
    RationalVector x;
    for (Coord c : s.coords) x.emplace_back(c);
    return basis ? multiply(basis->inverse, x) : x;
  };

  Rational best = 0;
  for (const UpdateRule& rule : family.rules()) {
    std::vector<RationalVector> pts{coords(origin(d))};
    for (const Site& s : rule.sites()) pts.push_back(coords(s));
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        for (std::size_t k = 0; k < d; ++k) best = std::max(best, Rational(abs(pts[i][k] - pts[j][k])));
  }
  return std::max<Coord>(1, ceil_to_int(best));
}

bool is_stable(const UpdateFamily& family, const Direction& u) {
  if (u.dim() != family.dim())
    throw KcmError(ErrorCode::DimensionMismatch, "direction dimension differs from family");
  for (const UpdateRule& rule : family.rules()) {
    const bool inside_half_space = std::all_of(
        rule.sites().begin(), rule.sites().end(),
        [&](const Site& x) { return dot(x.coords, u.vec()) < 0; });
    if (inside_half_space) return false;
  }
  return true;
}

std::vector<Direction> stable_set_1d(const UpdateFamily& family) {
  if (family.dim() != 1)
    throw KcmError(ErrorCode::DimensionMismatch, "stable_set_1d needs d = 1");
  std::vector<Direction> out;
  for (Coord sign : {Coord{-1}, Coord{1}}) {
    Direction u{sign};
    if (is_stable(family, u)) out.push_back(u);
  }
  return out;
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::SupercriticalUnrooted: return "SupercriticalUnrooted";
    case Classification::NotSupercriticalUnrooted: return "NotSupercriticalUnrooted";
    case Classification::Undecided: return "Undecided";
  }
  return "Undecided";
}

namespace {

bool is_independent(const std::vector<Direction>& dirs) {
  std::vector<std::vector<Coord>> rows;
  for (const auto& u : dirs) rows.push_back(u.vec());
  return rank(rows) == dirs.size();
}

// Greedy selection of `d` linearly independent directions in order.
std::optional<std::vector<Direction>> pick_independent(const std::vector<Direction>& candidates,
                                                       std::size_t d) {
  std::vector<Direction> chosen;
  for (const auto& c : candidates) {
    chosen.push_back(c);
    if (!is_independent(chosen)) chosen.pop_back();
    if (chosen.size() == d) return chosen;
  }
  return std::nullopt;
}

std::vector<Direction> axis_directions(std::size_t d) {
  std::vector<Direction> out;
  for (std::size_t i = 0; i < d; ++i) {
    for (Coord sign : {Coord{-1}, Coord{1}}) {
      std::vector<Coord> v(d, 0);
      v[i] = sign;
      out.emplace_back(std::move(v));
    }
  }
  return out;
}

// All primitive vectors with entries in [-bound, bound], ordered by sup norm
// then lexicographically.
std::vector<Direction> primitive_vectors(std::size_t d, Coord bound) {
  std::vector<Direction> out;
  std::vector<Coord> v(d, -bound);
  while (true) {
    Coord g = 0;
    for (Coord x : v) g = std::gcd(g, std::abs(x));
    if (g == 1) out.emplace_back(v);
    std::size_t i = 0;
    while (i < d && v[i] == bound) v[i++] = -bound;
    if (i == d) break;
    ++v[i];
  }
  std::stable_sort(out.begin(), out.end(), [](const Direction& a, const Direction& b) {
    auto norm = [](const Direction& u) {
      Coord m = 0;
      for (Coord x : u.vec()) m = std::max(m, std::abs(x));
      return m;
    };
    return norm(a) < norm(b);
  });
  return out;
}

std::vector<Direction> stable_candidates_2d(const UpdateFamily& family) {
  std::vector<Direction> out;
  for (const auto& a : axis_directions(2))
    if (is_stable(family, a)) out.push_back(a);
  const ArcSet arcs = stable_arcs_2d(family);
  if (arcs.is_full()) return out;
  std::vector<Direction> endpoints;
  for (const auto& arc : arcs.arcs()) {
    if (!arc.is_point()) {
      const Coord cr = arc.start[0] * arc.end[1] - arc.start[1] * arc.end[0];
      if (cr > 0) {
        out.emplace_back(std::vector<Coord>{arc.start[0] + arc.end[0], arc.start[1] + arc.end[1]});
      } else if (cr == 0 && dot(arc.start.vec(), arc.end.vec()) < 0) {
        out.emplace_back(std::vector<Coord>{-arc.start[1], arc.start[0]});
      } else {
        // Arc longer than a half-circle: its antipodal-start midpoint lies inside.
        out.emplace_back(std::vector<Coord>{-arc.start[1], arc.start[0]});
        out.push_back(-arc.start);
      }
    }
    if (arc.start_closed) endpoints.push_back(arc.start);
    if (arc.end_closed) endpoints.push_back(arc.end);
  }
  out.insert(out.end(), endpoints.begin(), endpoints.end());
  std::erase_if(out, [&](const Direction& w) { return !is_stable(family, w); });
  return out;
}

}  // namespace

Classification classify(const UpdateFamily& family, const std::vector<Direction>& hints,
                        SearchBound bound) {
  const std::size_t d = family.dim();
  if (d == 1)
    return stable_set_1d(family).empty() ? Classification::SupercriticalUnrooted
                                         : Classification::NotSupercriticalUnrooted;
  if (d == 2) {
    const ArcSet arcs = stable_arcs_2d(family);
    if (arcs.is_full()) return Classification::NotSupercriticalUnrooted;
    const auto& a = arcs.arcs();
    const bool all_points =
        std::all_of(a.begin(), a.end(), [](const ArcSet::Arc& x) { return x.is_point(); });
    if (a.empty() || (all_points && a.size() == 1) ||
        (all_points && a.size() == 2 && a[0].start == -a[1].start))
      return Classification::SupercriticalUnrooted;
    return Classification::NotSupercriticalUnrooted;
  }

  std::vector<Direction> candidates;
  for (const auto& h : hints) {
    if (h.dim() != d) continue;
    if (is_stable(family, h)) candidates.push_back(h);
  }
  for (const auto& w : primitive_vectors(d, bound.max_norm))
    if (is_stable(family, w)) candidates.push_back(w);
  return pick_independent(candidates, d) ? Classification::NotSupercriticalUnrooted
                                         : Classification::Undecided;
}

std::optional<std::vector<Direction>> find_spanning_stable_directions(const UpdateFamily& family,
                                                                      SearchBound bound) {
  const std::size_t d = family.dim();
  if (d == 1) {
    auto s = stable_set_1d(family);
    if (s.empty()) return std::nullopt;
    return std::vector<Direction>{s.front()};
  }
  if (d == 2) return pick_independent(stable_candidates_2d(family), 2);

  std::vector<Direction> candidates;
  for (const auto& a : axis_directions(d))
    if (is_stable(family, a)) candidates.push_back(a);
  for (const auto& w : primitive_vectors(d, bound.max_norm))
    if (is_stable(family, w)) candidates.push_back(w);
  return pick_independent(candidates, d);
}

namespace {

// Integer determinant by cofactor expansion (d is small).
Coord int_det(const std::vector<std::vector<Coord>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  Coord det = 0;
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<std::vector<Coord>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Coord> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != col) row.push_back(m[i][j]);
      minor.push_back(std::move(row));
    }
    const Coord term = m[0][col] * int_det(minor);
    det += (col % 2 == 0) ? term : -term;
  }
  return det;
}

}  // namespace

AdaptedBasis construct_basis(const std::vector<Direction>& u) {
  const std::size_t d = u.size();
  if (d == 0) throw KcmError(ErrorCode::InvalidInput, "empty direction list");
  for (const auto& x : u)
    if (x.dim() != d)
      throw KcmError(ErrorCode::DimensionMismatch, "need d directions of dimension d");

  std::vector<std::vector<Coord>> rows;
  for (const auto& x : u) rows.push_back(x.vec());
  const Coord det = int_det(rows);
  if (det == 0)
    throw KcmError(ErrorCode::NotLinearlyIndependent, "stable directions do not span R^d");

  // Column i of the adjugate is orthogonal to every u_j, j != i, and pairs
  // with u_i to det. Negating by sign(det) makes <v_i, u_i> = -|det| < 0.
  AdaptedBasis basis;
  basis.u = u;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Coord> col(d);
    for (std::size_t k = 0; k < d; ++k) {
      // adj[k][i] = (-1)^{i+k} * minor(i, k)
      std::vector<std::vector<Coord>> minor;
      for (std::size_t r = 0; r < d; ++r) {
        if (r == i) continue;
        std::vector<Coord> row;
        for (std::size_t c = 0; c < d; ++c)
          if (c != k) row.push_back(rows[r][c]);
        minor.push_back(std::move(row));
      }
      const Coord m = d == 1 ? 1 : int_det(minor);
      col[k] = ((i + k) % 2 == 0 ? m : -m) * (det > 0 ? -1 : 1);
    }
    Coord g = 0;
    for (Coord c : col) g = std::gcd(g, std::abs(c));
    RationalVector v;
    for (Coord c : col) v.emplace_back(c / g);
    basis.v.push_back(std::move(v));
  }

  RationalMatrix columns(d, RationalVector(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) columns[k][i] = basis.v[i][k];
  if (!invert(columns, basis.inverse))
    throw KcmError(ErrorCode::NotLinearlyIndependent, "adapted basis is singular");
  return basis;
}

}  // namespace kcm
