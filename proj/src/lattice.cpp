#include "kcm/lattice.hpp"

#include <algorithm>
#include <limits>

#include "kcm/error.hpp"

namespace kcm {

namespace {

constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 24;

}  // namespace

Domain::Domain(std::vector<Site> sites) : sites_(std::move(sites)) {
  if (sites_.empty()) throw KcmError(ErrorCode::InvalidInput, "domain must be nonempty");
  d_ = sites_.front().dim();
  if (d_ == 0) throw KcmError(ErrorCode::DimensionMismatch, "sites must have positive dimension");
  for (const Site& s : sites_)
    if (s.dim() != d_) throw KcmError(ErrorCode::DimensionMismatch, "domain sites differ in dimension");
  std::sort(sites_.begin(), sites_.end());
  sites_.erase(std::unique(sites_.begin(), sites_.end()), sites_.end());

  lo_ = sites_.front().coords;
  hi_ = sites_.front().coords;
  for (const Site& s : sites_) {
    for (std::size_t i = 0; i < d_; ++i) {
      lo_[i] = std::min(lo_[i], s[i]);
      hi_[i] = std::max(hi_[i], s[i]);
    }
  }
  long double volume = 1;
  for (std::size_t i = 0; i < d_; ++i) volume *= static_cast<long double>(hi_[i] - lo_[i] + 1);
  is_box_ = volume == static_cast<long double>(sites_.size());

  if (volume <= static_cast<long double>(kDenseLimit)) {
    dense_.assign(static_cast<std::size_t>(volume), -1);
    for (std::size_t k = 0; k < sites_.size(); ++k)
      dense_[*box_offset(sites_[k])] = static_cast<std::int64_t>(k);
  } else {
    for (std::size_t k = 0; k < sites_.size(); ++k) sparse_.emplace(*box_offset(sites_[k]), k);
  }
}

std::optional<std::uint64_t> Domain::box_offset(const Site& s) const {
  if (s.dim() != d_) return std::nullopt;
  std::uint64_t off = 0;
  for (std::size_t i = 0; i < d_; ++i) {
    if (s[i] < lo_[i] || s[i] > hi_[i]) return std::nullopt;
    off = off * static_cast<std::uint64_t>(hi_[i] - lo_[i] + 1) + static_cast<std::uint64_t>(s[i] - lo_[i]);
  }
  return off;
}

std::optional<std::size_t> Domain::index_of(const Site& s) const {
  const auto off = box_offset(s);
  if (!off) return std::nullopt;
  if (!dense_.empty()) {
    const std::int64_t k = dense_[*off];
    if (k < 0) return std::nullopt;
    return static_cast<std::size_t>(k);
  }
  auto it = sparse_.find(*off);
  if (it == sparse_.end()) return std::nullopt;
  return it->second;
}

DomainPtr make_box(const BoxSpec& spec) {
  if (spec.lo.size() != spec.hi.size() || spec.lo.empty())
    throw KcmError(ErrorCode::DimensionMismatch, "box bounds must have equal positive length");
  const std::size_t d = spec.lo.size();
  for (std::size_t i = 0; i < d; ++i)
    if (spec.lo[i] > spec.hi[i]) throw KcmError(ErrorCode::EmptyBox, "box has lo > hi on some axis");

  std::vector<Site> sites;
  std::vector<Coord> cur = spec.lo;
  while (true) {
    sites.emplace_back(cur);
    std::size_t i = d;
    while (i > 0 && cur[i - 1] == spec.hi[i - 1]) {
      cur[i - 1] = spec.lo[i - 1];
      --i;
    }
    if (i == 0) break;
    ++cur[i - 1];
  }
  return std::make_shared<const Domain>(std::move(sites));
}

DomainPtr make_centered_box(Coord half_width, std::size_t d) {
  return make_box({std::vector<Coord>(d, -half_width), std::vector<Coord>(d, half_width)});
}

Coord PnSpec::a() const { return r * ((Coord{1} << n) - 1); }

Coord PnSpec::b() const { return n == 0 ? 0 : r * static_cast<Coord>(n) * (Coord{1} << (n - 1)); }

RationalVector to_basis_coords(const Site& s, const AdaptedBasis& basis) {
  if (s.dim() != basis.dim()) throw KcmError(ErrorCode::DimensionMismatch, "site and basis differ in dimension");
  RationalVector x;
  for (Coord c : s.coords) x.emplace_back(c);
  return multiply(basis.inverse, x);
}

RationalVector from_basis_coords(const RationalVector& x, const AdaptedBasis& basis) {
  if (x.size() != basis.dim()) throw KcmError(ErrorCode::DimensionMismatch, "coordinates and basis differ in dimension");
  RationalVector y(x.size(), Rational(0));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t k = 0; k < x.size(); ++k) y[k] += x[i] * basis.v[i][k];
  return y;
}

bool in_pn(const Site& s, const PnSpec& spec, const AdaptedBasis* basis) {
  const Coord a = spec.a();
  const Coord b = spec.b();
  if (!basis) {
    return std::all_of(s.coords.begin(), s.coords.end(), [&](Coord c) { return -a <= c && c <= b; });
  }
  const RationalVector x = to_basis_coords(s, *basis);
  return std::all_of(x.begin(), x.end(), [&](const Rational& c) { return -a <= c && c <= b; });
}

DomainPtr make_pn(unsigned n, Coord r, std::size_t d, const AdaptedBasis* basis) {
  if (r < 1) throw KcmError(ErrorCode::InvalidInput, "range must be positive");
  const PnSpec spec{n, r};
  const Coord a = spec.a();
  const Coord b = spec.b();
  if (!basis) return make_box({std::vector<Coord>(d, -a), std::vector<Coord>(d, b)});
  if (basis->dim() != d) throw KcmError(ErrorCode::DimensionMismatch, "basis dimension differs");

  // Bounding box of the parallelepiped spanned by the corners of [-a, b]^d.
  std::vector<Coord> lo(d, std::numeric_limits<Coord>::max());
  std::vector<Coord> hi(d, std::numeric_limits<Coord>::min());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
    RationalVector corner(d);
    for (std::size_t i = 0; i < d; ++i) corner[i] = (mask >> i) & 1 ? Rational(b) : Rational(-a);
    const RationalVector p = from_basis_coords(corner, *basis);
    for (std::size_t k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], floor_to_int(p[k]));
      hi[k] = std::max(hi[k], ceil_to_int(p[k]));
    }
  }
  std::vector<Site> sites;
  const DomainPtr bounding = make_box({lo, hi});
  for (const Site& s : bounding->sites())
    if (in_pn(s, spec, basis)) sites.push_back(s);
  return std::make_shared<const Domain>(std::move(sites));
}

}  // namespace kcm
