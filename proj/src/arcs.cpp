#include <algorithm>

#include "kcm/error.hpp"
#include "kcm/family.hpp"

namespace kcm {

namespace {

Coord cross(const Direction& a, const Direction& b) { return a[0] * b[1] - a[1] * b[0]; }

// 0 for angles in [0, pi), 1 for [pi, 2 pi), measured from (1,0).
int half(const Direction& a) { return (a[1] > 0 || (a[1] == 0 && a[0] > 0)) ? 0 : 1; }

// Same split, measured counterclockwise from `base`.
int half_from(const Direction& base, const Direction& a) {
  const Coord c = cross(base, a);
  if (c > 0) return 0;
  if (c < 0) return 1;
  return dot(base.vec(), a.vec()) > 0 ? 0 : 1;
}

// Angle of a from base is strictly less than angle of b from base.
bool ccw_less_from(const Direction& base, const Direction& a, const Direction& b) {
  const int ha = half_from(base, a);
  const int hb = half_from(base, b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

Direction rot90(const Direction& a) { return Direction({-a[1], a[0]}); }

// A direction strictly inside the counterclockwise gap from a to b.
Direction midpoint(const Direction& a, const Direction& b) {
  const Coord c = cross(a, b);
  if (c > 0) return Direction({a[0] + b[0], a[1] + b[1]});
  // Gap of exactly a half-circle (or more): a quarter turn stays inside.
  return rot90(a);
}

}  // namespace

bool angle_less(const Direction& a, const Direction& b) {
  const int ha = half(a);
  const int hb = half(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

ArcSet ArcSet::full_circle() {
  ArcSet s;
  s.full_ = true;
  return s;
}

bool ArcSet::contains(const Direction& w) const {
  if (w.dim() != 2) throw KcmError(ErrorCode::DimensionMismatch, "arc sets live in d = 2");
  if (full_) return true;
  for (const Arc& arc : arcs_) {
    if (w == arc.start) return arc.start_closed;
    if (w == arc.end) return arc.end_closed;
    if (arc.is_point()) continue;
    if (ccw_less_from(arc.start, w, arc.end)) return true;
  }
  return false;
}

ArcSet stable_arcs_2d(const UpdateFamily& family) {
  if (family.dim() != 2) throw KcmError(ErrorCode::DimensionMismatch, "stable_arcs_2d needs d = 2");

  // Stability can only change at directions orthogonal to some rule site.
  std::vector<Direction> critical;
  for (const UpdateRule& rule : family.rules()) {
    for (const Site& x : rule.sites()) {
      Direction p({-x[1], x[0]});
      critical.push_back(p);
      critical.push_back(-p);
    }
  }
  std::sort(critical.begin(), critical.end(), angle_less);
  critical.erase(std::unique(critical.begin(), critical.end()), critical.end());

  // Cyclic sequence: point 0, gap 0, point 1, gap 1, ...
  const std::size_t k = critical.size();
  std::vector<bool> point_stable(k), gap_stable(k);
  for (std::size_t i = 0; i < k; ++i) {
    point_stable[i] = is_stable(family, critical[i]);
    gap_stable[i] = is_stable(family, midpoint(critical[i], critical[(i + 1) % k]));
  }

  const auto element_stable = [&](std::size_t e) {
    return e % 2 == 0 ? point_stable[e / 2] : gap_stable[e / 2];
  };
  const std::size_t m = 2 * k;
  std::size_t first_unstable = m;
  for (std::size_t e = 0; e < m; ++e) {
    if (!element_stable(e)) {
      first_unstable = e;
      break;
    }
  }
  if (first_unstable == m) return ArcSet::full_circle();

  std::vector<ArcSet::Arc> arcs;
  std::size_t e = first_unstable;
  for (std::size_t step = 0; step < m;) {
    if (!element_stable(e % m)) {
      ++e;
      ++step;
      continue;
    }
    const std::size_t run_start = e;
    while (step < m && element_stable(e % m)) {
      ++e;
      ++step;
    }
    const std::size_t run_end = e - 1;
    ArcSet::Arc arc{critical[0], critical[0], true, true};
    // A run that starts on a gap is open at the preceding critical point.
    if ((run_start % m) % 2 == 0) {
      arc.start = critical[(run_start % m) / 2];
    } else {
      arc.start = critical[(run_start % m) / 2];
      arc.start_closed = false;
    }
    if ((run_end % m) % 2 == 0) {
      arc.end = critical[(run_end % m) / 2];
    } else {
      arc.end = critical[((run_end % m) / 2 + 1) % k];
      arc.end_closed = false;
    }
    arcs.push_back(std::move(arc));
  }
  std::sort(arcs.begin(), arcs.end(), [](const ArcSet::Arc& a, const ArcSet::Arc& b) {
    return angle_less(a.start, b.start);
  });
  return ArcSet(std::move(arcs));
}

}  // namespace kcm
