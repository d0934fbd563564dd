#include "kcm/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <string>
#include <thread>

#include "kcm/error.hpp"
#include "move_table.hpp"
#include "state_store.hpp"

namespace kcm {

StateKey StateKey::encode(const Configuration& cfg) { return StateKey(cfg.zero_bits().words()); }

Configuration StateKey::decode(DomainPtr domain, BoundaryMode mode) const {
  SiteBits bits(domain->size());
  if (bits.words().size() != words_.size())
    throw KcmError(ErrorCode::DimensionMismatch, "state key width differs from domain");
  bits.words() = words_;
  return Configuration(std::move(domain), std::move(bits), mode);
}

std::size_t StateKey::zero_count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::size_t StateKeyHash::operator()(const StateKey& k) const {
  return static_cast<std::size_t>(detail::hash_words(k.words()));
}

TargetPredicate site_is_zero(const Domain& domain, const Site& s) {
  const auto idx = domain.index_of(s);
  if (!idx) throw KcmError(ErrorCode::SiteOutsideDomain, "target site " + to_string(s) + " is not in the domain");
  const std::size_t i = *idx;
  return [i](const StateView& v) { return v.is_zero_index(i); };
}

TargetPredicate equals_state(const StateKey& key) {
  return [key](const StateView& v) { return std::equal(v.words().begin(), v.words().end(), key.words().begin(), key.words().end()); };
}

std::uint64_t default_max_states() {
  if (const char* env = std::getenv("KCM_MAX_STATES")) {
    try {
      const auto v = std::stoull(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return std::uint64_t{1} << 26;
}

namespace {

constexpr std::size_t kMinKeysPerWorker = 64;

struct LevelOutput {
  std::vector<std::uint64_t> next;
  std::vector<std::uint64_t> hits;  // target states discovered on this level
};

// Expands frontier keys [begin, end) into `out`.
class Expander {
 public:
  Expander(const detail::MoveTable& moves, detail::StateStore& store, const Domain& domain, std::size_t n,
           const TargetPredicate& target, std::atomic<bool>& abort, std::uint64_t max_states)
      : moves_(moves),
        store_(store),
        domain_(domain),
        n_(n),
        target_(target),
        abort_(abort),
        max_states_(max_states),
        width_(store.width()),
        stamp_(moves.size(), 0) {}

  void run(const std::vector<std::uint64_t>& frontier, std::size_t begin, std::size_t end, LevelOutput& out,
           std::atomic<std::uint64_t>& visited) {
    std::vector<std::uint64_t> child(width_);
    std::vector<std::uint32_t> candidates;
    for (std::size_t k = begin; k < end; ++k) {
      if (abort_.load(std::memory_order_relaxed)) return;
      std::span<const std::uint64_t> key(frontier.data() + k * width_, width_);

      std::size_t zeros = 0;
      ++epoch_;
      candidates.clear();
      auto add = [&](std::uint32_t s) {
        if (stamp_[s] != epoch_) {
          stamp_[s] = epoch_;
          candidates.push_back(s);
        }
      };
      for (std::uint32_t s : moves_.free_sites()) add(s);
      for (std::size_t w = 0; w < width_; ++w) {
        std::uint64_t bits = key[w];
        zeros += static_cast<std::size_t>(std::popcount(bits));
        while (bits) {
          const auto j = static_cast<std::size_t>(w * 64 + std::countr_zero(bits));
          bits &= bits - 1;
          for (std::uint32_t s : moves_.influenced_by(j)) add(s);
        }
      }

      for (std::uint32_t s : candidates) {
        const bool is_zero = (key[s / 64] >> (s % 64)) & 1;
        if (!is_zero && zeros >= n_) continue;
        if (!moves_.legal(s, key)) continue;
        std::copy(key.begin(), key.end(), child.begin());
        child[s / 64] ^= std::uint64_t{1} << (s % 64);
        if (!store_.insert(child, static_cast<std::int32_t>(s))) continue;
        if (visited.fetch_add(1, std::memory_order_relaxed) + 1 > max_states_) {
          abort_.store(true, std::memory_order_relaxed);
          return;
        }
        out.next.insert(out.next.end(), child.begin(), child.end());
        if (target_ && target_(StateView(domain_, child, is_zero ? zeros - 1 : zeros + 1)))
          out.hits.insert(out.hits.end(), child.begin(), child.end());
      }
    }
  }

 private:
  const detail::MoveTable& moves_;
  detail::StateStore& store_;
  const Domain& domain_;
  std::size_t n_;
  const TargetPredicate& target_;
  std::atomic<bool>& abort_;
  std::uint64_t max_states_;
  std::size_t width_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
};

PathCertificate rebuild_path(const detail::StateStore& store, std::vector<std::uint64_t> key, DomainPtr domain,
                             std::size_t n, BoundaryMode mode) {
  std::vector<Site> flips;
  while (true) {
    const auto flip = store.flip_of(key);
    if (!flip || *flip < 0) break;
    const auto s = static_cast<std::size_t>(*flip);
    flips.push_back(domain->site(s));
    key[s / 64] ^= std::uint64_t{1} << (s % 64);
  }
  std::reverse(flips.begin(), flips.end());
  return PathCertificate{std::move(domain), mode, n, {}, std::move(flips)};
}

}  // namespace

SearchReport explore(const UpdateFamily& family, DomainPtr domain, std::size_t n, BoundaryMode mode,
                     const SearchOptions& options) {
  if (domain->dim() != family.dim())
    throw KcmError(ErrorCode::DimensionMismatch, "domain and family differ in dimension");

  const detail::MoveTable moves(family, *domain, mode);
  const std::size_t width = (domain->size() + 63) / 64;
  const unsigned workers = std::max(1u, options.workers);
  detail::StateStore store(width, workers == 1 ? 1 : 64, options.want_certificate);
  const std::uint64_t memory_states = options.caps.max_memory_bytes / store.bytes_per_state();
  const std::uint64_t max_states = std::min<std::uint64_t>(options.caps.max_states, std::max<std::uint64_t>(memory_states, 1));

  SearchReport report;
  std::vector<std::uint64_t> frontier(width, 0);
  store.insert(frontier, -1);
  std::atomic<std::uint64_t> visited{1};
  std::atomic<bool> abort{false};
  std::vector<std::uint64_t> hits;
  if (options.target && options.target(StateView(*domain, frontier, 0))) hits = frontier;
  if (max_states < 1) abort = true;

  std::vector<Expander> expanders;
  for (unsigned w = 0; w < workers; ++w)
    expanders.emplace_back(moves, store, *domain, n, options.target, abort, max_states);

  while (hits.empty() && !frontier.empty() && !abort) {
    const std::size_t count = frontier.size() / width;
    report.max_frontier = std::max<std::uint64_t>(report.max_frontier, count);
    const std::size_t active = std::clamp<std::size_t>(count / kMinKeysPerWorker, 1, workers);
    std::vector<LevelOutput> outputs(active);
    if (active == 1) {
      expanders[0].run(frontier, 0, count, outputs[0], visited);
    } else {
      std::vector<std::jthread> threads;
      for (std::size_t w = 0; w < active; ++w) {
        const std::size_t begin = count * w / active;
        const std::size_t end = count * (w + 1) / active;
        threads.emplace_back([&, w, begin, end] { expanders[w].run(frontier, begin, end, outputs[w], visited); });
      }
    }
    frontier.clear();
    for (auto& out : outputs) {
      frontier.insert(frontier.end(), out.next.begin(), out.next.end());
      hits.insert(hits.end(), out.hits.begin(), out.hits.end());
    }
    ++report.depth;
  }

  report.truncated = abort.load();
  report.states_visited = std::min<std::uint64_t>(store.size(), max_states);
  if (!frontier.empty())
    report.max_frontier = std::max<std::uint64_t>(report.max_frontier, frontier.size() / width);

  if (!hits.empty() && !report.truncated) {
    report.reached_target = true;
    // The smallest hit keeps single-worker certificates reproducible.
    std::vector<std::uint64_t> best(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(width));
    for (std::size_t i = width; i < hits.size(); i += width) {
      std::vector<std::uint64_t> cand(hits.begin() + static_cast<std::ptrdiff_t>(i),
                                      hits.begin() + static_cast<std::ptrdiff_t>(i + width));
      if (cand < best) best = std::move(cand);
    }
    if (options.want_certificate) report.certificate = rebuild_path(store, std::move(best), domain, n, mode);
  } else if (!hits.empty()) {
    // A hit found before the cap tripped is still a sound positive verdict.
    report.reached_target = true;
    if (options.want_certificate)
      report.certificate = rebuild_path(
          store, std::vector<std::uint64_t>(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(width)), domain,
          n, mode);
  }
  if (!report.truncated && !report.reached_target) report.v_n_size = report.states_visited;

  if (options.collect_states) {
    store.for_each([&](std::span<const std::uint64_t> key) {
      report.states.emplace_back(std::vector<std::uint64_t>(key.begin(), key.end()));
    });
    std::sort(report.states.begin(), report.states.end());
  }
  return report;
}

SearchReport origin_reachable(const UpdateFamily& family, DomainPtr domain, std::size_t n, BoundaryMode mode,
                              SearchOptions options) {
  options.target = site_is_zero(*domain, origin(domain->dim()));
  return explore(family, std::move(domain), n, mode, options);
}

std::optional<std::size_t> min_zero_budget(const UpdateFamily& family, DomainPtr domain, BoundaryMode mode,
                                           std::size_t n_max, SearchOptions options) {
  for (std::size_t n = 0; n <= n_max; ++n) {
    const SearchReport r = origin_reachable(family, domain, n, mode, options);
    if (r.reached_target) return n;
    if (r.truncated)
      throw KcmError(ErrorCode::ResourceCapExceeded, "search truncated at budget " + std::to_string(n));
  }
  return std::nullopt;
}

CertificateCheck verify_certificate(const PathCertificate& cert, const UpdateFamily& family) {
  CertificateCheck check;
  if (!cert.domain) {
    check.reason = "certificate has no domain";
    check.failure_index = 0;
    return check;
  }
  if (cert.domain->dim() != family.dim()) {
    check.reason = "certificate domain and family differ in dimension";
    check.failure_index = 0;
    return check;
  }
  std::optional<Configuration> cfg;
  try {
    cfg.emplace(cert.domain, cert.start, cert.boundary);
  } catch (const KcmError& e) {
    check.failure_index = 0;
    check.reason = std::string("start state: ") + e.what();
    return check;
  }
  if (cfg->zero_count() > cert.n) {
    check.failure_index = 0;
    check.reason = "start state holds more than n zeros";
    return check;
  }
  check.peak_zeros = cfg->zero_count();

  const detail::MoveTable moves(family, *cert.domain, cert.boundary);
  for (std::size_t j = 0; j < cert.flips.size(); ++j) {
    const auto idx = cert.domain->index_of(cert.flips[j]);
    if (!idx) {
      check.failure_index = j;
      check.reason = "flip " + std::to_string(j) + " at " + to_string(cert.flips[j]) + " is outside the domain";
      return check;
    }
    if (!moves.legal(*idx, cfg->zero_bits().words())) {
      check.failure_index = j;
      check.reason = "flip " + std::to_string(j) + " at " + to_string(cert.flips[j]) + " is not a legal move";
      return check;
    }
    cfg->toggle_index(*idx);
    if (cfg->zero_count() > cert.n) {
      check.failure_index = j;
      check.reason = "flip " + std::to_string(j) + " exceeds the zero budget " + std::to_string(cert.n);
      return check;
    }
    check.peak_zeros = std::max(check.peak_zeros, cfg->zero_count());
  }
  check.ok = true;
  check.final_state = std::move(cfg);
  return check;
}

PathCertificate reverse_certificate(const PathCertificate& cert) {
  PathCertificate out = cert;
  if (cert.domain) {
    Configuration cfg(cert.domain, cert.start, cert.boundary);
    for (const Site& s : cert.flips) cfg = apply_flip(cfg, s);
    out.start = cfg.zeros();
  }
  std::reverse(out.flips.begin(), out.flips.end());
  return out;
}

}  // namespace kcm
