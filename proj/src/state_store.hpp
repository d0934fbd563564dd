#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

namespace kcm::detail {

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

inline std::uint64_t hash_words(std::span<const std::uint64_t> key) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::uint64_t w : key) h = mix64(h ^ w) + 0x9e3779b97f4a7c15ULL;
  return h;
}

// Visited set of fixed-width keys, partitioned into independently locked
// shards by hash. Each key optionally carries the flip that discovered it.
class StateStore {
 public:
  StateStore(std::size_t words_per_key, std::size_t shard_count, bool keep_flips)
      : width_(words_per_key), keep_flips_(keep_flips), shards_(shard_count) {
    for (auto& s : shards_) s.table.assign(16, 0);
  }

  std::size_t width() const { return width_; }

  // Returns true when the key was not present before.
  bool insert(std::span<const std::uint64_t> key, std::int32_t flip) {
    const std::uint64_t h = hash_words(key);
    Shard& shard = shards_[h % shards_.size()];
    std::lock_guard lock(shard.mutex);
    std::size_t slot = probe(shard, key, h);
    if (shard.table[slot] != 0) return false;

    shard.arena.insert(shard.arena.end(), key.begin(), key.end());
    if (keep_flips_) shard.flips.push_back(flip);
    const auto index = static_cast<std::uint32_t>(shard.arena.size() / width_);
    shard.table[slot] = index;  // 1-based
    if (index * 2 > shard.table.size()) grow(shard);
    return true;
  }

  std::optional<std::int32_t> flip_of(std::span<const std::uint64_t> key) const {
    const std::uint64_t h = hash_words(key);
    const Shard& shard = shards_[h % shards_.size()];
    std::lock_guard lock(shard.mutex);
    const std::size_t slot = probe(shard, key, h);
    if (shard.table[slot] == 0) return std::nullopt;
    if (!keep_flips_) return -1;
    return shard.flips[shard.table[slot] - 1];
  }

  std::uint64_t size() const {
    std::uint64_t n = 0;
    for (const auto& s : shards_) n += s.arena.size() / width_;
    return n;
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (const auto& s : shards_)
      for (std::size_t i = 0; i < s.arena.size(); i += width_)
        fn(std::span<const std::uint64_t>(s.arena.data() + i, width_));
  }

  std::size_t bytes_per_state() const { return width_ * 8 + (keep_flips_ ? 4 : 0) + 8; }

 private:
  struct Shard {
    mutable std::mutex mutex;
    std::vector<std::uint64_t> arena;
    std::vector<std::int32_t> flips;
    std::vector<std::uint32_t> table;
  };

  std::size_t probe(const Shard& shard, std::span<const std::uint64_t> key, std::uint64_t h) const {
    const std::size_t mask = shard.table.size() - 1;
    std::size_t slot = (h >> 16) & mask;
    while (true) {
      const std::uint32_t idx = shard.table[slot];
      if (idx == 0) return slot;
      const std::uint64_t* stored = shard.arena.data() + (idx - 1) * width_;
      bool same = true;
      for (std::size_t w = 0; w < width_; ++w)
        if (stored[w] != key[w]) {
          same = false;
          break;
        }
      if (same) return slot;
      slot = (slot + 1) & mask;
    }
  }

  void grow(Shard& shard) {
    std::vector<std::uint32_t> old;
    old.swap(shard.table);
    shard.table.assign(old.size() * 2, 0);
    const std::size_t mask = shard.table.size() - 1;
    for (std::uint32_t idx : old) {
      if (idx == 0) continue;
      std::span<const std::uint64_t> key(shard.arena.data() + (idx - 1) * width_, width_);
      std::size_t slot = (hash_words(key) >> 16) & mask;
      while (shard.table[slot] != 0) slot = (slot + 1) & mask;
      shard.table[slot] = idx;
    }
  }

  std::size_t width_;
  bool keep_flips_;
  std::vector<Shard> shards_;
};

}  // namespace kcm::detail
