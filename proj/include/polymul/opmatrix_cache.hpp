#pragma once

#include "polymul/json_io.hpp"
#include "polymul/opmatrix.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <tuple>

namespace polymul {

struct CacheStats {
  std::size_t hits = 0;
  std::size_t misses = 0;
  std::size_t rows_computed = 0;  // rows produced by the recurrence
  std::size_t rows_copied = 0;    // last rows taken from the transposed pair H_{k,n}
  std::size_t files_loaded = 0;
};

/// Shared store of H_{n,k} keyed by (basis key, n, k). A miss grows the
/// matrix from the largest cached H_{n',k}, n' < n, one row at a time; a
/// new last row is copied from H_{k,i} when that one is already cached,
/// since the last rows of H_{i,k} and H_{k,i} coincide.
///
/// With a directory set, misses first look for H_<basis>_<n>_<k>.json there
/// and freshly built matrices are written back.
template <Scalar S>
class OpMatrixCache {
 public:
  using Entry = std::shared_ptr<const OpMatrix<S>>;

  explicit OpMatrixCache(std::optional<std::filesystem::path> persist_dir = std::nullopt)
      : persist_dir_(std::move(persist_dir)) {}

  OpMatrixCache(const OpMatrixCache&) = delete;
  OpMatrixCache& operator=(const OpMatrixCache&) = delete;

  Entry get(const BasisPtr<S>& basis, std::size_t n, std::size_t k) {
    if (!basis) throw std::invalid_argument("OpMatrixCache::get: null basis");
    const Key key{basis->key(), n, k};
    {
      std::shared_lock lock(mutex_);
      if (auto it = map_.find(key); it != map_.end()) {
        ++hits_;
        return it->second;
      }
    }
    std::unique_lock lock(mutex_);
    if (auto it = map_.find(key); it != map_.end()) {
      ++hits_;
      return it->second;
    }
    ++misses_;
    if (auto loaded = load(basis, n, k)) {
      map_.emplace(key, loaded);
      return loaded;
    }

    Entry current;
    std::size_t start = n;
    for (;;) {
      if (auto it = map_.find(Key{basis->key(), start, k}); it != map_.end()) {
        current = it->second;
        break;
      }
      if (start == 0) break;
      --start;
    }
    if (!current) {
      current = std::make_shared<const OpMatrix<S>>(build_H(basis, 0, k));
      map_.emplace(Key{basis->key(), 0, k}, current);
    }
    for (std::size_t i = current->n + 1; i <= n; ++i) {
      std::vector<S> row;
      auto twin = (i != k) ? map_.find(Key{basis->key(), k, i}) : map_.end();
      if (twin != map_.end()) {
        auto last = twin->second->entries.row(twin->second->n);
        row.assign(last.begin(), last.end());
        ++rows_copied_;
      } else {
        row = next_row(*current);
        ++rows_computed_;
      }
      current = std::make_shared<const OpMatrix<S>>(append_row(*current, std::span<const S>(row)));
      map_.emplace(Key{basis->key(), i, k}, current);
    }
    store(*current);
    return current;
  }

  bool contains(const BasisPtr<S>& basis, std::size_t n, std::size_t k) const {
    std::shared_lock lock(mutex_);
    return map_.count(Key{basis->key(), n, k}) != 0;
  }

  CacheStats stats() const {
    return CacheStats{hits_.load(), misses_.load(), rows_computed_.load(), rows_copied_.load(), files_loaded_.load()};
  }

  void clear() {
    std::unique_lock lock(mutex_);
    map_.clear();
  }

  static std::string file_name(const std::string& basis_name, std::size_t n, std::size_t k) {
    return "H_" + basis_name + "_" + std::to_string(n) + "_" + std::to_string(k) + ".json";
  }

 private:
  using Key = std::tuple<std::string, std::size_t, std::size_t>;

  // Persisted files are keyed by basis name only, so node-carrying bases
  // (Newton) are never persisted.
  bool persistable(const BasisPtr<S>& basis) const {
    return persist_dir_.has_value() && !basis->nodes().has_value() && basis->family() != BasisFamily::custom;
  }

  Entry load(const BasisPtr<S>& basis, std::size_t n, std::size_t k) {
    if (!persistable(basis)) return nullptr;
    const auto path = *persist_dir_ / file_name(basis->name(), n, k);
    std::ifstream in(path);
    if (!in) return nullptr;
    try {
      Json j = Json::parse(in);
      auto h = std::make_shared<const OpMatrix<S>>(opmatrix_from_json<S>(j, basis));
      ++files_loaded_;
      return h;
    } catch (const std::exception&) {
      return nullptr;  // unreadable or float data in exact mode: rebuild
    }
  }

  void store(const OpMatrix<S>& h) const {
    if (!persistable(h.basis)) return;
    std::error_code ec;
    std::filesystem::create_directories(*persist_dir_, ec);
    const auto path = *persist_dir_ / file_name(h.basis->name(), h.n, h.k);
    if (std::filesystem::exists(path, ec)) return;
    std::ofstream out(path);
    if (out) out << opmatrix_to_json(h).dump() << "\n";
  }

  std::optional<std::filesystem::path> persist_dir_;
  mutable std::shared_mutex mutex_;
  std::map<Key, Entry> map_;
  std::atomic<std::size_t> hits_{0};
  std::atomic<std::size_t> misses_{0};
  std::atomic<std::size_t> rows_computed_{0};
  std::atomic<std::size_t> rows_copied_{0};
  std::atomic<std::size_t> files_loaded_{0};
};

/// Process-wide cache used when callers do not pass their own.
template <Scalar S>
OpMatrixCache<S>& default_cache() {
  static OpMatrixCache<S> cache;
  return cache;
}

/// Cached H_{n,k}.
template <Scalar S>
std::shared_ptr<const OpMatrix<S>> cache_get(const BasisPtr<S>& basis, std::size_t n, std::size_t k,
                                             OpMatrixCache<S>& cache = default_cache<S>()) {
  return cache.get(basis, n, k);
}

}  // namespace polymul
