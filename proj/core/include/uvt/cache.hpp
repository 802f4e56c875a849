#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>

namespace uvt {

// Memo table with shared reads and insert-if-absent writes. Values are
// computed outside the lock; the first insert wins.
template <class Key, class Value, class Compare = std::less<Key>>
class MemoCache {
 public:
  std::optional<Value> find(const Key& k) const {
    std::shared_lock lock(mutex_);
    auto it = map_.find(k);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  const Value& insert(const Key& k, Value v) {
    std::unique_lock lock(mutex_);
    return map_.try_emplace(k, std::move(v)).first->second;
  }

  template <class F>
  Value get_or_compute(const Key& k, F&& compute) {
    if (auto hit = find(k)) return *hit;
    return insert(k, compute());
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return map_.size();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::map<Key, Value, Compare> map_;
};

}  // namespace uvt
