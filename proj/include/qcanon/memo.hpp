#ifndef QCANON_MEMO_HPP
#define QCANON_MEMO_HPP

#include <map>
#include <mutex>
#include <utility>

namespace qcanon {

// Insert-only memo table safe for concurrent use. Values are computed outside
// the lock; if two threads race on a key the first insertion wins. References
// stay valid because entries are never erased.
template <class K, class V>
class Memo {
 public:
  template <class F>
  const V& get(const K& key, F&& compute) {
    {
      std::lock_guard<std::mutex> g(mu_);
      auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    V value = compute();
    std::lock_guard<std::mutex> g(mu_);
    return map_.try_emplace(key, std::move(value)).first->second;
  }

  const V* find(const K& key) const {
    std::lock_guard<std::mutex> g(mu_);
    auto it = map_.find(key);
    return it == map_.end() ? nullptr : &it->second;
  }

  const V& put(const K& key, V value) {
    std::lock_guard<std::mutex> g(mu_);
    return map_.try_emplace(key, std::move(value)).first->second;
  }

  std::size_t size() const {
    std::lock_guard<std::mutex> g(mu_);
    return map_.size();
  }

  template <class F>
  void for_each(F&& f) const {
    std::lock_guard<std::mutex> g(mu_);
    for (const auto& [k, v] : map_) f(k, v);
  }

 private:
  mutable std::mutex mu_;
  std::map<K, V> map_;
};

}  // namespace qcanon

#endif
