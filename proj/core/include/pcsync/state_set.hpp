#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pcsync {

using State = std::uint32_t;

/// Subset of {0..n-1} stored as a bit vector.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t universe)
      : universe_(universe), bits_((universe + 63) / 64, 0) {}

  static StateSet full(std::size_t universe) {
    StateSet s(universe);
    for (std::size_t i = 0; i < s.bits_.size(); ++i) s.bits_[i] = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  std::size_t universe() const { return universe_; }

  bool contains(State q) const {
    return q < universe_ && ((bits_[q >> 6] >> (q & 63)) & 1U) != 0;
  }
  void insert(State q) { bits_[q >> 6] |= std::uint64_t{1} << (q & 63); }
  void erase(State q) { bits_[q >> 6] &= ~(std::uint64_t{1} << (q & 63)); }
  void clear() { std::fill(bits_.begin(), bits_.end(), 0); }

  std::size_t size() const {
    std::size_t total = 0;
    for (auto w : bits_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }
  bool empty() const {
    for (auto w : bits_)
      if (w != 0) return false;
    return true;
  }

  /// Smallest member; universe() when empty.
  State first() const {
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] != 0) return static_cast<State>(i * 64 + std::countr_zero(bits_[i]));
    return static_cast<State>(universe_);
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      std::uint64_t w = bits_[i];
      while (w != 0) {
        f(static_cast<State>(i * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<State> members() const {
    std::vector<State> out;
    out.reserve(size());
    for_each([&](State q) { out.push_back(q); });
    return out;
  }

  std::span<const std::uint64_t> words() const { return bits_; }
  std::span<std::uint64_t> words() { return bits_; }

  friend bool operator==(const StateSet&, const StateSet&) = default;

 private:
  void trim() {
    if (universe_ % 64 != 0 && !bits_.empty())
      bits_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
  }

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace pcsync
