// multiset.hpp -- object multisets with checked counts
#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace memforge {

using Symbol = std::string;
using Count = std::int64_t;

struct OverflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Multiset of object symbols. Counts are always positive; adding past the
// Count range is a hard error, never wraparound, and removing an absent
// object throws.
class Multiset {
public:
  using Map = std::map<Symbol, Count>;

  Multiset() = default;
  Multiset(std::initializer_list<std::pair<Symbol, Count>> items) {
    for (const auto& [sym, n] : items) add(sym, n);
  }

  static Multiset singleton(const Symbol& sym) { return Multiset{{sym, 1}}; }

  bool empty() const { return items_.empty(); }
  std::size_t distinct() const { return items_.size(); }

  Count count(const Symbol& sym) const {
    auto it = items_.find(sym);
    return it == items_.end() ? 0 : it->second;
  }
  bool contains(const Symbol& sym) const { return items_.count(sym) != 0; }

  Count total() const {
    Count sum = 0;
    for (const auto& [sym, n] : items_) sum = checked_add(sum, n);
    return sum;
  }

  void add(const Symbol& sym, Count n = 1) {
    if (n < 0) throw std::logic_error("Multiset::add: negative count");
    if (n == 0) return;
    Count& slot = items_[sym];
    slot = checked_add(slot, n);
  }

  void add(const Multiset& other) {
    for (const auto& [sym, n] : other.items_) add(sym, n);
  }

  void remove(const Symbol& sym, Count n = 1) {
    auto it = items_.find(sym);
    if (it == items_.end() || it->second < n)
      throw std::logic_error("Multiset::remove: object '" + sym + "' not present in sufficient count");
    it->second -= n;
    if (it->second == 0) items_.erase(it);
  }

  void remove(const Multiset& other) {
    for (const auto& [sym, n] : other.items_) remove(sym, n);
  }

  Multiset plus(const Multiset& other) const {
    Multiset out = *this;
    out.add(other);
    return out;
  }

  const Map& items() const { return items_; }

  bool operator==(const Multiset& other) const = default;

  // "a:2,b:1" -- sorted by construction (std::map), used by canonical keys.
  std::string to_key() const {
    std::string out;
    for (const auto& [sym, n] : items_) {
      out += std::to_string(sym.size());
      out += ':';
      out += sym;
      out += 'x';
      out += std::to_string(n);
      out += ',';
    }
    return out;
  }

private:
  static Count checked_add(Count a, Count b) {
    if (a > std::numeric_limits<Count>::max() - b)
      throw OverflowError("multiset count overflow");
    return a + b;
  }

  Map items_;
};

}  // namespace memforge
