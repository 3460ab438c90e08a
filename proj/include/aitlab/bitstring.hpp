#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace aitlab {

// Finite sequence of bits. Programs, outputs, conditions and LZ inputs are
// all BitStrings. Ordering is shortlex (length first, then lexicographic),
// which is the canonical order used by tables and serialized files.
class BitString {
 public:
  BitString() = default;
  BitString(std::initializer_list<int> bits) {
    bits_.reserve(bits.size());
    for (int b : bits) bits_.push_back(static_cast<std::uint8_t>(b & 1));
  }

  // Accepts only '0'/'1' characters. Throws ConfigError otherwise.
  static BitString parse(std::string_view text);
  static BitString zeros(std::size_t n) {
    BitString s;
    s.bits_.assign(n, 0);
    return s;
  }

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  std::uint8_t bit(std::size_t i) const { return bits_[i]; }

  void push_back(std::uint8_t b) { bits_.push_back(b & 1); }
  void pop_back() { bits_.pop_back(); }
  void truncate(std::size_t n) { bits_.resize(n); }
  void append(const BitString& o) {
    bits_.insert(bits_.end(), o.bits_.begin(), o.bits_.end());
  }

  BitString operator+(const BitString& o) const {
    BitString r = *this;
    r.append(o);
    return r;
  }
  // Copy of this string with one extra bit at the end.
  BitString extended(std::uint8_t b) const {
    BitString r = *this;
    r.push_back(b);
    return r;
  }
  BitString prefix(std::size_t n) const;
  bool is_prefix_of(const BitString& o) const;
  // True when `o` is a proper prefix of this string or vice versa.
  bool proper_prefix_related(const BitString& o) const {
    return size() != o.size() && (is_prefix_of(o) || o.is_prefix_of(*this));
  }

  std::string str() const;  // "0100...", empty string for the empty BitString

  bool operator==(const BitString& o) const { return bits_ == o.bits_; }
  std::strong_ordering operator<=>(const BitString& o) const {
    if (bits_.size() != o.bits_.size()) return bits_.size() <=> o.bits_.size();
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] != o.bits_[i]) return bits_[i] <=> o.bits_[i];
    return std::strong_ordering::equal;
  }

  const std::vector<std::uint8_t>& raw() const { return bits_; }

 private:
  std::vector<std::uint8_t> bits_;
};

std::ostream& operator<<(std::ostream& os, const BitString& s);

}  // namespace aitlab

template <>
struct std::hash<aitlab::BitString> {
  std::size_t operator()(const aitlab::BitString& s) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (std::uint8_t b : s.raw()) {
      h ^= b;
      h *= 1099511628211ull;
    }
    h ^= s.size();
    return h;
  }
};
