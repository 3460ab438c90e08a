#include "aitlab/bitstring.hpp"

#include <ostream>

#include "aitlab/errors.hpp"

namespace aitlab {

BitString BitString::parse(std::string_view text) {
  BitString s;
  s.bits_.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1')
      throw ConfigError("bit string may contain only '0' and '1', got '" +
                        std::string(1, c) + "'");
    s.bits_.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return s;
}

BitString BitString::prefix(std::size_t n) const {
  BitString r;
  r.bits_.assign(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(n));
  return r;
}

bool BitString::is_prefix_of(const BitString& o) const {
  if (size() > o.size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (bits_[i] != o.bits_[i]) return false;
  return true;
}

std::string BitString::str() const {
  std::string out;
  out.reserve(size());
  for (std::uint8_t b : bits_) out.push_back(b ? '1' : '0');
  return out;
}

std::ostream& operator<<(std::ostream& os, const BitString& s) {
  return os << (s.empty() ? std::string("(empty)") : s.str());
}

}  // namespace aitlab
