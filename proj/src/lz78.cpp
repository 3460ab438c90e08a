#include "aitlab/lz78.hpp"

#include <algorithm>
#include <bit>

#include "aitlab/errors.hpp"

namespace aitlab {

std::uint32_t ceil_log2(std::uint64_t k) {
  if (k == 0) throw ConfigError("ceil_log2 needs k >= 1");
  return static_cast<std::uint32_t>(std::bit_width(k - 1));
}

PhraseDictionary::PhraseDictionary() {
  nodes_.push_back(Node{kNone, {kNone, kNone}, 0});
}

std::uint32_t PhraseDictionary::size() const {
  return static_cast<std::uint32_t>(nodes_.size());
}

std::uint32_t PhraseDictionary::child(std::uint32_t node, int bit) const {
  return nodes_[node].child[bit & 1];
}

std::uint32_t PhraseDictionary::add(std::uint32_t node, int bit) {
  auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_[node].child[bit & 1] = id;
  nodes_.push_back(Node{node, {kNone, kNone}, static_cast<std::uint8_t>(bit & 1)});
  return id;
}

BitString PhraseDictionary::phrase(std::uint32_t id) const {
  std::vector<std::uint8_t> rev;
  for (std::uint32_t n = id; n != 0; n = nodes_[n].parent)
    rev.push_back(nodes_[n].bit);
  BitString out;
  for (auto it = rev.rbegin(); it != rev.rend(); ++it) out.push_back(*it);
  return out;
}

namespace {

// Greedy walk shared by plain parsing and dictionary priming.
void parse_into(const BitString& x, PhraseDictionary& dict,
                std::vector<LzToken>* tokens) {
  std::size_t pos = 0;
  while (pos < x.size()) {
    std::uint32_t node = 0;
    while (pos < x.size()) {
      std::uint32_t next = dict.child(node, x.bit(pos));
      if (next == PhraseDictionary::kNone) break;
      node = next;
      ++pos;
    }
    if (pos == x.size()) {
      if (tokens) tokens->push_back(LzToken{node, -1});
      return;
    }
    int bit = x.bit(pos);
    ++pos;
    if (tokens) tokens->push_back(LzToken{node, bit});
    dict.add(node, bit);
  }
}

std::uint64_t token_cost(const LzParse& parse) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < parse.tokens.size(); ++i) {
    total += ceil_log2(parse.primed + i + 1);
    if (parse.tokens[i].bit >= 0) total += 1;
  }
  return total;
}

void append_ref(BitString& out, std::uint32_t ref, std::uint32_t width) {
  for (std::uint32_t b = width; b-- > 0;) out.push_back((ref >> b) & 1);
}

}  // namespace

LzParse lz_parse(const BitString& x, const BitString* side) {
  PhraseDictionary dict;
  if (side) parse_into(*side, dict, nullptr);
  LzParse parse;
  parse.primed = dict.size() - 1;
  parse_into(x, dict, &parse.tokens);
  parse.cost = token_cost(parse);
  return parse;
}

std::uint64_t lz_cost(const BitString& x) { return lz_parse(x).cost; }

std::uint64_t lz_cost_cond(const BitString& x, const BitString& y) {
  return lz_parse(x, &y).cost;
}

std::int64_t lz_info(const BitString& x, const BitString& y) {
  return static_cast<std::int64_t>(lz_cost(x)) -
         static_cast<std::int64_t>(lz_cost_cond(x, y));
}

double lz_ncd(const BitString& x, const BitString& y) {
  std::uint64_t cx = lz_cost(x);
  std::uint64_t cy = lz_cost(y);
  if (cx == 0 && cy == 0)
    throw ConfigError("ncd undefined when both strings are empty");
  std::uint64_t cxy = lz_cost(x + y);
  auto num = static_cast<std::int64_t>(cxy) -
             static_cast<std::int64_t>(std::min(cx, cy));
  return static_cast<double>(num) / static_cast<double>(std::max(cx, cy));
}

BitString lz_encode(const BitString& x) { return lz_encode_cond(x, BitString{}); }

BitString lz_encode_cond(const BitString& x, const BitString& y) {
  LzParse parse = lz_parse(x, &y);
  BitString out;
  for (std::size_t i = 0; i < parse.tokens.size(); ++i) {
    append_ref(out, parse.tokens[i].ref, ceil_log2(parse.primed + i + 1));
    if (parse.tokens[i].bit >= 0) out.push_back(parse.tokens[i].bit);
  }
  return out;
}

BitString lz_decode(const BitString& code) {
  return lz_decode_cond(code, BitString{});
}

BitString lz_decode_cond(const BitString& code, const BitString& y) {
  PhraseDictionary dict;
  parse_into(y, dict, nullptr);
  std::uint32_t primed = dict.size() - 1;
  BitString out;
  std::size_t pos = 0;
  for (std::uint64_t i = 1; pos < code.size(); ++i) {
    std::uint32_t width = ceil_log2(primed + i);
    if (code.size() - pos < width)
      throw ConfigError("truncated phrase reference in coded stream");
    std::uint32_t ref = 0;
    for (std::uint32_t b = 0; b < width; ++b) ref = (ref << 1) | code.bit(pos++);
    if (ref >= primed + i)
      throw ConfigError("phrase reference out of range in coded stream");
    out.append(dict.phrase(ref));
    if (pos == code.size()) break;  // bare final reference
    int bit = code.bit(pos++);
    out.push_back(bit);
    if (dict.child(ref, bit) != PhraseDictionary::kNone)
      throw ConfigError("coded stream repeats a known phrase");
    dict.add(ref, bit);
  }
  return out;
}

}  // namespace aitlab
