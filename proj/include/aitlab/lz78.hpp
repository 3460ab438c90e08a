#pragma once

#include <cstdint>
#include <vector>

#include "aitlab/bitstring.hpp"

namespace aitlab {

// Bits needed to index one of k options, k >= 1. ceil_log2(1) == 0.
std::uint32_t ceil_log2(std::uint64_t k);

// Incremental binary phrase trie. Node id doubles as phrase index: the root
// (empty phrase) is 0, later ids follow insertion order.
class PhraseDictionary {
 public:
  static constexpr std::uint32_t kNone = UINT32_MAX;

  PhraseDictionary();

  std::uint32_t size() const;  // phrase count including the root
  std::uint32_t child(std::uint32_t node, int bit) const;
  std::uint32_t add(std::uint32_t node, int bit);
  BitString phrase(std::uint32_t id) const;

 private:
  struct Node {
    std::uint32_t parent;
    std::uint32_t child[2];
    std::uint8_t bit;
  };
  std::vector<Node> nodes_;
};

struct LzToken {
  std::uint32_t ref = 0;
  int bit = -1;  // -1 marks the bare final reference
};

struct LzParse {
  std::vector<LzToken> tokens;
  std::uint32_t primed = 0;  // phrases preloaded beyond the root
  std::uint64_t cost = 0;    // code length in bits
};

// Left-to-right greedy factorization of x. The dictionary starts with the
// root plus, when side is given, the phrases produced by parsing side first
// (that set is trie-closed, so preloading keeps ids dense). Token i may
// reference primed + i phrases, hence the ceil_log2(primed + i) field width;
// every token carries one literal bit except a final exact match.
LzParse lz_parse(const BitString& x, const BitString* side = nullptr);

std::uint64_t lz_cost(const BitString& x);
std::uint64_t lz_cost_cond(const BitString& x, const BitString& y);

// Bits saved on x by preloading y's phrases: lz_cost(x) - lz_cost_cond(x, y).
std::int64_t lz_info(const BitString& x, const BitString& y);

// (lz_cost(x + y) - min(cost_x, cost_y)) / max(cost_x, cost_y).
// Throws ConfigError when both inputs are empty.
double lz_ncd(const BitString& x, const BitString& y);

// Serialized token stream: per token a ceil_log2(primed + i)-wide reference,
// MSB first, then the literal bit unless the stream ends. lz_decode inverts
// lz_encode; the conditional forms must agree on y.
BitString lz_encode(const BitString& x);
BitString lz_encode_cond(const BitString& x, const BitString& y);
BitString lz_decode(const BitString& code);
BitString lz_decode_cond(const BitString& code, const BitString& y);

}  // namespace aitlab
