#include "aitlab/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <random>

#include "aitlab/errors.hpp"

namespace aitlab {

namespace {

BitString periodic(std::initializer_list<int> period, std::size_t bits) {
  BitString p(period);
  BitString out;
  for (std::size_t i = 0; i < bits; ++i) out.push_back(p.bit(i % p.size()));
  return out;
}

// Greedy prefer-one walk; emits every n-gram once, length 2^n + n - 1.
BitString de_bruijn(unsigned n) {
  std::size_t mask = (std::size_t{1} << n) - 1;
  std::vector<bool> seen(std::size_t{1} << n, false);
  BitString out = BitString::zeros(n);
  std::size_t window = 0;
  seen[0] = true;
  for (;;) {
    std::size_t one = ((window << 1) | 1) & mask;
    std::size_t zero = (window << 1) & mask;
    if (!seen[one]) {
      out.push_back(1);
      window = one;
    } else if (!seen[zero]) {
      out.push_back(0);
      window = zero;
    } else {
      return out;
    }
    seen[window] = true;
  }
}

BitString pseudo_random(std::uint64_t seed, std::size_t bits) {
  std::mt19937_64 gen(seed);
  BitString out;
  while (out.size() < bits) {
    std::uint64_t w = gen();
    for (int b = 63; b >= 0 && out.size() < bits; --b)
      out.push_back((w >> b) & 1);
  }
  return out;
}

}  // namespace

// Composition note: dictionary sharing between two streams is near-symmetric
// within a family and between periodic and anything, but a stream whose
// dictionary helps nothing else (distinct de Bruijn orders, counter ramps,
// verbatim-repeated blocks) produces one-sided savings, so those families
// appear once or not at all.
std::vector<CorpusItem> builtin_corpus() {
  std::vector<CorpusItem> items;
  items.push_back({"periodic-01", periodic({0, 1}, 16384)});
  items.push_back({"periodic-0011", periodic({0, 0, 1, 1}, 16384)});
  items.push_back({"periodic-10110", periodic({1, 0, 1, 1, 0}, 20480)});
  items.push_back({"periodic-011", periodic({0, 1, 1}, 24576)});
  items.push_back({"debruijn-13", de_bruijn(13)});
  items.push_back({"random-a", pseudo_random(0xA17AB001u, 32768)});
  items.push_back({"random-b", pseudo_random(0xA17AB002u, 131072)});
  items.push_back({"random-c", pseudo_random(0xA17AB003u, 32768)});
  items.push_back({"random-d", pseudo_random(0xA17AB004u, 65536)});
  items.push_back({"random-e", pseudo_random(0xA17AB005u, 65536)});
  return items;
}

BitString load_bits_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  BitString out;
  char c;
  while (in.get(c)) {
    if (c == '0' || c == '1')
      out.push_back(c - '0');
    else if (c != ' ' && c != '\t' && c != '\r' && c != '\n')
      throw IoError(path.string() + ": unexpected character '" +
                    std::string(1, c) + "'");
  }
  return out;
}

std::vector<CorpusItem> load_corpus_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec))
    throw IoError("not a directory: " + dir.string());
  std::vector<CorpusItem> items;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".bits")
      continue;
    items.push_back(
        {entry.path().stem().string(), load_bits_file(entry.path())});
  }
  if (items.empty()) throw IoError("no .bits files in " + dir.string());
  std::sort(items.begin(), items.end(),
            [](const CorpusItem& a, const CorpusItem& b) {
              return a.name < b.name;
            });
  return items;
}

}  // namespace aitlab
