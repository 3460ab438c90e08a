#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "aitlab/bitstring.hpp"

namespace aitlab {

struct CorpusItem {
  std::string name;
  BitString bits;
};

// Fixed collection spanning periodic, de Bruijn and pseudo-random material,
// 8 to 128 Kbit each. Deterministic across runs and platforms (mt19937_64
// with pinned seeds).
std::vector<CorpusItem> builtin_corpus();

// ASCII 0/1 with arbitrary whitespace. Anything else is an IoError.
BitString load_bits_file(const std::filesystem::path& path);

// Every *.bits file in the directory, sorted by filename, named by stem.
std::vector<CorpusItem> load_corpus_dir(const std::filesystem::path& dir);

}  // namespace aitlab
