#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "aitlab/enumeration.hpp"

namespace aitlab {

// Memoizes enumeration results by (isa, L, T, condition). Optionally backed
// by a directory of table files so conditional tables built once are reused
// across invocations. Loaded files are fully verified.
class TableCache {
 public:
  explicit TableCache(EnumOptions build_opts = {})
      : build_opts_(build_opts) {}

  // Pre-register a table (e.g. one loaded from the command line).
  void seed(std::shared_ptr<const ProgramTable> table);

  // Enable the disk layer. When `allow_build` is false a miss on both the
  // memory and disk layers raises IoError instead of enumerating.
  void set_disk_dir(std::filesystem::path dir, bool allow_build = true);

  std::shared_ptr<const ProgramTable> get(const EnumParams& params);

  static std::string file_name(const EnumParams& params);

 private:
  EnumOptions build_opts_;
  std::optional<std::filesystem::path> disk_dir_;
  bool allow_build_ = true;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<const ProgramTable>> mem_;
};

}  // namespace aitlab
