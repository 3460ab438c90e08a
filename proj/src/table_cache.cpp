#include "aitlab/table_cache.hpp"

#include "aitlab/errors.hpp"
#include "aitlab/table_io.hpp"

namespace aitlab {

void TableCache::seed(std::shared_ptr<const ProgramTable> table) {
  std::lock_guard<std::mutex> lock(mu_);
  mem_[table->params.cache_key()] = std::move(table);
}

void TableCache::set_disk_dir(std::filesystem::path dir, bool allow_build) {
  std::lock_guard<std::mutex> lock(mu_);
  disk_dir_ = std::move(dir);
  allow_build_ = allow_build;
}

std::string TableCache::file_name(const EnumParams& p) {
  return "isa" + std::to_string(p.isa_version) + "_L" +
         std::to_string(p.max_program_bits) + "_T" +
         std::to_string(p.step_budget) + "_cond" +
         (p.condition.empty() ? "-" : p.condition.str()) + ".tbl";
}

std::shared_ptr<const ProgramTable> TableCache::get(const EnumParams& params) {
  params.validate();
  const std::string key = params.cache_key();
  std::lock_guard<std::mutex> lock(mu_);
  if (auto it = mem_.find(key); it != mem_.end()) return it->second;

  if (disk_dir_) {
    std::filesystem::path file = *disk_dir_ / file_name(params);
    std::error_code ec;
    if (std::filesystem::exists(file, ec)) {
      auto table = std::make_shared<ProgramTable>(load_table(file));
      if (!(table->params == params))
        throw IoError(file.string() +
                      ": cached table parameters do not match request");
      mem_[key] = table;
      return table;
    }
    if (!allow_build_)
      throw IoError("required table not cached: " + file.string());
    auto table =
        std::make_shared<ProgramTable>(enumerate_programs(params, build_opts_));
    save_table(*table, file);
    mem_[key] = table;
    return table;
  }

  if (!allow_build_)
    throw IoError("required table not available: " + key);
  auto table =
      std::make_shared<ProgramTable>(enumerate_programs(params, build_opts_));
  mem_[key] = table;
  return table;
}

}  // namespace aitlab
