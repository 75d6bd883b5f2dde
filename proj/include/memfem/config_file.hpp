#ifndef MEMFEM_CONFIG_FILE_HPP
#define MEMFEM_CONFIG_FILE_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

namespace memfem {

// Plain-text "key = value" configuration with [section] headers; '#' and ';'
// start comments. Human-diffable and schema-free.
class ConfigFile {
 public:
  static ConfigFile parse_file(const std::string& path);
  static ConfigFile parse_string(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;

  std::string get_string(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  int get_int(const std::string& section, const std::string& key) const;
  int get_int(const std::string& section, const std::string& key, int fallback) const;
  bool get_bool(const std::string& section, const std::string& key,
                bool fallback) const;

  // All (section, key) pairs present in the file.
  std::vector<std::pair<std::string, std::string>> entries() const;

  // Throws ConfigError when the file holds a (section, key) outside the
  // allowed set, naming the offender.
  void reject_unknown_keys(
      const std::set<std::pair<std::string, std::string>>& allowed) const;

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace memfem

#endif
