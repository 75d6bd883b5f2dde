#include "memfem/config_file.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "memfem/errors.hpp"

namespace memfem {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

ConfigFile ConfigFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_string(buffer.str());
}

ConfigFile ConfigFile::parse_string(const std::string& text) {
  ConfigFile cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("unterminated section header at line " +
                          std::to_string(line_number));
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError("empty section name at line " + std::to_string(line_number));
      cfg.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key = value at line " + std::to_string(line_number));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("empty key at line " + std::to_string(line_number));
    if (section.empty())
      throw ConfigError("key '" + key + "' outside any section at line " +
                        std::to_string(line_number));
    if (!cfg.sections_[section].emplace(key, value).second)
      throw ConfigError("duplicate key '" + section + "." + key + "'");
  }
  return cfg;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) > 0;
}

std::string ConfigFile::get_string(const std::string& section,
                                   const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end() || !s->second.count(key))
    throw ConfigError("missing required config key '" + section + "." + key + "'");
  return s->second.at(key);
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key,
                                   const std::string& fallback) const {
  return has(section, key) ? get_string(section, key) : fallback;
}

double ConfigFile::get_double(const std::string& section, const std::string& key) const {
  const std::string v = get_string(section, key);
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + section + "." + key + "' is not a number: " + v);
  }
}

double ConfigFile::get_double(const std::string& section, const std::string& key,
                              double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

int ConfigFile::get_int(const std::string& section, const std::string& key) const {
  const std::string v = get_string(section, key);
  try {
    std::size_t pos = 0;
    const int i = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + section + "." + key + "' is not an integer: " + v);
  }
}

int ConfigFile::get_int(const std::string& section, const std::string& key,
                        int fallback) const {
  return has(section, key) ? get_int(section, key) : fallback;
}

bool ConfigFile::get_bool(const std::string& section, const std::string& key,
                          bool fallback) const {
  if (!has(section, key)) return fallback;
  std::string v = get_string(section, key);
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config key '" + section + "." + key + "' is not a boolean: " + v);
}

std::vector<std::pair<std::string, std::string>> ConfigFile::entries() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [section, keys] : sections_)
    for (const auto& [key, value] : keys) out.emplace_back(section, key);
  return out;
}

void ConfigFile::reject_unknown_keys(
    const std::set<std::pair<std::string, std::string>>& allowed) const {
  for (const auto& entry : entries()) {
    if (!allowed.count(entry))
      throw ConfigError("unknown config key '" + entry.first + "." + entry.second + "'");
  }
}

}  // namespace memfem
