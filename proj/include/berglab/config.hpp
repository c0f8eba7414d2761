#ifndef BERGLAB_CONFIG_HPP
#define BERGLAB_CONFIG_HPP

#include <map>
#include <string>

namespace berglab {

/// Flat TOML subset: [section] headers, key = value with strings, numbers
/// and booleans, # comments. Enough for experiment configs.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback = "") const;
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  long get_int(const std::string& section, const std::string& key,
               long fallback) const;
  bool get_bool(const std::string& section, const std::string& key,
                bool fallback) const;

 private:
  std::map<std::string, std::map<std::string, std::string>> values_;
};

}  // namespace berglab

#endif
