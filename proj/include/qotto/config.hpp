#pragma once
#include <string>
#include <variant>
#include <vector>

namespace qotto::cfg {

// Key/value run configuration read from a TOML-style file.  Supported subset:
// `# comments`, `[section]` headers (one level), `key = value` with bare keys,
// booleans, decimal integers and floats (inf/nan allowed), "basic" and
// 'literal' single-line strings, and single-line homogeneous arrays of
// numbers or strings.  Full key names are "section.key" ("key" at root).
class Config {
 public:
  using Real = double;
  using Variant = std::variant<bool, long long, double, std::string,
                               std::vector<double>, std::vector<std::string>>;
  struct Value {
    Variant v;
    int line = 0;  // source line, 0 for programmatic values
  };

  Config() = default;
  static Config parse(const std::string& text, const std::string& origin = "<config>");
  static Config parse_file(const std::string& path);

  bool has(const std::string& key) const;

  // Strict getters throw ValidationError on a missing key or a type mismatch;
  // the defaulted forms return `dflt` when the key is absent.  Integer values
  // promote to real.
  bool get_bool(const std::string& key) const;
  bool get_bool(const std::string& key, bool dflt) const;
  long long get_int(const std::string& key) const;
  long long get_int(const std::string& key, long long dflt) const;
  double get_real(const std::string& key) const;
  double get_real(const std::string& key, double dflt) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& dflt) const;
  std::vector<double> get_reals(const std::string& key) const;
  std::vector<double> get_reals(const std::string& key, std::vector<double> dflt) const;
  std::vector<std::string> get_strings(const std::string& key) const;

  // Programmatic overrides (command-line flags beat file values).
  void set_bool(const std::string& key, bool v);
  void set_int(const std::string& key, long long v);
  void set_real(const std::string& key, double v);
  void set_string(const std::string& key, const std::string& v);
  void set_reals(const std::string& key, std::vector<double> v);
  void set_strings(const std::string& key, std::vector<std::string> v);

  std::vector<std::string> keys() const;    // sorted
  std::vector<std::string> unread() const;  // keys never fetched, sorted
  void touch(const std::string& key) const;  // mark as read without fetching

  // Deterministic round-trippable text: root keys first, then [section]
  // blocks, everything sorted.  parse(dump()) reproduces the config.
  std::string dump() const;

 private:
  struct Entry {
    std::string key;
    Value val;
    mutable bool read = false;
  };
  const Entry* find(const std::string& key) const;
  const Entry& require(const std::string& key) const;
  void insert(const std::string& key, Variant v);

  std::vector<Entry> entries_;  // kept sorted by key
  std::vector<std::string> tables_;
  std::string origin_ = "<config>";
};

}  // namespace qotto::cfg
