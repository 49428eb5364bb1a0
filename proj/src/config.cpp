#include "qotto/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "qotto/errors.hpp"

namespace qotto::cfg {

namespace {

std::string trim(const std::string& s) {
  const char* ws = " \t\r";
  const auto a = s.find_first_not_of(ws);
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(ws);
  return s.substr(a, b - a + 1);
}

bool bare_key(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
  return true;
}

// cut a trailing comment, leaving quoted strings intact
std::string strip_comment(const std::string& raw) {
  bool basic = false, literal = false;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const char c = raw[i];
    if (basic) {
      if (c == '\\') ++i;
      else if (c == '"') basic = false;
    } else if (literal) {
      if (c == '\'') literal = false;
    } else if (c == '"') basic = true;
    else if (c == '\'') literal = true;
    else if (c == '#') return raw.substr(0, i);
  }
  return raw;
}

std::string parse_basic_string(const std::string& s, const std::string& where) {
  std::string out;
  std::size_t i = 1;
  for (; i < s.size() && s[i] != '"'; ++i) {
    char c = s[i];
    if (c != '\\') {
      out += c;
      continue;
    }
    if (++i >= s.size()) break;
    switch (s[i]) {
      case '"': out += '"'; break;
      case '\\': out += '\\'; break;
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      case 'r': out += '\r'; break;
      default: throw ValidationError(where + "unsupported escape '\\" + s[i] + "'");
    }
  }
  if (i >= s.size()) throw ValidationError(where + "unterminated string");
  if (i + 1 != s.size()) throw ValidationError(where + "trailing characters after string");
  return out;
}

Config::Variant parse_scalar(const std::string& s, const std::string& where) {
  if (s == "true") return true;
  if (s == "false") return false;
  if (s[0] == '"') return parse_basic_string(s, where);
  if (s[0] == '\'') {
    const auto close = s.find('\'', 1);
    if (close == std::string::npos) throw ValidationError(where + "unterminated string");
    if (close + 1 != s.size()) throw ValidationError(where + "trailing characters after string");
    return s.substr(1, close - 1);
  }
  const char* first = s.c_str() + (s[0] == '+' ? 1 : 0);
  long long iv = 0;
  const auto [p, ec] = std::from_chars(first, s.c_str() + s.size(), iv);
  if (ec == std::errc() && p == s.c_str() + s.size()) return iv;
  char* end = nullptr;
  const double dv = std::strtod(s.c_str(), &end);
  if (end == s.c_str() + s.size() && end != s.c_str()) return dv;
  throw ValidationError(where + "invalid value '" + s + "'");
}

Config::Variant parse_array(const std::string& s, const std::string& where) {
  if (s.back() != ']') throw ValidationError(where + "unterminated array");
  const std::string inner = s.substr(1, s.size() - 2);
  std::vector<std::string> elems;
  std::string cur;
  bool basic = false, literal = false;
  auto push = [&] {
    const std::string e = trim(cur);
    if (e.empty()) throw ValidationError(where + "empty array element");
    elems.push_back(e);
    cur.clear();
  };
  for (std::size_t i = 0; i < inner.size(); ++i) {
    const char c = inner[i];
    if (basic) {
      cur += c;
      if (c == '\\' && i + 1 < inner.size()) cur += inner[++i];
      else if (c == '"') basic = false;
    } else if (literal) {
      cur += c;
      if (c == '\'') literal = false;
    } else if (c == '"' || c == '\'') {
      (c == '"' ? basic : literal) = true;
      cur += c;
    } else if (c == '[') {
      throw ValidationError(where + "nested arrays are not supported");
    } else if (c == ',') {
      push();
    } else {
      cur += c;
    }
  }
  if (basic || literal) throw ValidationError(where + "unterminated string");
  if (!trim(cur).empty()) push();  // last element; empty = trailing comma, allowed
  std::vector<double> dv;
  std::vector<std::string> sv;
  for (const auto& e : elems) {
    Config::Variant x = parse_scalar(e, where);
    if (const auto* q = std::get_if<long long>(&x)) dv.push_back(static_cast<double>(*q));
    else if (const auto* q = std::get_if<double>(&x)) dv.push_back(*q);
    else if (auto* q = std::get_if<std::string>(&x)) sv.push_back(std::move(*q));
    else throw ValidationError(where + "array elements must be numbers or strings");
  }
  if (!dv.empty() && !sv.empty()) throw ValidationError(where + "mixed array element types");
  if (!sv.empty()) return sv;
  return dv;
}

const char* kind_name(const Config::Variant& v) {
  switch (v.index()) {
    case 0: return "boolean";
    case 1: return "integer";
    case 2: return "real";
    case 3: return "string";
    case 4: return "real array";
    default: return "string array";
  }
}

std::string fmt_real(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  std::string s = buf;
  // keep the value lexically real so a round trip preserves its type
  if (s.find_first_of(".eEnf") == std::string::npos) s += ".0";
  return s;
}

std::string fmt_string(const std::string& v) {
  std::string out = "\"";
  for (char c : v) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

std::string fmt_value(const Config::Variant& v) {
  struct {
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(long long i) const { return std::to_string(i); }
    std::string operator()(double d) const { return fmt_real(d); }
    std::string operator()(const std::string& s) const { return fmt_string(s); }
    std::string operator()(const std::vector<double>& a) const {
      std::string out = "[";
      for (std::size_t i = 0; i < a.size(); ++i) out += (i ? ", " : "") + fmt_real(a[i]);
      return out + "]";
    }
    std::string operator()(const std::vector<std::string>& a) const {
      std::string out = "[";
      for (std::size_t i = 0; i < a.size(); ++i) out += (i ? ", " : "") + fmt_string(a[i]);
      return out + "]";
    }
  } f;
  return std::visit(f, v);
}

void check_key_shape(const std::string& key) {
  const auto dot = key.find('.');
  const bool ok = dot == std::string::npos
                      ? bare_key(key)
                      : bare_key(key.substr(0, dot)) && bare_key(key.substr(dot + 1));
  if (!ok) throw ValidationError("config: malformed key '" + key + "'");
}

}  // namespace

Config Config::parse(const std::string& text, const std::string& origin) {
  Config c;
  c.origin_ = origin;
  std::istringstream is(text);
  std::string raw, section;
  int ln = 0;
  while (std::getline(is, raw)) {
    ++ln;
    const std::string where = origin + ":" + std::to_string(ln) + ": ";
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line[0] == '[') {
      if (line.back() != ']') throw ValidationError(where + "unterminated table header");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (!bare_key(name)) throw ValidationError(where + "malformed table name '" + name + "'");
      if (std::find(c.tables_.begin(), c.tables_.end(), name) != c.tables_.end())
        throw ValidationError(where + "table [" + name + "] redefined");
      if (c.find(name))
        throw ValidationError(where + "table [" + name + "] collides with key '" + name + "'");
      c.tables_.push_back(name);
      section = name;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationError(where + "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string rhs = trim(line.substr(eq + 1));
    if (!bare_key(key)) throw ValidationError(where + "malformed key '" + key + "'");
    if (rhs.empty()) throw ValidationError(where + "missing value for '" + key + "'");
    if (section.empty() &&
        std::find(c.tables_.begin(), c.tables_.end(), key) != c.tables_.end())
      throw ValidationError(where + "key '" + key + "' collides with table [" + key + "]");
    const std::string full = section.empty() ? key : section + "." + key;
    if (c.find(full)) throw ValidationError(where + "duplicate key '" + full + "'");
    Variant v = rhs[0] == '[' ? parse_array(rhs, where) : parse_scalar(rhs, where);
    auto it = std::lower_bound(c.entries_.begin(), c.entries_.end(), full,
                               [](const Entry& e, const std::string& k) { return e.key < k; });
    c.entries_.insert(it, Entry{full, Value{std::move(v), ln}, false});
  }
  return c;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

const Config::Entry* Config::find(const std::string& key) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                                   [](const Entry& e, const std::string& k) { return e.key < k; });
  return (it != entries_.end() && it->key == key) ? &*it : nullptr;
}

const Config::Entry& Config::require(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) throw ValidationError("config: missing required key '" + key + "'");
  e->read = true;
  return *e;
}

bool Config::has(const std::string& key) const { return find(key) != nullptr; }

namespace {

[[noreturn]] void type_error(const std::string& origin, const std::string& key,
                             const Config::Value& val, const char* want) {
  std::string where = val.line > 0 ? origin + ":" + std::to_string(val.line) + ": " : "config: ";
  throw ValidationError(where + "key '" + key + "' is a " + std::string(kind_name(val.v)) +
                        ", expected " + want);
}

}  // namespace

bool Config::get_bool(const std::string& key) const {
  const Entry& e = require(key);
  if (const auto* p = std::get_if<bool>(&e.val.v)) return *p;
  type_error(origin_, key, e.val, "boolean");
}

long long Config::get_int(const std::string& key) const {
  const Entry& e = require(key);
  if (const auto* p = std::get_if<long long>(&e.val.v)) return *p;
  type_error(origin_, key, e.val, "integer");
}

double Config::get_real(const std::string& key) const {
  const Entry& e = require(key);
  if (const auto* p = std::get_if<double>(&e.val.v)) return *p;
  if (const auto* p = std::get_if<long long>(&e.val.v)) return static_cast<double>(*p);
  type_error(origin_, key, e.val, "real");
}

std::string Config::get_string(const std::string& key) const {
  const Entry& e = require(key);
  if (const auto* p = std::get_if<std::string>(&e.val.v)) return *p;
  type_error(origin_, key, e.val, "string");
}

std::vector<double> Config::get_reals(const std::string& key) const {
  const Entry& e = require(key);
  if (const auto* p = std::get_if<std::vector<double>>(&e.val.v)) return *p;
  type_error(origin_, key, e.val, "real array");
}

std::vector<std::string> Config::get_strings(const std::string& key) const {
  const Entry& e = require(key);
  if (const auto* p = std::get_if<std::vector<std::string>>(&e.val.v)) return *p;
  type_error(origin_, key, e.val, "string array");
}

bool Config::get_bool(const std::string& key, bool dflt) const {
  return find(key) ? get_bool(key) : dflt;
}
long long Config::get_int(const std::string& key, long long dflt) const {
  return find(key) ? get_int(key) : dflt;
}
double Config::get_real(const std::string& key, double dflt) const {
  return find(key) ? get_real(key) : dflt;
}
std::string Config::get_string(const std::string& key, const std::string& dflt) const {
  return find(key) ? get_string(key) : dflt;
}
std::vector<double> Config::get_reals(const std::string& key, std::vector<double> dflt) const {
  return find(key) ? get_reals(key) : std::move(dflt);
}

void Config::insert(const std::string& key, Variant v) {
  check_key_shape(key);
  // keep dump() parseable: a root key must not shadow a section and vice versa
  const auto dot = key.find('.');
  if (dot == std::string::npos) {
    for (const Entry& e : entries_)
      if (e.key.size() > key.size() && e.key.compare(0, key.size(), key) == 0 &&
          e.key[key.size()] == '.')
        throw ValidationError("config: key '" + key + "' collides with table [" + key + "]");
  } else if (find(key.substr(0, dot))) {
    throw ValidationError("config: key '" + key + "' collides with key '" + key.substr(0, dot) +
                          "'");
  }
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                             [](const Entry& e, const std::string& k) { return e.key < k; });
  if (it != entries_.end() && it->key == key) it->val = Value{std::move(v), 0};
  else entries_.insert(it, Entry{key, Value{std::move(v), 0}, false});
}

void Config::set_bool(const std::string& key, bool v) { insert(key, v); }
void Config::set_int(const std::string& key, long long v) { insert(key, v); }
void Config::set_real(const std::string& key, double v) { insert(key, v); }
void Config::set_string(const std::string& key, const std::string& v) { insert(key, v); }
void Config::set_reals(const std::string& key, std::vector<double> v) { insert(key, std::move(v)); }
void Config::set_strings(const std::string& key, std::vector<std::string> v) {
  insert(key, std::move(v));
}

std::vector<std::string> Config::keys() const {
  std::vector<std::string> out;
  for (const Entry& e : entries_) out.push_back(e.key);
  return out;
}

void Config::touch(const std::string& key) const {
  if (const Entry* e = find(key)) e->read = true;
}

std::vector<std::string> Config::unread() const {
  std::vector<std::string> out;
  for (const Entry& e : entries_)
    if (!e.read) out.push_back(e.key);
  return out;
}

std::string Config::dump() const {
  std::string out;
  for (const Entry& e : entries_)  // root keys come first: '.' sorts after none
    if (e.key.find('.') == std::string::npos)
      out += e.key + " = " + fmt_value(e.val.v) + "\n";
  std::string open;
  for (const Entry& e : entries_) {
    const auto dot = e.key.find('.');
    if (dot == std::string::npos) continue;
    const std::string head = e.key.substr(0, dot);
    if (head != open) {
      if (!out.empty()) out += "\n";
      out += "[" + head + "]\n";
      open = head;
    }
    out += e.key.substr(dot + 1) + " = " + fmt_value(e.val.v) + "\n";
  }
  return out;
}

}  // namespace qotto::cfg
