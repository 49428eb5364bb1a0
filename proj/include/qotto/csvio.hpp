#pragma once
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "qotto/config.hpp"

namespace qotto::csv {

// 12 significant digits, C locale, "-0" normalized to "0".  All floating
// point output in result files goes through this so bodies are diff-stable.
std::string fmt(double v);

// RFC-4180-style quoting, applied only when needed.
std::string quote(const std::string& s);

// Comma-separated output: `#` comment header, one column-name row, then data
// rows.  Column counts are enforced once the name row is set.
class Writer {
 public:
  explicit Writer(std::ostream& os) : os_(os) {}

  void comment(const std::string& line);  // "# " + line
  void columns(const std::vector<std::string>& names);

  Writer& cell(double v);
  Writer& cell(long long v);
  Writer& cell(int v) { return cell(static_cast<long long>(v)); }
  Writer& cell(const std::string& s);
  Writer& cell(const char* s) { return cell(std::string(s)); }
  void endrow();
  void row(std::initializer_list<double> vs);
  void row(const std::vector<double>& vs);

 private:
  void sep();
  std::ostream& os_;
  std::size_t ncols_ = 0, cur_ = 0;
  bool midrow_ = false;
};

// Standard self-describing preamble: version, command line, optional
// timestamp, and the resolved configuration.  Only comments are emitted, so
// the body below stays byte-identical across reruns; pass an empty stamp for
// fully reproducible files.
void config_header(Writer& w, const std::string& command, const cfg::Config& c,
                   const std::string& stamp = {});

}  // namespace qotto::csv
