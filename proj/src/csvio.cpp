#include "qotto/csvio.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "qotto/version.hpp"

#ifndef QOTTO_VERSION
#define QOTTO_VERSION "unknown"
#endif

namespace qotto {

const char* version() { return QOTTO_VERSION; }

}  // namespace qotto

namespace qotto::csv {

std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    out += c;
    if (c == '"') out += '"';
  }
  return out + "\"";
}

void Writer::comment(const std::string& line) {
  if (midrow_) throw std::logic_error("csv: comment inside a row");
  os_ << (line.empty() ? "#" : "# " + line) << "\n";
}

void Writer::columns(const std::vector<std::string>& names) {
  if (midrow_ || ncols_) throw std::logic_error("csv: column names already set");
  if (names.empty()) throw std::logic_error("csv: no columns");
  ncols_ = names.size();
  for (std::size_t i = 0; i < names.size(); ++i) os_ << (i ? "," : "") << quote(names[i]);
  os_ << "\n";
}

void Writer::sep() {
  if (midrow_) os_ << ",";
  midrow_ = true;
  ++cur_;
}

Writer& Writer::cell(double v) {
  sep();
  os_ << fmt(v);
  return *this;
}

Writer& Writer::cell(long long v) {
  sep();
  os_ << v;
  return *this;
}

Writer& Writer::cell(const std::string& s) {
  sep();
  os_ << quote(s);
  return *this;
}

void Writer::endrow() {
  if (!midrow_) throw std::logic_error("csv: empty row");
  if (ncols_ && cur_ != ncols_)
    throw std::logic_error("csv: row has " + std::to_string(cur_) + " cells, expected " +
                           std::to_string(ncols_));
  os_ << "\n";
  midrow_ = false;
  cur_ = 0;
}

void Writer::row(std::initializer_list<double> vs) {
  for (double v : vs) cell(v);
  endrow();
}

void Writer::row(const std::vector<double>& vs) {
  for (double v : vs) cell(v);
  endrow();
}

void config_header(Writer& w, const std::string& command, const cfg::Config& c,
                   const std::string& stamp) {
  w.comment("qotto " + std::string(qotto::version()));
  w.comment("command: " + command);
  if (!stamp.empty()) w.comment("generated: " + stamp);
  w.comment("config:");
  std::istringstream lines(c.dump());
  std::string line;
  while (std::getline(lines, line)) w.comment(line.empty() ? "" : "  " + line);
}

}  // namespace qotto::csv
