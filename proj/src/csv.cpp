#include "erspin/csv.hpp"

#include "erspin/errors.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

namespace erspin {

namespace {

bool parse_double(std::string_view s, double& out) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s == "inf") { out = INFINITY; return true; }
  if (s == "-inf") { out = -INFINITY; return true; }
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_trace_csv(std::ostream& os, const Trace& t, const std::string& x_name,
                     const std::string& y_name, const Metadata& meta) {
  for (const auto& [k, v] : meta) os << "# " << k << ": " << v << '\n';
  os << x_name << ',' << y_name << '\n';
  for (const TracePoint& p : t) os << format_double(p.x) << ',' << format_double(p.y) << '\n';
}

Trace read_trace_csv(std::istream& is) {
  Trace out;
  std::string line;
  bool header_seen = false;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    TracePoint p{};
    if (comma == std::string::npos ||
        !parse_double(std::string_view(line).substr(0, comma), p.x) ||
        !parse_double(std::string_view(line).substr(comma + 1), p.y)) {
      throw InputError("malformed CSV row at line " + std::to_string(lineno));
    }
    out.push_back(p);
  }
  return out;
}

void write_profile_csv(std::ostream& os, const SpectrumProfile& p) {
  os << "frequency_hz,value\n";
  for (std::size_t i = 0; i < p.freq.size(); ++i) {
    os << format_double(p.freq[i]) << ',' << format_double(p.alpha[i]) << '\n';
  }
}

SpectrumProfile read_profile_csv(std::istream& is, double baseline) {
  SpectrumProfile p;
  p.baseline = baseline;
  for (const TracePoint& t : read_trace_csv(is)) {
    p.freq.push_back(t.x);
    p.alpha.push_back(t.y);
  }
  return p;
}

}  // namespace erspin
