#pragma once

// Check reports and their serialization.
//
// A report is an ordered parameter echo, an ordered list of named checks,
// and the golden reference values the checks were compared against.  The
// JSON layout is
//
//   { "params": {...}, "checks": [{"name","value","tolerance","pass"}],
//     "golden_refs": {...} }
//
// and the CSV layout is the flattened checks array under the header
// "name,value,tolerance,pass".  Doubles are printed with %.17g so that a
// report is byte-identical across runs of the same build on the same
// configuration; nothing time- or path-dependent is ever written.
//
// The pass flag is authoritative.  Helpers encode the three comparison
// shapes used by the suites:
//   check_le   pass = value <= tolerance        (residual-style)
//   check_ge   pass = value >= tolerance        (order/threshold-style)
//   check_gap  value = |measured - center|, pass = value <= halfwidth

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gbq {

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct Report {
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, double>> golden_refs;

  void param(const std::string& key, const std::string& val) {
    params.emplace_back(key, val);
  }
  void golden(const std::string& key, double val) {
    golden_refs.emplace_back(key, val);
  }
  void check_le(const std::string& name, double value, double tolerance) {
    checks.push_back({name, value, tolerance, value <= tolerance});
  }
  void check_ge(const std::string& name, double value, double tolerance) {
    checks.push_back({name, value, tolerance, value >= tolerance});
  }
  void check_gap(const std::string& name, double measured, double center,
                 double halfwidth) {
    const double gap =
        measured >= center ? measured - center : center - measured;
    checks.push_back({name, gap, halfwidth, gap <= halfwidth});
  }

  bool all_pass() const {
    for (const Check& c : checks)
      if (!c.pass) return false;
    return true;
  }
  std::vector<std::string> failing() const {
    std::vector<std::string> names;
    for (const Check& c : checks)
      if (!c.pass) names.push_back(c.name);
    return names;
  }
};

// 17 significant digits: enough to round-trip any double, and a fixed
// format so equal inputs give equal bytes.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

}  // namespace detail

inline std::string to_json(const Report& rep) {
  std::string out = "{\n  \"params\": {";
  for (std::size_t i = 0; i < rep.params.size(); ++i) {
    out += i ? ",\n    " : "\n    ";
    out += "\"" + detail::json_escape(rep.params[i].first) + "\": \"" +
           detail::json_escape(rep.params[i].second) + "\"";
  }
  out += rep.params.empty() ? "},\n" : "\n  },\n";
  out += "  \"checks\": [";
  for (std::size_t i = 0; i < rep.checks.size(); ++i) {
    const Check& c = rep.checks[i];
    out += i ? ",\n    " : "\n    ";
    out += "{\"name\": \"" + detail::json_escape(c.name) +
           "\", \"value\": " + format_double(c.value) +
           ", \"tolerance\": " + format_double(c.tolerance) +
           ", \"pass\": " + (c.pass ? "true" : "false") + "}";
  }
  out += rep.checks.empty() ? "],\n" : "\n  ],\n";
  out += "  \"golden_refs\": {";
  for (std::size_t i = 0; i < rep.golden_refs.size(); ++i) {
    out += i ? ",\n    " : "\n    ";
    out += "\"" + detail::json_escape(rep.golden_refs[i].first) +
           "\": " + format_double(rep.golden_refs[i].second);
  }
  out += rep.golden_refs.empty() ? "}\n" : "\n  }\n";
  out += "}\n";
  return out;
}

inline std::string to_csv(const Report& rep) {
  std::string out = "name,value,tolerance,pass\n";
  for (const Check& c : rep.checks) {
    out += c.name + "," + format_double(c.value) + "," +
           format_double(c.tolerance) + "," + (c.pass ? "1" : "0") + "\n";
  }
  return out;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << content;
  if (!f) throw std::runtime_error("write to " + path + " failed");
}

}  // namespace gbq
