#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pmfde/errors.hpp"
#include "pmfde/params.hpp"

namespace pmfde {

/// Parsed and validated run description. Parameters are stored flat as
/// "section.key" -> value strings; typed access goes through the helpers
/// below so missing/malformed keys produce field-level messages.
struct RunConfig {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::string output_path;
  long long seed = 0;
};

inline const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> cmds = {
      "barenblatt",   "solve-dirichlet", "solve-cauchy", "sweep-dirichlet",
      "sweep-cauchy", "check-estimates", "check-lemmas"};
  return cmds;
}

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

/// Key-value sections:
///   [run]
///   command = barenblatt
///   output_path = out.csv
///   seed = 1
///   [problem]
///   m = 2
/// '#' and ';' start comments. All validation errors are collected and
/// reported together in a single ConfigInvalid.
inline RunConfig parse_config(const std::string& text) {
  RunConfig rc;
  std::vector<std::string> errors;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t cut = line.find_first_of("#;");
    if (cut != std::string::npos) line = line.substr(0, cut);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back("line " + std::to_string(lineno) + ": unterminated section header");
        continue;
      }
      section = detail::trim(line.substr(1, line.size() - 2));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty()) {
      errors.push_back("line " + std::to_string(lineno) + ": empty key");
      continue;
    }
    if (section == "run") {
      if (key == "command")
        rc.command = value;
      else if (key == "output_path")
        rc.output_path = value;
      else if (key == "seed") {
        try {
          rc.seed = std::stoll(value);
        } catch (...) {
          errors.push_back("run.seed: not an integer: '" + value + "'");
        }
      } else
        errors.push_back("run." + key + ": unknown key");
    } else if (section.empty()) {
      errors.push_back("line " + std::to_string(lineno) + ": key outside any section");
    } else {
      rc.parameters[section + "." + key] = value;
    }
  }

  if (rc.command.empty())
    errors.push_back("run.command: missing");
  else if (std::find(known_commands().begin(), known_commands().end(), rc.command) ==
           known_commands().end())
    errors.push_back("run.command: unknown command '" + rc.command + "'");
  if (rc.output_path.empty()) errors.push_back("run.output_path: missing");

  // exponent admissibility when the command carries one
  auto it_m = rc.parameters.find("problem.m");
  auto it_n = rc.parameters.find("problem.n");
  if (it_m != rc.parameters.end() && it_n != rc.parameters.end()) {
    try {
      const double m = std::stod(it_m->second);
      const int n = std::stoi(it_n->second);
      make_exponent(m, n);
    } catch (const SubcriticalExponent& e) {
      errors.push_back(std::string("problem.m: ") + e.what());
    } catch (...) {
      errors.push_back("problem.m/problem.n: not numeric");
    }
  }

  if (!errors.empty()) {
    std::string msg = "invalid config:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ConfigInvalid(msg);
  }
  return rc;
}

/// Deterministic inverse of parse_config on valid configs.
inline std::string serialize_config(const RunConfig& rc) {
  std::ostringstream out;
  out << "[run]\n";
  out << "command = " << rc.command << "\n";
  out << "output_path = " << rc.output_path << "\n";
  out << "seed = " << rc.seed << "\n";
  std::string section;
  for (const auto& [k, v] : rc.parameters) {  // map iteration is sorted
    const std::size_t dot = k.find('.');
    const std::string sec = k.substr(0, dot);
    if (sec != section) {
      out << "[" << sec << "]\n";
      section = sec;
    }
    out << k.substr(dot + 1) << " = " << v << "\n";
  }
  return out.str();
}

/// Typed parameter access with field-level errors.
inline double param_double(const RunConfig& rc, const std::string& key, double fallback,
                           bool required = false) {
  auto it = rc.parameters.find(key);
  if (it == rc.parameters.end()) {
    if (required) throw ConfigInvalid(key + ": missing");
    return fallback;
  }
  try {
    return std::stod(it->second);
  } catch (...) {
    throw ConfigInvalid(key + ": not a number: '" + it->second + "'");
  }
}

inline long long param_int(const RunConfig& rc, const std::string& key, long long fallback,
                           bool required = false) {
  auto it = rc.parameters.find(key);
  if (it == rc.parameters.end()) {
    if (required) throw ConfigInvalid(key + ": missing");
    return fallback;
  }
  try {
    return std::stoll(it->second);
  } catch (...) {
    throw ConfigInvalid(key + ": not an integer: '" + it->second + "'");
  }
}

inline std::string param_str(const RunConfig& rc, const std::string& key,
                             const std::string& fallback) {
  auto it = rc.parameters.find(key);
  return it == rc.parameters.end() ? fallback : it->second;
}

/// Comma-separated list of reals, e.g. "0.2, -0.2, 0.1".
inline std::vector<double> param_list(const RunConfig& rc, const std::string& key,
                                      const std::vector<double>& fallback) {
  auto it = rc.parameters.find(key);
  if (it == rc.parameters.end()) return fallback;
  std::vector<double> out;
  std::istringstream in(it->second);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      out.push_back(std::stod(detail::trim(tok)));
    } catch (...) {
      throw ConfigInvalid(key + ": bad entry '" + tok + "'");
    }
  }
  return out;
}

}  // namespace pmfde
