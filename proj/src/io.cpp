#include "ivx/io.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ivx/errors.hpp"

namespace ivx {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& token, double& out) {
  if (token.empty()) return false;
  char* end = nullptr;
  out = std::strtod(token.c_str(), &end);
  return end == token.c_str() + token.size();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

}  // namespace

std::vector<double> read_values(std::istream& in, const std::string& source,
                                const std::optional<std::string>& column) {
  std::vector<double> values;
  std::string line;
  int lineno = 0;

  if (!column) {
    while (std::getline(in, line)) {
      ++lineno;
      std::string token = trim(line);
      if (token.empty()) continue;
      double v;
      if (!parse_double(token, v)) {
        throw ParseError(source + ":" + std::to_string(lineno) +
                         ": non-numeric token '" + token + "'");
      }
      values.push_back(v);
    }
    return values;
  }

  // CSV mode. A positive integer selector is a 1-based column index;
  // anything else must match a header cell on the first non-blank line.
  int index = -1;
  bool numeric_selector = false;
  {
    double asnum;
    if (parse_double(*column, asnum) && asnum >= 1.0 &&
        asnum == static_cast<int>(asnum)) {
      index = static_cast<int>(asnum) - 1;
      numeric_selector = true;
    }
  }

  bool header_resolved = numeric_selector;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto fields = split_csv(line);
    if (!header_resolved) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == *column) index = static_cast<int>(i);
      }
      if (index < 0) {
        throw ParseError(source + ":" + std::to_string(lineno) +
                         ": no column named '" + *column + "'");
      }
      header_resolved = true;
      continue;
    }
    if (index >= static_cast<int>(fields.size())) {
      throw ParseError(source + ":" + std::to_string(lineno) +
                       ": fewer than " + std::to_string(index + 1) +
                       " columns");
    }
    const std::string& token = fields[static_cast<std::size_t>(index)];
    if (token.empty()) continue;
    double v;
    if (!parse_double(token, v)) {
      // Tolerate a header row under a numeric selector.
      if (numeric_selector && values.empty()) continue;
      throw ParseError(source + ":" + std::to_string(lineno) +
                       ": non-numeric token '" + token + "'");
    }
    values.push_back(v);
  }
  return values;
}

std::vector<double> read_values_file(const std::string& path,
                                     const std::optional<std::string>& column) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file '" + path + "'");
  return read_values(in, path, column);
}

}  // namespace ivx
