#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace ivx {

// Reads observations from plain text (one value per line) or, when `column`
// is set, from CSV. The column selector is a 1-based index or a header name.
// Blank lines are skipped; anything non-numeric raises ParseError with the
// line number.
std::vector<double> read_values(std::istream& in, const std::string& source,
                                const std::optional<std::string>& column);

std::vector<double> read_values_file(const std::string& path,
                                     const std::optional<std::string>& column);

}  // namespace ivx
