#ifndef HETDP_IO_HPP
#define HETDP_IO_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "hetdp/types.hpp"

namespace hetdp {

struct ParseError : Error {
  std::size_t line;
  ParseError(std::size_t line_no, const std::string& what)
      : Error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

struct FileError : Error {
  explicit FileError(const std::string& path)
      : Error("cannot open file: " + path) {}
};

// Reads a list of reals from either a JSON array or a CSV file with one
// value per line (sniffed by the first non-blank byte). "inf" / "+inf"
// (any case) denote +infinity. A single leading non-numeric CSV line is
// treated as a header; anything else is a ParseError naming the line.
std::vector<double> read_values(const std::string& path);

PrivacyProfile read_profile(const std::string& path);
Dataset read_dataset(const std::string& path);

// 17 significant digits: enough for doubles to round-trip exactly.
std::string format_double(double v);

// FNV-1a 64-bit over the file's bytes, as fixed-width hex.
std::string digest_file(const std::string& path);

}  // namespace hetdp

#endif  // HETDP_IO_HPP
