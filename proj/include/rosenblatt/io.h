#pragma once

#include <ostream>
#include <span>
#include <string>

namespace rosenblatt::io {

// Shortest-safe textual form: 17 significant digits, '.' decimal separator.
std::string fmt17(double v);

// Flat little-endian IEEE-754 binary64 stream, no header.
void write_f64le(std::ostream& out, std::span<const double> values);

// One value per line, 17 significant digits.
void write_lines(std::ostream& out, std::span<const double> values);

}  // namespace rosenblatt::io
