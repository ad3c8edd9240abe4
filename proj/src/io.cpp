#include "rosenblatt/io.h"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>

namespace rosenblatt::io {

std::string fmt17(double v) {
  if (std::isnan(v)) {
    return "nan";
  }
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  std::array<char, 40> buf{};
  // The C locale is never changed by this library, so '.' is guaranteed.
  int len = std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return std::string(buf.data(), static_cast<std::size_t>(len));
}

void write_f64le(std::ostream& out, std::span<const double> values) {
  std::array<char, 8> bytes{};
  for (double v : values) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) {
      bytes[static_cast<std::size_t>(i)] = static_cast<char>((bits >> (8 * i)) & 0xffu);
    }
    out.write(bytes.data(), 8);
  }
}

void write_lines(std::ostream& out, std::span<const double> values) {
  for (double v : values) {
    out << fmt17(v) << '\n';
  }
}

}  // namespace rosenblatt::io
