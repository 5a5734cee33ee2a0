#pragma once

#include <stdexcept>
#include <string>

namespace scdga {

// Base class for every error thrown by this library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown by the text parsers. Carries a 1-based line number (0 when the
// input has no meaningful line structure, e.g. single-line expressions).
struct parse_error : error {
  int line;
  explicit parse_error(const std::string& msg, int line_no = 0)
      : error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg
                          : msg),
        line(line_no) {}
};

}  // namespace scdga
