#pragma once

#include <stdexcept>
#include <string>

namespace loopsmith {

struct SourcePos {
  int line = 0;  // 1-based; 0 = unknown
  int col = 0;

  bool known() const { return line > 0; }
  std::string str() const {
    return known() ? std::to_string(line) + ":" + std::to_string(col) : "?:?";
  }
};

struct ToolError : std::runtime_error {
  SourcePos pos;
  ToolError(std::string msg, SourcePos p = {})
      : std::runtime_error(std::move(msg)), pos(p) {}
};

struct ParseError : ToolError {
  std::string hint;  // expected-form hint, may be empty
  ParseError(std::string msg, SourcePos p, std::string h = "")
      : ToolError(std::move(msg), p), hint(std::move(h)) {}
};

struct EvalError : ToolError {
  using ToolError::ToolError;
};

struct TransformError : ToolError {
  using ToolError::ToolError;
};

// Raised when the static checker meets a statement shape it does not
// handle (anything that is not straight-line set!/assert/contracted call).
struct UnsupportedShape : ToolError {
  using ToolError::ToolError;
};

}  // namespace loopsmith
