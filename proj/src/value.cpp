#include "loopsmith/value.hpp"

namespace loopsmith {

Value make_vector(std::vector<Value> elems) {
  Value::Vec v{std::make_shared<std::vector<Value>>(std::move(elems))};
  return Value(std::move(v));
}

bool structural_equal(const Value& a, const Value& b) {
  if (a.v.index() != b.v.index()) return false;
  if (a.is_int()) return a.as_int() == b.as_int();
  if (a.is_bool()) return a.as_bool() == b.as_bool();
  if (a.is_string()) return a.as_string() == b.as_string();
  if (a.is_void()) return true;
  const auto& xs = *a.as_vec().cells;
  const auto& ys = *b.as_vec().cells;
  if (xs.size() != ys.size()) return false;
  for (size_t i = 0; i < xs.size(); ++i)
    if (!structural_equal(xs[i], ys[i])) return false;
  return true;
}

std::string print_value(const Value& v) {
  if (v.is_int()) return std::to_string(v.as_int());
  if (v.is_bool()) return v.as_bool() ? "#true" : "#false";
  if (v.is_string()) {
    std::string out = "\"";
    for (char c : v.as_string()) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + "\"";
  }
  if (v.is_void()) return "(void)";
  std::string out = "(vector";
  for (const auto& e : *v.as_vec().cells) out += " " + print_value(e);
  return out + ")";
}

std::int64_t checked_add(std::int64_t a, std::int64_t b, SourcePos pos) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw EvalError("integer overflow", pos);
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b, SourcePos pos) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw EvalError("integer overflow", pos);
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b, SourcePos pos) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw EvalError("integer overflow", pos);
  return r;
}

}  // namespace loopsmith
