#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "loopsmith/diag.hpp"

namespace loopsmith {

struct Value {
  struct Void {};
  struct Vec {
    // Mutable cells; vector identity is the cell array's identity.
    std::shared_ptr<std::vector<Value>> cells;
  };

  std::variant<std::int64_t, bool, std::string, Void, Vec> v;

  Value() : v(Void{}) {}
  explicit Value(std::int64_t i) : v(i) {}
  explicit Value(bool b) : v(b) {}
  explicit Value(std::string s) : v(std::move(s)) {}
  explicit Value(Vec vec) : v(std::move(vec)) {}

  bool is_int() const { return std::holds_alternative<std::int64_t>(v); }
  bool is_bool() const { return std::holds_alternative<bool>(v); }
  bool is_string() const { return std::holds_alternative<std::string>(v); }
  bool is_void() const { return std::holds_alternative<Void>(v); }
  bool is_vec() const { return std::holds_alternative<Vec>(v); }

  std::int64_t as_int() const { return std::get<std::int64_t>(v); }
  bool as_bool() const { return std::get<bool>(v); }
  const std::string& as_string() const { return std::get<std::string>(v); }
  const Vec& as_vec() const { return std::get<Vec>(v); }
};

Value make_vector(std::vector<Value> elems);

// Element-wise structural equality (check-expect semantics).
bool structural_equal(const Value& a, const Value& b);

std::string print_value(const Value& v);

// Checked 64-bit arithmetic; throws EvalError("integer overflow") on wrap.
std::int64_t checked_add(std::int64_t a, std::int64_t b, SourcePos pos = {});
std::int64_t checked_sub(std::int64_t a, std::int64_t b, SourcePos pos = {});
std::int64_t checked_mul(std::int64_t a, std::int64_t b, SourcePos pos = {});

}  // namespace loopsmith
