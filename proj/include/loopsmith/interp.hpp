#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "loopsmith/ast.hpp"
#include "loopsmith/value.hpp"

namespace loopsmith {

// ---------------------------------------------------------------------------
// Environments: a chain of frames whose bindings are either mutable value
// cells or named functions closed over their defining frame. Frames are owned
// by the interpreter session.

struct EnvFrame;

struct Closure {
  const Definition::FunDef* fn;
  EnvFrame* env;
};

struct Binding {
  std::variant<Value, Closure> slot;
};

struct EnvFrame {
  EnvFrame* parent = nullptr;
  std::map<std::string, Binding> names;

  Binding* lookup(const std::string& name) {
    for (EnvFrame* f = this; f; f = f->parent) {
      auto it = f->names.find(name);
      if (it != f->names.end()) return &it->second;
    }
    return nullptr;
  }
};

// ---------------------------------------------------------------------------
// Monitoring

enum class EventKind {
  InvariantViolation,
  VariantNonpositive,
  VariantNondecreasing,
  AssertFailure,
  IterationCap,
};

std::string event_kind_name(EventKind k);

struct MonitorEvent {
  EventKind kind;
  SourcePos loop_pos;
  std::int64_t iteration = 0;  // loop-head index, 0 before the first body run
  std::string formula;         // offending invariant/variant/assert, printed
  std::map<std::string, std::string> env_snapshot;
};

// Loop-head store snapshot, recorded when MonitorOptions::trace_heads is on.
struct HeadSnapshot {
  SourcePos loop_pos;
  std::int64_t iteration = 0;
  std::map<std::string, std::string> values;
};

struct MonitorOptions {
  bool monitor = true;
  std::int64_t iteration_cap = 1000000;
  bool strict = false;
  bool trace_heads = false;
};

struct TestResult {
  std::string actual;
  std::string expected;
  bool passed = false;
  SourcePos pos;
};

struct RunResult {
  std::vector<TestResult> tests;
  std::vector<MonitorEvent> events;
  bool all_passed() const {
    for (const auto& t : tests)
      if (!t.passed) return false;
    return true;
  }
};

// ---------------------------------------------------------------------------
// Formula evaluation over concrete stores. The scope resolves free names;
// returns null for unbound ones.

using NameLookup = std::function<const Value*(const std::string&)>;

bool eval_formula(const FormulaPtr& f, const NameLookup& scope);
std::int64_t eval_term_concrete(const TermPtr& t, const NameLookup& scope);

// Convenience: evaluate over a plain integer store.
bool eval_formula(const FormulaPtr& f, const std::map<std::string, std::int64_t>& store);
std::int64_t eval_term_concrete(const TermPtr& t,
                                const std::map<std::string, std::int64_t>& store);

// ---------------------------------------------------------------------------
// Interpreter session

class Interp {
 public:
  explicit Interp(const Program& program, MonitorOptions options = {});

  // Evaluates the program's definitions in order (idempotent).
  void load();

  // Evaluates an expression in the top-level environment.
  Value eval(const ExprPtr& e);

  // load() + run every check-expect; evaluation errors are reported per test
  // without aborting the remaining ones.
  RunResult run();

  // Introduces/overwrites a top-level variable (used by test harnesses).
  void define_var(const std::string& name, Value v);

  const std::vector<MonitorEvent>& events() const { return events_; }
  const std::vector<HeadSnapshot>& head_trace() const { return head_trace_; }
  void clear_monitor_log() {
    events_.clear();
    head_trace_.clear();
  }

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
  const Program& program_;
  MonitorOptions options_;
  std::vector<MonitorEvent> events_;
  std::vector<HeadSnapshot> head_trace_;
  bool loaded_ = false;

  friend struct InterpEval;
};

// Parses, loads, and runs a whole program.
RunResult run_program(const Program& p, MonitorOptions options = {});

}  // namespace loopsmith
