#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace evencycle {

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed graph or layer file; line is 1-based, 0 when not tied to a line.
class parse_error : public error {
 public:
  parse_error(std::size_t line, const std::string& what)
      : error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// An operation was called outside its hypotheses. items() names the failing
// conditions, e.g. {"(a)", "(e)"} for the well-placed density gates.
class precondition_error : public error {
 public:
  explicit precondition_error(const std::string& what, std::vector<std::string> items = {})
      : error(what), items_(std::move(items)) {}
  const std::vector<std::string>& items() const noexcept { return items_; }

 private:
  std::vector<std::string> items_;
};

// The proof behind an algorithm says this state cannot be reached. Carries a
// dump of the state that reached it.
class internal_contradiction : public error {
 public:
  internal_contradiction(const std::string& what, std::string state)
      : error(what), state_(std::move(state)) {}
  const std::string& state() const noexcept { return state_; }

 private:
  std::string state_;
};

class budget_exceeded : public error {
 public:
  using error::error;
};

// Outcome of a certificate check: a defect code plus a human-readable detail.
template <class Defect>
struct Verdict {
  Defect defect = Defect::none;
  std::string detail;

  bool ok() const noexcept { return defect == Defect::none; }
  explicit operator bool() const noexcept { return ok(); }

  static Verdict pass() { return {}; }
  static Verdict fail(Defect d, std::string why) { return {d, std::move(why)}; }
};

}  // namespace evencycle
