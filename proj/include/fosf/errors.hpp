#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fosf {

// Base of every error thrown by the library. Inconsistency and "no witness"
// outcomes are values, never exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DuplicateName : public Error {
 public:
  explicit DuplicateName(const std::string& name)
      : Error("duplicate name '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class InvalidName : public Error {
 public:
  explicit InvalidName(const std::string& name)
      : Error("invalid identifier '" + name + "'") {}
};

class DegreeOutOfRange : public Error {
 public:
  explicit DegreeOutOfRange(double value)
      : Error("degree " + std::to_string(value) + " outside (0,1]"), value_(value) {}
  double value() const { return value_; }

 private:
  double value_;
};

class CycleDetected : public Error {
 public:
  explicit CycleDetected(std::vector<std::string> cycle)
      : Error(describe(cycle)), cycle_(std::move(cycle)) {}
  const std::vector<std::string>& cycle() const { return cycle_; }

 private:
  static std::string describe(const std::vector<std::string>& cycle) {
    std::string msg = "cycle in subsumption graph:";
    for (const auto& s : cycle) msg += " " + s;
    return msg;
  }
  std::vector<std::string> cycle_;
};

class NotALattice : public Error {
 public:
  NotALattice(std::string s, std::string t, std::vector<std::string> maximal)
      : Error(describe(s, t, maximal)),
        first_(std::move(s)),
        second_(std::move(t)),
        maximal_lower_bounds_(std::move(maximal)) {}
  const std::string& first() const { return first_; }
  const std::string& second() const { return second_; }
  const std::vector<std::string>& maximal_lower_bounds() const { return maximal_lower_bounds_; }

 private:
  static std::string describe(const std::string& s, const std::string& t,
                              const std::vector<std::string>& maximal) {
    std::string msg = "no greatest lower bound for (" + s + ", " + t + "); maximal lower bounds:";
    for (const auto& m : maximal) msg += " " + m;
    return msg;
  }
  std::string first_, second_;
  std::vector<std::string> maximal_lower_bounds_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error("syntax error at " + std::to_string(position) + ": " + what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnknownSort : public Error {
 public:
  explicit UnknownSort(const std::string& name) : Error("unknown sort '" + name + "'") {}
};

class UnknownFeature : public Error {
 public:
  explicit UnknownFeature(const std::string& name) : Error("unknown feature '" + name + "'") {}
};

class NotSolved : public Error {
 public:
  explicit NotSolved(const std::string& why) : Error("clause not in solved form: " + why) {}
};

class NotRooted : public Error {
 public:
  explicit NotRooted(const std::string& why) : Error("clause not rooted: " + why) {}
};

class NotNormal : public Error {
 public:
  explicit NotNormal(const std::string& why) : Error("term not in normal form: " + why) {}
};

class InconsistentInput : public Error {
 public:
  InconsistentInput() : Error("normal form is inconsistent") {}
};

class SignatureMismatch : public Error {
 public:
  explicit SignatureMismatch(const std::string& why) : Error("signature mismatch: " + why) {}
};

// Ontology / interpretation file errors carry the 1-based line number.
class FileError : public Error {
 public:
  FileError(const std::string& file, std::size_t line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace fosf
