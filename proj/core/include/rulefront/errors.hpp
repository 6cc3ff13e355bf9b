#pragma once

#include <stdexcept>
#include <string>

namespace rulefront {

// Base class for all library errors. what() always starts with the error
// name so callers (and the CLI) can surface module and cause verbatim.
class Error : public std::runtime_error {
 public:
  Error(const std::string& name, const std::string& detail)
      : std::runtime_error(name + ": " + detail) {}
};

class FileNotFoundError : public Error {
 public:
  explicit FileNotFoundError(const std::string& path)
      : Error("FileNotFound", "no such file: " + path) {}
};

class MalformedHeaderError : public Error {
 public:
  explicit MalformedHeaderError(const std::string& detail)
      : Error("MalformedHeader", detail) {}
};

class MalformedRowError : public Error {
 public:
  MalformedRowError(std::size_t line_no, const std::string& detail)
      : Error("MalformedRow", "line " + std::to_string(line_no) + ": " + detail) {}
};

class EmptySeriesError : public Error {
 public:
  explicit EmptySeriesError(const std::string& detail) : Error("EmptySeries", detail) {}
};

class NonMonotoneDatesError : public Error {
 public:
  explicit NonMonotoneDatesError(const std::string& detail)
      : Error("NonMonotoneDates", detail) {}
};

class SeriesTooShortError : public Error {
 public:
  SeriesTooShortError(std::size_t got, std::size_t need)
      : Error("SeriesTooShort", "series has " + std::to_string(got) +
                                    " bars, need at least " + std::to_string(need)) {}
};

class DegeneratePriceError : public Error {
 public:
  explicit DegeneratePriceError(const std::string& detail)
      : Error("DegeneratePrice", detail) {}
};

class InvalidGenomeError : public Error {
 public:
  explicit InvalidGenomeError(const std::string& detail) : Error("InvalidGenome", detail) {}
};

class InvalidParamsError : public Error {
 public:
  explicit InvalidParamsError(const std::string& detail) : Error("InvalidParams", detail) {}
};

class InvalidSpanError : public Error {
 public:
  explicit InvalidSpanError(const std::string& detail) : Error("InvalidSpan", detail) {}
};

class RollingError : public Error {
 public:
  explicit RollingError(const std::string& detail) : Error("RollingWindow", detail) {}
};

}  // namespace rulefront
