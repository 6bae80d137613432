#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace radpipe {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A point at (or numerically indistinguishable from) the sensor origin has
/// no line-of-sight direction.
class DegeneratePoint : public Error {
public:
  using Error::Error;
};

/// Requested filter profile name is neither builtin nor configured.
class UnknownProfile : public Error {
public:
  using Error::Error;
};

/// The pose buffer cannot answer a query at the requested time.
class PoseGap : public Error {
public:
  using Error::Error;
};

/// Frames or poses arrived with non-increasing timestamps.
class FrameOrder : public Error {
public:
  using Error::Error;
};

/// A descriptor was requested for a cluster with no usable members.
class EmptyCluster : public Error {
public:
  using Error::Error;
};

/// Invalid configuration (bad value, unknown key, inconsistent bounds).
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Malformed input file. Carries the 1-based line number when known.
class ParseError : public Error {
public:
  ParseError(const std::string& message, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  explicit ParseError(const std::string& message) : Error(message), line_(0) {}

  /// 1-based line number, 0 when not tied to a specific line.
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// Detection log and ground truth do not cover the same timestamps.
class AlignmentError : public Error {
public:
  using Error::Error;
};

/// A metric's denominator is empty (e.g. no positive ground-truth frames).
class UndefinedMetric : public Error {
public:
  using Error::Error;
};

}  // namespace radpipe
