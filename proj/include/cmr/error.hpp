#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cmr {

enum class Errc {
  BadConfig,
  NonIntegerPK,
  NonIntegerRK,
  RExceedsP,
  QNotDivisibleByK,
  NaiveShapeError,
  ShapeError,
  WrongAssignment,
  BadSetSize,
  NegativeTime,
  QuadratureFailure,
  DecodeFailure,
  TooLarge,
  DegenerateBound,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

// Raised by decode_all when a reducer input cannot be reconstructed.
class DecodeError : public Error {
public:
  DecodeError(int server, int64_t key, int64_t subfile, const std::string& what)
      : Error(Errc::DecodeFailure, what), server_(server), key_(key), subfile_(subfile) {}
  int server() const { return server_; }
  int64_t key() const { return key_; }
  int64_t subfile() const { return subfile_; }

private:
  int server_;
  int64_t key_;
  int64_t subfile_;
};

}  // namespace cmr
