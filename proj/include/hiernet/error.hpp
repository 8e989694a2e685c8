#pragma once

#include <stdexcept>
#include <string>

namespace hiernet {

enum class ErrorCode {
  kInvalidArgument = 1,
  kDisconnected = 2,
  kOutOfRange = 3,
  kNumeric = 4,
  kParse = 5,
  kIo = 6,
};

// Single exception type for the library; the code selects the C ABI status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorCode::kInvalidArgument, what);
}

}  // namespace hiernet
