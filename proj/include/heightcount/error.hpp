#pragma once

#include <stdexcept>
#include <string>

namespace hc {

enum class ErrorCode {
  InvalidArgument = 1,
  Parse,
  PrecisionExhausted,
  TieUnresolved,
  Unsupported,
  BudgetExhausted,
  NotApplicable,
  Domain,
  Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorCode::InvalidArgument, what);
}

}  // namespace hc
