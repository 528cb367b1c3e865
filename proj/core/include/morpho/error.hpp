#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace morpho {

enum class ErrorCode {
  kUnreadable,
  kEmptyInput,
  kMalformedHeader,
  kInconsistentRows,
  kBadPixel,
  kUnwritable,
  kGridTooSmall,
  kEmptySettlement,
  kNoSwapPossible,
  kInvalidArgument,
  kMalformedData,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers can branch on the kind of failure without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace morpho
