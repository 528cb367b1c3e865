#include "morpho/error.hpp"

namespace morpho {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnreadable: return "unreadable";
    case ErrorCode::kEmptyInput: return "empty input";
    case ErrorCode::kMalformedHeader: return "malformed header";
    case ErrorCode::kInconsistentRows: return "inconsistent rows";
    case ErrorCode::kBadPixel: return "bad pixel";
    case ErrorCode::kUnwritable: return "unwritable";
    case ErrorCode::kGridTooSmall: return "grid too small";
    case ErrorCode::kEmptySettlement: return "empty settlement";
    case ErrorCode::kNoSwapPossible: return "no swap possible";
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kMalformedData: return "malformed data";
  }
  return "unknown";
}

}  // namespace morpho
