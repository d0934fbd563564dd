#include "kcm/error.hpp"

namespace kcm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyRule: return "EmptyRule";
    case ErrorCode::RuleContainsOrigin: return "RuleContainsOrigin";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NoRules: return "NoRules";
    case ErrorCode::NotLinearlyIndependent: return "NotLinearlyIndependent";
    case ErrorCode::EmptyBox: return "EmptyBox";
    case ErrorCode::SiteOutsideDomain: return "SiteOutsideDomain";
    case ErrorCode::InvalidBudget: return "InvalidBudget";
    case ErrorCode::NotUnrooted: return "NotUnrooted";
    case ErrorCode::NoContiguousDomain: return "NoContiguousDomain";
    case ErrorCode::ResourceCapExceeded: return "ResourceCapExceeded";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

KcmError::KcmError(ErrorCode code, const std::string& what,
                   std::optional<std::size_t> rule_index)
    : std::runtime_error(std::string(to_string(code)) + ": " + what),
      code_(code),
      rule_index_(rule_index) {}

}  // namespace kcm
