#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kcm {

enum class ErrorCode {
  EmptyRule,
  RuleContainsOrigin,
  DimensionMismatch,
  NoRules,
  NotLinearlyIndependent,
  EmptyBox,
  SiteOutsideDomain,
  InvalidBudget,
  NotUnrooted,
  NoContiguousDomain,
  ResourceCapExceeded,
  InvalidInput,
};

std::string_view to_string(ErrorCode code);

// Structured error carrying a code and, for family validation, the index of
// the offending rule.
class KcmError : public std::runtime_error {
 public:
  KcmError(ErrorCode code, const std::string& what,
           std::optional<std::size_t> rule_index = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> rule_index() const noexcept { return rule_index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> rule_index_;
};

}  // namespace kcm
