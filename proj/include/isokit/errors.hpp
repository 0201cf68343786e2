#pragma once

#include <stdexcept>
#include <string>

namespace isokit {

// Every failure mode of the library maps to one of these codes so callers
// (and tests) can dispatch without parsing messages.
enum class errc {
  bad_order,
  spec_too_large,
  group_mismatch,
  empty_set,
  not_a_subgroup,
  not_generating,
  zero_missing,
  precondition_unmet,
  not_a_fragment,
  same_vertex,
  edge_present,
  not_nonseparable,
  not_critical,
  not_a_part,
  no_matching,
  budget_exceeded,
  ledger_violation,
  not_maximal,
  parse_error,
  index_out_of_range,
  rank_mismatch,
  internal,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::bad_order: return "BadOrder";
    case errc::spec_too_large: return "SpecTooLarge";
    case errc::group_mismatch: return "GroupMismatch";
    case errc::empty_set: return "EmptySet";
    case errc::not_a_subgroup: return "NotASubgroup";
    case errc::not_generating: return "NotGenerating";
    case errc::zero_missing: return "ZeroMissing";
    case errc::precondition_unmet: return "PreconditionUnmet";
    case errc::not_a_fragment: return "NotAFragment";
    case errc::same_vertex: return "SameVertex";
    case errc::edge_present: return "EdgePresent";
    case errc::not_nonseparable: return "NotNonseparable";
    case errc::not_critical: return "NotCritical";
    case errc::not_a_part: return "NotAPart";
    case errc::no_matching: return "NoMatching";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::ledger_violation: return "LedgerViolation";
    case errc::not_maximal: return "NotMaximal";
    case errc::parse_error: return "ParseError";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::rank_mismatch: return "RankMismatch";
    case errc::internal: return "Internal";
  }
  return "Unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace isokit
