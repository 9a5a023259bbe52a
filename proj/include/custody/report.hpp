#pragma once

#include <string>

#include "custody/assignment.hpp"
#include "custody/attack.hpp"

namespace custody {

/// Context that a SecurityReport does not carry itself.
struct ReportContext {
  std::string method;
  std::uint64_t n = 0;
  std::uint32_t k = 0;
  ThresholdPolicy policy;
};

// Records are single-line JSON objects with a fixed key order.  Exact values
// are strings ("num/den"); decimals are rounded to 4 places.
//
//   security: method n m k mu r s gamma f f_kind reliable eta_exact eta_decimal eta_kind
//   attack:   method s corrupted_nodes corrupted_groups kappa_m_num kappa_m_den optimal

std::string security_record(const ReportContext& ctx, const SecurityReport& rep);

std::string attack_record(const std::string& method, std::uint64_t s, const AttackResult& res);

}  // namespace custody
