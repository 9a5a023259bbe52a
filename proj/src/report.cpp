#include "custody/report.hpp"

#include "json.hpp"

namespace custody {

std::string security_record(const ReportContext& ctx, const SecurityReport& rep) {
  nlohmann::ordered_json j;
  j["method"] = ctx.method;
  j["n"] = ctx.n;
  j["m"] = rep.m.get_str();
  j["k"] = ctx.k;
  j["mu"] = to_fraction_string(ctx.policy.mu);
  j["r"] = ctx.policy.r;
  j["s"] = rep.s;
  j["gamma"] = to_fraction_string(rep.gamma);
  j["f"] = rep.f.get_str();
  j["f_kind"] = to_string(rep.f_kind);
  j["reliable"] = rep.reliable;
  j["eta_exact"] = rep.eta.exact_string();
  j["eta_decimal"] = rep.eta.decimal_string();
  j["eta_kind"] = to_string(rep.eta.kind);
  return j.dump();
}

std::string attack_record(const std::string& method, std::uint64_t s, const AttackResult& res) {
  nlohmann::ordered_json j;
  j["method"] = method;
  j["s"] = s;
  j["corrupted_nodes"] = res.corrupted_set;
  j["corrupted_groups"] = res.corrupted_group_count;
  j["kappa_m_num"] = res.guarantee.get_num().get_str();
  j["kappa_m_den"] = res.guarantee.get_den().get_str();
  j["optimal"] = res.optimal;
  return j.dump();
}

}  // namespace custody
