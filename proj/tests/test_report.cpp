#include "doctest.h"

#include "custody/report.hpp"
#include "fixtures.hpp"
#include "json.hpp"

using namespace custody;

TEST_SUITE("report") {

TEST_CASE("security record") {
  const auto policy = make_policy(6, Rational(2, 3));
  const auto rep = analyze_symmetric(20, 6, policy, 8);
  const std::string line = security_record({"exact-symmetric", 20, 6, policy}, rep);
  CHECK(line ==
        R"({"method":"exact-symmetric","n":20,"m":"38760","k":6,"mu":"2/3","r":5,"s":8,"gamma":"2/5","f":"700",)"
        R"("f_kind":"exact","reliable":true,"eta_exact":"3701/175","eta_decimal":"21.1486","eta_kind":"exact"})");
  const auto inf = analyze_symmetric(20, 6, policy, 2);
  const auto j = nlohmann::json::parse(security_record({"exact-symmetric", 20, 6, policy}, inf));
  CHECK(j["eta_exact"] == "inf");
}

TEST_CASE("attack record") {
  const auto policy = make_policy(3, Rational(1, 2));
  const auto res = greedy_attack(build_projective_plane(2).assignment, policy, 3);
  const auto j = nlohmann::json::parse(attack_record("greedy", 3, res));
  CHECK(j["method"] == "greedy");
  CHECK(j["s"] == 3);
  CHECK(j["corrupted_nodes"].size() == 3);
  CHECK(j["kappa_m_num"] == "13");
  CHECK(j["kappa_m_den"] == "5");
  CHECK(j["optimal"] == false);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys.size() == 7);
}

}
