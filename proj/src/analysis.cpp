#include "custody/analysis.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>

namespace custody {
namespace {

BigNat to_big(std::uint64_t x) { return BigNat(static_cast<unsigned long>(x)); }

Rational ratio(const BigNat& num, const BigNat& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

BigNat floor_of(const Rational& q) {
  BigNat out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Rational power(const Rational& base, unsigned long exp) {
  BigNat num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exp);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exp);
  return ratio(num, den);
}

void require_s(std::uint64_t n, std::uint64_t s) {
  if (s > n) throw std::domain_error("corrupted count s exceeds n");
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::not_applicable: return "not-applicable";
  }
  return "?";
}

BigNat f_symmetric_exact(std::uint32_t n, std::uint32_t k, const ThresholdPolicy& policy, std::uint64_t s) {
  require_s(n, s);
  BigNat total = 0;
  for (std::uint32_t t = policy.r; t <= k; ++t) {
    if (t > s || k - t > n - s) continue;
    total += binom(s, t) * binom(n - s, k - t);
  }
  return total;
}

BruteForceResult f_bruteforce(const GroupAssignment& a, const ThresholdPolicy& policy, std::uint64_t s,
                              std::uint64_t cap, kernels::Parallelism par) {
  if (!a.is_explicit()) throw std::invalid_argument("f_bruteforce: explicit assignment required");
  require_s(a.node_count(), s);
  const BigNat candidates = binom(a.node_count(), s);
  if (candidates > to_big(cap)) {
    throw CapExceeded("f_bruteforce: C(n,s) = " + candidates.get_str() + " candidate sets exceed cap " +
                      std::to_string(cap));
  }
  auto res = kernels::max_corrupted_groups(a, policy.r, static_cast<std::uint32_t>(s), par);
  return {res.best, std::move(res.witness)};
}

SecurityReport analyze_symmetric(std::uint32_t n, std::uint32_t k, const ThresholdPolicy& policy, std::uint64_t s) {
  if (k == 0 || k > n) throw std::domain_error("symmetric design requires 1 <= k <= n");
  return make_report(f_symmetric_exact(n, k, policy, s), BoundKind::exact, binom(n, k),
                     AdversaryPower::from_count(n, s));
}

SecurityReport analyze_bruteforce(const GroupAssignment& a, const ThresholdPolicy& policy, std::uint64_t s,
                                  std::uint64_t cap, kernels::Parallelism par) {
  const auto res = f_bruteforce(a, policy, s, cap, par);
  return make_report(to_big(res.f), BoundKind::exact, a.group_count(), AdversaryPower::from_count(a.node_count(), s));
}

Threshold security_threshold_symmetric(std::uint32_t k) {
  const double kk = static_cast<double>(k);
  return {k >= 10, 0.5 - 1.0 / std::sqrt(kk) - 1.0 / (2.0 * kk)};
}

bool reliability_extends_to_security_symmetric(std::uint32_t n, std::uint32_t k, const ThresholdPolicy& policy,
                                               const Rational& gamma) {
  if (k < 2 || k > n) throw std::domain_error("need 2 <= k <= n");
  const Rational first = (policy.mu * k - 1) / Rational(k - 1) + Rational(1, n);
  Rational second = Rational(1) - Rational(k, n);
  second.canonicalize();
  return gamma <= first && gamma <= second;
}

Eta block_design_eta_lower_bound(const DesignSpec& spec, std::uint64_t s) {
  spec.validate();
  require_s(spec.n, s);
  const Rational per_lambda = ratio(binom(spec.n, spec.strength), binom(spec.k, spec.strength));
  const Rational corruptible(binom(s, spec.strength));
  if (corruptible == 0) return {true, Rational(0), BoundKind::lower_bound};
  const Rational denom = corruptible < per_lambda ? corruptible : per_lambda;
  const Rational gamma = ratio(to_big(s), to_big(spec.n));
  return {false, gamma * per_lambda / denom - 1, BoundKind::lower_bound};
}

BigNat block_design_f_upper_bound(const DesignSpec& spec, std::uint64_t s) {
  spec.validate();
  const Rational per_lambda = ratio(binom(spec.n, spec.strength), binom(spec.k, spec.strength));
  const Rational corruptible(binom(s, spec.strength));
  const Rational least = corruptible < per_lambda ? corruptible : per_lambda;
  return floor_of(least * to_big(spec.lambda));
}

Verdict block_design_reliability_check(const DesignSpec& spec, std::uint64_t s) {
  spec.validate();
  require_s(spec.n, s);
  const std::uint32_t r = spec.strength;
  const Rational mu = ratio(to_big(r - 1), to_big(spec.k));
  if (mu < Rational(1, 2) || r - 1 < 2 || spec.n + 3 < 3 * spec.k) return Verdict::not_applicable;

  const bool counting = binom(s, r) * binom(spec.k, r) <= binom(spec.n, r);
  // s - r + 1 <= (n/k) mu^{1/(r-1)}  <=>  ((s - r + 1) k)^{r-1} <= n^{r-1} mu
  bool size_cap = true;
  if (s + 1 > r) {
    const Rational lhs = power(Rational(to_big((s + 1 - r) * spec.k)), r - 1);
    const Rational rhs = power(Rational(to_big(spec.n)), r - 1) * mu;
    size_cap = lhs <= rhs;
  }
  return counting && size_cap ? Verdict::holds : Verdict::fails;
}

Eta poly_eta_lower_bound(const PolynomialParams& params, const ThresholdPolicy& policy, const Rational& gamma) {
  params.validate();
  if (params.d > policy.r) throw std::domain_error("poly_eta_lower_bound: d > r makes the bound vacuous");
  if (gamma < 0 || gamma > 1) throw std::domain_error("gamma must lie in [0,1]");
  if (gamma == 0) return {true, Rational(0), BoundKind::lower_bound};
  const Rational share = ratio(binom(policy.r, params.d), binom(params.k, params.d));
  return {false, power(1 / gamma, params.d - 1) * share - 1, BoundKind::lower_bound};
}

BigNat poly_f_upper_bound(const PolynomialParams& params, const ThresholdPolicy& policy, std::uint64_t s) {
  params.validate();
  if (params.d > policy.r) throw std::domain_error("poly_f_upper_bound: d > r makes the bound vacuous");
  BigNat s_pow, k_pow;
  mpz_ui_pow_ui(s_pow.get_mpz_t(), s, params.d);
  mpz_ui_pow_ui(k_pow.get_mpz_t(), params.k, params.d);
  return floor_of(ratio(binom(params.k, params.d) * s_pow, binom(policy.r, params.d) * k_pow));
}

double poly_security_threshold_real(double k, double nu, double mu) {
  const double d = nu * k;
  if (!(d > 1.0)) throw std::domain_error("poly_security_threshold: need d >= 2");
  if (!(mu > nu)) throw std::domain_error("poly_security_threshold: need mu > nu = d/k");
  const double gap = mu - nu;
  const double log_inner = std::log(2.0 * std::numbers::pi) - (d + 2.0) + 0.5 * std::log((1.0 - nu) * mu / gap) +
                           k * (mu * std::log(mu) - gap * std::log(gap));
  return std::exp(log_inner / (d - 1.0));
}

double poly_security_threshold(const PolynomialParams& params, const Rational& mu) {
  params.validate();
  if (params.d < 2) throw std::domain_error("poly_security_threshold: need d >= 2");
  return poly_security_threshold_real(params.k, to_double(params.nu()), to_double(mu));
}

SecurityReport analyze_block_bound(const DesignSpec& spec, const ThresholdPolicy& policy, std::uint64_t s) {
  spec.validate();
  if (policy.r < spec.strength) {
    throw std::invalid_argument("block-design bound needs corruption threshold >= design strength");
  }
  SecurityReport rep;
  rep.f = block_design_f_upper_bound(spec, s);
  rep.f_kind = BoundKind::upper_bound;
  rep.m = derived_design_params(spec, spec.strength).m;
  rep.s = s;
  rep.gamma = ratio(to_big(s), to_big(spec.n));
  rep.eta = block_design_eta_lower_bound(spec, s);
  rep.reliable = rep.eta.infinite || rep.eta.value >= 0;
  return rep;
}

SecurityReport analyze_poly_bound(const PolynomialParams& params, const ThresholdPolicy& policy, std::uint64_t s) {
  params.validate();
  require_s(params.node_count(), s);
  SecurityReport rep;
  rep.f = poly_f_upper_bound(params, policy, s);
  rep.f_kind = BoundKind::upper_bound;
  rep.m = params.group_count();
  rep.s = s;
  rep.gamma = ratio(to_big(s), to_big(params.node_count()));
  rep.eta = poly_eta_lower_bound(params, policy, rep.gamma);
  rep.reliable = rep.eta.infinite || rep.eta.value >= 0;
  return rep;
}

// ---- curves -----------------------------------------------------------------

std::vector<Rational> gamma_grid(std::uint32_t steps) {
  std::vector<Rational> out;
  for (std::uint32_t i = 1; i <= steps; ++i) out.push_back(ratio(to_big(i), to_big(steps)));
  return out;
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

CurveRow row_from_report(std::string sweep_var, const SecurityReport& rep) {
  return {std::move(sweep_var), rep.s, rep.f, rep.f_kind != BoundKind::exact, rep.eta, rep.reliable};
}

std::uint32_t descriptor_nodes(const AssignmentDescriptor& desc) {
  return std::visit(Overloaded{
                        [](const SymmetricDescriptor& d) { return d.n; },
                        [](const ExplicitDescriptor& d) { return d.assignment->node_count(); },
                        [](const BlockDesignDescriptor& d) { return d.spec.n; },
                        [](const PolynomialDescriptor& d) { return d.params.node_count(); },
                    },
                    desc);
}

}  // namespace

std::vector<CurveRow> curve_over_gamma(const AssignmentDescriptor& desc, const Rational& mu,
                                       const std::vector<Rational>& gammas, CurveMethod method,
                                       kernels::Parallelism par) {
  std::vector<CurveRow> rows;
  if (gammas.empty()) return rows;
  const std::uint32_t n = descriptor_nodes(desc);

  std::optional<GroupAssignment> materialized;
  if (const auto* sym = std::get_if<SymmetricDescriptor>(&desc); sym && method == CurveMethod::bruteforce) {
    materialized = materialize(build_symmetric(sym->n, sym->k));
  }

  for (const auto& gamma : gammas) {
    const auto power = AdversaryPower::from_fraction(n, gamma);
    const std::string label = to_decimal_string(gamma, 6);
    std::visit(Overloaded{
                   [&](const SymmetricDescriptor& d) {
                     const auto policy = make_policy(d.k, mu);
                     if (method == CurveMethod::exact) {
                       rows.push_back(row_from_report(label, analyze_symmetric(d.n, d.k, policy, power.s)));
                     } else if (method == CurveMethod::bruteforce) {
                       rows.push_back(row_from_report(
                           label, analyze_bruteforce(*materialized, policy, power.s, kDefaultBruteForceCap, par)));
                     } else {
                       throw std::invalid_argument("symmetric curves support exact or bruteforce");
                     }
                   },
                   [&](const ExplicitDescriptor& d) {
                     if (method != CurveMethod::bruteforce) {
                       throw std::invalid_argument("explicit assignments support bruteforce curves only");
                     }
                     const auto policy = make_policy(d.assignment->group_size(), mu);
                     rows.push_back(row_from_report(
                         label, analyze_bruteforce(*d.assignment, policy, power.s, kDefaultBruteForceCap, par)));
                   },
                   [&](const BlockDesignDescriptor& d) {
                     if (method != CurveMethod::bound) throw std::invalid_argument("block designs support bound curves");
                     rows.push_back(row_from_report(label, analyze_block_bound(d.spec, make_policy(d.spec.k, mu), power.s)));
                   },
                   [&](const PolynomialDescriptor& d) {
                     if (method != CurveMethod::bound) throw std::invalid_argument("polynomial designs support bound curves");
                     rows.push_back(row_from_report(label, analyze_poly_bound(d.params, make_policy(d.params.k, mu), power.s)));
                   },
               },
               desc);
  }
  return rows;
}

std::vector<CurveRow> curve_over_k(std::uint32_t n, const Rational& mu, const Rational& gamma,
                                   const std::vector<std::uint32_t>& ks) {
  std::vector<CurveRow> rows;
  const auto power = AdversaryPower::from_fraction(n, gamma);
  for (std::uint32_t k : ks) {
    if (k == 0 || k > n) throw std::domain_error("curve_over_k: every k must satisfy 1 <= k <= n");
    rows.push_back(row_from_report(std::to_string(k), analyze_symmetric(n, k, make_policy(k, mu), power.s)));
  }
  return rows;
}

void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& rows) {
  out << "sweep_var,s,f,eta_exact,eta_decimal,reliable,f_is_bound\n";
  for (const auto& row : rows) {
    out << row.sweep_var << ',' << row.s << ',' << row.f.get_str() << ',' << row.eta.exact_string() << ','
        << row.eta.decimal_string() << ',' << (row.reliable ? "true" : "false") << ','
        << (row.f_is_bound ? "true" : "false") << '\n';
  }
}

}  // namespace custody
