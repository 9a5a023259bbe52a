#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "custody/assignment.hpp"
#include "custody/constructions.hpp"
#include "custody/kernels.hpp"

namespace custody {

inline constexpr std::uint64_t kDefaultBruteForceCap = 100'000'000;

/// Outcome of a bound check whose hypotheses may not apply.
enum class Verdict { holds, fails, not_applicable };

const char* to_string(Verdict v);

/// sum_{t=r}^{k} C(s,t) C(n-s,k-t): corrupted groups of the all-k-subsets family
/// when any s nodes are corrupted.
BigNat f_symmetric_exact(std::uint32_t n, std::uint32_t k, const ThresholdPolicy& policy, std::uint64_t s);

struct BruteForceResult {
  std::uint64_t f = 0;
  /// Lexicographically smallest maximizing corruption set.
  NodeSet witness;
};

/// Exact maximum of corrupted groups over all size-s node sets.  Throws
/// CapExceeded when C(n,s) > cap.
BruteForceResult f_bruteforce(const GroupAssignment& a, const ThresholdPolicy& policy, std::uint64_t s,
                              std::uint64_t cap = kDefaultBruteForceCap, kernels::Parallelism par = {});

SecurityReport analyze_symmetric(std::uint32_t n, std::uint32_t k, const ThresholdPolicy& policy, std::uint64_t s);

SecurityReport analyze_bruteforce(const GroupAssignment& a, const ThresholdPolicy& policy, std::uint64_t s,
                                  std::uint64_t cap = kDefaultBruteForceCap, kernels::Parallelism par = {});

struct Threshold {
  bool applicable = false;
  double gamma = 0.0;
};

/// 1/2 - 1/sqrt(k) - 1/(2k), applicable for k >= 10.
Threshold security_threshold_symmetric(std::uint32_t k);

/// gamma <= min{(mu k - 1)/(k - 1) + 1/n, 1 - k/n}: reliability at gamma then
/// carries over to every smaller corruption count.
bool reliability_extends_to_security_symmetric(std::uint32_t n, std::uint32_t k, const ThresholdPolicy& policy,
                                               const Rational& gamma);

/// (s/n) * M / min{C(s,r), M} - 1 with M = C(n,r)/C(k,r).  Infinite when no
/// r-subset can be corrupted (s < r).  Always flagged as a lower bound.
Eta block_design_eta_lower_bound(const DesignSpec& spec, std::uint64_t s);

/// Upper bound on corrupted blocks: lambda * min{C(s,r), C(n,r)/C(k,r)}.
BigNat block_design_f_upper_bound(const DesignSpec& spec, std::uint64_t s);

/// Sufficient condition for reliability (and monotone security) of an
/// r-(n,k,lambda) design under mu = (r-1)/k: C(s,r) <= C(n,r)/C(k,r) and
/// s <= (n/k) mu^{1/(r-1)} + r - 1.  Requires mu >= 1/2, r > mu k >= 2 and
/// n >= 3k - 3; otherwise not_applicable.
Verdict block_design_reliability_check(const DesignSpec& spec, std::uint64_t s);

/// gamma^{1-d} C(r,d)/C(k,d) - 1.  Throws std::domain_error when d > r.
Eta poly_eta_lower_bound(const PolynomialParams& params, const ThresholdPolicy& policy, const Rational& gamma);

/// C(k,d) s^d / (C(r,d) k^d), floored: most groups s corrupted nodes can take.
BigNat poly_f_upper_bound(const PolynomialParams& params, const ThresholdPolicy& policy, std::uint64_t s);

/// ((2 pi / e^{d+2}) sqrt((1-nu) mu / (mu-nu)) (mu^mu / (mu-nu)^{mu-nu})^k)^{1/(d-1)}.
/// Requires d >= 2 and mu > nu = d/k (std::domain_error otherwise).
double poly_security_threshold(const PolynomialParams& params, const Rational& mu);

/// Same formula with real-valued k and d = nu k, for sweeps at fixed nu.
double poly_security_threshold_real(double k, double nu, double mu);

/// Report built from the block-design bounds: f is an upper bound, eta a lower
/// bound, and `reliable` means certified.  The policy threshold must be at
/// least the design strength.
SecurityReport analyze_block_bound(const DesignSpec& spec, const ThresholdPolicy& policy, std::uint64_t s);

/// Same for the polynomial design, with eta from the degree-d intersection bound.
SecurityReport analyze_poly_bound(const PolynomialParams& params, const ThresholdPolicy& policy, std::uint64_t s);

// ---- curves -----------------------------------------------------------------

enum class CurveMethod { exact, bound, bruteforce };

struct SymmetricDescriptor {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
};
struct ExplicitDescriptor {
  const GroupAssignment* assignment = nullptr;
};
struct BlockDesignDescriptor {
  DesignSpec spec;
};
struct PolynomialDescriptor {
  PolynomialParams params;
};

using AssignmentDescriptor =
    std::variant<SymmetricDescriptor, ExplicitDescriptor, BlockDesignDescriptor, PolynomialDescriptor>;

struct CurveRow {
  std::string sweep_var;
  std::uint64_t s = 0;
  BigNat f;
  bool f_is_bound = false;
  Eta eta;
  bool reliable = false;
};

/// gamma_i = i / steps for i = 1..steps, s = floor(gamma_i n).
std::vector<Rational> gamma_grid(std::uint32_t steps);

/// One row per gamma value.  Supported (descriptor, method) pairs: symmetric
/// with exact or bruteforce, explicit with bruteforce, block design and
/// polynomial with bound.
std::vector<CurveRow> curve_over_gamma(const AssignmentDescriptor& desc, const Rational& mu,
                                       const std::vector<Rational>& gammas, CurveMethod method,
                                       kernels::Parallelism par = {});

/// eta versus group size for the all-k-subsets family at fixed n, mu, gamma.
std::vector<CurveRow> curve_over_k(std::uint32_t n, const Rational& mu, const Rational& gamma,
                                   const std::vector<std::uint32_t>& ks);

/// Header `sweep_var,s,f,eta_exact,eta_decimal,reliable,f_is_bound`; infinite
/// eta is written as `inf`.
void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& rows);

}  // namespace custody
