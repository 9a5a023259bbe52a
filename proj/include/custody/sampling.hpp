#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "custody/assignment.hpp"
#include "custody/constructions.hpp"
#include "custody/kernels.hpp"

namespace custody {

/// Target size of a sampled assignment, given directly or as a rate of m.
struct SamplingPlan {
  std::uint64_t m_prime = 0;
  std::optional<Rational> beta;  // set when the plan was built from a rate
  double c = 0.0;
  std::uint64_t seed = 0;
  double xi = 0.0;
  /// sqrt((1+c) n xi / (2 m'))
  double delta = 0.0;
};

SamplingPlan plan_by_count(std::uint64_t n, const BigNat& m, const Rational& gamma, std::uint64_t m_prime, double c,
                           std::uint64_t seed);

/// m' = floor(beta m), which must be positive; 0 < beta <= 1.
SamplingPlan plan_by_rate(std::uint64_t n, const BigNat& m, const Rational& gamma, const Rational& beta, double c,
                          std::uint64_t seed);

struct SampledBoundReport {
  /// False when n gamma (1 - gamma) < 1; the other fields are then unset.
  bool applicable = false;
  double eta_prime_bound = 0.0;
  double success_probability_bound = 0.0;
  double xi = 0.0;
  double delta = 0.0;
  double beta = 0.0;
};

/// High-probability lower bound on eta' of an m'-group uniform sample of an
/// assignment with efficiency factor `eta`:
///   gamma (eta+1) sqrt(m') / (gamma sqrt(m') + (eta+1) sqrt((1+c) n xi / 2)) - 1
/// holding with probability >= 1 - (e / 2 pi) exp(-c n xi).  Infinite eta uses
/// the limit gamma sqrt(2 m' / ((1+c) n xi)) - 1.
SampledBoundReport sampled_eta_bound(std::uint64_t n, const BigNat& m, const Eta& eta, const Rational& gamma,
                                     std::uint64_t m_prime, double c = 0.0);

/// ceil((eta + 1) n xi(gamma) / gamma^2); gamma in (0,1), eta >= 0.
BigNat corollary_sample_size(std::uint64_t n, const Rational& eta, const Rational& gamma);

/// sqrt(eta + 1) - 2, the eta' guaranteed at the corollary's sample size.
double corollary_eta_prime(const Rational& eta);

/// Uniformly samples m' distinct groups of `source`.  Explicit sources keep
/// their group order and labels; implicit all-k-subset sources draw each group
/// with Floyd's method and reject repeats, returning groups in lexicographic
/// order.  Throws std::invalid_argument when m' > m.
GroupAssignment sample_assignment(const GroupAssignment& source, std::uint64_t m_prime, std::uint64_t seed,
                                  std::uint64_t cap = kDefaultMaterializeCap);

/// m' distinct polynomial groups drawn without building the whole design
/// (k^d must fit in 64 bits).  Groups appear in increasing index order.
GroupAssignment sample_polynomial(const PolynomialParams& params, std::uint64_t m_prime, std::uint64_t seed);

/// Header comments for a sampled design file.
std::vector<std::string> sampled_header(const std::string& descriptor, std::uint64_t seed, std::uint64_t m_prime);

struct EmpiricalValidation {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double fraction = 0.0;
  double bound_probability = 0.0;
  double standard_error = 0.0;
  /// bound_probability - 3 standard errors
  double pass_threshold = 0.0;
  Eta source_eta;
  double eta_prime_bound = 0.0;
  bool passed = false;
};

/// Samples `trials` assignments (trial t uses stream derive_stream(seed, t)),
/// computes each eta' exactly by brute force and counts how often it meets the
/// sampled bound.  Trials run in parallel; the result does not depend on the
/// thread count.
EmpiricalValidation empirical_sample_validation(const GroupAssignment& source, const ThresholdPolicy& policy,
                                                std::uint64_t s, std::uint64_t m_prime, std::uint64_t trials,
                                                std::uint64_t seed, double c = 0.0, kernels::Parallelism par = {});

}  // namespace custody
