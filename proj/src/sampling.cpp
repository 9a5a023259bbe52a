#include "custody/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <set>
#include <stdexcept>

#include <omp.h>

#include "custody/analysis.hpp"
#include "custody/rng.hpp"

namespace custody {
namespace {

double sampling_delta(std::uint64_t n, double xi, std::uint64_t m_prime, double c) {
  return std::sqrt((1.0 + c) * static_cast<double>(n) * xi / (2.0 * static_cast<double>(m_prime)));
}

// Floyd's method: `count` distinct values from [0, universe), returned sorted.
std::vector<std::uint64_t> floyd_sample(Rng& rng, std::uint64_t universe, std::uint64_t count) {
  std::vector<char> taken(universe, 0);
  for (std::uint64_t j = universe - count; j < universe; ++j) {
    const std::uint64_t t = rng.uniform_below(j + 1);
    taken[taken[t] ? j : t] = 1;
  }
  std::vector<std::uint64_t> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < universe; ++i) {
    if (taken[i]) out.push_back(i);
  }
  return out;
}

NodeSet floyd_subset(Rng& rng, std::uint32_t n, std::uint32_t k) {
  std::set<NodeId> chosen;
  for (std::uint32_t j = n - k; j < n; ++j) {
    const auto t = static_cast<NodeId>(rng.uniform_below(j + 1));
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  return NodeSet(chosen.begin(), chosen.end());
}

GroupAssignment pick_rows(const GroupAssignment& source, const std::vector<std::uint64_t>& rows) {
  const std::uint32_t k = source.group_size();
  std::vector<NodeId> flat;
  flat.reserve(rows.size() * k);
  std::vector<std::string> labels;
  for (std::uint64_t g : rows) {
    auto row = source.group(g);
    flat.insert(flat.end(), row.begin(), row.end());
    if (source.has_labels()) labels.push_back(source.label(g));
  }
  return GroupAssignment::from_groups(source.node_count(), k, std::move(flat), std::move(labels));
}

}  // namespace

SamplingPlan plan_by_count(std::uint64_t n, const BigNat& m, const Rational& gamma, std::uint64_t m_prime, double c,
                           std::uint64_t seed) {
  if (m_prime == 0) throw std::invalid_argument("sampling plan: m' must be positive");
  if (BigNat(static_cast<unsigned long>(m_prime)) > m) throw std::invalid_argument("sampling plan: m' exceeds m");
  if (c < 0) throw std::invalid_argument("sampling plan: c must be non-negative");
  SamplingPlan plan;
  plan.m_prime = m_prime;
  plan.c = c;
  plan.seed = seed;
  plan.xi = entropy_xi(to_double(gamma));
  plan.delta = sampling_delta(n, plan.xi, m_prime, c);
  return plan;
}

SamplingPlan plan_by_rate(std::uint64_t n, const BigNat& m, const Rational& gamma, const Rational& beta, double c,
                          std::uint64_t seed) {
  if (beta <= 0 || beta > 1) throw std::invalid_argument("sampling plan: beta must lie in (0, 1]");
  const Rational target = beta * m;
  BigNat count;
  mpz_fdiv_q(count.get_mpz_t(), target.get_num_mpz_t(), target.get_den_mpz_t());
  if (count == 0 || !count.fits_ulong_p()) throw std::invalid_argument("sampling plan: beta m must be a positive count");
  SamplingPlan plan = plan_by_count(n, m, gamma, count.get_ui(), c, seed);
  plan.beta = beta;
  return plan;
}

SampledBoundReport sampled_eta_bound(std::uint64_t n, const BigNat& m, const Eta& eta, const Rational& gamma,
                                     std::uint64_t m_prime, double c) {
  SampledBoundReport out;
  if (m_prime == 0) throw std::invalid_argument("sampled_eta_bound: m' must be positive");
  if (c < 0) throw std::invalid_argument("sampled_eta_bound: c must be non-negative");
  const double g = to_double(gamma);
  if (static_cast<double>(n) * g * (1.0 - g) < 1.0) return out;

  out.applicable = true;
  out.xi = entropy_xi(g);
  out.delta = sampling_delta(n, out.xi, m_prime, c);
  out.beta = static_cast<double>(m_prime) / m.get_d();
  const double root_m = std::sqrt(static_cast<double>(m_prime));
  const double spread = std::sqrt((1.0 + c) * static_cast<double>(n) * out.xi / 2.0);
  if (eta.infinite) {
    out.eta_prime_bound = g * root_m / spread - 1.0;
  } else {
    const double e1 = to_double(eta.value) + 1.0;
    out.eta_prime_bound = g * e1 * root_m / (g * root_m + e1 * spread) - 1.0;
  }
  out.success_probability_bound =
      1.0 - std::numbers::e / (2.0 * std::numbers::pi) * std::exp(-c * static_cast<double>(n) * out.xi);
  return out;
}

BigNat corollary_sample_size(std::uint64_t n, const Rational& eta, const Rational& gamma) {
  if (gamma <= 0 || gamma >= 1) throw std::domain_error("corollary_sample_size: gamma must lie in (0, 1)");
  if (eta < 0) throw std::domain_error("corollary_sample_size: eta must be non-negative");
  const double g = to_double(gamma);
  const double value = (to_double(eta) + 1.0) * static_cast<double>(n) * entropy_xi(g) / (g * g);
  return BigNat(std::ceil(value));
}

double corollary_eta_prime(const Rational& eta) { return std::sqrt(to_double(eta) + 1.0) - 2.0; }

GroupAssignment sample_assignment(const GroupAssignment& source, std::uint64_t m_prime, std::uint64_t seed,
                                  std::uint64_t cap) {
  const BigNat m = source.group_count();
  if (BigNat(static_cast<unsigned long>(m_prime)) > m) throw std::invalid_argument("sample_assignment: m' exceeds m");
  Rng rng(seed);

  if (source.is_explicit()) return pick_rows(source, floyd_sample(rng, source.size(), m_prime));

  // Dense requests would stall rejection sampling; draw indices instead.
  if (BigNat(static_cast<unsigned long>(m_prime)) * 2 > m) {
    const GroupAssignment full = materialize(source, cap);
    return pick_rows(full, floyd_sample(rng, full.size(), m_prime));
  }
  std::set<NodeSet> groups;
  while (groups.size() < m_prime) groups.insert(floyd_subset(rng, source.node_count(), source.group_size()));
  return GroupAssignment::from_groups(source.node_count(), source.group_size(),
                                      std::vector<NodeSet>(groups.begin(), groups.end()));
}

GroupAssignment sample_polynomial(const PolynomialParams& params, std::uint64_t m_prime, std::uint64_t seed) {
  params.validate();
  const BigNat m = params.group_count();
  if (!m.fits_ulong_p()) throw CapExceeded("sample_polynomial: k^d does not fit in 64 bits");
  const std::uint64_t universe = m.get_ui();
  if (m_prime > universe) throw std::invalid_argument("sample_polynomial: m' exceeds m");
  Rng rng(seed);
  std::set<std::uint64_t> picked;
  for (std::uint64_t j = universe - m_prime; j < universe; ++j) {
    const std::uint64_t t = rng.uniform_below(j + 1);
    if (!picked.insert(t).second) picked.insert(j);
  }
  std::vector<NodeId> flat;
  flat.reserve(m_prime * params.k);
  std::vector<std::string> labels(m_prime);
  std::size_t i = 0;
  for (std::uint64_t g : picked) {
    const NodeSet row = polynomial_group(params, g, &labels[i++]);
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return GroupAssignment::from_groups(params.node_count(), params.k, std::move(flat), std::move(labels));
}

std::vector<std::string> sampled_header(const std::string& descriptor, std::uint64_t seed, std::uint64_t m_prime) {
  return {"sampled-from:" + descriptor + " seed:" + std::to_string(seed) + " m_prime:" + std::to_string(m_prime),
          std::string("rng:") + kRngAlgorithm};
}

EmpiricalValidation empirical_sample_validation(const GroupAssignment& source, const ThresholdPolicy& policy,
                                                std::uint64_t s, std::uint64_t m_prime, std::uint64_t trials,
                                                std::uint64_t seed, double c, kernels::Parallelism par) {
  if (trials == 0) throw std::invalid_argument("empirical_sample_validation: need at least one trial");
  const std::uint32_t n = source.node_count();
  const SecurityReport base = source.is_explicit()
                                  ? analyze_bruteforce(source, policy, s, kDefaultBruteForceCap, par)
                                  : analyze_symmetric(n, source.group_size(), policy, s);
  const SampledBoundReport bound = sampled_eta_bound(n, base.m, base.eta, base.gamma, m_prime, c);
  if (!bound.applicable) throw std::domain_error("empirical_sample_validation: n gamma (1 - gamma) < 1");

  std::vector<char> hit(trials, 0);
  const int threads = par.threads > 0 ? par.threads : omp_get_max_threads();
  const auto count = static_cast<std::int64_t>(trials);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t t = 0; t < count; ++t) {
    try {
      const GroupAssignment sample = sample_assignment(source, m_prime, derive_stream(seed, static_cast<std::uint64_t>(t)));
      const SecurityReport rep = analyze_bruteforce(sample, policy, s, kDefaultBruteForceCap, kernels::Parallelism{1});
      hit[t] = rep.eta.infinite || to_double(rep.eta.value) >= bound.eta_prime_bound;
    } catch (...) {
#pragma omp critical(custody_sampling_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  EmpiricalValidation out;
  out.trials = trials;
  for (char h : hit) out.successes += h ? 1 : 0;
  out.fraction = static_cast<double>(out.successes) / static_cast<double>(trials);
  out.bound_probability = bound.success_probability_bound;
  const double p = out.bound_probability;
  out.standard_error = std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(trials));
  out.pass_threshold = p - 3.0 * out.standard_error;
  out.source_eta = base.eta;
  out.eta_prime_bound = bound.eta_prime_bound;
  out.passed = out.fraction >= out.pass_threshold;
  return out;
}

}  // namespace custody
