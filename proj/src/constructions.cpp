#include "custody/constructions.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <string>

namespace custody {

void DesignSpec::validate() const {
  if (!(n > k && k >= strength && strength >= 1 && lambda >= 1)) {
    throw std::invalid_argument("design spec requires n > k >= r >= 1 and lambda >= 1");
  }
}

void PolynomialParams::validate() const {
  if (!is_prime(k)) throw std::invalid_argument("polynomial design: k must be prime");
  if (d < 1 || d >= k) throw std::invalid_argument("polynomial design: need 1 <= d < k");
}

BigNat PolynomialParams::group_count() const {
  BigNat out;
  mpz_ui_pow_ui(out.get_mpz_t(), k, d);
  return out;
}

Rational PolynomialParams::nu() const {
  Rational out(d, k);
  out.canonicalize();
  return out;
}

bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t p = 2; p * p <= x; ++p) {
    if (x % p == 0) return false;
  }
  return true;
}

GroupAssignment build_symmetric(std::uint32_t n, std::uint32_t k) { return GroupAssignment::symmetric_all(n, k); }

GroupAssignment materialize(const GroupAssignment& a, std::uint64_t cap) {
  if (a.is_explicit()) return a;
  const BigNat m = a.group_count();
  if (m > BigNat(static_cast<unsigned long>(cap))) {
    throw CapExceeded("materialize: C(" + std::to_string(a.node_count()) + "," + std::to_string(a.group_size()) +
                      ") = " + m.get_str() + " exceeds cap " + std::to_string(cap));
  }
  const std::uint32_t n = a.node_count();
  const std::uint32_t k = a.group_size();
  std::vector<NodeId> flat;
  flat.reserve(static_cast<std::size_t>(m.get_ui()) * k);
  NodeSet pick(k);
  for (std::uint32_t i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    flat.insert(flat.end(), pick.begin(), pick.end());
    std::int64_t i = static_cast<std::int64_t>(k) - 1;
    while (i >= 0 && pick[i] == n - k + static_cast<std::uint32_t>(i)) --i;
    if (i < 0) break;
    ++pick[i];
    for (std::uint32_t j = static_cast<std::uint32_t>(i) + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return GroupAssignment::from_groups(n, k, std::move(flat));
}

NodeSet polynomial_group(const PolynomialParams& params, std::uint64_t index, std::string* label) {
  const std::uint32_t k = params.k;
  const std::uint32_t d = params.d;
  std::vector<std::uint32_t> coeff(d, 0);
  if (label) *label = "poly:";
  for (std::uint32_t j = 0; j < d; ++j) {
    coeff[j] = static_cast<std::uint32_t>(index % k);
    index /= k;
    if (label) *label += (j ? "," : "") + std::to_string(coeff[j]);
  }
  if (index != 0) throw std::out_of_range("polynomial_group: index >= k^d");
  NodeSet members(k);
  for (std::uint32_t x = 0; x < k; ++x) {
    // Horner on x^d + c_{d-1} x^{d-1} + ... + c_0
    std::uint64_t y = 1;
    for (std::uint32_t j = d; j-- > 0;) y = (y * x + coeff[j]) % k;
    members[x] = x * k + static_cast<NodeId>(y);
  }
  return members;
}

GroupAssignment build_polynomial(const PolynomialParams& params) {
  params.validate();
  const BigNat count = params.group_count();
  if (count > BigNat(static_cast<unsigned long>(kDefaultMaterializeCap))) {
    throw CapExceeded("polynomial design with k^d = " + count.get_str() + " groups exceeds the materialize cap");
  }
  const std::size_t m = count.get_ui();
  std::vector<NodeId> flat;
  flat.reserve(m * params.k);
  std::vector<std::string> labels(m);
  for (std::size_t g = 0; g < m; ++g) {
    const NodeSet row = polynomial_group(params, g, &labels[g]);
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return GroupAssignment::from_groups(params.k * params.k, params.k, std::move(flat), std::move(labels));
}

BuiltDesign build_projective_plane(std::uint32_t q) {
  if (!is_prime(q)) throw std::invalid_argument("projective plane: q must be prime");
  // Normalized representatives of the 1-dimensional subspaces of GF(q)^3:
  // (1,y,z), then (0,1,z), then (0,0,1).
  std::vector<std::array<std::uint32_t, 3>> reps;
  for (std::uint32_t y = 0; y < q; ++y)
    for (std::uint32_t z = 0; z < q; ++z) reps.push_back({1, y, z});
  for (std::uint32_t z = 0; z < q; ++z) reps.push_back({0, 1, z});
  reps.push_back({0, 0, 1});

  const auto points = static_cast<std::uint32_t>(reps.size());
  std::vector<NodeSet> lines;
  std::vector<std::string> labels;
  for (const auto& line : reps) {
    NodeSet members;
    for (std::uint32_t p = 0; p < points; ++p) {
      const auto& pt = reps[p];
      if ((line[0] * pt[0] + line[1] * pt[1] + line[2] * pt[2]) % q == 0) members.push_back(p);
    }
    lines.push_back(std::move(members));
    labels.push_back("line:" + std::to_string(line[0]) + "," + std::to_string(line[1]) + "," + std::to_string(line[2]));
  }
  DesignSpec spec{2, points, q + 1, 1};
  return {GroupAssignment::from_groups(points, q + 1, lines, std::move(labels)), spec};
}

namespace {

// Generator matrix [I_12 | B] of the extended binary Golay code.  Row i is the
// unit vector e_i followed by the 12 bits of kGolayB[i], most significant
// first.  Checked behaviourally: exactly 759 weight-8 codewords, and they form
// a 5-(24,8,1) design.
constexpr std::array<const char*, 12> kGolayB = {
    "011111111111", "111011100010", "110111000101", "101110001011", "111100010110", "111000101101",
    "110001011011", "100010110111", "100101101110", "101011011100", "110110111000", "101101110001",
};

}  // namespace

BuiltDesign build_witt_24() {
  std::array<std::uint32_t, 12> rows{};
  for (std::uint32_t i = 0; i < 12; ++i) {
    std::uint32_t word = std::uint32_t{1} << i;
    for (std::uint32_t j = 0; j < 12; ++j) {
      if (kGolayB[i][j] == '1') word |= std::uint32_t{1} << (12 + j);
    }
    rows[i] = word;
  }
  std::vector<NodeSet> octads;
  for (std::uint32_t msg = 0; msg < (1u << 12); ++msg) {
    std::uint32_t word = 0;
    for (std::uint32_t i = 0; i < 12; ++i) {
      if (msg >> i & 1u) word ^= rows[i];
    }
    if (std::popcount(word) != 8) continue;
    NodeSet block;
    for (NodeId p = 0; p < 24; ++p) {
      if (word >> p & 1u) block.push_back(p);
    }
    octads.push_back(std::move(block));
  }
  if (octads.size() != 759) {
    throw std::logic_error("Golay generator produced " + std::to_string(octads.size()) + " octads, expected 759");
  }
  std::sort(octads.begin(), octads.end());
  return {GroupAssignment::from_groups(24, 8, octads), DesignSpec{5, 24, 8, 1}};
}

DesignVerification verify_design(const GroupAssignment& a, const DesignSpec& spec, std::uint64_t cap,
                                 kernels::Parallelism par) {
  spec.validate();
  if (!a.is_explicit()) throw std::invalid_argument("verify_design: explicit assignment required");
  if (a.node_count() != spec.n || a.group_size() != spec.k) {
    throw std::invalid_argument("verify_design: assignment n/k do not match the design spec");
  }
  const BigNat subsets = binom(spec.n, spec.strength);
  if (subsets > BigNat(static_cast<unsigned long>(cap))) {
    throw CapExceeded("verify_design: C(n,r) = " + subsets.get_str() + " exceeds cap " + std::to_string(cap));
  }
  const auto counts = kernels::subset_coverage(a, spec.strength, par);
  DesignVerification out;
  for (std::uint64_t rank = 0; rank < counts.size(); ++rank) {
    if (counts[rank] != spec.lambda) {
      out.witness = kernels::lex_unrank(spec.n, spec.strength, rank);
      out.witness_count = counts[rank];
      return out;
    }
  }
  out.ok = true;
  return out;
}

DerivedParams derived_design_params(const DesignSpec& spec, std::uint32_t t) {
  spec.validate();
  if (t < 1 || t > spec.strength) throw std::invalid_argument("derived_design_params: need 1 <= t <= r");
  const BigNat lambda(static_cast<unsigned long>(spec.lambda));
  auto exact_quotient = [](const BigNat& num, const BigNat& den, const char* what) {
    if (den == 0 || !mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) {
      throw std::invalid_argument(std::string("derived_design_params: ") + what + " is not an integer");
    }
    BigNat q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
  };
  const std::uint32_t r = spec.strength;
  DerivedParams out;
  out.m = exact_quotient(lambda * binom(spec.n, r), binom(spec.k, r), "block count");
  out.lambda_t = exact_quotient(lambda * binom(spec.n - t, r - t), binom(spec.k - t, r - t), "lambda_t");
  return out;
}

BuiltDesign restrict_design(const GroupAssignment& a, const DesignSpec& spec, const NodeSet& removed) {
  spec.validate();
  const auto t = static_cast<std::uint32_t>(removed.size());
  if (t >= spec.strength) throw std::invalid_argument("restrict_design: need |removed| < r");
  std::vector<char> gone(a.node_count(), 0);
  for (NodeId v : removed) gone.at(v) = 1;
  std::vector<NodeId> relabel(a.node_count(), 0);
  NodeId next = 0;
  for (NodeId v = 0; v < a.node_count(); ++v) relabel[v] = gone[v] ? 0 : next++;

  std::vector<NodeSet> blocks;
  for (std::size_t g = 0; g < a.size(); ++g) {
    auto row = a.group(g);
    const auto through = static_cast<std::uint32_t>(std::count_if(row.begin(), row.end(), [&](NodeId v) { return gone[v]; }));
    if (through != t) continue;
    NodeSet kept;
    for (NodeId v : row) {
      if (!gone[v]) kept.push_back(relabel[v]);
    }
    blocks.push_back(std::move(kept));
  }
  DesignSpec derived{spec.strength - t, spec.n - t, spec.k - t, spec.lambda};
  return {GroupAssignment::from_groups(spec.n - t, spec.k - t, blocks), derived};
}

}  // namespace custody
