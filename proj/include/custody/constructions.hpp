#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "custody/assignment.hpp"
#include "custody/kernels.hpp"

namespace custody {

/// Enumeration or verification that would exceed the configured cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultMaterializeCap = 10'000'000;
inline constexpr std::uint64_t kDefaultVerifyCap = 10'000'000;

/// r-(n, k, lambda) block design parameters: every r-subset of the n points lies
/// in exactly lambda blocks of size k.
struct DesignSpec {
  std::uint32_t strength = 0;  // r
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::uint64_t lambda = 1;

  /// n > k >= r >= 1, lambda >= 1.
  void validate() const;
};

/// Group size k (a prime), degree d with 1 <= d < k.  n = k^2, m = k^d.
struct PolynomialParams {
  std::uint32_t k = 0;
  std::uint32_t d = 0;

  void validate() const;
  std::uint32_t node_count() const { return k * k; }
  BigNat group_count() const;
  /// nu = d / k
  Rational nu() const;
};

struct BuiltDesign {
  GroupAssignment assignment;
  DesignSpec spec;
};

bool is_prime(std::uint64_t x);

GroupAssignment build_symmetric(std::uint32_t n, std::uint32_t k);

/// All k-subsets in lexicographic order.
GroupAssignment materialize(const GroupAssignment& a, std::uint64_t cap = kDefaultMaterializeCap);

/// One group per monic degree-d polynomial p over Z/kZ: {(x, p(x))}, with point
/// (x, y) stored as node x*k + y.  Group index encodes the free coefficients
/// c_0..c_{d-1} little-endian in base k; labels read "poly:c0,c1,...".
GroupAssignment build_polynomial(const PolynomialParams& params);

/// Group `index` of the polynomial design (index < k^d) and its label.
NodeSet polynomial_group(const PolynomialParams& params, std::uint64_t index, std::string* label = nullptr);

/// Points and lines of the projective plane over GF(q), q prime: a
/// 2-(q^2+q+1, q+1, 1) design.
BuiltDesign build_projective_plane(std::uint32_t q);

/// The 759 octads of the extended binary Golay code, a 5-(24, 8, 1) design.
BuiltDesign build_witt_24();

struct DesignVerification {
  bool ok = false;
  /// Lexicographically first r-subset whose block count differs from lambda.
  std::optional<NodeSet> witness;
  std::uint64_t witness_count = 0;
};

DesignVerification verify_design(const GroupAssignment& a, const DesignSpec& spec,
                                 std::uint64_t cap = kDefaultVerifyCap, kernels::Parallelism par = {});

struct DerivedParams {
  BigNat m;
  BigNat lambda_t;
};

/// m = lambda C(n,r)/C(k,r) and lambda_t = lambda C(n-t,r-t)/C(k-t,r-t).
/// Throws std::invalid_argument when either quotient is not an integer.
DerivedParams derived_design_params(const DesignSpec& spec, std::uint32_t t);

/// Blocks through every point of `removed`, with those points deleted and the
/// survivors relabelled densely in increasing order.
BuiltDesign restrict_design(const GroupAssignment& a, const DesignSpec& spec, const NodeSet& removed);

}  // namespace custody
