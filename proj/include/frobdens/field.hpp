#pragma once

#include "frobdens/group.hpp"
#include "frobdens/polynomial.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace frobdens {

inline constexpr std::int64_t kMaxConductor = 1'000'000;
inline constexpr int kMaxPolyDegree = 7;

enum class FieldKind { Abelian, SnSplitting };

/// Number of primes of K over p whose Frobenius data lands in one H-class of G.
struct FiberCount {
  std::uint32_t h_class;
  std::uint32_t count;
};

/// Splitting data of one rational prime in the tower L / K / Q.
struct PrimeRecord {
  std::uint64_t p = 0;
  bool ramified = false;
  /// Frobenius in G = Gal(L/Q): exact for abelian fields, a class
  /// representative for S_n fields.
  ElemId frob = 0;
  /// Image of `frob` in Gal(K/Q).
  ElemId frob_k = 0;
  /// Factor degrees of f mod p (S_n fields only).
  std::vector<int> cycle_type;
  /// Residue degree and number of the primes of K over p.
  int d = 0;
  int g = 0;
  std::vector<FiberCount> fibers;

  /// p^d.
  BigInt norm() const;
};

/// One H-conjugacy class inside a fiber pi^{-1}(base).
struct HClass {
  ElemId base;
  ElementSet elements;
};

/// An explicit Galois tower Q subset K subset L with computable Frobenius data.
///
/// Abelian: L = Q(zeta_m)^V and K = Q(zeta_m)^U for V <= U <= (Z/m)^x, so
/// G = Gal(L/Q) = (Z/m)^x / V and H = Gal(L/K) = U / V.
/// S_n: L is the splitting field of a monic f whose Galois group is the full
/// symmetric group, and K is the fixed field of a normal subgroup H.
class FieldScenario {
 public:
  /// `k_kernel` generates U; `l_kernel` generates V (defaults to U, i.e. L = K).
  static FieldScenario abelian(std::int64_t m, const std::vector<std::int64_t>& k_kernel,
                               const std::optional<std::vector<std::int64_t>>& l_kernel = {});
  /// `h_generators` are permutations generating the normal subgroup H of S_n.
  static FieldScenario sn_splitting(const IntPoly& f, const std::vector<Code>& h_generators);
  /// Named normal subgroups: "trivial", "alternating", "full", "klein4".
  static FieldScenario sn_splitting(const IntPoly& f, const std::string& h_name);

  FieldKind kind() const;
  std::string describe() const;

  const GroupPtr& galois_l() const;
  const ElementSet& h() const;
  const GroupPtr& galois_k() const;
  const GroupMorphism& projection() const;
  std::size_t degree_k() const;

  const std::vector<HClass>& h_classes() const;
  std::uint32_t h_class_of(ElemId y) const;
  /// G-conjugacy class id of an element of G (index into conjugacy_classes(G)).
  std::uint32_t g_class_of(ElemId y) const;

  bool is_ramified(std::uint64_t p) const;
  /// Throws Ramified.
  PrimeRecord record(std::uint64_t p) const;
  /// Ramified primes come back with `ramified` set and no fiber data.
  PrimeRecord record_or_flag(std::uint64_t p) const;

  // Abelian fields.
  std::int64_t conductor() const;
  /// Element of G = (Z/m)^x / V containing the unit r.
  ElemId element_of_residue(std::int64_t r) const;
  /// Units mod m in the V-coset y.
  const std::vector<std::int64_t>& residues_of(ElemId y) const;

  // S_n fields.
  const IntPoly& polynomial() const;
  const BigInt& poly_discriminant() const;
  int poly_degree() const;

 private:
  struct Impl;
  explicit FieldScenario(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// p mod m; throws Ramified when p | m.
std::int64_t frobenius_abelian(std::int64_t m, std::uint64_t p);
PrimeRecord splitting_data_abelian(const FieldScenario& scenario, std::uint64_t p);
/// Sorted factor degrees of f mod p; throws Ramified when p | disc(f).
std::vector<int> cycle_type_sn(const IntPoly& f, std::uint64_t p);
/// Conjugacy class of S_n with the given cycle type; throws DegreeMismatch.
ElementSet frobenius_class_sn(const FiniteGroup& sn, const std::vector<int>& cycle_type);
ElementSet frobenius_class_sn(const std::vector<int>& cycle_type, int n);
/// Permutation (0-based images) with the given cycle type.
Code permutation_with_cycle_type(const std::vector<int>& cycle_type, int n);

}  // namespace frobdens
