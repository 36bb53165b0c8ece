#pragma once

#include "frobdens/rational.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace frobdens {

/// Index of an element inside its FiniteGroup.
using ElemId = std::uint32_t;
/// Canonical encoding: permutation images, a residue, or a tuple.
using Code = std::vector<std::int32_t>;
/// Sorted, duplicate-free list of element ids.
using ElementSet = std::vector<ElemId>;

inline constexpr std::size_t kGroupSizeCap = 10000;

struct CodeHash {
  std::size_t operator()(const Code& c) const noexcept;
};

/// An exhaustively enumerated finite group. Immutable after construction.
class FiniteGroup {
 public:
  using Op = std::function<Code(const Code&, const Code&)>;
  using Formatter = std::function<std::string(const Code&)>;

  /// Subgroup generated by `generators`, listed in BFS order from the
  /// identity (right multiplication by generators in the given order).
  static std::shared_ptr<const FiniteGroup> generate(std::string label, Code identity,
                                                     std::vector<Code> generators, Op op,
                                                     Formatter fmt);

  /// Group on an explicitly listed element set. The list order is kept.
  static std::shared_ptr<const FiniteGroup> from_elements(std::string label,
                                                          std::vector<Code> elements, Op op,
                                                          Formatter fmt);

  std::size_t size() const { return codes_.size(); }
  const std::string& label() const { return label_; }
  const Code& code(ElemId a) const { return codes_.at(a); }
  std::optional<ElemId> find(const Code& c) const;
  /// Throws ElementNotInGroup.
  ElemId index_of(const Code& c) const;
  bool contains(ElemId a) const { return a < codes_.size(); }
  void require(ElemId a) const;

  ElemId identity() const { return identity_; }
  ElemId mul(ElemId a, ElemId b) const;
  ElemId inverse(ElemId a) const { return inverse_.at(a); }
  ElemId pow(ElemId a, long long k) const;
  std::size_t order(ElemId a) const { return order_.at(a); }
  bool is_abelian() const;

  std::string format(ElemId a) const { return fmt_(codes_.at(a)); }
  const std::vector<ElemId>& generators() const { return generators_; }

 private:
  FiniteGroup() = default;
  void finish(std::vector<Code> generator_codes);

  std::string label_;
  std::vector<Code> codes_;
  std::unordered_map<Code, ElemId, CodeHash> index_;
  Op op_;
  Formatter fmt_;
  ElemId identity_ = 0;
  std::vector<ElemId> generators_;
  std::vector<ElemId> inverse_;
  std::vector<std::size_t> order_;
  std::vector<ElemId> table_;  // full Cayley table for small groups
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A homomorphism between two FiniteGroups, stored as an image table.
class GroupMorphism {
 public:
  /// Throws NotHomomorphism when the table does not respect products.
  GroupMorphism(GroupPtr source, GroupPtr target, std::vector<ElemId> images);

  ElemId operator()(ElemId a) const { return images_.at(a); }
  const GroupPtr& source() const { return source_; }
  const GroupPtr& target() const { return target_; }
  const std::vector<ElemId>& images() const { return images_; }
  ElementSet kernel() const;
  ElementSet preimage(ElemId x) const;
  bool is_surjective() const;

 private:
  GroupPtr source_;
  GroupPtr target_;
  std::vector<ElemId> images_;
};

// Constructors for the concrete groups used throughout.

/// Permutation group on n points; generators are 0-based image arrays.
GroupPtr permutation_group(int n, const std::vector<Code>& generators, std::string label = {});
GroupPtr symmetric_group(int n);
GroupPtr alternating_group(int n);
/// Units of Z/mZ generated by the given residues.
GroupPtr units_group(std::int64_t m, const std::vector<std::int64_t>& generators);
/// All of (Z/mZ)^x, generated greedily by the smallest residues.
GroupPtr full_units_group(std::int64_t m);
/// Additive cyclic group Z/nZ.
GroupPtr cyclic_group(int n);

/// Parses "(1 2 3)(4 5)" (1-based points) or "e" into 0-based images.
Code parse_cycles(const std::string& text, int n);
std::string format_cycles(const Code& perm);
std::vector<int> cycle_type(const Code& perm);

// Conjugacy calculus.

ElementSet conjugacy_class(const FiniteGroup& g, ElemId a);
ElementSet centralizer(const FiniteGroup& g, ElemId a);
/// Centralizer of `a` inside the subgroup `h`.
ElementSet centralizer_in(const FiniteGroup& g, const ElementSet& h, ElemId a);
std::size_t element_order(const FiniteGroup& g, ElemId a);
std::vector<ElementSet> conjugacy_classes(const FiniteGroup& g);
/// Cyclic subgroup <a>.
ElementSet cyclic_subgroup(const FiniteGroup& g, ElemId a);

ElementSet subgroup_generated(const FiniteGroup& g, const std::vector<ElemId>& gens);
bool is_subgroup(const FiniteGroup& g, const ElementSet& h);
bool is_normal(const FiniteGroup& g, const ElementSet& h);
ElementSet normal_closure(const FiniteGroup& g, const ElementSet& s);

struct Quotient {
  GroupPtr group;
  GroupMorphism projection;
};

/// G/H with elements encoded by their minimal coset representative.
Quotient quotient(const GroupPtr& g, const ElementSet& h);

/// Partition of the fiber pi^{-1}(x) into orbits under conjugation by ker(pi).
struct FiberClassPartition {
  ElemId base;
  std::vector<ElementSet> classes;
};

FiberClassPartition fiber_h_classes(const GroupMorphism& pi, ElemId x);

struct FiberedProduct {
  GroupPtr group;
  GroupMorphism first;
  GroupMorphism second;
};

/// {(a,b) : pi1(a) = pi2(b)} in lexicographic order of (a,b).
FiberedProduct fibered_product(const GroupMorphism& pi1, const GroupMorphism& pi2);
FiberedProduct direct_product(const GroupPtr& g1, const GroupPtr& g2);
/// Element of a fibered product with the given components, if it exists.
std::optional<ElemId> pair_element(const FiberedProduct& fp, ElemId a, ElemId b);

/// H_i = H_0 x| (Z/p)^i with H_0 = Z/d acting through chi on every
/// coordinate: (a,v)(b,w) = (a+b, v + chi(a) w).
struct SemidirectTower {
  GroupPtr base;             // H_0 = Z/d
  GroupPtr group;            // H_i
  GroupMorphism projection;  // H_i -> H_0
  std::vector<ElemId> section;  // a -> (a, 0)
  int d;
  std::int64_t p;
  std::int64_t chi_generator;  // chi(1) in (Z/p)^x
  int level;
};

SemidirectTower semidirect_tower(int d, std::int64_t p, std::int64_t chi_generator, int level);

// Complex-valued functions on a group.

struct CharacterFn {
  GroupPtr group;
  std::vector<std::complex<double>> values;
  /// Present when every value is rational.
  std::optional<std::vector<Rational>> exact;

  static CharacterFn from_rational(GroupPtr g, std::vector<Rational> values);
  static CharacterFn from_complex(GroupPtr g, std::vector<std::complex<double>> values);
};

struct InnerProduct {
  std::complex<double> value;
  std::optional<Rational> exact;
};

/// |G|^{-1} sum_x phi(x) conj(psi(x)).
InnerProduct inner_product(const CharacterFn& phi, const CharacterFn& psi);
CharacterFn trivial_character(const GroupPtr& g);
CharacterFn regular_character(const GroupPtr& g);
CharacterFn point_mass_character(const GroupPtr& g, ElemId x);
/// psi o pi, a function on the source of pi.
CharacterFn inflate(const CharacterFn& psi, const GroupMorphism& pi);
/// Real values in [0, |G|] and <psi, 1> = 1.
bool is_density_character(const CharacterFn& psi);
/// e^{2 pi i k a / d} on Z/d.
CharacterFn cyclic_character(const GroupPtr& zd, int k);

}  // namespace frobdens
