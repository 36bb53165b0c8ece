#pragma once

#include "frobdens/field.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace frobdens {

class SetExpr;
using SetExprPtr = std::shared_ptr<const SetExpr>;

/// A set of primes of K, described symbolically against one FieldScenario.
///
/// A prime of K is seen through its rational prime p and the H-class of G
/// carrying its Frobenius data; membership is a function of that pair.
class SetExpr {
 public:
  enum class Kind {
    All,
    Empty,
    Congruence,   // p mod modulus in residues
    Chebotarev,   // Frobenius of p in Gal(L/Q) lies in the listed G-classes
    Fiber,        // the prime lies in M_C for one of the listed H-classes
    FrobeniusIs,  // Frobenius in Gal(K/Q) equals x, i.e. P^x
    FrobeniusOver,  // Frobenius over the fixed field of A equals x
    Union,
    Intersect,
    Complement,
    MinusFinite,
  };

  static SetExprPtr all();
  static SetExprPtr empty();
  static SetExprPtr congruence(std::int64_t modulus, std::vector<std::int64_t> residues);
  /// P_{M/Q}(sigma) for M = Q(zeta_conductor)^{U'}, U' generated by `kernel`.
  static SetExprPtr chebotarev_abelian(std::int64_t conductor, const std::vector<std::int64_t>& kernel,
                                       std::int64_t sigma);
  /// P_{L/Q}(C) for the G-conjugacy classes of the listed elements of G.
  static SetExprPtr chebotarev(const FieldScenario& sc, const std::vector<ElemId>& elements);
  /// Union of M_C over the H-classes of the listed elements of G.
  static SetExprPtr fiber(const FieldScenario& sc, const std::vector<ElemId>& elements);
  static SetExprPtr frobenius_is(ElemId x);
  /// Primes of K whose Frobenius over K^A (A a subgroup of Gal(K/Q)) equals x.
  static SetExprPtr frobenius_over(const FieldScenario& sc, ElementSet subgroup, ElemId x);
  static SetExprPtr union_of(std::vector<SetExprPtr> parts);
  static SetExprPtr intersect_of(std::vector<SetExprPtr> parts);
  static SetExprPtr complement(SetExprPtr inner);
  static SetExprPtr minus_finite(SetExprPtr inner, std::vector<std::uint64_t> primes);

  Kind kind() const { return kind_; }

  /// Membership of a prime of K over p whose Frobenius data is `h_class`.
  bool contains(const FieldScenario& sc, std::uint64_t p, std::uint32_t h_class) const;

  /// Membership decided by the H-class alone, up to finitely many primes;
  /// nullopt when the class does not determine it.
  std::optional<bool> decide(const FieldScenario& sc, std::uint32_t h_class) const;

  std::string to_string() const;

 private:
  explicit SetExpr(Kind k) : kind_(k) {}

  Kind kind_;
  std::int64_t modulus_ = 0;
  std::vector<std::int64_t> residues_;  // sorted; for Congruence and abelian Chebotarev
  std::vector<char> residue_mask_;
  std::vector<std::uint32_t> classes_;  // G-class ids (Chebotarev) or H-class ids (Fiber)
  ElemId x_ = 0;
  std::vector<char> over_mask_;  // FrobeniusOver: per element of Gal(K/Q)
  std::vector<SetExprPtr> parts_;
  std::vector<std::uint64_t> finite_;  // sorted
  std::string label_;
};

/// Shorthand for the intersection of `s` with P^x.
SetExprPtr restrict_to_frobenius(const SetExprPtr& s, ElemId x);

}  // namespace frobdens
