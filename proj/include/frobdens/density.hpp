#pragma once

#include "frobdens/group.hpp"
#include "frobdens/rational.hpp"
#include "frobdens/set_expr.hpp"

#include <map>
#include <optional>
#include <vector>

namespace frobdens {

// Exact density predictions. Every value here is an exact rational; floating
// point only enters through complex-valued weight functions.

/// delta_{K,x}(M_C) = #C / #H for an H-class C of pi^{-1}(x).
Rational prop32_density(const GroupMorphism& pi, ElemId x, const ElementSet& cls);

/// #Z_H(y) / #<y^d>, d the order of pi(y): fibers of P^y_L -> M_C.
Rational gamma_constant(const GroupMorphism& pi, ElemId y);

/// #Z_G(x) / #<x>: fibers of P^x_K -> P_K(x) over the base.
Rational multiplicity_constant(const FiniteGroup& g, ElemId x);

/// #Z_G(y) / (#<pi(y)> #Z_H(y)).
Rational beta_constant(const GroupMorphism& pi, ElemId y);

/// (#H / #C) * delta; throws OutOfRange when the result leaves [0, 1].
Rational cor34_pullback(const Rational& delta_on_intersection, std::size_t class_size, std::size_t h_size);

/// x-density in L of the pull-back of P_{M/K}(sigma), for x in Gal(L/K),
/// sigma in Gal(M/K), both projecting onto Q = Gal(L cap M / K).
Rational cor35_chebotarev_pullback(const GroupMorphism& to_q_from_l, const GroupMorphism& to_q_from_m,
                                   ElemId x, ElemId sigma);

/// <psi, chi_S> given the characteristic function chi_S(x) = delta_x(S).
InnerProduct psi_density_predict(const CharacterFn& psi, const std::map<ElemId, Rational>& per_x);

/// delta_{K,x}(S) as a sum of #C/#H over the fiber classes C that S contains.
/// Throws NotPredictable when some class does not decide membership.
Rational predict_x_density(const FieldScenario& sc, const SetExprPtr& s, ElemId x);

/// The characteristic function x -> delta_{K,x}(S) on Gal(K/Q).
std::map<ElemId, Rational> characteristic_function(const FieldScenario& sc, const SetExprPtr& s);

/// delta_{K,psi}(S) = <psi, chi_{K,S}>.
InnerProduct predict_psi_density(const FieldScenario& sc, const CharacterFn& psi, const SetExprPtr& s);

/// Dirichlet density of S in K by classical Chebotarev for L/K: the sum of
/// #C/#H over conjugacy classes C of the group H that S contains.
Rational classical_dirichlet_density(const FieldScenario& sc, const SetExprPtr& s);

/// Both sides of delta_{L, psi o pi}(S_L) = delta_{K, psi}(S). The left side
/// is assembled element by element on Gal(L/Q) from the pull-back formula
/// delta_{L,y}(S_L) = (#H/#C) delta_{K,x}(S cap M_C).
struct InflationSides {
  InnerProduct lifted;
  InnerProduct base;
};
InflationSides inflation_sides(const FieldScenario& sc, const CharacterFn& psi, const SetExprPtr& s);
bool inflation_identity_check(const FieldScenario& sc, const CharacterFn& psi, const SetExprPtr& s);

/// Density of S_0 for the element (sigma-bar, x) of Delta x H_i, evaluated
/// through the fibered-product formula and cross-checked against
/// #C(sigma, Gal_M) / ([M : K(mu_p)] #C(sigma-bar, Delta)).
Rational sect56_density(const GroupMorphism& m_to_delta, const GroupPtr& tower_group, ElemId sigma, ElemId x);

/// Verdict of <<lambda_i(ker psi)>> == pi_i^{-1}(ker psi) for the tower
/// (d, p, chi(1), i) and psi = the character a -> e^{2 pi i k a / d} of Z/d.
/// Throws HypothesisViolated when ord(psi) >= ord(chi).
bool lemma_normteiler_verify(int d, std::int64_t p, std::int64_t chi_generator, int level, int psi_index);

/// Multiplicative order of chi(1) mod p.
int character_order_mod_p(std::int64_t chi_generator, std::int64_t p);
/// d / gcd(k, d).
int cyclic_character_order(int d, int k);

}  // namespace frobdens
