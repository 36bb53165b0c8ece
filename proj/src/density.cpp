#include "frobdens/density.hpp"

#include "frobdens/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace frobdens {

Rational prop32_density(const GroupMorphism& pi, ElemId x, const ElementSet& cls) {
  ElementSet sorted = cls;
  std::sort(sorted.begin(), sorted.end());
  const auto part = fiber_h_classes(pi, x);
  if (std::find(part.classes.begin(), part.classes.end(), sorted) == part.classes.end())
    throw Error(ErrorCode::ClassNotInFiber, "not an H-class of the fiber over x");
  return Rational(BigInt(sorted.size()), BigInt(pi.kernel().size()));
}

Rational gamma_constant(const GroupMorphism& pi, ElemId y) {
  const auto& g = *pi.source();
  g.require(y);
  const auto d = static_cast<long long>(pi.target()->order(pi(y)));
  const auto z_h = centralizer_in(g, pi.kernel(), y);
  const auto power = cyclic_subgroup(g, g.pow(y, d));
  return Rational(BigInt(z_h.size()), BigInt(power.size()));
}

Rational multiplicity_constant(const FiniteGroup& g, ElemId x) {
  g.require(x);
  return Rational(BigInt(centralizer(g, x).size()), BigInt(g.order(x)));
}

Rational beta_constant(const GroupMorphism& pi, ElemId y) {
  const auto& g = *pi.source();
  g.require(y);
  const auto z_g = centralizer(g, y).size();
  const auto z_h = centralizer_in(g, pi.kernel(), y).size();
  const auto ord_x = pi.target()->order(pi(y));
  return Rational(BigInt(z_g), BigInt(ord_x) * BigInt(z_h));
}

Rational cor34_pullback(const Rational& delta_on_intersection, std::size_t class_size, std::size_t h_size) {
  if (class_size == 0 || h_size == 0) throw Error(ErrorCode::BadInput, "class and H must be nonempty");
  if (delta_on_intersection < 0) throw Error(ErrorCode::OutOfRange, "negative density");
  Rational out = Rational(BigInt(h_size), BigInt(class_size)) * delta_on_intersection;
  if (out > 1) throw Error(ErrorCode::OutOfRange, "pulled-back density exceeds 1");
  return out;
}

Rational cor35_chebotarev_pullback(const GroupMorphism& to_q_from_l, const GroupMorphism& to_q_from_m,
                                   ElemId x, ElemId sigma) {
  if (to_q_from_l.target() != to_q_from_m.target())
    throw Error(ErrorCode::TargetMismatch, "projections land in different groups");
  if (!to_q_from_l.is_surjective() || !to_q_from_m.is_surjective())
    throw Error(ErrorCode::BadInput, "projections onto Gal(L cap M / K) must be surjective");
  const auto& gl = *to_q_from_l.source();
  const auto& gm = *to_q_from_m.source();
  gl.require(x);
  gm.require(sigma);
  if (to_q_from_l(x) != to_q_from_m(sigma)) return Rational(0);
  const auto fp = fibered_product(to_q_from_l, to_q_from_m);
  const auto pair = pair_element(fp, x, sigma);
  if (!pair) throw Error(ErrorCode::InvariantBreach, "(x, sigma) missing from the fibered product");
  const auto class_lm = conjugacy_class(*fp.group, *pair).size();
  const auto degree_m_over_meet = gm.size() / to_q_from_m.target()->size();
  const auto class_l = conjugacy_class(gl, x).size();
  return Rational(BigInt(class_lm), BigInt(degree_m_over_meet) * BigInt(class_l));
}

InnerProduct psi_density_predict(const CharacterFn& psi, const std::map<ElemId, Rational>& per_x) {
  std::vector<Rational> chi(psi.group->size());
  for (ElemId x = 0; x < psi.group->size(); ++x) {
    auto it = per_x.find(x);
    if (it == per_x.end())
      throw Error(ErrorCode::MissingDensity, "no density for element " + psi.group->format(x));
    chi[x] = it->second;
  }
  return inner_product(psi, CharacterFn::from_rational(psi.group, std::move(chi)));
}

Rational predict_x_density(const FieldScenario& sc, const SetExprPtr& s, ElemId x) {
  sc.galois_k()->require(x);
  Rational sum = 0;
  const auto& classes = sc.h_classes();
  for (std::uint32_t c = 0; c < classes.size(); ++c) {
    if (classes[c].base != x) continue;
    auto in = s->decide(sc, c);
    if (!in)
      throw Error(ErrorCode::NotPredictable,
                  s->to_string() + " is not a union of fiber classes over " + sc.galois_k()->format(x));
    if (*in) sum += Rational(BigInt(classes[c].elements.size()), BigInt(sc.h().size()));
  }
  return sum;
}

std::map<ElemId, Rational> characteristic_function(const FieldScenario& sc, const SetExprPtr& s) {
  std::map<ElemId, Rational> out;
  for (ElemId x = 0; x < sc.galois_k()->size(); ++x) out.emplace(x, predict_x_density(sc, s, x));
  return out;
}

InnerProduct predict_psi_density(const FieldScenario& sc, const CharacterFn& psi, const SetExprPtr& s) {
  if (psi.group != sc.galois_k())
    throw Error(ErrorCode::GroupMismatch, "psi must be a function on Gal(K/Q)");
  return psi_density_predict(psi, characteristic_function(sc, s));
}

Rational classical_dirichlet_density(const FieldScenario& sc, const SetExprPtr& s) {
  const auto& g = sc.galois_l();
  const auto& h = sc.h();
  // H as a group in its own right: elements are ids of G, multiplied in G.
  std::vector<Code> codes;
  for (ElemId a : h) codes.push_back(Code{static_cast<std::int32_t>(a)});
  auto op = [g](const Code& a, const Code& b) {
    return Code{static_cast<std::int32_t>(g->mul(static_cast<ElemId>(a[0]), static_cast<ElemId>(b[0])))};
  };
  auto fmt = [g](const Code& a) { return g->format(static_cast<ElemId>(a[0])); };
  auto hg = FiniteGroup::from_elements("Gal(L/K)", std::move(codes), op, fmt);
  Rational sum = 0;
  for (const auto& cls : conjugacy_classes(*hg)) {
    const auto y = static_cast<ElemId>(hg->code(cls.front())[0]);
    auto in = s->decide(sc, sc.h_class_of(y));
    if (!in) throw Error(ErrorCode::NotPredictable, s->to_string() + " is not decided by Frobenius classes");
    if (*in) sum += Rational(BigInt(cls.size()), BigInt(hg->size()));
  }
  return sum;
}

InflationSides inflation_sides(const FieldScenario& sc, const CharacterFn& psi, const SetExprPtr& s) {
  const auto& g = *sc.galois_l();
  const auto& pi = sc.projection();
  std::vector<Rational> chi_l(g.size());
  for (ElemId y = 0; y < g.size(); ++y) {
    const auto c = sc.h_class_of(y);
    const auto& cls = sc.h_classes()[c];
    auto in = s->decide(sc, c);
    if (!in) throw Error(ErrorCode::NotPredictable, s->to_string() + " is not decided by Frobenius classes");
    const Rational on_class = *in ? prop32_density(pi, cls.base, cls.elements) : Rational(0);
    chi_l[y] = cor34_pullback(on_class, cls.elements.size(), sc.h().size());
  }
  const auto lifted_psi = inflate(psi, pi);
  InflationSides out{inner_product(lifted_psi, CharacterFn::from_rational(sc.galois_l(), std::move(chi_l))),
                     predict_psi_density(sc, psi, s)};
  return out;
}

bool inflation_identity_check(const FieldScenario& sc, const CharacterFn& psi, const SetExprPtr& s) {
  const auto sides = inflation_sides(sc, psi, s);
  if (sides.lifted.exact && sides.base.exact) return *sides.lifted.exact == *sides.base.exact;
  return std::abs(sides.lifted.value - sides.base.value) <= 1e-12;
}

Rational sect56_density(const GroupMorphism& m_to_delta, const GroupPtr& tower_group, ElemId sigma, ElemId x) {
  const GroupPtr& delta = m_to_delta.target();
  const auto& gm = *m_to_delta.source();
  gm.require(sigma);
  tower_group->require(x);
  const auto top = direct_product(delta, tower_group);
  const ElemId sigma_bar = m_to_delta(sigma);
  const auto lifted = pair_element(top, sigma_bar, x);
  if (!lifted) throw Error(ErrorCode::InvariantBreach, "(sigma-bar, x) missing from Delta x H_i");
  const Rational via_fibered = cor35_chebotarev_pullback(top.first, m_to_delta, *lifted, sigma);
  const Rational closed_form(BigInt(conjugacy_class(gm, sigma).size()),
                             BigInt(gm.size() / delta->size()) *
                                 BigInt(conjugacy_class(*delta, sigma_bar).size()));
  if (via_fibered != closed_form)
    throw Error(ErrorCode::InvariantBreach, "fibered-product density disagrees with the split formula");
  return via_fibered;
}

int character_order_mod_p(std::int64_t chi_generator, std::int64_t p) {
  std::int64_t c = ((chi_generator % p) + p) % p;
  if (c == 0) throw Error(ErrorCode::NotHomomorphism, "chi(1) must be a unit");
  std::int64_t acc = c;
  int k = 1;
  while (acc != 1) {
    acc = acc * c % p;
    ++k;
  }
  return k;
}

int cyclic_character_order(int d, int k) {
  const int r = ((k % d) + d) % d;
  return d / std::gcd(r, d);
}

bool lemma_normteiler_verify(int d, std::int64_t p, std::int64_t chi_generator, int level, int psi_index) {
  const auto tower = semidirect_tower(d, p, chi_generator, level);
  const int ord_chi = character_order_mod_p(chi_generator, p);
  const int ord_psi = cyclic_character_order(d, psi_index);
  if (ord_psi >= ord_chi)
    throw Error(ErrorCode::HypothesisViolated,
                "ord(psi) = " + std::to_string(ord_psi) + " is not below ord(chi) = " + std::to_string(ord_chi));
  ElementSet lifted_kernel;
  ElementSet full_preimage;
  for (ElemId a = 0; a < tower.base->size(); ++a) {
    const long long rep = tower.base->code(a)[0];
    if ((static_cast<long long>(psi_index) * rep) % d != 0) continue;
    lifted_kernel.push_back(tower.section[a]);
    for (ElemId b : tower.projection.preimage(a)) full_preimage.push_back(b);
  }
  std::sort(lifted_kernel.begin(), lifted_kernel.end());
  std::sort(full_preimage.begin(), full_preimage.end());
  return normal_closure(*tower.group, lifted_kernel) == full_preimage;
}

}  // namespace frobdens
