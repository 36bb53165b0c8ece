#include "frobdens/field.hpp"

#include "frobdens/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace frobdens {

struct FieldScenario::Impl {
  FieldKind kind{};
  GroupPtr g;
  ElementSet h;
  GroupPtr gk;
  std::optional<GroupMorphism> pi;
  std::vector<HClass> h_classes;
  std::vector<std::uint32_t> h_class_of;
  std::vector<std::uint32_t> g_class_of;

  // abelian
  std::int64_t m = 0;
  std::vector<std::int32_t> residue_to_g;
  std::vector<std::vector<std::int64_t>> residues;

  // S_n
  IntPoly f;
  BigInt disc;
  int n = 0;
  /// Per G-conjugacy class: the record template shared by all primes with that Frobenius class.
  std::map<std::vector<int>, PrimeRecord> by_cycle_type;

  void index_classes() {
    const auto& pi_ref = *pi;
    h_class_of.assign(g->size(), 0);
    for (ElemId x = 0; x < gk->size(); ++x) {
      for (auto& cls : fiber_h_classes(pi_ref, x).classes) {
        for (ElemId y : cls) h_class_of[y] = static_cast<std::uint32_t>(h_classes.size());
        h_classes.push_back(HClass{x, std::move(cls)});
      }
    }
    g_class_of.assign(g->size(), 0);
    std::uint32_t id = 0;
    for (const auto& cls : conjugacy_classes(*g)) {
      for (ElemId y : cls) g_class_of[y] = id;
      ++id;
    }
  }

  /// Splitting of p given a Frobenius y in G: primes of K over p correspond to
  /// cosets g H<y>, and the prime g H<y> carries the H-class of g y g^{-1}.
  PrimeRecord splitting_for(ElemId y) const {
    PrimeRecord r;
    r.frob = y;
    r.frob_k = (*pi)(y);
    r.d = static_cast<int>(gk->order(r.frob_k));
    r.g = static_cast<int>(gk->size()) / r.d;
    const std::size_t coset_size = h.size() * static_cast<std::size_t>(r.d);
    std::map<std::uint32_t, std::uint32_t> hits;
    for (ElemId t = 0; t < g->size(); ++t) ++hits[h_class_of[g->mul(g->mul(t, y), g->inverse(t))]];
    for (auto [cls, cnt] : hits) {
      if (cnt % coset_size != 0)
        throw Error(ErrorCode::InvariantBreach, "fiber count is not a multiple of |H<y>|");
      r.fibers.push_back(FiberCount{cls, static_cast<std::uint32_t>(cnt / coset_size)});
    }
    return r;
  }
};

namespace {

bool divides_big(const BigInt& n, std::uint64_t p) { return n % p == 0; }

}  // namespace

BigInt PrimeRecord::norm() const {
  BigInt out = 1;
  for (int k = 0; k < d; ++k) out *= p;
  return out;
}

FieldScenario FieldScenario::abelian(std::int64_t m, const std::vector<std::int64_t>& k_kernel,
                                     const std::optional<std::vector<std::int64_t>>& l_kernel) {
  if (m < 3 || m > kMaxConductor)
    throw Error(ErrorCode::BadInput, "conductor must lie in [3, 10^6]");
  auto impl = std::make_shared<Impl>();
  impl->kind = FieldKind::Abelian;
  impl->m = m;
  auto units = full_units_group(m);

  auto to_ids = [&](const std::vector<std::int64_t>& gens) {
    std::vector<ElemId> ids;
    for (auto r : gens) {
      const std::int64_t red = ((r % m) + m) % m;
      if (std::gcd(red, m) != 1)
        throw Error(ErrorCode::MalformedGenerator, std::to_string(r) + " is not a unit mod " + std::to_string(m));
      ids.push_back(units->index_of(Code{static_cast<std::int32_t>(red)}));
    }
    return subgroup_generated(*units, ids);
  };
  const ElementSet u = to_ids(k_kernel);
  const ElementSet v = l_kernel ? to_ids(*l_kernel) : u;
  if (!std::includes(u.begin(), u.end(), v.begin(), v.end()))
    throw Error(ErrorCode::BadInput, "the kernel defining L must lie inside the kernel defining K");

  auto to_g = quotient(units, v);
  impl->g = to_g.group;
  ElementSet h;
  for (ElemId a : u) h.push_back(to_g.projection(a));
  std::sort(h.begin(), h.end());
  h.erase(std::unique(h.begin(), h.end()), h.end());
  impl->h = h;
  auto to_k = quotient(impl->g, h);
  impl->gk = to_k.group;
  impl->pi = to_k.projection;

  impl->residue_to_g.assign(static_cast<std::size_t>(m), -1);
  impl->residues.assign(impl->g->size(), {});
  for (ElemId a = 0; a < units->size(); ++a) {
    const std::int64_t r = units->code(a)[0];
    const ElemId y = to_g.projection(a);
    impl->residue_to_g[static_cast<std::size_t>(r)] = static_cast<std::int32_t>(y);
    impl->residues[y].push_back(r);
  }
  for (auto& rs : impl->residues) std::sort(rs.begin(), rs.end());
  impl->index_classes();
  return FieldScenario(impl);
}

FieldScenario FieldScenario::sn_splitting(const IntPoly& f, const std::vector<Code>& h_generators) {
  const int n = degree(f);
  if (!is_monic(f)) throw Error(ErrorCode::BadInput, "polynomial must be monic");
  if (n < 2 || n > kMaxPolyDegree) throw Error(ErrorCode::BadInput, "polynomial degree must lie in [2, 7]");
  auto impl = std::make_shared<Impl>();
  impl->kind = FieldKind::SnSplitting;
  impl->f = IntPoly(f.begin(), f.begin() + n + 1);
  impl->n = n;
  impl->disc = discriminant(impl->f);
  if (impl->disc == 0) throw Error(ErrorCode::BadInput, "polynomial is not squarefree");

  impl->g = symmetric_group(n);
  std::vector<ElemId> gens;
  for (const auto& c : h_generators) gens.push_back(impl->g->index_of(c));
  impl->h = subgroup_generated(*impl->g, gens);
  if (!is_normal(*impl->g, impl->h)) throw Error(ErrorCode::NotNormal, "H is not normal in S_n");
  auto to_k = quotient(impl->g, impl->h);
  impl->gk = to_k.group;
  impl->pi = to_k.projection;
  impl->index_classes();
  for (const auto& cls : conjugacy_classes(*impl->g)) {
    const ElemId y = cls.front();
    auto rec = impl->splitting_for(y);
    rec.cycle_type = cycle_type(impl->g->code(y));
    impl->by_cycle_type.emplace(rec.cycle_type, std::move(rec));
  }
  return FieldScenario(impl);
}

FieldScenario FieldScenario::sn_splitting(const IntPoly& f, const std::string& h_name) {
  const int n = degree(f);
  if (n < 2 || n > kMaxPolyDegree) throw Error(ErrorCode::BadInput, "polynomial degree must lie in [2, 7]");
  std::vector<Code> gens;
  if (h_name == "trivial") {
  } else if (h_name == "alternating") {
    for (int k = 3; k <= n; ++k) gens.push_back(parse_cycles("(1 2 " + std::to_string(k) + ")", n));
  } else if (h_name == "full") {
    for (int k = 2; k <= n; ++k) gens.push_back(parse_cycles("(1 " + std::to_string(k) + ")", n));
  } else if (h_name == "klein4") {
    if (n != 4) throw Error(ErrorCode::BadInput, "klein4 is only normal in S_4");
    gens.push_back(parse_cycles("(1 2)(3 4)", 4));
    gens.push_back(parse_cycles("(1 3)(2 4)", 4));
  } else {
    throw Error(ErrorCode::BadInput, "unknown normal subgroup '" + h_name + "'");
  }
  return sn_splitting(f, gens);
}

FieldKind FieldScenario::kind() const { return impl_->kind; }

std::string FieldScenario::describe() const {
  if (impl_->kind == FieldKind::Abelian) {
    return "abelian m=" + std::to_string(impl_->m) + " [L:Q]=" + std::to_string(impl_->g->size()) +
           " [K:Q]=" + std::to_string(impl_->gk->size());
  }
  std::string f;
  for (int k = impl_->n; k >= 0; --k) {
    const auto c = impl_->f[k];
    if (c == 0) continue;
    if (!f.empty()) f += c < 0 ? " - " : " + ";
    else if (c < 0) f += "-";
    const auto a = c < 0 ? -c : c;
    if (a != 1 || k == 0) f += std::to_string(a);
    if (k > 0) f += k == 1 ? "x" : "x^" + std::to_string(k);
  }
  return "S_" + std::to_string(impl_->n) + " splitting field of " + f + " [K:Q]=" +
         std::to_string(impl_->gk->size());
}

const GroupPtr& FieldScenario::galois_l() const { return impl_->g; }
const ElementSet& FieldScenario::h() const { return impl_->h; }
const GroupPtr& FieldScenario::galois_k() const { return impl_->gk; }
const GroupMorphism& FieldScenario::projection() const { return *impl_->pi; }
std::size_t FieldScenario::degree_k() const { return impl_->gk->size(); }
const std::vector<HClass>& FieldScenario::h_classes() const { return impl_->h_classes; }
std::uint32_t FieldScenario::h_class_of(ElemId y) const { return impl_->h_class_of.at(y); }
std::uint32_t FieldScenario::g_class_of(ElemId y) const { return impl_->g_class_of.at(y); }

bool FieldScenario::is_ramified(std::uint64_t p) const {
  if (impl_->kind == FieldKind::Abelian) return impl_->m % static_cast<std::int64_t>(p) == 0;
  return divides_big(impl_->disc, p);
}

PrimeRecord FieldScenario::record(std::uint64_t p) const {
  if (is_ramified(p)) throw Error(ErrorCode::Ramified, std::to_string(p) + " ramifies");
  if (impl_->kind == FieldKind::Abelian) {
    const auto r = static_cast<std::size_t>(p % static_cast<std::uint64_t>(impl_->m));
    const ElemId y = static_cast<ElemId>(impl_->residue_to_g[r]);
    PrimeRecord rec;
    rec.p = p;
    rec.frob = y;
    rec.frob_k = (*impl_->pi)(y);
    rec.d = static_cast<int>(impl_->gk->order(rec.frob_k));
    rec.g = static_cast<int>(impl_->gk->size()) / rec.d;
    // Abelian: every prime of K over p has the same Frobenius.
    rec.fibers.push_back(FiberCount{impl_->h_class_of[y], static_cast<std::uint32_t>(rec.g)});
    return rec;
  }
  auto ct = factor_degrees_mod_p(impl_->f, p);
  auto it = impl_->by_cycle_type.find(ct);
  if (it == impl_->by_cycle_type.end())
    throw Error(ErrorCode::InvariantBreach, "cycle type does not match any class of S_n");
  PrimeRecord rec = it->second;
  rec.p = p;
  return rec;
}

PrimeRecord FieldScenario::record_or_flag(std::uint64_t p) const {
  if (is_ramified(p)) {
    PrimeRecord rec;
    rec.p = p;
    rec.ramified = true;
    return rec;
  }
  return record(p);
}

std::int64_t FieldScenario::conductor() const {
  if (impl_->kind != FieldKind::Abelian) throw Error(ErrorCode::BadInput, "not an abelian field");
  return impl_->m;
}

ElemId FieldScenario::element_of_residue(std::int64_t r) const {
  if (impl_->kind != FieldKind::Abelian) throw Error(ErrorCode::BadInput, "not an abelian field");
  const std::int64_t red = ((r % impl_->m) + impl_->m) % impl_->m;
  const auto y = impl_->residue_to_g[static_cast<std::size_t>(red)];
  if (y < 0)
    throw Error(ErrorCode::ElementNotInGroup, std::to_string(r) + " is not a unit mod " + std::to_string(impl_->m));
  return static_cast<ElemId>(y);
}

const std::vector<std::int64_t>& FieldScenario::residues_of(ElemId y) const {
  if (impl_->kind != FieldKind::Abelian) throw Error(ErrorCode::BadInput, "not an abelian field");
  return impl_->residues.at(y);
}

const IntPoly& FieldScenario::polynomial() const {
  if (impl_->kind != FieldKind::SnSplitting) throw Error(ErrorCode::BadInput, "not an S_n field");
  return impl_->f;
}

const BigInt& FieldScenario::poly_discriminant() const {
  if (impl_->kind != FieldKind::SnSplitting) throw Error(ErrorCode::BadInput, "not an S_n field");
  return impl_->disc;
}

int FieldScenario::poly_degree() const { return impl_->n; }

std::int64_t frobenius_abelian(std::int64_t m, std::uint64_t p) {
  if (m < 1) throw Error(ErrorCode::BadInput, "modulus must be positive");
  if (m % static_cast<std::int64_t>(p) == 0)
    throw Error(ErrorCode::Ramified, std::to_string(p) + " divides " + std::to_string(m));
  return static_cast<std::int64_t>(p % static_cast<std::uint64_t>(m));
}

PrimeRecord splitting_data_abelian(const FieldScenario& scenario, std::uint64_t p) {
  if (scenario.kind() != FieldKind::Abelian) throw Error(ErrorCode::BadInput, "not an abelian field");
  return scenario.record(p);
}

std::vector<int> cycle_type_sn(const IntPoly& f, std::uint64_t p) {
  if (divides_big(discriminant(f), p))
    throw Error(ErrorCode::Ramified, std::to_string(p) + " divides disc(f)");
  return factor_degrees_mod_p(f, p);
}

Code permutation_with_cycle_type(const std::vector<int>& cycle_type, int n) {
  if (std::accumulate(cycle_type.begin(), cycle_type.end(), 0) != n ||
      std::any_of(cycle_type.begin(), cycle_type.end(), [](int c) { return c < 1; }))
    throw Error(ErrorCode::DegreeMismatch, "cycle type does not partition n");
  Code perm(n);
  int start = 0;
  for (int len : cycle_type) {
    for (int k = 0; k < len; ++k) perm[start + k] = start + (k + 1) % len;
    start += len;
  }
  return perm;
}

ElementSet frobenius_class_sn(const FiniteGroup& sn, const std::vector<int>& cycle_type) {
  const int n = static_cast<int>(sn.code(sn.identity()).size());
  return conjugacy_class(sn, sn.index_of(permutation_with_cycle_type(cycle_type, n)));
}

ElementSet frobenius_class_sn(const std::vector<int>& cycle_type, int n) {
  if (std::accumulate(cycle_type.begin(), cycle_type.end(), 0) != n)
    throw Error(ErrorCode::DegreeMismatch, "cycle type does not partition n");
  return frobenius_class_sn(*symmetric_group(n), cycle_type);
}

}  // namespace frobdens
