#include "frobdens/density.hpp"
#include "frobdens/group.hpp"

#include "helpers.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace frobdens;
using test::q;

namespace {

constexpr std::uint32_t kSeed = 20240611;

oracle::Perm as_perm(const Code& c) { return oracle::Perm(c.begin(), c.end()); }

std::vector<oracle::Perm> perms_of(const FiniteGroup& g, const ElementSet& s) {
  std::vector<oracle::Perm> out;
  for (ElemId a : s) out.push_back(as_perm(g.code(a)));
  return out;
}

ElementSet all_of(const FiniteGroup& g) {
  ElementSet s(g.size());
  std::iota(s.begin(), s.end(), 0);
  return s;
}

Code random_perm(std::mt19937& rng, int n) {
  Code c(n);
  std::iota(c.begin(), c.end(), 0);
  std::shuffle(c.begin(), c.end(), rng);
  return c;
}

GroupPtr random_perm_group(std::mt19937& rng) {
  const int n = std::uniform_int_distribution<int>(3, 6)(rng);
  const int gens = std::uniform_int_distribution<int>(1, 2)(rng);
  std::vector<Code> g;
  for (int i = 0; i < gens; ++i) g.push_back(random_perm(rng, n));
  return permutation_group(n, g);
}

std::vector<std::int64_t> units_mod(std::int64_t m) {
  std::vector<std::int64_t> out;
  for (std::int64_t r = 1; r < m; ++r)
    if (std::gcd(r, m) == 1) out.push_back(r);
  return out;
}

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("class equation and centralizers") {
    std::mt19937 rng(kSeed);
    for (int trial = 0; trial < 40; ++trial) {
      const auto g = random_perm_group(rng);
      const auto classes = conjugacy_classes(*g);
      std::size_t total = 0;
      const auto perms = perms_of(*g, all_of(*g));
      for (const auto& cls : classes) {
        total += cls.size();
        CHECK(g->size() % cls.size() == 0);
        CHECK(cls.size() * centralizer(*g, cls.front()).size() == g->size());
        CHECK(centralizer(*g, cls.front()).size() == oracle::centralizer_size(perms, as_perm(g->code(cls.front()))));
      }
      CHECK(total == g->size());
      CHECK(classes.size() == oracle::conjugation_orbits(perms, perms));
    }
  }

  TEST_CASE("fiber classes match an orbit count and their densities sum to one") {
    std::mt19937 rng(kSeed + 1);
    for (int trial = 0; trial < 30; ++trial) {
      const auto g = random_perm_group(rng);
      const ElemId seed = std::uniform_int_distribution<ElemId>(0, static_cast<ElemId>(g->size() - 1))(rng);
      const auto h = normal_closure(*g, {seed});
      CHECK(is_normal(*g, h));
      const auto quo = quotient(g, h);
      const auto h_perms = perms_of(*g, h);
      for (ElemId x = 0; x < quo.group->size(); ++x) {
        const auto part = fiber_h_classes(quo.projection, x);
        const auto fiber = quo.projection.preimage(x);
        CHECK(part.classes.size() == oracle::conjugation_orbits(h_perms, perms_of(*g, fiber)));
        Rational sum = 0;
        std::size_t covered = 0;
        for (const auto& cls : part.classes) {
          const auto delta = prop32_density(quo.projection, x, cls);
          sum += delta;
          covered += cls.size();
          CHECK(cor34_pullback(delta, cls.size(), h.size()) == 1);
          const ElemId y = cls.front();
          const auto d = static_cast<long long>(quo.group->order(x));
          const auto z_h = oracle::centralizer_size(h_perms, as_perm(g->code(y)));
          const auto z_g = oracle::centralizer_size(perms_of(*g, all_of(*g)), as_perm(g->code(y)));
          const auto y_d_order = g->order(y) / static_cast<std::size_t>(d);
          CHECK(gamma_constant(quo.projection, y) == q(static_cast<long long>(z_h), static_cast<long long>(y_d_order)));
          CHECK(beta_constant(quo.projection, y) == q(static_cast<long long>(z_g), d * static_cast<long long>(z_h)));
        }
        CHECK(sum == 1);
        CHECK(covered == fiber.size());
      }
    }
  }

  TEST_CASE("fibered products have the expected size") {
    std::mt19937 rng(kSeed + 2);
    for (int trial = 0; trial < 40; ++trial) {
      const int c = std::uniform_int_distribution<int>(1, 6)(rng);
      const int a = c * std::uniform_int_distribution<int>(1, 5)(rng);
      const int b = c * std::uniform_int_distribution<int>(1, 5)(rng);
      auto ga = cyclic_group(a), gb = cyclic_group(b), gc = cyclic_group(c);
      const auto units = c > 1 ? units_mod(c) : std::vector<std::int64_t>{0};
      const auto u = units[std::uniform_int_distribution<std::size_t>(0, units.size() - 1)(rng)];
      std::vector<ElemId> ia(a), ib(b);
      for (int r = 0; r < a; ++r) ia[r] = test::residue(gc, r % c);
      for (int r = 0; r < b; ++r) ib[r] = test::residue(gc, static_cast<int>(r * u % c));
      const GroupMorphism pa(ga, gc, ia), pb(gb, gc, ib);
      const auto fp = fibered_product(pa, pb);
      std::size_t expected = 0;
      for (ElemId z = 0; z < gc->size(); ++z) expected += pa.preimage(z).size() * pb.preimage(z).size();
      CHECK(fp.group->size() == expected);
      CHECK(fp.group->size() * static_cast<std::size_t>(c) == static_cast<std::size_t>(a * b));
      for (ElemId e = 0; e < fp.group->size(); ++e) CHECK(pa(fp.first(e)) == pb(fp.second(e)));
      const auto dp = direct_product(ga, gb);
      CHECK(dp.group->size() == static_cast<std::size_t>(a * b));
    }
  }

  TEST_CASE("semidirect towers") {
    struct Shape {
      int d;
      std::int64_t p, chi;
    };
    for (const Shape sh : {Shape{2, 3, 2}, Shape{2, 5, 4}, Shape{4, 5, 2}, Shape{3, 7, 2}, Shape{6, 7, 3}}) {
      for (int level = 1; level <= 2; ++level) {
        const auto t = semidirect_tower(sh.d, sh.p, sh.chi, level);
        const auto& g = *t.group;
        std::size_t pi = 1;
        for (int i = 0; i < level; ++i) pi *= static_cast<std::size_t>(sh.p);
        CHECK(g.size() == static_cast<std::size_t>(sh.d) * pi);
        for (int a = 0; a < sh.d; ++a) {
          CHECK(t.projection(t.section[a]) == static_cast<ElemId>(a));
          for (int b = 0; b < sh.d; ++b)
            CHECK(g.mul(t.section[a], t.section[b]) == t.section[(a + b) % sh.d]);
        }
        const auto k = t.projection.kernel();
        CHECK(k.size() == pi);
        CHECK(is_normal(g, k));
        for (ElemId u : k)
          for (ElemId v : k) CHECK(g.mul(u, v) == g.mul(v, u));
        if (level == 2) {
          const auto lower = semidirect_tower(sh.d, sh.p, sh.chi, 1);
          CHECK(lower.group->size() * static_cast<std::size_t>(sh.p) == g.size());
        }
      }
    }
  }

  TEST_CASE("inner products are Hermitian and linear") {
    std::mt19937 rng(kSeed + 3);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    auto g = symmetric_group(4);
    auto random_fn = [&]() {
      std::vector<std::complex<double>> v(g->size());
      for (auto& z : v) z = {coord(rng), coord(rng)};
      return CharacterFn::from_complex(g, v);
    };
    for (int trial = 0; trial < 25; ++trial) {
      const auto f1 = random_fn(), f2 = random_fn(), psi = random_fn();
      const std::complex<double> a{coord(rng), coord(rng)};
      std::vector<std::complex<double>> mix(g->size());
      for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = a * f1.values[i] + f2.values[i];
      const auto lhs = inner_product(CharacterFn::from_complex(g, mix), psi).value;
      const auto rhs = a * inner_product(f1, psi).value + inner_product(f2, psi).value;
      CHECK(std::abs(lhs - rhs) < 1e-12);
      CHECK(std::abs(inner_product(f1, psi).value - std::conj(inner_product(psi, f1).value)) < 1e-12);
    }
    std::vector<Rational> r(g->size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = q(static_cast<long long>(i % 5) - 2, 3);
    const auto phi = CharacterFn::from_rational(g, r);
    const auto ip = inner_product(phi, regular_character(g));
    REQUIRE(ip.exact);
    CHECK(*ip.exact == r[g->identity()]);
    CHECK(is_density_character(regular_character(g)));
    CHECK(is_density_character(trivial_character(g)));
    CHECK_FALSE(is_density_character(phi));
  }

  TEST_CASE("random abelian towers") {
    std::mt19937 rng(kSeed + 4);
    const std::int64_t conductors[] = {7, 9, 15, 16, 20, 21, 24, 35, 36, 40, 45, 60};
    for (int trial = 0; trial < 30; ++trial) {
      const auto m = conductors[std::uniform_int_distribution<int>(0, 11)(rng)];
      const auto units = units_mod(m);
      auto pick = [&]() { return units[std::uniform_int_distribution<std::size_t>(0, units.size() - 1)(rng)]; };
      const std::vector<std::int64_t> u{pick(), pick()};
      const std::vector<std::int64_t> v{u[0] * u[0] % m};
      const auto sc = FieldScenario::abelian(m, u, v);
      CAPTURE(m);
      CAPTURE(u[0]);
      CAPTURE(u[1]);
      const auto gk = sc.galois_k();
      CHECK(gk->size() * sc.h().size() == sc.galois_l()->size());

      // S must be a union of V-cosets to be visible in L.
      std::vector<std::int64_t> residues;
      for (ElemId y = 0; y < sc.galois_l()->size(); ++y)
        if (rng() % 2)
          for (auto r : sc.residues_of(y)) residues.push_back(r);
      const auto s = SetExpr::congruence(m, residues);
      const auto chi = characteristic_function(sc, s);

      for (ElemId x = 0; x < gk->size(); ++x) {
        std::int64_t hit = 0, all = 0;
        for (auto r : units) {
          if (sc.projection()(sc.element_of_residue(r)) != x) continue;
          ++all;
          if (std::find(residues.begin(), residues.end(), r) != residues.end()) ++hit;
        }
        CHECK(chi.at(x) == q(hit, all));
        CHECK(predict_x_density(sc, SetExpr::complement(s), x) == 1 - q(hit, all));
        CHECK(inflation_identity_check(sc, point_mass_character(gk, x), s));
      }
      CHECK(*predict_psi_density(sc, regular_character(gk), s).exact == classical_dirichlet_density(sc, s));
      Rational avg = 0;
      for (const auto& [x, v] : chi) avg += v;
      CHECK(*predict_psi_density(sc, trivial_character(gk), s).exact ==
            avg / Rational(BigInt(gk->size()), BigInt(1)));
    }
  }

  TEST_CASE("S_n towers: regular psi and Chebotarev classes") {
    struct Case {
      IntPoly f;
      const char* h;
    };
    const Case cases[] = {{{-2, 0, 0, 1}, "alternating"}, {{-2, 0, 0, 1}, "trivial"}, {{-2, 0, 0, 1}, "full"},
                          {{-1, -1, 0, 0, 1}, "klein4"},  {{-1, -1, 0, 0, 1}, "alternating"}};
    for (const auto& c : cases) {
      const auto sc = FieldScenario::sn_splitting(c.f, c.h);
      const auto& g = *sc.galois_l();
      for (const auto& cls : conjugacy_classes(g)) {
        const auto s = SetExpr::chebotarev(sc, {cls.front()});
        CHECK(*predict_psi_density(sc, regular_character(sc.galois_k()), s).exact ==
              classical_dirichlet_density(sc, s));
        CHECK(inflation_identity_check(sc, trivial_character(sc.galois_k()), s));
        Rational total = 0;
        for (ElemId x = 0; x < sc.galois_k()->size(); ++x) total += predict_x_density(sc, s, x);
        // Summed over all fibers, the H-classes inside C weigh #C / #H.
        CHECK(total == Rational(BigInt(cls.size()), BigInt(sc.h().size())));
      }
    }
  }
}
