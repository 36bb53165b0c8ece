#include "frobdens/group.hpp"

#include "helpers.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

using namespace frobdens;
using test::perm;
using test::residue;

TEST_SUITE("group_engine") {
  TEST_CASE("enumerate: S3 from a 3-cycle and a transposition") {
    auto g = permutation_group(3, {parse_cycles("(1 2 3)", 3), parse_cycles("(1 2)", 3)});
    CHECK(g->size() == 6);
    CHECK(g->code(g->identity()) == Code{0, 1, 2});
    CHECK_FALSE(g->is_abelian());
  }

  TEST_CASE("enumerate: no generators gives the trivial group") {
    CHECK(permutation_group(4, {})->size() == 1);
    CHECK(units_group(15, {})->size() == 1);
  }

  TEST_CASE("enumerate: units of Z/15 from 2 and 11") {
    auto g = units_group(15, {2, 11});
    CHECK(g->size() == 8);
    std::set<int> seen;
    for (ElemId a = 0; a < g->size(); ++a) seen.insert(g->code(a)[0]);
    std::set<int> phi;
    for (int r = 1; r < 15; ++r)
      if (std::gcd(r, 15) == 1) phi.insert(r);
    CHECK(seen == phi);
  }

  TEST_CASE("enumerate: BFS order is deterministic") {
    auto a = permutation_group(4, {parse_cycles("(1 2 3 4)", 4), parse_cycles("(1 2)", 4)});
    auto b = permutation_group(4, {parse_cycles("(1 2 3 4)", 4), parse_cycles("(1 2)", 4)});
    REQUIRE(a->size() == b->size());
    for (ElemId e = 0; e < a->size(); ++e) CHECK(a->code(e) == b->code(e));
  }

  TEST_CASE("enumerate: malformed generators and the size cap") {
    CHECK_ERROR_CODE(permutation_group(3, {Code{0, 0, 1}}), ErrorCode::MalformedGenerator);
    CHECK_ERROR_CODE(permutation_group(3, {Code{0, 1}}), ErrorCode::MalformedGenerator);
    CHECK_ERROR_CODE(units_group(15, {3}), ErrorCode::MalformedGenerator);
    CHECK_ERROR_CODE(parse_cycles("(1 4)", 3), ErrorCode::MalformedGenerator);
    CHECK_ERROR_CODE(parse_cycles("(1 2", 3), ErrorCode::MalformedGenerator);
    CHECK_ERROR_CODE(symmetric_group(8), ErrorCode::SizeCapExceeded);
    CHECK(symmetric_group(7)->size() == 5040);
  }

  TEST_CASE("cycle notation round trip") {
    CHECK(parse_cycles("e", 3) == Code{0, 1, 2});
    CHECK(parse_cycles("(1 2 3)", 3) == Code{1, 2, 0});
    CHECK(format_cycles(parse_cycles("(1 3)(2 4)", 4)) == "(1 3)(2 4)");
    CHECK(cycle_type(parse_cycles("(1 2)(3 4 5)", 6)) == std::vector<int>{1, 2, 3});
  }

  TEST_CASE("conjugacy and centralizers in S3") {
    auto g = symmetric_group(3);
    const ElemId e = g->identity();
    CHECK(conjugacy_class(*g, e) == ElementSet{e});
    CHECK(centralizer(*g, e).size() == 6);
    const ElemId t = perm(g, "(1 2)", 3);
    CHECK(conjugacy_class(*g, t).size() == 3);
    CHECK(centralizer(*g, t).size() == 2);
    CHECK(element_order(*g, t) == 2);
    CHECK(element_order(*g, perm(g, "(1 2 3)", 3)) == 3);
    CHECK_ERROR_CODE(conjugacy_class(*g, 99), ErrorCode::ElementNotInGroup);
    CHECK_ERROR_CODE(centralizer(*g, 6), ErrorCode::ElementNotInGroup);
  }

  TEST_CASE("conjugacy classes in an abelian group are singletons") {
    auto g = full_units_group(15);
    for (ElemId a = 0; a < g->size(); ++a) CHECK(conjugacy_class(*g, a) == ElementSet{a});
  }

  TEST_CASE("class sizes and centralizers agree with brute force on S4") {
    auto g = symmetric_group(4);
    const auto all = oracle::all_perms(4);
    for (ElemId a = 0; a < g->size(); ++a) {
      const oracle::Perm p(g->code(a).begin(), g->code(a).end());
      CHECK(centralizer(*g, a).size() == oracle::centralizer_size(all, p));
    }
  }

  TEST_CASE("quotients") {
    auto g = symmetric_group(3);
    auto a3 = alternating_group(3);
    ElementSet h;
    for (ElemId a = 0; a < a3->size(); ++a) h.push_back(g->index_of(a3->code(a)));
    std::sort(h.begin(), h.end());
    auto q = quotient(g, h);
    CHECK(q.group->size() == 2);
    CHECK(q.projection.kernel() == h);

    auto same = quotient(g, {g->identity()});
    CHECK(same.group->size() == 6);
    CHECK(same.projection.kernel() == ElementSet{g->identity()});

    ElementSet all(g->size());
    std::iota(all.begin(), all.end(), 0);
    CHECK(quotient(g, all).group->size() == 1);

    const ElemId t = perm(g, "(1 2)", 3);
    CHECK_ERROR_CODE(quotient(g, ElementSet{std::min(g->identity(), t), std::max(g->identity(), t)}), ErrorCode::NotNormal);
  }

  TEST_CASE("fiber H-classes in S3 over A3") {
    auto g = symmetric_group(3);
    std::vector<ElemId> gens{perm(g, "(1 2 3)", 3)};
    auto q = quotient(g, subgroup_generated(*g, gens));
    const ElemId t = perm(g, "(1 2)", 3);
    auto odd = fiber_h_classes(q.projection, q.projection(t));
    REQUIRE(odd.classes.size() == 1);
    CHECK(odd.classes[0].size() == 3);
    auto even = fiber_h_classes(q.projection, q.group->identity());
    CHECK(even.classes.size() == 3);
    for (const auto& c : even.classes) CHECK(c.size() == 1);
    CHECK_ERROR_CODE(fiber_h_classes(q.projection, 7), ErrorCode::ElementNotInGroup);
  }

  TEST_CASE("fiber classes are singletons when H is trivial") {
    auto g = symmetric_group(3);
    auto q = quotient(g, {g->identity()});
    for (ElemId x = 0; x < q.group->size(); ++x) {
      auto part = fiber_h_classes(q.projection, x);
      REQUIRE(part.classes.size() == 1);
      CHECK(part.classes[0].size() == 1);
    }
  }

  TEST_CASE("fibered products") {
    auto u5 = full_units_group(5);
    auto u3 = full_units_group(3);
    auto dp = direct_product(u5, u3);
    CHECK(dp.group->size() == 8);
    CHECK(dp.group->is_abelian());
    // Same structure as (Z/15)^x: exponent 4, three elements of order 2.
    std::size_t order2 = 0, order4 = 0;
    for (ElemId e = 0; e < dp.group->size(); ++e) {
      order2 += dp.group->order(e) == 2;
      order4 += dp.group->order(e) == 4;
    }
    CHECK(order2 == 3);
    CHECK(order4 == 4);

    auto z2 = cyclic_group(2);
    std::vector<ElemId> id{0, 1};
    GroupMorphism ident(z2, z2, id);
    auto diag = fibered_product(ident, ident);
    CHECK(diag.group->size() == 2);

    auto other = cyclic_group(2);
    GroupMorphism to_other(z2, other, id);
    CHECK_ERROR_CODE(fibered_product(ident, to_other), ErrorCode::TargetMismatch);
  }

  TEST_CASE("semidirect towers") {
    auto t = semidirect_tower(2, 3, 2, 1);
    CHECK(t.group->size() == 6);
    CHECK_FALSE(t.group->is_abelian());
    // S3 has three elements of order 2 and two of order 3.
    std::map<std::size_t, int> orders;
    for (ElemId e = 0; e < t.group->size(); ++e) ++orders[t.group->order(e)];
    CHECK(orders[2] == 3);
    CHECK(orders[3] == 2);

    auto trivial_chi = semidirect_tower(2, 3, 1, 2);
    CHECK(trivial_chi.group->size() == 18);
    CHECK(trivial_chi.group->is_abelian());

    auto level0 = semidirect_tower(4, 5, 2, 0);
    CHECK(level0.group->size() == 4);

    CHECK_ERROR_CODE(semidirect_tower(2, 5, 2, 1), ErrorCode::NotHomomorphism);
    CHECK_ERROR_CODE(semidirect_tower(6, 7, 3, 4), ErrorCode::SizeCapExceeded);
  }

  TEST_CASE("normal closures") {
    auto g = symmetric_group(3);
    CHECK(normal_closure(*g, {g->identity()}) == ElementSet{g->identity()});
    CHECK(normal_closure(*g, {perm(g, "(1 2)", 3)}).size() == 6);
    auto u = full_units_group(15);
    const ElemId four = residue(u, 4);
    CHECK(normal_closure(*u, {four}) == subgroup_generated(*u, {four}));
    CHECK_ERROR_CODE(normal_closure(*g, {42}), ErrorCode::ElementNotInGroup);
  }

  TEST_CASE("inner products and special characters") {
    auto z2 = cyclic_group(2);
    auto one = trivial_character(z2);
    CHECK(*inner_product(one, one).exact == 1);
    auto reg = regular_character(z2);
    REQUIRE(reg.exact);
    CHECK((*reg.exact)[0] == 2);
    CHECK((*reg.exact)[1] == 0);
    CHECK(*inner_product(reg, one).exact == 1);
    auto s3 = symmetric_group(3);
    auto pm = point_mass_character(s3, perm(s3, "(1 3)", 3));
    CHECK(*inner_product(pm, trivial_character(s3)).exact == 1);
    CHECK(point_mass_character(s3, s3->identity()).exact == regular_character(s3).exact);
    CHECK_ERROR_CODE(inner_product(reg, trivial_character(s3)), ErrorCode::GroupMismatch);
    CHECK_ERROR_CODE(point_mass_character(s3, 17), ErrorCode::ElementNotInGroup);
  }

  TEST_CASE("density characters") {
    auto z2 = cyclic_group(2);
    CHECK(is_density_character(trivial_character(z2)));
    CHECK(is_density_character(regular_character(z2)));
    CHECK(is_density_character(point_mass_character(z2, 1)));
    CHECK_FALSE(is_density_character(CharacterFn::from_rational(z2, {test::q(2), test::q(2)})));
    CHECK_FALSE(is_density_character(CharacterFn::from_rational(z2, {test::q(3), test::q(-1)})));
    CHECK_FALSE(is_density_character(cyclic_character(z2, 1)));
  }

  TEST_CASE("morphisms reject non-homomorphisms") {
    auto z4 = cyclic_group(4);
    auto z2 = cyclic_group(2);
    CHECK_ERROR_CODE(GroupMorphism(z4, z2, {0, 1, 1, 0}), ErrorCode::NotHomomorphism);
    GroupMorphism mod2(z4, z2, {0, 1, 0, 1});
    CHECK(mod2.is_surjective());
    CHECK(mod2.kernel().size() == 2);
  }
}
