// Copyright 2026 The tropgon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "tropgon/error.hpp"
#include "tropgon/linear_system.hpp"

using namespace tropgon;
using tropgon::testing::fn;
using tropgon::testing::q;

namespace {

ProjPoint pp(std::initializer_list<Rational> xs) { return ProjPoint::from_finite(std::vector<Rational>(xs)); }

}  // namespace

TEST_CASE("generators must lie in L(D)") {
  auto s = testing::seg2();
  CHECK_THROWS_AS(GenSystem(Divisor(s), {fn(s, {{0, {{-1, q(2)}}}})}), Error);
  CHECK_THROWS_AS(GenSystem(Divisor(s), {}), Error);
  CHECK_THROWS_AS(GenSystem(Divisor(s), {PLFunction::minus_infinity(s)}), Error);
  auto ray = make_curve({"A", "inf"}, {{"r", 0, 1, ExtRational::plus_infinity()}});
  CHECK_THROWS_AS(GenSystem(Divisor(ray), {PLFunction::constant(ray, 0)}), Error);
}

TEST_CASE("maximal representation examples") {
  auto s = testing::seg2();
  auto sys = testing::seg2_system(s);
  auto r = maximal_representation(fn(s, {{0, {{-1, q(1)}, {0, q(1)}}}}), sys);
  CHECK(r.exact);
  CHECK(r.coeffs == std::vector<TropScalar>{q(-1), q(0)});
  auto r0 = maximal_representation(sys.generators()[0], sys);
  CHECK(r0.exact);
  CHECK(r0.coeffs[0] == TropScalar(q(0)));
  CHECK_FALSE(maximal_representation(fn(s, {{0, {{-2, q(2)}}}}), sys).exact);
}

TEST_CASE("minimization examples") {
  auto s = testing::seg2();
  GenSystem three(Divisor::point(s, s->vertex_point(0)),
                  {PLFunction::constant(s, 0), fn(s, {{0, {{-1, q(2)}}}}), fn(s, {{0, {{-1, q(1)}, {0, q(1)}}}})});
  auto m = minimize_generators(three);
  REQUIRE(m.size() == 2);
  CHECK(m.generators()[0] == PLFunction::constant(s, 0));
  CHECK(m.generators()[1] == fn(s, {{0, {{-1, q(2)}}}}));
  CHECK(algdim(three) == 1);
  GenSystem single(Divisor::point(s, s->vertex_point(0)), {PLFunction::constant(s, 3)});
  CHECK(minimize_generators(single).generators()[0] == PLFunction::constant(s, 0));
  CHECK(algdim(single) == 0);
  auto tail = testing::tail_system(testing::tail_curve());
  CHECK(minimize_generators(tail).size() == 3);
  CHECK(algdim(tail) == 2);
  CHECK(algdim(testing::theta_system(testing::theta())) == 2);
  CHECK(algdim(testing::circ4_fold_system(testing::circ4())) == 1);
}

TEST_CASE("phi") {
  auto s = testing::seg2();
  auto sys = testing::seg2_system(s);
  CHECK(phi(sys, s->vertex_point(0)) == pp({0, 0}));
  CHECK(phi(sys, s->vertex_point(1)) == pp({0, -2}));
  auto t = testing::tail_curve();
  auto tail = testing::tail_system(t);
  CHECK(phi(tail, testing::tail_circle_point(*t, q(3, 2))) == phi(tail, testing::tail_circle_point(*t, q(1, 2))));
}

TEST_CASE("image trees") {
  auto seg = build_image_tree(testing::seg2_system(testing::seg2()));
  REQUIRE(seg.tree);
  CHECK(seg.geomdim == 1);
  CHECK(seg.tree->curve->edge_count() == 1);
  CHECK(seg.tree->curve->edge(0).length == ExtRational(2));

  auto circ = build_image_tree(testing::circ4_fold_system(testing::circ4()));
  REQUIRE(circ.tree);
  CHECK(circ.tree->curve->edge_count() == 1);
  CHECK(circ.tree->curve->edge(0).length == ExtRational(2));

  auto t = testing::tail_curve();
  auto tail_sys = minimize_generators(testing::tail_system(t));
  auto tail = build_image_tree(tail_sys);
  REQUIRE(tail.tree);
  const Curve& img = *tail.tree->curve;
  CHECK(is_tree(img));
  // Segment [0, 1] split at the image of 1/2, plus a tail of length 1.
  CHECK(img.edge_count() == 3);
  CHECK(leaf_ends(img).size() == 3);
  Rational total = 0;
  for (const auto& e : img.edges()) total += e.length.value();
  CHECK(total == 2);
  auto branch = tail.tree->vertex_at(phi(tail_sys, testing::tail_circle_point(*t, q(1, 2))));
  REQUIRE(branch);
  CHECK(img.valency(img.vertex_point(*branch)) == 3);
  auto tip = tail.tree->vertex_at(phi(tail_sys, t->vertex_point(2)));
  REQUIRE(tip);
  CHECK(distance(img, img.vertex_point(*branch), img.vertex_point(*tip)) == ExtRational(1));

  auto point = build_image_tree(GenSystem(Divisor::point(testing::seg2(), testing::seg2()->vertex_point(0)),
                                          {PLFunction::constant(testing::seg2(), 0)}));
  CHECK_FALSE(point.tree);
  CHECK(point.geomdim == 0);
}

TEST_CASE("a system whose image has a cycle is rejected") {
  // On CIRC4, -d(x, 0) and -d(x, 4/3) embed the circle as a quadrilateral.
  auto c = testing::circ4();
  Point third = testing::circ4_point(*c, q(4, 3));
  Divisor base(c, {{c->vertex_point(0), 2}, {third, 2}});
  auto f1 = fn(c, {{0, {{-1, q(2)}}}, {-2, {{1, q(2)}}}});
  auto f2 = fn(c, {{q(-4, 3), {{1, q(4, 3)}, {-1, q(2, 3)}}}, {q(-2, 3), {{-1, q(4, 3)}, {1, q(2, 3)}}}});
  auto res = build_image_tree(GenSystem(base, {PLFunction::constant(c, 0), f1, f2}));
  CHECK_FALSE(res.tree);
  CHECK_FALSE(res.diagnostic.empty());
}

TEST_CASE("divisors D_x on the TAIL system") {
  auto t = testing::tail_curve();
  auto sys = minimize_generators(testing::tail_system(t));
  for (const auto& x : {q(1, 4), q(3, 4), q(5, 4), q(7, 4)}) {
    Divisor expect(t, {{testing::tail_circle_point(*t, x), 1}, {testing::tail_circle_point(*t, 2 - x), 1}});
    CHECK(divisor_at(sys, testing::tail_circle_point(*t, x)) == expect);
  }
  for (const auto& s : {q(1, 3), q(1, 2), q(1)}) {
    Point y = t->point(2, ExtRational(s));
    Divisor expect(t, {{y, 1}, {testing::tail_circle_point(*t, q(3, 2)), 1}});
    CHECK(divisor_at(sys, y) == expect);
  }
  CHECK(divisor_at(sys, t->vertex_point(0)) == Divisor::point(t, t->vertex_point(0), 2));
  for (int k = 0; k <= 16; ++k) {
    Point x = testing::tail_circle_point(*t, q(k, 8) == 2 ? q(0) : q(k, 8));
    CHECK(divisor_at(sys, x)(x) == self_coefficient(sys, x));
    CHECK(divisor_at(sys, x).degree() == 2);
    CHECK(divisor_at(sys, x).is_effective());
  }
}

TEST_CASE("rank test") {
  for (const auto& f : testing::star_fixtures()) {
    INFO(f.name);
    CHECK(check_rank_one(minimize_generators(f.system)).passed);
    auto star = check_star(f.system);
    CHECK(star.passed);
  }
  auto s = testing::seg2();
  GenSystem degenerate(Divisor::point(s, s->vertex_point(0)), {PLFunction::constant(s, 0)});
  auto cert = check_rank_one(degenerate);
  CHECK_FALSE(cert.passed);
  REQUIRE(cert.failing_point);
  CHECK(*cert.failing_point == s->vertex_point(1));
  CHECK(cert.failing_value == 0);
  auto star = check_star(degenerate);
  CHECK_FALSE(star.passed);
  CHECK(star.diagnostic.find("e1@2/1") != std::string::npos);
}

TEST_CASE("complete systems on trees") {
  auto s = testing::seg2();
  auto seg = tree_linear_system(s, Divisor::point(s, s->vertex_point(0)));
  REQUIRE(seg.size() == 2);
  CHECK(seg.generators()[0] == PLFunction::constant(s, 0));
  CHECK(seg.generators()[1] == fn(s, {{0, {{-1, q(2)}}}}));
  // f'_z for z = 1: -min(t, 1).
  auto rep = maximal_representation(fn(s, {{0, {{-1, q(1)}, {0, q(1)}}}}), seg);
  CHECK(rep.exact);
  CHECK(rep.coeffs == std::vector<TropScalar>{q(-1), q(0)});

  auto star = testing::star3();
  auto st = tree_linear_system(star, Divisor::point(star, star->vertex_point(0)));
  CHECK(st.size() == 3);
  CHECK(same_system(st, testing::star3_system(star)));
  CHECK(check_star(st).passed);

  // A base divisor that is not a single point.
  Divisor odd(s, {{s->point(0, ExtRational(q(1, 2))), 2}, {s->vertex_point(1), -1}});
  auto moved = tree_linear_system(s, odd);
  CHECK(moved.base() == odd);
  CHECK(same_system(moved, seg));
  CHECK_THROWS_AS(tree_linear_system(testing::circ4(), Divisor::point(testing::circ4(), testing::circ4()->vertex_point(0))),
                  Error);
  CHECK_THROWS_AS(tree_linear_system(s, Divisor::point(s, s->vertex_point(0), 2)), Error);
}

TEST_CASE("interior points of a tree are generated by the leaf functions") {
  auto star = testing::star3();
  auto sys = tree_linear_system(star, Divisor::point(star, star->vertex_point(0)));
  for (int leg = 0; leg < 3; ++leg) {
    for (const auto& r : {q(1, 8), q(1, 4), q(3, 8)}) {
      std::vector<testing::EdgeSpec> specs(3, testing::EdgeSpec{0, {{0, q(1, 2)}}, std::nullopt});
      specs[leg] = {0, {{-1, r}, {0, Rational(q(1, 2) - r)}}, std::nullopt};
      CHECK(maximal_representation(fn(star, specs), sys).exact);
    }
  }
}

TEST_CASE("rebasing keeps the system") {
  auto c = testing::circ4();
  auto sys = testing::circ4_fold_system(c);
  Divisor other(c, {{testing::circ4_point(*c, q(1)), 1}, {testing::circ4_point(*c, q(3)), 1}});
  auto moved = rebase(sys, other);
  CHECK(moved.base() == other);
  CHECK(same_system(moved, sys));
  CHECK(same_system(sys, moved));
  CHECK_FALSE(same_system(sys, testing::seg2_system(testing::seg2())));
  CHECK_THROWS_AS(rebase(sys, Divisor::point(c, c->vertex_point(0))), Error);
}
