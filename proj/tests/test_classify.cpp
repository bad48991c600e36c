#include <catch_amalgamated.hpp>

#include "support.hpp"

#include <swarm/classify.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace swarm;
using Catch::Approx;

namespace {

const double s3 = std::sqrt(3.0);

LineConfig reals(std::vector<double> r) { return line_from_reals(std::move(r), {1, 0}, 1e-9); }

double interior_angle(Point2 prev, Point2 at, Point2 next)
{
    const Point2 a = prev - at, b = next - at;
    return std::acos(dot(a, b) / (norm(a) * norm(b))) * 180.0 / std::numbers::pi;
}

} // namespace

TEST_CASE("psi3 types and roles")
{
    CHECK(psi3_type({{0, 0}, {1, 1}, {1, 1}}).tag == Psi3Type::G);

    const Psi3Type l = psi3_type({{1, 0}, {0, 0}, {-1, 0}});
    CHECK(l.tag == Psi3Type::L);
    CHECK(l.p[0] == Point2{1, 0});
    CHECK(l.p[1] == Point2{0, 0});
    CHECK(l.p[2] == Point2{-1, 0});

    const Psi3Type t = psi3_type({{0, 2}, {2, 0}, {0, 0}});
    CHECK(t.tag == Psi3Type::T);
    for (int i = 0; i < 3; ++i)
        CHECK(cross(t.p[i], t.p[(i + 1) % 3], t.p[(i + 2) % 3]) > 0);
    // Cyclic order (0,0) -> (2,0) -> (0,2).
    for (int i = 0; i < 3; ++i)
        if (t.p[i] == Point2{0, 0})
            CHECK(t.p[(i + 1) % 3] == Point2{2, 0});

    CHECK_THROWS_AS(psi3_type({{0, 0}, {1, 0}}), BadArity);
}

TEST_CASE("psin types")
{
    CHECK(psin_type({{1, 1}, {1, 1}, {1, 1}, {1, 1}}).tag == PsiNType::G);
    CHECK(psin_type({{0, 0}, {0, 0}, {1, 1}, {1, 1}}).tag == PsiNType::G);
    CHECK(psin_type({{0, 0}, {1, 0}, {2, 0}, {5, 0}}).tag == PsiNType::L);

    const PsiNType ta = psin_type({{0, 0}, {2, 0}, {1, s3}, {1, s3}});
    CHECK(ta.tag == PsiNType::T);
    CHECK(ta.equilateral);
    CHECK(psin_label(ta) == "Ta");
    REQUIRE(ta.witness);
    CHECK(ta.witness->x == Approx(1));
    CHECK(ta.witness->y == Approx(s3 / 3));

    const PsiNType tb = psin_type({{0, 0}, {4, 0}, {1, 2}, {1, 2}});
    CHECK(psin_label(tb) == "Tb");
    REQUIRE(tb.witness);
    CHECK(*tb.witness == Point2{2, 0});

    const PsiNType i = psin_type({{0, 0}, {2, 0}, {1, s3}, {1, s3 / 3}});
    CHECK(i.tag == PsiNType::I);
    CHECK_FALSE(i.also_s);

    const PsiNType s = psin_type({{0, 0}, {4, 0}, {1, 2}, {2, 0}});
    CHECK(s.tag == PsiNType::S);
    REQUIRE(s.witness);
    CHECK(*s.witness == Point2{2, 0});

    CHECK(psin_type({{0, 0}, {4, 0}, {1, 2}, {3, 1}}).tag == PsiNType::Z);
    CHECK(psin_type({{0, 0}, {1, 0}, {1, 1}, {0, 1}}).tag == PsiNType::Z);
    CHECK_THROWS_AS(psin_type({{0, 0}, {1, 0}, {0, 1}}), BadArity);
}

TEST_CASE("obtuse triangle with its longest-side midpoint is I and also S")
{
    const PsiNType t = psin_type({{0, 0}, {4, 0}, {1, 1}, {2, 0}});
    CHECK(t.tag == PsiNType::I);
    CHECK(t.also_s);
    CHECK(*t.witness == Point2{2, 0});
}

TEST_CASE("longest side tie-break follows the shortest side")
{
    // Isosceles with apex (2,3): two equal longest sides, base is shortest.
    const std::array<Point2, 3> v{Point2{0, 0}, Point2{3, 0}, Point2{1.5, 4}};
    const auto m = longest_side_midpoint(v, 1e-9);
    REQUIRE(m);
    // Shortest side is v0->v1, the next side counter-clockwise is v1->v2.
    CHECK(*m == midpoint(v[1], v[2]));
    CHECK_FALSE(longest_side_midpoint({Point2{0, 0}, Point2{2, 0}, Point2{1, s3}}, 1e-9));
}

TEST_CASE("line embedding")
{
    LineConfig lc = line_embed({{0, 0}, {0, 1}, {0, 2}});
    CHECK(lc.reals == std::vector<double>{0, 1, 2});
    CHECK(lc.to_point(2).y == Approx(2));

    lc = line_embed({{0, 0}, {1, 1}});
    REQUIRE(lc.reals.size() == 2);
    CHECK(lc.reals[0] == 0.0);
    CHECK(lc.reals[1] == Approx(std::sqrt(2.0)));

    CHECK_THROWS_AS(line_embed({{0, 0}, {1, 0}, {0, 1}}), NotCollinear);
    CHECK_THROWS_AS(line_embed({{1, 0}, {2, 0}}), std::invalid_argument);

    lc = line_embed({{0, 0}, {0, 0}});
    CHECK(lc.reals == std::vector<double>{0, 0});
}

TEST_CASE("line embedding orientation depends on the shape only")
{
    // Asymmetric shape {0,1,3}: every robot must see the same orientation.
    const Config P{{0, 0}, {1, 0}, {3, 0}};
    std::vector<double> first;
    for (std::size_t i = 0; i < P.size(); ++i) {
        const LineConfig lc = line_embed(testing::seen_from(P, i));
        std::vector<double> shape;
        for (double r : lc.reals)
            shape.push_back(r - lc.reals[0]);
        if (first.empty())
            first = shape;
        CHECK(shape == first);
        CHECK_FALSE(lc.symmetric);
    }
    const LineConfig mid = line_embed(testing::seen_from({{0, 0}, {1, 0}, {2, 0}}, 1));
    CHECK(mid.symmetric);
    CHECK(mid.self_mirror);
}

TEST_CASE("ln types")
{
    CHECK(ln_type(reals({3, 3, 3})).tag == LnType::G);
    CHECK(ln_type(reals({0, 0, 3})).tag == LnType::G);
    CHECK(ln_type(reals({0, 1, 2})).tag == LnType::B3);
    CHECK(ln_type(reals({0, 1, 3})).tag == LnType::U3);

    const LnType w = ln_type(reals({0, 1, 3, 6}));
    CHECK(w.tag == LnType::W);
    CHECK(w.w_clause == 'a');
    const LnType wb = ln_type(reals({-6, -3, -1, 0}));
    CHECK(wb.tag == LnType::W);
    CHECK(wb.w_clause == 'b');

    CHECK(ln_type(reals({0, 1, 2, 3})).tag == LnType::B4);
    CHECK(ln_type(reals({0, 1, 2, 3, 4})).tag == LnType::B5);
    CHECK(ln_type(reals({0, 1, 2, 3, 4, 5})).tag == LnType::B6);
    CHECK(ln_type(reals({0, 1, 2, 3, 4, 5, 6})).tag == LnType::B);
    CHECK(ln_type(reals({0, 1, 2, 3, 5})).tag == LnType::U);
    CHECK(ln_type(reals({0, 1, 1, 2})).tag == LnType::B3);
    CHECK(ln_type(reals({0, 1, 1, 3})).tag == LnType::U3);

    const LnType u4 = ln_type(reals({0, 1, 2, 4}));
    CHECK(u4.tag == LnType::U4);
    CHECK(u4.u4_case == 'a');
    CHECK(ln_type(reals({0, 1, 2, 2, 2, 4})).u4_case == 'b');
    CHECK(ln_type(reals({0, 1, 2, 2, 4})).u4_case == 'c');
}

TEST_CASE("ln type is stable under the embedding mirror")
{
    std::mt19937_64 rng(404);
    for (int i = 0; i < 3000; ++i) {
        const int n = std::uniform_int_distribution<int>(1, 9)(rng);
        const Config Q = testing::seen_from(collinear_positions(rng, n), 0);
        const LineConfig lc = line_embed(Q);
        const LineConfig m = lc.mirrored();
        const LnType a = ln_type(lc), b = ln_type(m);
        CHECK(a.tag == b.tag);
        // The U4 case reads the ends from one side, so it is orientation
        // dependent when both ends carry the same multiplicity.
        if (a.tag == LnType::U4 && lc.mu.front() != lc.mu.back())
            CHECK(a.u4_case == b.u4_case);
        if (a.tag == LnType::W)
            CHECK(a.w_clause != b.w_clause);
    }
}

TEST_CASE("collinear k agrees between the plane and the line")
{
    std::mt19937_64 rng(17);
    for (int i = 0; i < 2000; ++i) {
        const int n = std::uniform_int_distribution<int>(1, 9)(rng);
        const Config P = collinear_positions(rng, n);
        const Config Q = testing::seen_from(P, 0);
        CHECK(rotation_group_order(P).k == line_k(line_embed(Q)));
    }
}

TEST_CASE("psin type is total")
{
    std::mt19937_64 rng(23);
    for (std::uint64_t i = 0; i < 2000; ++i) {
        const Config P = family_positions("mixed", rng, 4 + static_cast<int>(i % 6), i);
        const PsiNType t = psin_type(P);
        CHECK(t.tag >= PsiNType::G);
        CHECK(t.tag <= PsiNType::Z);
        if (t.tag == PsiNType::T || t.tag == PsiNType::I || t.tag == PsiNType::S)
            CHECK(t.witness.has_value());
    }
}

TEST_CASE("psi7 detector")
{
    const auto split = detect_psi7(testing::psi7_config());
    REQUIRE(split);
    CHECK(split->T.size() == 3);
    CHECK(split->S.size() == 4);
    CHECK(contains(split->S, Point2{3, 0}));

    CHECK_FALSE(detect_psi7({{0, 0}, {1, 0}, {0.5, s3 / 2}, {3, 0}, {4, 0}, {4, 1}}));
    CHECK_FALSE(detect_psi7({{0, 0}, {1, 0}, {0.5, s3 / 2}, {3, 0}, {5, 0}, {5, 2}, {3, 2}}));
}

TEST_CASE("psi plus detector")
{
    const Config P{{0, 0}, {3.5, 0}, {5.5, 0}, {7, 0}};
    CHECK(psi_plus_gap(0.5, 4) == Approx(2 * 0.5 / (0.5 + 3)));
    const auto r = detect_psi_plus(P, 0.5);
    REQUIRE(r);
    CHECK(r->p1 == Point2{0, 0});
    CHECK(r->a == Point2{3.5, 0});
    CHECK(r->b == Point2{5.5, 0});
    CHECK(r->last == Point2{7, 0});

    CHECK_FALSE(detect_psi_plus({{0, 0}, {3.501, 0}, {5.5, 0}, {7, 0}}, 0.5));
    CHECK_FALSE(detect_psi_plus({{0, 0}, {3.5, 0.5}, {5.5, 0}, {7, 0}}, 0.5));
    // The mirrored labelling is not a match.
    CHECK(detect_psi_plus({{7, 0}, {3.5, 0}, {1.5, 0}, {0, 0}}, 0.5)->p1 == Point2{7, 0});
}

TEST_CASE("psi quad detector")
{
    const Config Q = psi_quad_positions();
    const auto p = detect_psi_quad(Q);
    REQUIRE(p);
    const double expect[] = {60, 80, 100, 120};
    for (int i = 0; i < 4; ++i)
        CHECK(interior_angle((*p)[(i + 3) % 4], (*p)[i], (*p)[(i + 1) % 4]) == Approx(expect[i]));
    CHECK((*p)[0] == Q[0]);

    CHECK_FALSE(detect_psi_quad({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
    CHECK_FALSE(detect_psi_quad({{0, 0}, {1, 0}, {0, 1}}));
    CHECK_FALSE(detect_psi_quad({{0, 0}, {4, 0}, {0, 4}, {1, 1}}));
}

TEST_CASE("condition detectors are similarity invariant")
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Config psi7 = testing::psi7_config();
    const Config line = testing::psi_line_config();
    const Config quad = psi_quad_positions();
    for (int i = 0; i < 500; ++i) {
        const double theta = 6.283 * u(rng), s = testing::log_uniform(rng, 0.1, 10);
        const Point2 shift{10 * u(rng), 10 * u(rng)};
        CHECK(detect_psi7(testing::transform(psi7, theta, s, shift)));
        CHECK(detect_psi_plus(testing::transform(line, theta, s, shift), 0.5));
        const auto q = detect_psi_quad(testing::transform(quad, theta, s, shift));
        REQUIRE(q);
        CHECK(dist((*q)[0], s * rotate(quad[0], theta) + shift) < 1e-9);
        // Random non-matching configurations stay non-matching.
        const Config g = general_positions(rng, 7);
        CHECK(detect_psi7(g).has_value() == detect_psi7(testing::transform(g, theta, s, shift)).has_value());
    }
}
