#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "polylab/error.hpp"
#include "polylab/polytope.hpp"

using namespace polylab;

namespace {

const double kS = std::numbers::sqrt2 / 2.0;

OutlineSpec tcp1_spec(double v1, double v2, double v3, double a, double b)
{
    OutlineSpec s;
    s.vertices = {{0, 1}, {1, 0}};
    s.ray_in = {0, -1};
    s.ray_out = {1, 0};
    s.speeds = {v1, v2, v3};
    s.alpha = a;
    s.beta = b;
    return s;
}

OutlineSpec quarter_spec()
{
    OutlineSpec s;
    s.vertices = {{0, 1}};
    s.ray_in = {-1, 0};
    s.ray_out = {0, 1};
    s.speeds = {std::numbers::sqrt2, std::numbers::sqrt2};
    return s;
}

ErrorKind kind_of(const OutlineSpec& s)
{
    try {
        validate_outline(s);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Parse;
}

// Example 6 as displayed, term by term.
Vec2 example6_closed(double v1, double v2, double v3, double al, double be, double x, double y)
{
    const double r = std::hypot(x, y);
    const double y2 = std::numbers::sqrt2 / v2;
    const double r2 = std::hypot(x, y - y2);
    const double k = v2 / (2 * std::numbers::sqrt2);
    const double p1 = k * (y + r) + (v3 / 2 - k) * ((y - y2) + r2) + al / 2 * x * x;
    const double p2 = 1 + v1 / 2 * (-y + r) - k * (y + r) + k * ((y - y2) + r2) + be / 2 * x * x;
    return {p1, p2};
}

double fd_residual(const MomentumMap& m, int comp, double x, double y)
{
    const double h = 1e-4 * x;
    auto f = [&](double a, double b) { return eval_map(m, a, b)[comp]; };
    const double fxx = (f(x + h, y) - 2 * f(x, y) + f(x - h, y)) / (h * h);
    const double fyy = (f(x, y + h) - 2 * f(x, y) + f(x, y - h)) / (h * h);
    const double fx = (f(x + h, y) - f(x - h, y)) / (2 * h);
    return x * (fxx + fyy) - fx;
}

}  // namespace

TEST_CASE("outline validation")
{
    SUBCASE("one corner")
    {
        auto v = validate_outline(quarter_spec());
        REQUIRE(v.kinks.size() == 1);
        CHECK(v.kinks[0] == 0.0);
    }
    SUBCASE("two corners give kinks 0 and sqrt2/v2")
    {
        auto v = validate_outline(tcp1_spec(1.3, 0.7, 2.0, 0, 0));
        REQUIRE(v.kinks.size() == 2);
        CHECK(v.kinks[0] == 0.0);
        CHECK(std::fabs(v.kinks[1] - std::numbers::sqrt2 / 0.7) < 1e-15);
    }
    SUBCASE("collinear corner")
    {
        OutlineSpec s;
        s.vertices = {{0, 1}, {0, 2}};
        s.ray_in = {0, 1};
        s.ray_out = {1, 0};
        s.speeds = {1, 1, 1};
        CHECK(kind_of(s) == ErrorKind::NonConvex);
    }
    SUBCASE("inconsistent turning")
    {
        auto s = tcp1_spec(1, 1, 1, 0, 0);
        s.ray_out = {-1, 0};
        CHECK(kind_of(s) == ErrorKind::NonConvex);
    }
    SUBCASE("zero speed names the edge")
    {
        auto s = tcp1_spec(1, 0, 1, 0, 0);
        try {
            validate_outline(s);
            FAIL("expected ZeroSpeed");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::ZeroSpeed);
            CHECK(e.index() == 1);
        }
    }
    SUBCASE("first corner must be (0,1)")
    {
        auto s = tcp1_spec(1, 1, 1, 0, 0);
        s.vertices[0] = {0, 2};
        CHECK(kind_of(s) == ErrorKind::BadNormalization);
    }
    SUBCASE("repeated vertex")
    {
        auto s = tcp1_spec(1, 1, 1, 0, 0);
        s.vertices[1] = s.vertices[0];
        CHECK(kind_of(s) == ErrorKind::NonConvex);
    }
}

TEST_CASE("half-plane and quarter-plane forms")
{
    OutlineSpec hp;
    hp.ray_in = {0, 1};
    hp.ray_out = {0, 1};
    hp.speeds = {1};
    hp.alpha = 1;
    const auto m = synthesize(validate_outline(hp));
    const auto p = eval_map(m, 2, 3);
    CHECK(p[0] == 2.0);
    CHECK(p[1] == 3.0);
    const auto ref = halfplane_map();
    CHECK(eval_map(ref, 2, 3) == p);

    const auto q = synthesize(validate_outline(quarter_spec()));
    const auto e = expand(q);
    CHECK(e.constant.norm() < 1e-15);
    CHECK(std::fabs(e.linear[0] + kS) < 1e-15);
    CHECK(std::fabs(e.linear[1] - kS) < 1e-15);
    REQUIRE(e.rho.size() == 1);
    CHECK(std::fabs(e.rho[0].second[0] - kS) < 1e-15);
    CHECK(std::fabs(e.rho[0].second[1] - kS) < 1e-15);

    const auto qp = quarterplane_map(0, 0);
    CHECK((eval_map(qp, 0, 1) - Vec2(0, std::numbers::sqrt2)).norm() < 1e-15);
    CHECK((eval_map(qp, 0, -1) - Vec2(std::numbers::sqrt2, 0)).norm() < 1e-15);
}

TEST_CASE("Example 6 coefficients")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> sp(0.2, 3.0), ab(0.0, 2.0), pt(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double v1 = sp(rng), v2 = sp(rng), v3 = sp(rng), al = ab(rng), be = ab(rng);
        const auto m = synthesize(validate_outline(tcp1_spec(v1, v2, v3, al, be)));
        const auto e = expand(m);
        const double k = v2 / (2 * std::numbers::sqrt2);
        const double y2 = std::numbers::sqrt2 / v2;
        // oracle: the displayed formula, regrouped by hand
        CHECK(std::fabs(e.constant[0] - (-(v3 / 2 - k) * y2)) < 1e-14);
        CHECK(std::fabs(e.constant[1] - (1 - k * y2)) < 1e-14);
        CHECK(std::fabs(e.linear[0] - v3 / 2) < 1e-14);
        CHECK(std::fabs(e.linear[1] + v1 / 2) < 1e-14);
        REQUIRE(e.rho.size() == 2);
        CHECK(e.rho[0].first == 0.0);
        CHECK(std::fabs(e.rho[1].first - y2) < 1e-14);
        CHECK(std::fabs(e.rho[0].second[0] - k) < 1e-14);
        CHECK(std::fabs(e.rho[0].second[1] - (v1 / 2 - k)) < 1e-14);
        CHECK(std::fabs(e.rho[1].second[0] - (v3 / 2 - k)) < 1e-14);
        CHECK(std::fabs(e.rho[1].second[1] - k) < 1e-14);
        CHECK(std::fabs(e.quad[0] - al / 2) < 1e-14);
        CHECK(std::fabs(e.quad[1] - be / 2) < 1e-14);
        for (int i = 0; i < 5; ++i) {
            const double x = std::fabs(pt(rng)), y = pt(rng);
            CHECK((eval_map(m, x, y) - example6_closed(v1, v2, v3, al, be, x, y)).norm() < 1e-12);
        }
    }
}

TEST_CASE("outline round trip and Lipschitz trace")
{
    const auto v = validate_outline(tcp1_spec(1.1, 0.6, 2.4, 0.3, 0.2));
    const auto m = synthesize(v);
    const double L = trace_lipschitz(v);
    double worst = 0.0;
    Vec2 prev = eval_map(m, 0, -10);
    for (int i = 0; i <= 1000; ++i) {
        const double y = -10 + 20.0 * i / 1000;
        const Vec2 p = eval_map(m, 0, y);
        worst = std::max(worst, (p - outline_point(v, y)).norm());
        if (i > 0) CHECK((p - prev).norm() <= L * 0.02 * (1 + 1e-12));
        prev = p;
    }
    CHECK(worst < 1e-12);
    CHECK((outline_point(v, 0) - Vec2(0, 1)).norm() < 1e-15);
    CHECK((outline_point(v, v.kinks[1]) - Vec2(1, 0)).norm() < 1e-14);

    const auto q = validate_outline(quarter_spec());
    const auto qm = synthesize(q);
    for (double y : {-3.0, -0.5, 0.0, 0.25, 4.0})
        CHECK((eval_map(qm, 0, y) - outline_point(q, y)).norm() < 1e-14);
}

TEST_CASE("Jacobian against finite differences")
{
    const auto q = quarterplane_map(0, 0);
    const auto j = eval_jacobian(q, 1, 0);
    CHECK(std::fabs(j.a11 - kS) < 1e-15);
    CHECK(std::fabs(j.a12 + kS) < 1e-15);
    CHECK(std::fabs(j.a21 - kS) < 1e-15);
    CHECK(std::fabs(j.a22 - kS) < 1e-15);
    CHECK(std::fabs(j.det - 1.0) < 1e-15);

    const auto hj = eval_jacobian(halfplane_map(), 2.5, -1);
    CHECK(hj.a11 == 2.5);
    CHECK(hj.a12 == 0.0);
    CHECK(hj.a21 == 0.0);
    CHECK(hj.a22 == 1.0);
    CHECK(hj.det == 2.5);

    const auto m = synthesize(validate_outline(tcp1_spec(0.8, 1.7, 1.2, 0.5, 1.5)));
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ux(0.05, 4.0), uy(-4.0, 4.0);
    for (int i = 0; i < 100; ++i) {
        const double x = ux(rng), y = uy(rng), h = 1e-6;
        const Vec2 dx = (eval_map(m, x + h, y) - eval_map(m, x - h, y)) / (2 * h);
        const Vec2 dy = (eval_map(m, x, y + h) - eval_map(m, x, y - h)) / (2 * h);
        const double det_fd = dx[0] * dy[1] - dy[0] * dx[1];
        const auto a = eval_jacobian(m, x, y);
        CHECK(std::fabs(a.det - (a.a11 * a.a22 - a.a12 * a.a21)) == 0.0);
        CHECK(std::fabs(a.det - det_fd) < 1e-6);
    }
}

TEST_CASE("each potential solves the unmodified equation")
{
    const auto m = synthesize(validate_outline(tcp1_spec(0.8, 1.7, 1.2, 0.5, 1.5)));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ux(0.1, 4.0), uy(-4.0, 4.0);
    for (int i = 0; i < 200; ++i) {
        const double x = ux(rng), y = uy(rng);
        const auto a = eval_jacobian(m, x, y);
        const auto h = eval_hessian(m, x, y);
        const double r1 = x * (h.phi1[0] + h.phi1[2]) - a.a11;
        const double r2 = x * (h.phi2[0] + h.phi2[2]) - a.a21;
        CHECK(std::fabs(r1) < 1e-11);
        CHECK(std::fabs(r2) < 1e-11);
    }
    CHECK(std::fabs(fd_residual(m, 0, 1.3, 0.4)) < 1e-4);
    CHECK(std::fabs(fd_residual(m, 1, 0.7, 2.1)) < 1e-4);
}

TEST_CASE("one-vertex criterion")
{
    CHECK(validate_one_vertex(-kS, kS, kS, kS, 0, 0));
    CHECK(validate_one_vertex(-kS, kS, kS, kS, 1, 1));
    CHECK_FALSE(validate_one_vertex(-kS, kS, kS, kS, -3, 0));
    CHECK_FALSE(validate_one_vertex(1, 1, 1, 1, 0, 0));

    // brute-force oracle on the sign of det M + det N r + det K y
    auto brute = [](double a, double b, double c, double d, double al, double be) {
        const double dm = a * d - b * c, dn = a * be - al * c, dk = b * be - al * d;
        int sign = 0;
        for (int i = 0; i <= 400; ++i) {
            const double r = std::pow(10.0, -4 + 8.0 * i / 400);
            for (int j = -50; j <= 50; ++j) {
                const double v = dm + dn * r + dk * r * j / 50.0;
                const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
                if (s == 0) return false;
                if (sign != 0 && s != sign) return false;
                sign = s;
            }
        }
        return true;
    };
    CHECK_FALSE(brute(-kS, kS, kS, kS, -3, 0));
    CHECK(brute(-kS, kS, kS, kS, 1, 1));
    CHECK(brute(-kS, kS, kS, kS, 0.5, 2.0) == validate_one_vertex(-kS, kS, kS, kS, 0.5, 2.0));
}

TEST_CASE("nondegeneracy sampling")
{
    const auto m = synthesize(validate_outline(tcp1_spec(0.8, 1.7, 1.2, 0.5, 1.5)));
    auto rep = check_nondegenerate(m);
    CHECK(rep.ok);
    CHECK(rep.sign != 0);
    CHECK(rep.samples == 41 * 41);
    CHECK(check_nondegenerate(quarterplane_map(1, 2)).ok);
    CHECK(check_nondegenerate(halfplane_map()).ok);
    CHECK(edge_count(m) == 3);
    // a combination with det M = 0 collapses
    CHECK_FALSE(check_nondegenerate(one_vertex_map(1, 1, 1, 1, 0, 0)).ok);
}
