#include "doctest.h"

#include <cmath>

#include "polylab/error.hpp"
#include "polylab/solvers.hpp"

using namespace polylab;

namespace {

// I1 by its power series, independent of specfun
double i1_series(double x)
{
    double term = x / 2, sum = term;
    for (int k = 1; k < 60; ++k) {
        term *= (x * x / 4) / (k * (k + 1.0));
        sum += term;
    }
    return sum;
}

// K1 by the integral representation int_0^inf e^{-x cosh t} cosh t dt
double k1_integral(double x)
{
    double sum = 0;
    const double h = 1e-3;
    for (int i = 0; i < 20000; ++i) {
        const double t = (i + 0.5) * h;
        sum += std::exp(-x * std::cosh(t)) * std::cosh(t) * h;
    }
    return sum;
}

double eigen_i(double x, double y) { return (x == 0 ? 0.5 : i1_series(x) / x) * std::cos(y); }

double bump(double t) { return std::fabs(t) < 1 ? std::exp(-1 / (1 - t * t)) : 0.0; }

BoundaryTrace bump_trace()
{
    BoundaryTrace t = BoundaryTrace::from_function(bump);
    t.support = std::pair{-1.0, 1.0};
    return t;
}

BoundaryTrace step_trace()
{
    BoundaryTrace t = BoundaryTrace::from_function([](double s) { return s > 0 ? 1.0 : 0.0; });
    t.breaks = {0.0};
    return t;
}

BoundaryTrace pulse_trace()
{
    BoundaryTrace t = BoundaryTrace::from_function([](double s) { return std::fabs(s) < 0.5 ? 1.0 : 0.0; });
    t.breaks = {-0.5, 0.5};
    t.support = std::pair{-0.5, 0.5};
    return t;
}

ErrorKind kind_of(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Parse;
}

}  // namespace

TEST_CASE("elementary kernel mass and constant trace")
{
    for (double x : {0.1, 1.0, 10.0}) {
        CAPTURE(x);
        // int G dy = [y / (2 sqrt(x^2 + y^2))]: one by the antiderivative, checked by quadrature
        CHECK(std::fabs(halfplane_solve(BoundaryTrace::constant(1.0), x, 0.0) - 1) < 1e-8);
    }
    CHECK(std::fabs(halfplane_solve(BoundaryTrace::constant(1.0), 1.0, 3.0) - 1) < 1e-8);
}

TEST_CASE("step and pulse traces")
{
    double worst_step = 0, worst_pulse = 0;
    const auto step = step_trace();
    const auto pulse = pulse_trace();
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) {
            const double x = 0.1 + 2.9 * i / 19, y = -3 + 6.0 * j / 19;
            const double r = std::hypot(x, y);
            worst_step = std::max(worst_step, std::fabs(halfplane_solve(step, x, y, 1e-9) - 0.5 * (1 + y / r)));
            const double rp = std::hypot(x, y + 0.5), rm = std::hypot(x, y - 0.5);
            const double pulse_exact = 0.5 * ((y + 0.5) / rp - (y - 0.5) / rm);
            worst_pulse = std::max(worst_pulse, std::fabs(halfplane_solve(pulse, x, y, 1e-9) - pulse_exact));
        }
    CHECK(worst_step < 1e-6);
    CHECK(worst_pulse < 1e-6);
}

TEST_CASE("halfplane_solve is linear and positive")
{
    auto p1 = BoundaryTrace::from_function([](double t) { return std::cos(t); });
    auto p2 = BoundaryTrace::from_function([](double t) { return 1 / (1 + t * t); });
    auto mix = BoundaryTrace::from_function([](double t) { return 2 * std::cos(t) - 3 / (1 + t * t); });
    for (auto [x, y] : {std::pair{0.5, 0.2}, {2.0, -1.0}}) {
        const double lhs = halfplane_solve(mix, x, y, 1e-12);
        const double rhs = 2 * halfplane_solve(p1, x, y, 1e-12) - 3 * halfplane_solve(p2, x, y, 1e-12);
        CHECK(std::fabs(lhs - rhs) < 1e-10);
        // cos t convolves to (x K1(x)) cos y
        CHECK(std::fabs(halfplane_solve(p1, x, y, 1e-12) - x * k1_integral(x) * std::cos(y)) < 1e-9);
    }
    auto nonneg = BoundaryTrace::from_function([](double t) { return std::sin(3 * t) * std::sin(3 * t); });
    for (double x : {0.2, 1.0, 4.0})
        for (double y : {-2.0, 0.0, 0.7}) CHECK(halfplane_solve(nonneg, x, y) >= 0);
    for (double x : {1.1, 1.5}) CHECK(kernel_solve({KernelKind::strip_pair, 1.0, 2.0}, bump_trace(), x, 0.3) >= 0);
}

TEST_CASE("growth declarations")
{
    auto quad = BoundaryTrace::from_function([](double t) { return t * t; });
    CHECK(kind_of([&] { halfplane_solve(quad, 1, 0); }) == ErrorKind::GrowthMismatch);
    quad.growth_exponent = 2;
    CHECK(kind_of([&] { halfplane_solve(quad, 1, 0); }) == ErrorKind::GrowthMismatch);
    auto lin = BoundaryTrace::from_function([](double t) { return t; }, 1.0);
    CHECK(std::fabs(halfplane_solve(lin, 1.0, 0.4, 1e-8) - 0.4) < 1e-6);
    CHECK(growth_constant(BoundaryTrace::constant(2.5), 100) == 2.5);
}

TEST_CASE("kernel domains")
{
    CHECK(kind_of([] { check_kernel_domain({KernelKind::halfplane_eps, 1.0}, 0.5); }) == ErrorKind::OutsideValidity);
    CHECK(kind_of([] { check_kernel_domain({KernelKind::halfplane_eps, 1.0}, 1.01); }) == ErrorKind::TooCloseToSource);
    CHECK(kind_of([] { check_kernel_domain({KernelKind::strip_eps, 1.0}, 1.5); }) == ErrorKind::OutsideValidity);
    CHECK(kind_of([] { check_kernel_domain({KernelKind::strip_eps, 1.0}, 0.99); }) == ErrorKind::TooCloseToSource);
    CHECK(kind_of([] { check_kernel_domain({KernelKind::strip_pair, 1.0, 4.0}, 3.95); }) == ErrorKind::TooCloseToSource);
    CHECK(kind_of([] { check_kernel_domain({KernelKind::strip_pair, 2.0, 1.0}, 1.5); }) == ErrorKind::BadParams);
    CHECK(kind_of([] { strip_solve(1, 2, BoundaryTrace::constant(1), BoundaryTrace::constant(1), 2.5, 0); }) ==
          ErrorKind::OutsideValidity);
}

TEST_CASE("Bessel kernels")
{
    // strip_eps at the degenerate side x = 0
    const double g0 = kernel_eval({KernelKind::strip_eps, 1.0}, 0.0, 0.5).value;
    CHECK(std::isfinite(g0));
    CHECK(g0 > 0);
    // symbol limits at small omega
    CHECK(kernel_symbol({KernelKind::halfplane_eps, 1.0}, 1e-12, 2.0) == doctest::Approx(0.25));
    CHECK(kernel_symbol({KernelKind::strip_pair, 1.0, 3.0}, 1e-12, 2.0, 0) +
              kernel_symbol({KernelKind::strip_pair, 1.0, 3.0}, 1e-12, 2.0, 1) ==
          doctest::Approx(1.0));
    // the pair symbols are 1 on their own side and 0 on the other
    const KernelSpec pair{KernelKind::strip_pair, 1.0, 3.0};
    for (double w : {0.3, 2.0, 9.0}) {
        CHECK(kernel_symbol(pair, w, 1.0, 0) == doctest::Approx(1.0));
        CHECK(std::fabs(kernel_symbol(pair, w, 3.0, 0)) < 1e-12);
        CHECK(std::fabs(kernel_symbol(pair, w, 1.0, 1)) < 1e-12);
        CHECK(kernel_symbol(pair, w, 3.0, 1) == doctest::Approx(1.0));
    }

    // mass of the half-plane kernel is eps^2 / x^2
    const KernelSpec hp{KernelKind::halfplane_eps, 1.0};
    CHECK(std::fabs(kernel_solve(hp, BoundaryTrace::constant(1.0), 2.0, 0.0, 1e-8) - 0.25) < 1e-6);
    // strip_eps has unit mass
    CHECK(std::fabs(kernel_solve({KernelKind::strip_eps, 1.0}, BoundaryTrace::constant(1.0), 0.5, 0.0) - 1) < 1e-6);

    // x^-1 K1(x) cos y decays as x grows and solves the modified equation on x >= eps
    const double k11 = k1_integral(1.0);
    auto kt = BoundaryTrace::from_function([k11](double t) { return k11 * std::cos(t); });
    CHECK(std::fabs(kernel_solve(hp, kt, 1.7, 0.4) - k1_integral(1.7) / 1.7 * std::cos(0.4)) < 1e-7);
    auto it = BoundaryTrace::from_function([](double t) { return eigen_i(1.0, t); });
    CHECK(std::fabs(kernel_solve({KernelKind::strip_eps, 1.0}, it, 0.4, -0.8) - eigen_i(0.4, -0.8)) < 1e-7);
    CHECK(std::fabs(kernel_solve({KernelKind::strip_eps, 1.0}, it, 0.0, 0.3) - eigen_i(0.0, 0.3)) < 1e-7);
}

TEST_CASE("strip pair")
{
    const auto one = BoundaryTrace::constant(1.0);
    CHECK(std::fabs(strip_solve(1, 3, one, one, 2.0, 0.0) - 1) < 1e-6);
    auto lo = BoundaryTrace::from_function([](double t) { return eigen_i(0.5, t); });
    auto hi = BoundaryTrace::from_function([](double t) { return eigen_i(2.0, t); });
    CHECK(std::fabs(strip_solve(0.5, 2, lo, hi, 1.0, 0.3) - eigen_i(1.0, 0.3)) < 1e-5);

    // narrow Gaussian close to the source line comes back nearly unchanged
    const double sg = 0.3;
    auto gauss = BoundaryTrace::from_function([sg](double t) { return std::exp(-t * t / (2 * sg * sg)); });
    gauss.support = std::pair{-3.0, 3.0};
    double worst = 0;
    for (double y : {-0.6, -0.2, 0.0, 0.3, 0.9})
        worst = std::max(worst, std::fabs(kernel_solve({KernelKind::strip_pair, 1, 4, 0.004}, gauss, 1.005, y) -
                                          std::exp(-y * y / (2 * sg * sg))));
    CHECK(worst < 0.05);
}

TEST_CASE("strip pair approaches the half-plane kernel")
{
    const auto psi = bump_trace();
    const double ref = kernel_solve({KernelKind::halfplane_eps, 1.0}, psi, 1.5, 0.0, 1e-10);
    double prev = 1e300;
    for (double ep : {4.0, 8.0, 16.0}) {
        const double d = std::fabs(strip_solve(1.0, ep, psi, BoundaryTrace::zero(), 1.5, 0.0, 1e-10) - ref);
        CAPTURE(ep);
        CAPTURE(d);
        CHECK(d < prev);
        prev = d;
    }
    CHECK(prev < 1e-4);
}

TEST_CASE("series solver on the quadrilateral")
{
    SUBCASE("zero traces")
    {
        const auto sol = series_solve_quad({BoundaryTrace::zero(), BoundaryTrace::zero(), BoundaryTrace::zero()});
        for (double x : {0.0, 0.3, 0.99})
            for (double y : {-0.9, 0.0, 0.5}) CHECK(std::fabs(sol.eval(x, y)) < 1e-10);
        CHECK(boundary_trace_at_zero(sol, 0.2) == 0.0);
        CHECK_FALSE(sol.truncation_warning);
    }
    SUBCASE("constant traces")
    {
        const auto one = BoundaryTrace::constant(1.0);
        const auto sol = series_solve_quad({one, one, one});
        for (double x : {0.1, 0.5, 0.9})
            for (double y : {-0.8, 0.0, 0.6}) CHECK(std::fabs(sol.eval(x, y) - 1) < 1e-6);
        CHECK(std::fabs(boundary_trace_at_zero(sol, 0.0) - 1) < 1e-4);
    }
    SUBCASE("eigen solution")
    {
        QuadTraces tr{BoundaryTrace::from_function([](double y) { return eigen_i(1, y); }),
                      BoundaryTrace::from_function([](double x) { return eigen_i(x, 1); }),
                      BoundaryTrace::from_function([](double x) { return eigen_i(x, -1); })};
        const auto sol = series_solve_quad(tr, 60);
        CHECK(sol.a.size() == 61);
        CHECK(sol.c.size() == 60);
        double worst = 0;
        for (int i = 0; i <= 20; ++i)
            for (int j = 0; j <= 20; ++j) {
                const double x = 0.05 + 0.85 * i / 20, y = -0.9 + 1.8 * j / 20;
                worst = std::max(worst, std::fabs(sol.eval(x, y) - eigen_i(x, y)));
            }
        CAPTURE(worst);
        CHECK(worst < 1e-6);
        CHECK(std::fabs(boundary_trace_at_zero(sol, 0.0) - 0.5) < 1e-4);
        CHECK(std::fabs(boundary_trace_at_zero(sol, 0.6) - 0.5 * std::cos(0.6)) < 1e-4);
        CHECK(kind_of([&] { boundary_trace_at_zero(sol, 0.97); }) == ErrorKind::CornerProximity);

        // modified-equation FD residual of the reconstructed field
        const auto f = sol.field();
        for (auto [x, y] : {std::pair{0.3, 0.1}, {0.6, -0.5}, {0.8, 0.4}})
            CHECK(std::fabs(residual(f, Operator::modified, x, y, ResidualMode::fd, 2e-2)) < 1e-5);
    }
    CHECK(kind_of([] { series_solve_quad({BoundaryTrace::zero(), BoundaryTrace::zero(), BoundaryTrace::zero()}, 0); }) ==
          ErrorKind::BadParams);
}

TEST_CASE("half-plane step solution satisfies the unmodified equation")
{
    const auto step = step_trace();
    const auto f = field_from_eval([&](double x, double y) { return halfplane_solve(step, x, y, 1e-13); });
    for (auto [x, y] : {std::pair{0.7, 0.3}, {1.5, -1.0}})
        CHECK(std::fabs(residual(f, Operator::unmodified, x, y, ResidualMode::fd, 2e-2)) < 1e-5);
}

TEST_CASE("samples trace and point sweeps")
{
    const auto t = BoundaryTrace::from_samples({{1.0, 3.0}, {-1.0, 1.0}, {0.0, 0.0}});
    CHECK(t(-2) == 1.0);
    CHECK(t(0.5) == 1.5);
    CHECK(t(5) == 3.0);
    CHECK(t.breaks.size() == 3);
    CHECK(kind_of([] { BoundaryTrace::from_samples({{0.0, 1.0}, {0.0, 2.0}, {0.0, 3.0}}); }) == ErrorKind::BadParams);
    CHECK(kind_of([] { BoundaryTrace::from_samples({{0.0, 1.0}, {NAN, 2.0}}); }) == ErrorKind::BadParams);

    // a repeated y is a jump, so the step trace can be given as samples
    const auto jump = BoundaryTrace::from_samples({{-1.0, 0.0}, {0.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}});
    CHECK(jump(-0.5) == 0.0);
    CHECK(jump(0.5) == 1.0);
    CHECK(jump.breaks.size() == 3);
    for (auto [x, y] : {std::pair{0.5, 0.3}, {2.0, -1.0}})
        CHECK(std::fabs(halfplane_solve(jump, x, y, 1e-9) - 0.5 * (1 + y / std::hypot(x, y))) < 1e-7);

    std::vector<QueryPoint> pts;
    for (int i = 0; i < 37; ++i) pts.push_back({0.2 + 0.05 * i, std::sin(1.0 * i)});
    const auto step = step_trace();
    auto fn = [&](double x, double y) { return halfplane_solve(step, x, y, 1e-9); };
    const auto a = solve_points(pts, fn, sweep::Policy::serial);
    const auto b = solve_points(pts, fn, sweep::Policy::parallel);
    CHECK(a == b);
    CHECK(std::fabs(a[3] - 0.5 * (1 + pts[3].y / std::hypot(pts[3].x, pts[3].y))) < 1e-6);
}

TEST_CASE("kernel names")
{
    CHECK(std::string(to_string(KernelKind::strip_pair)) == "strip_pair");
    CHECK(std::string(to_string(KernelKind::halfplane_elementary)) == "halfplane_elementary");
}
