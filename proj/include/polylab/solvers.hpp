#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polylab/pde.hpp"
#include "polylab/specfun.hpp"
#include "polylab/sweep.hpp"

namespace polylab {

// Boundary data y -> value along a vertical line.
struct BoundaryTrace {
    std::function<double(double)> fn;
    double growth_exponent = 0.0;  // |psi(t)| <= C (1 + |t|)^p
    std::vector<double> breaks;    // jumps or kinks, used as quadrature breakpoints
    std::optional<std::pair<double, double>> support;  // psi = 0 outside when set

    double operator()(double y) const { return fn(y); }

    static BoundaryTrace constant(double c);
    static BoundaryTrace from_function(std::function<double(double)> fn, double growth = 0.0);
    // Piecewise linear through (y, value) samples sorted by y, constant beyond the ends.
    static BoundaryTrace from_samples(std::vector<std::pair<double, double>> samples);
    static BoundaryTrace zero();
};

// C in |psi(t)| <= C (1 + |t|)^p, fitted on [-R, R] and checked out to |t| = reach.
// Throws GrowthMismatch when the far samples outgrow the declared exponent.
double growth_constant(const BoundaryTrace& psi, double reach);

// G = x^2 / (2 (x^2 + y^2)^{3/2}), the elementary kernel for the unmodified equation.
double halfplane_kernel(double x, double y);

// phi(x, y) = int G(x, y - t) psi(t) dt, tails truncated from the declared growth.
double halfplane_solve(const BoundaryTrace& psi, double x, double y, double tol = 1e-10);

enum class KernelKind { halfplane_elementary, halfplane_eps, strip_eps, strip_pair };

const char* to_string(KernelKind k);

struct KernelSpec {
    KernelKind kind = KernelKind::halfplane_eps;
    double eps = 1.0;
    double eps_prime = 0.0;  // strip_pair only
    double band = 0.02;      // refused distance to a source line, in units of that line's x
};

struct KernelValue {
    double value = 0.0;
    double dual = 0.0;  // strip_pair: kernel carrying the trace at x = eps_prime
};

// Throws OutsideValidity or TooCloseToSource.
void check_kernel_domain(const KernelSpec& spec, double x);

// Fourier symbol T(omega, x): the kernel is (1/pi) int_0^inf T cos(omega y) d omega.
// which = 1 selects the eps_prime kernel of the strip pair.
double kernel_symbol(const KernelSpec& spec, double omega, double x, int which = 0);

KernelValue kernel_eval(const KernelSpec& spec, double x, double y, double tol = 1e-10);

// int kernel(x, y - t) psi(t) dt for the eps trace (the eps_prime trace taken as zero).
double kernel_solve(const KernelSpec& spec, const BoundaryTrace& psi, double x, double y, double tol = 1e-8);

// Solution of the modified equation on eps < x < eps_prime with the two traces.
double strip_solve(double eps, double eps_prime, const BoundaryTrace& psi_eps, const BoundaryTrace& psi_eps_prime,
                   double x, double y, double tol = 1e-8);

// Traces of f on the three Dirichlet sides of Q = (0,1) x (-1,1).
struct QuadTraces {
    BoundaryTrace right;   // y -> f(1, y)
    BoundaryTrace top;     // x -> f(x, 1)
    BoundaryTrace bottom;  // x -> f(x, -1)
};

struct SeriesSolutionQ {
    std::vector<double> a, b;  // Fourier coefficients of f(1, .); b[0] = 0
    std::vector<double> c, d;  // Fourier-Bessel coefficients at y = 1 and y = -1
    int N = 0;
    specfun::BesselBasis basis;
    bool truncation_warning = false;
    std::string warning;

    double eval(double x, double y) const;
    // the A summand alone
    double eval_a(double x, double y) const;
    ScalarField field() const;
};

SeriesSolutionQ series_solve_quad(const QuadTraces& traces, int N = 60);

// f(0, y) from the series with x^-1 I1 and x^-1 J1 replaced by their limits.
// Throws CornerProximity when |y| > 1 - margin.
double boundary_trace_at_zero(const SeriesSolutionQ& sol, double y, double margin = 0.05);

struct QueryPoint {
    double x, y;
};

// Evaluates fn at every point; ordering and values do not depend on the policy.
std::vector<double> solve_points(const std::vector<QueryPoint>& points,
                                 const std::function<double(double, double)>& fn,
                                 sweep::Policy policy = sweep::Policy::parallel);

}  // namespace polylab
