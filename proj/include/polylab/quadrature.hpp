#pragma once

#include <functional>
#include <vector>

namespace polylab::quad {

using Fn = std::function<double(double)>;

struct Result {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
    int intervals = 0;
};

// Globally adaptive Gauss-Kronrod (7/15) bisection; exact for polynomials of
// degree <= 13 on each panel. Throws NonConvergence past max_intervals.
Result integrate_adaptive_ex(const Fn& f, double a, double b, double tol,
                             int max_intervals = 4000);
double integrate_adaptive(const Fn& f, double a, double b, double tol,
                          int max_intervals = 4000);

// Adaptive integration over each piece between sorted breakpoints.
double integrate_pieces(const Fn& f, const double* breaks, int nbreaks, double tol);

struct Node {
    double x, w;
};

// Fixed composite rule: the 15-point Kronrod nodes on `panels` equal panels of [a, b].
std::vector<Node> composite_rule(double a, double b, int panels);

// Integral over [a, inf) of f with |f(w)| <= C e^{-rate (w-a)}. C is estimated by
// sampling; the integral is truncated where the bound falls below tol.
// Throws DecayMismatch when the samples grow relative to the declared rate.
double integrate_decaying(const Fn& f, double a, double rate, double tol);

// Truncation point used by integrate_decaying for a given envelope constant.
double decay_cutoff(double a, double rate, double C, double tol);

}  // namespace polylab::quad
