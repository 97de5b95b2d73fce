#pragma once

#include <vector>

namespace polylab::specfun {

enum class BesselKind { J0, J1, J2, Y0, Y1, I0, I1, K0, K1 };

// Beyond this argument e^x is not representable; I throws Overflow, K returns 0.
inline constexpr double kExpLimit = 700.0;

double bessel_eval(BesselKind kind, double x);

double j0(double x);
double j1(double x);
double j2(double x);
double y0(double x);
double y1(double x);
double i0(double x);
double i1(double x);
double k0(double x);
double k1(double x);

// exponentially scaled forms: e^{-|x|} I(x) and e^{x} K(x)
double i0e(double x);
double i1e(double x);
double k0e(double x);
double k1e(double x);

// K1(a)/K1(b) and I1(a)/I1(b), finite whenever the true ratio is
double k1_ratio(double a, double b);
double i1_ratio(double a, double b);

struct BesselBasis {
    std::vector<double> zeros;        // lambda_n, n-th positive zero of J1
    std::vector<double> normalizers;  // alpha_n = J2(lambda_n)^2 / 2
    int size() const { return static_cast<int>(zeros.size()); }
};

BesselBasis j1_basis(int count);

}  // namespace polylab::specfun
