#include "polylab/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "polylab/error.hpp"

namespace polylab::specfun {

namespace {

using ld = long double;

constexpr ld kPi = 3.141592653589793238462643383279502884L;
constexpr ld kEulerGamma = 0.577215664901532860606512090082402431L;
constexpr ld kEps = std::numeric_limits<ld>::epsilon();

// switchover between power series and Hankel asymptotics for J and Y
constexpr double kHankelSwitch = 15.0;
// switchover between power series and large-argument asymptotics for I
constexpr double kIAsymSwitch = 30.0;

// sum_k (-1)^k (x/2)^{2k+n} / (k! (k+n)!), n in {0,1}
ld j_series(int n, ld x)
{
    const ld q = -x * x / 4;
    ld term = (n == 0) ? 1.0L : x / 2;
    ld sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<ld>(k) * (k + n));
        sum += term;
        if (k > x && std::fabs(term) < kEps * std::fabs(sum) * 1e-2L) break;
    }
    return sum;
}

// same with all plus signs: I_n
ld i_series(int n, ld x)
{
    const ld q = x * x / 4;
    ld term = (n == 0) ? 1.0L : x / 2;
    ld sum = term;
    for (int k = 1; k < 2000; ++k) {
        term *= q / (static_cast<ld>(k) * (k + n));
        sum += term;
        if (term < kEps * sum * 1e-2L) break;
    }
    return sum;
}

// Hankel P, Q for order n at x
void hankel_pq(int n, ld x, ld& P, ld& Q)
{
    const ld mu = 4.0L * n * n;
    ld t = 1.0L;
    P = 1.0L;
    Q = 0.0L;
    ld prev = 2.0L;
    for (int k = 1; k < 200; ++k) {
        const ld odd = 2.0L * k - 1;
        t *= (mu - odd * odd) / (k * 8.0L * x);
        const ld at = std::fabs(t);
        if (at > prev) break;  // asymptotic series started to diverge
        prev = at;
        // k odd -> Q, k even -> P; signs alternate within each
        if (k % 2 == 1)
            Q += ((k / 2) % 2 == 0) ? t : -t;
        else
            P += ((k / 2) % 2 == 0) ? t : -t;
        if (at < kEps * 1e-2L) break;
    }
}

void hankel_jy(int n, ld x, ld& J, ld& Y)
{
    ld P, Q;
    hankel_pq(n, x, P, Q);
    const ld chi = x - (0.5L * n + 0.25L) * kPi;
    const ld amp = std::sqrt(2.0L / (kPi * x));
    const ld c = std::cos(chi), s = std::sin(chi);
    J = amp * (P * c - Q * s);
    Y = amp * (P * s + Q * c);
}

ld y0_series(ld x)
{
    const ld q = -x * x / 4;
    ld term = 1.0L;
    ld h = 0.0L;
    ld sum = 0.0L;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<ld>(k) * k);
        h += 1.0L / k;
        const ld add = -term * h;  // (-1)^{k+1} H_k (x^2/4)^k / k!^2
        sum += add;
        if (k > x && std::fabs(add) < kEps * 1e-2L * (std::fabs(sum) + 1)) break;
    }
    return (2.0L / kPi) * ((std::log(x / 2) + kEulerGamma) * j_series(0, x) + sum);
}

ld y1_series(ld x)
{
    // psi(k+1) + psi(k+2) = 2 H_k + 1/(k+1) - 2 gamma
    const ld q = -x * x / 4;
    ld term = x / 2;  // (-1)^k (x/2)^{2k+1} / (k! (k+1)!)
    ld sum = term * (1.0L - 2 * kEulerGamma);
    ld h = 0.0L;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<ld>(k) * (k + 1));
        h += 1.0L / k;
        const ld add = term * (2 * h + 1.0L / (k + 1) - 2 * kEulerGamma);
        sum += add;
        if (k > x && std::fabs(add) < kEps * 1e-2L * (std::fabs(sum) + 1)) break;
    }
    return -2.0L / (kPi * x) + (2.0L / kPi) * std::log(x / 2) * j_series(1, x) - sum / kPi;
}

// e^{-x} I_n(x) for x >= kIAsymSwitch
ld i_asym_scaled(int n, ld x)
{
    const ld mu = 4.0L * n * n;
    ld t = 1.0L, sum = 1.0L, prev = 2.0L;
    for (int k = 1; k < 200; ++k) {
        const ld odd = 2.0L * k - 1;
        t *= -(mu - odd * odd) / (k * 8.0L * x);
        const ld at = std::fabs(t);
        if (at > prev) break;
        prev = at;
        sum += t;
        if (at < kEps * 1e-2L) break;
    }
    return sum / std::sqrt(2.0L * kPi * x);
}

ld i_scaled(int n, ld x)
{
    if (x < kIAsymSwitch) return i_series(n, x) * std::exp(-x);
    return i_asym_scaled(n, x);
}

ld k0_series(ld x)
{
    const ld q = x * x / 4;
    ld term = 1.0L, h = 0.0L, sum = 0.0L;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<ld>(k) * k);
        h += 1.0L / k;
        sum += term * h;
        if (term * h < kEps * 1e-2L * sum) break;
    }
    return -(std::log(x / 2) + kEulerGamma) * i_series(0, x) + sum;
}

ld k1_series(ld x)
{
    const ld q = x * x / 4;
    ld term = 1.0L;  // (x^2/4)^k / (k! (k+1)!)
    ld h = 0.0L;
    ld sum = (1.0L - 2 * kEulerGamma);
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<ld>(k) * (k + 1));
        h += 1.0L / k;
        const ld add = term * (2 * h + 1.0L / (k + 1) - 2 * kEulerGamma);
        sum += add;
        if (std::fabs(add) < kEps * 1e-2L * std::fabs(sum)) break;
    }
    return 1.0L / x + std::log(x / 2) * i_series(1, x) - x / 4 * sum;
}

// Steed's continued fraction (CF2) for e^x K0, e^x K1, valid for x >= 2
void k_scaled_cf2(ld x, ld& k0s, ld& k1s)
{
    ld b = 2.0L * (1.0L + x);
    ld d = 1.0L / b;
    ld h = d, delh = d;
    ld q1 = 0.0L, q2 = 1.0L;
    const ld a1 = 0.25L;
    ld q = a1, c = a1;
    ld a = -a1;
    ld s = 1.0L + q * delh;
    for (int i = 1; i < 10000; ++i) {
        a -= 2 * i;
        c = -a * c / (i + 1.0L);
        const ld qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0L;
        d = 1.0L / (b + a * d);
        delh = (b * d - 1.0L) * delh;
        h += delh;
        const ld dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) < kEps) break;
    }
    h = a1 * h;
    k0s = std::sqrt(kPi / (2.0L * x)) / s;
    k1s = k0s * (x + 0.5L - h) / x;
}

void require_positive(double x, const char* what)
{
    if (!(x > 0)) throw Error(ErrorKind::Domain, std::string(what) + " requires x > 0");
}

}  // namespace

double j0(double x)
{
    const ld ax = std::fabs(static_cast<ld>(x));
    if (ax < kHankelSwitch) return static_cast<double>(j_series(0, ax));
    ld J, Y;
    hankel_jy(0, ax, J, Y);
    return static_cast<double>(J);
}

double j1(double x)
{
    const ld ax = std::fabs(static_cast<ld>(x));
    ld J;
    if (ax < kHankelSwitch) {
        J = j_series(1, ax);
    } else {
        ld Y;
        hankel_jy(1, ax, J, Y);
    }
    return static_cast<double>(x < 0 ? -J : J);
}

double j2(double x)
{
    if (x == 0.0) return 0.0;
    const ld ax = std::fabs(static_cast<ld>(x));
    ld J0, J1;
    if (ax < kHankelSwitch) {
        // direct series avoids cancellation in 2J1/x - J0 at small x
        const ld q = -ax * ax / 4;
        ld term = ax * ax / 8;
        ld sum = term;
        for (int k = 1; k < 500; ++k) {
            term *= q / (static_cast<ld>(k) * (k + 2));
            sum += term;
            if (k > ax && std::fabs(term) < kEps * 1e-2L * std::fabs(sum)) break;
        }
        return static_cast<double>(sum);
    }
    ld Y;
    hankel_jy(0, ax, J0, Y);
    hankel_jy(1, ax, J1, Y);
    return static_cast<double>(2 * J1 / ax - J0);
}

double y0(double x)
{
    require_positive(x, "Y0");
    if (x < kHankelSwitch) return static_cast<double>(y0_series(x));
    ld J, Y;
    hankel_jy(0, x, J, Y);
    return static_cast<double>(Y);
}

double y1(double x)
{
    require_positive(x, "Y1");
    if (x < kHankelSwitch) return static_cast<double>(y1_series(x));
    ld J, Y;
    hankel_jy(1, x, J, Y);
    return static_cast<double>(Y);
}

double i0e(double x)
{
    return static_cast<double>(i_scaled(0, std::fabs(static_cast<ld>(x))));
}

double i1e(double x)
{
    const ld v = i_scaled(1, std::fabs(static_cast<ld>(x)));
    return static_cast<double>(x < 0 ? -v : v);
}

double i0(double x)
{
    const double ax = std::fabs(x);
    if (ax > kExpLimit) throw Error(ErrorKind::Overflow, "I0: e^x not representable");
    if (ax < kIAsymSwitch) return static_cast<double>(i_series(0, ax));
    return static_cast<double>(i_asym_scaled(0, ax) * std::exp(static_cast<ld>(ax)));
}

double i1(double x)
{
    const double ax = std::fabs(x);
    if (ax > kExpLimit) throw Error(ErrorKind::Overflow, "I1: e^x not representable");
    ld v = (ax < kIAsymSwitch) ? i_series(1, ax)
                               : i_asym_scaled(1, ax) * std::exp(static_cast<ld>(ax));
    return static_cast<double>(x < 0 ? -v : v);
}

double k0e(double x)
{
    require_positive(x, "K0");
    if (x <= 2.0) return static_cast<double>(k0_series(x) * std::exp(static_cast<ld>(x)));
    ld a, b;
    k_scaled_cf2(x, a, b);
    return static_cast<double>(a);
}

double k1e(double x)
{
    require_positive(x, "K1");
    if (x <= 2.0) return static_cast<double>(k1_series(x) * std::exp(static_cast<ld>(x)));
    ld a, b;
    k_scaled_cf2(x, a, b);
    return static_cast<double>(b);
}

double k0(double x)
{
    require_positive(x, "K0");
    if (x <= 2.0) return static_cast<double>(k0_series(x));
    if (x > kExpLimit) return 0.0;
    return static_cast<double>(static_cast<ld>(k0e(x)) * std::exp(-static_cast<ld>(x)));
}

double k1(double x)
{
    require_positive(x, "K1");
    if (x <= 2.0) return static_cast<double>(k1_series(x));
    if (x > kExpLimit) return 0.0;
    return static_cast<double>(static_cast<ld>(k1e(x)) * std::exp(-static_cast<ld>(x)));
}

double k1_ratio(double a, double b)
{
    return k1e(a) / k1e(b) * std::exp(b - a);
}

double i1_ratio(double a, double b)
{
    if (a == 0.0) return 0.0;
    return i1e(a) / i1e(b) * std::exp(std::fabs(a) - std::fabs(b));
}

double bessel_eval(BesselKind kind, double x)
{
    switch (kind) {
    case BesselKind::J0: return j0(x);
    case BesselKind::J1: return j1(x);
    case BesselKind::J2: return j2(x);
    case BesselKind::Y0: return y0(x);
    case BesselKind::Y1: return y1(x);
    case BesselKind::I0: return i0(x);
    case BesselKind::I1: return i1(x);
    case BesselKind::K0: return k0(x);
    case BesselKind::K1: return k1(x);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

BesselBasis j1_basis(int count)
{
    BesselBasis basis;
    if (count < 1) return basis;
    basis.zeros.reserve(count);
    basis.normalizers.reserve(count);
    for (int s = 1; s <= count; ++s) {
        // McMahon: beta - (mu-1)/(8 beta) - 4(mu-1)(7mu-31)/(3 (8 beta)^3), mu = 4
        const double beta = (s + 0.25) * std::numbers::pi;
        const double b8 = 8 * beta;
        double z = beta - 3.0 / b8 + 4.0 * 3.0 * 3.0 / (3.0 * b8 * b8 * b8);
        for (int it = 0; it < 50; ++it) {
            const double f = j1(z);
            const double fp = 0.5 * (j0(z) - j2(z));
            const double dz = f / fp;
            z -= dz;
            if (std::fabs(dz) < 1e-15 * z) break;
        }
        const double J2 = j2(z);
        basis.zeros.push_back(z);
        basis.normalizers.push_back(0.5 * J2 * J2);
    }
    return basis;
}

}  // namespace polylab::specfun
