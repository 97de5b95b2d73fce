#include "polylab/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "polylab/error.hpp"
#include "polylab/quadrature.hpp"

namespace polylab {

namespace sf = specfun;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Tail {
    bool exponential = true;
    double rate = 1.0;  // exponential: |G(u)| <= amp e^{-rate |u|}
    double amp = 1.0;   // algebraic:   |G(u)| <= amp |u|^-power
    int power = 3;
};

// Mass of |G| beyond |u| = U, weighted by C (1 + |y| + |u|)^p.
double tail_mass(const Tail& t, double U, double C, double p, double y)
{
    const double w = C * std::pow(1 + std::fabs(y) + U, p);
    if (t.exponential) return 2 * t.amp * w * std::exp(-t.rate * U) / t.rate;
    return 2 * t.amp * w / ((t.power - 1 - p) * std::pow(U, t.power - 1));
}

std::vector<double> rule_breaks(double lo, double hi, const std::vector<double>& extra)
{
    std::vector<double> b{lo, hi};
    for (double e : extra)
        if (e > lo && e < hi) b.push_back(e);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

// int G(y - t) psi(t) dt with peak width w around t = y
double convolve(const std::function<double(double)>& G, const BoundaryTrace& psi, double y, double w,
                const Tail& tail, double tol)
{
    double lo, hi;
    if (psi.support) {
        lo = psi.support->first;
        hi = psi.support->second;
        if (!(hi > lo)) return 0.0;
    } else {
        const double p = psi.growth_exponent;
        if (!tail.exponential && p >= tail.power - 1)
            throw Error(ErrorKind::GrowthMismatch, "trace growth exponent " + std::to_string(p) +
                                                       " too large for a kernel decaying like |u|^-" +
                                                       std::to_string(tail.power));
        double U = std::max(4 * w, 1.0);
        while (tail_mass(tail, U, growth_constant(psi, std::fabs(y) + U), p, y) > 0.25 * tol) {
            U *= 1.5;
            if (U > 1e12) throw Error(ErrorKind::NonConvergence, "convolution tail does not decay");
        }
        lo = y - U;
        hi = y + U;
    }
    std::vector<double> extra = psi.breaks;
    extra.push_back(y);
    for (double r = w; r < hi - lo; r *= 2) {
        extra.push_back(y - r);
        extra.push_back(y + r);
    }
    const auto b = rule_breaks(lo, hi, extra);
    auto integrand = [&](double t) {
        const double v = psi(t);
        return v == 0.0 ? 0.0 : G(y - t) * v;
    };
    const double piece_tol = 0.5 * tol / static_cast<double>(b.size() - 1);
    double sum = 0;
    for (std::size_t i = 0; i + 1 < b.size(); ++i) sum += quad::integrate_adaptive(integrand, b[i], b[i + 1], piece_tol, 200000);
    return sum;
}

double j11() { return sf::j1_basis(1).zeros[0]; }

// decay rate in omega of the symbol, which is also the peak width of the kernel in y
double symbol_rate(const KernelSpec& s, double x, int which)
{
    switch (s.kind) {
    case KernelKind::halfplane_eps: return x - s.eps;
    case KernelKind::strip_eps: return s.eps - x;
    case KernelKind::strip_pair: return which == 0 ? x - s.eps : s.eps_prime - x;
    case KernelKind::halfplane_elementary: return x;
    }
    return x;
}

// (1/pi) int_0^inf T(omega) cos(omega u) d omega from cached nodes. Level L serves
// |u| <= u0 2^L with panels short enough to resolve the oscillation.
class SymbolTable {
public:
    SymbolTable(std::function<double(double)> T, double w, double tol, bool graded)
        : T_(std::move(T)), w_(w), u0_(std::max(w, 0.5)), graded_(graded)
    {
        omega_max_ = (std::log(1 / tol) + 5) / w;
        while (std::fabs(T_(omega_max_)) > 1e-2 * tol * w && omega_max_ < 1e7) omega_max_ *= 1.25;
    }

    double operator()(double u) const
    {
        const double au = std::fabs(u);
        std::size_t level = 0;
        while (u0_ * std::ldexp(1.0, static_cast<int>(level)) < au) ++level;
        while (levels_.size() <= level) build(levels_.size());
        double s = 0;
        for (const auto& n : levels_[level]) s += n.w * std::cos(n.x * au);
        return s;
    }

private:
    void build(std::size_t level) const
    {
        const double umax = u0_ * std::ldexp(1.0, static_cast<int>(level));
        const double h = std::min(2 / w_, 1.5 / umax);
        const double panels = std::ceil(omega_max_ / h);
        if (panels * 15 > 2e7) throw Error(ErrorKind::NonConvergence, "kernel table too large");
        std::vector<quad::Node> nodes;
        const double hh = omega_max_ / panels;
        double start = 0;
        if (graded_) {
            for (int j = 24; j >= 1; --j) {
                const auto part = quad::composite_rule(hh * std::ldexp(1.0, -j), hh * std::ldexp(1.0, 1 - j), 1);
                nodes.insert(nodes.end(), part.begin(), part.end());
            }
            start = hh;
        }
        const auto rest = quad::composite_rule(start, omega_max_, static_cast<int>(panels) - (graded_ ? 1 : 0));
        nodes.insert(nodes.end(), rest.begin(), rest.end());
        for (auto& n : nodes) n.w *= T_(n.x) / kPi;
        levels_.push_back(std::move(nodes));
    }

    std::function<double(double)> T_;
    double w_, u0_, omega_max_;
    bool graded_;
    mutable std::vector<std::vector<quad::Node>> levels_;
};

}  // namespace

BoundaryTrace BoundaryTrace::constant(double c)
{
    BoundaryTrace t;
    t.fn = [c](double) { return c; };
    return t;
}

BoundaryTrace BoundaryTrace::zero()
{
    BoundaryTrace t = constant(0.0);
    t.support = std::pair{0.0, 0.0};
    return t;
}

BoundaryTrace BoundaryTrace::from_function(std::function<double(double)> fn, double growth)
{
    BoundaryTrace t;
    t.fn = std::move(fn);
    t.growth_exponent = growth;
    return t;
}

BoundaryTrace BoundaryTrace::from_samples(std::vector<std::pair<double, double>> samples)
{
    if (samples.empty()) throw Error(ErrorKind::BadParams, "trace has no samples");
    for (const auto& s : samples)
        if (!std::isfinite(s.first) || !std::isfinite(s.second))
            throw Error(ErrorKind::BadParams, "trace samples must be finite");
    std::stable_sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    // a repeated y is a jump: left value first, then right value
    for (std::size_t i = 2; i < samples.size(); ++i)
        if (samples[i].first == samples[i - 2].first)
            throw Error(ErrorKind::BadParams, "at most two trace samples may share a y value");
    BoundaryTrace t;
    auto data = std::make_shared<std::vector<std::pair<double, double>>>(std::move(samples));
    t.fn = [data](double y) {
        const auto& s = *data;
        if (y <= s.front().first) return s.front().second;
        if (y >= s.back().first) return s.back().second;
        const auto it = std::upper_bound(s.begin(), s.end(), std::pair{y, std::numeric_limits<double>::infinity()});
        const auto& [y1, v1] = *it;
        const auto& [y0, v0] = *(it - 1);
        return v0 + (v1 - v0) * (y - y0) / (y1 - y0);
    };
    for (const auto& s : *data)
        if (t.breaks.empty() || t.breaks.back() != s.first) t.breaks.push_back(s.first);
    return t;
}

double growth_constant(const BoundaryTrace& psi, double reach)
{
    const double p = psi.growth_exponent;
    auto weight = [p](double t) { return std::pow(1 + std::fabs(t), p); };
    double lo = -8, hi = 8;
    if (psi.support) {
        lo = psi.support->first;
        hi = psi.support->second;
    }
    double C = 0;
    constexpr int kCore = 257;
    for (int i = 0; i < kCore; ++i) {
        const double t = lo + (hi - lo) * i / (kCore - 1);
        const double v = psi(t);
        if (!std::isfinite(v)) throw Error(ErrorKind::GrowthMismatch, "trace is not finite at " + std::to_string(t));
        C = std::max(C, std::fabs(v) / weight(t));
    }
    if (psi.support) return C;
    const double floor = std::max(C, 1e-300);
    for (int i = 1; i <= 64; ++i) {
        const double r = 8 * std::pow(std::max(std::fabs(reach), 8.0) / 8, i / 64.0);
        for (double t : {r, -r}) {
            const double v = std::fabs(psi(t));
            if (!std::isfinite(v) || v > 100 * floor * weight(t))
                throw Error(ErrorKind::GrowthMismatch, "trace value " + std::to_string(v) + " at t=" +
                                                           std::to_string(t) + " exceeds the declared growth (1+|t|)^" +
                                                           std::to_string(p));
            C = std::max(C, v / weight(t));
        }
    }
    return C;
}

double halfplane_kernel(double x, double y)
{
    const double r2 = x * x + y * y;
    return 0.5 * x * x / (r2 * std::sqrt(r2));
}

double halfplane_solve(const BoundaryTrace& psi, double x, double y, double tol)
{
    if (!(x > 0)) throw Error(ErrorKind::OutsideValidity, "halfplane_solve requires x > 0");
    Tail tail;
    tail.exponential = false;
    tail.amp = 0.5 * x * x;
    return convolve([x](double u) { return halfplane_kernel(x, u); }, psi, y, x, tail, tol);
}

const char* to_string(KernelKind k)
{
    switch (k) {
    case KernelKind::halfplane_elementary: return "halfplane_elementary";
    case KernelKind::halfplane_eps: return "halfplane_eps";
    case KernelKind::strip_eps: return "strip_eps";
    case KernelKind::strip_pair: return "strip_pair";
    }
    return "?";
}

void check_kernel_domain(const KernelSpec& s, double x)
{
    if (!std::isfinite(x)) throw Error(ErrorKind::OutsideValidity, "x is not finite");
    if (s.kind == KernelKind::halfplane_elementary) {
        if (!(x > 0)) throw Error(ErrorKind::OutsideValidity, "elementary kernel needs x > 0");
        return;
    }
    if (!(s.eps > 0)) throw Error(ErrorKind::BadParams, "eps must be positive");
    const double band = s.band * s.eps;
    switch (s.kind) {
    case KernelKind::halfplane_eps:
        if (x < s.eps) throw Error(ErrorKind::OutsideValidity, "halfplane_eps kernel lives on x >= eps");
        if (x - s.eps < band) throw Error(ErrorKind::TooCloseToSource, "x within the delta band of x = eps");
        break;
    case KernelKind::strip_eps:
        if (x < 0 || x > s.eps) throw Error(ErrorKind::OutsideValidity, "strip_eps kernel lives on 0 <= x <= eps");
        if (s.eps - x < band) throw Error(ErrorKind::TooCloseToSource, "x within the delta band of x = eps");
        break;
    case KernelKind::strip_pair:
        if (!(s.eps_prime > s.eps)) throw Error(ErrorKind::BadParams, "strip_pair needs eps < eps_prime");
        if (x < s.eps || x > s.eps_prime)
            throw Error(ErrorKind::OutsideValidity, "strip_pair kernel lives on eps <= x <= eps_prime");
        if (x - s.eps < band || s.eps_prime - x < s.band * s.eps_prime)
            throw Error(ErrorKind::TooCloseToSource, "x within the delta band of a strip side");
        break;
    case KernelKind::halfplane_elementary: break;
    }
}

double kernel_symbol(const KernelSpec& s, double omega, double x, int which)
{
    const double e = s.eps, ep = s.eps_prime;
    const bool small = omega * std::max({x, e, ep}) < 1e-9;
    switch (s.kind) {
    case KernelKind::halfplane_elementary:
        // Fourier transform of G: (omega x) K1(omega x)
        if (omega * x < 1e-300) return 1.0;
        return omega * x * sf::k1e(omega * x) * std::exp(-omega * x);
    case KernelKind::halfplane_eps:
        if (small) return e * e / (x * x);
        return e / x * sf::k1_ratio(omega * x, omega * e);
    case KernelKind::strip_eps:
        if (small) return 1.0;
        if (x == 0.0) return e * 0.5 * omega / (sf::i1e(omega * e) * std::exp(omega * e));
        return e / x * sf::i1_ratio(omega * x, omega * e);
    case KernelKind::strip_pair: {
        if (small) {
            const double den = 1 / (e * e) - 1 / (ep * ep);
            return which == 0 ? (1 / (x * x) - 1 / (ep * ep)) / den : (1 / (e * e) - 1 / (x * x)) / den;
        }
        const double we = omega * e, wp = omega * ep, wx = omega * x;
        const double R = sf::k1e(wp) * sf::i1e(we) / (sf::i1e(wp) * sf::k1e(we)) * std::exp(-2 * omega * (ep - e));
        if (which == 0) {
            const double Q = sf::k1e(wp) * sf::i1e(wx) / (sf::i1e(wp) * sf::k1e(we)) * std::exp(-omega * (2 * ep - x - e));
            return e / x * (sf::k1_ratio(wx, we) - Q) / (1 - R);
        }
        const double P = sf::i1e(we) * sf::k1e(wx) / (sf::k1e(we) * sf::i1e(wp)) * std::exp(-omega * (ep + x - 2 * e));
        return ep / x * (sf::i1_ratio(wx, wp) - P) / (1 - R);
    }
    }
    return 0.0;
}

namespace {

double kernel_component(const KernelSpec& s, double x, double y, int which, double tol)
{
    if (s.kind == KernelKind::halfplane_elementary) return halfplane_kernel(x, y);
    const double rate = symbol_rate(s, x, which);
    auto f = [&](double w) { return kernel_symbol(s, w, x, which) * std::cos(w * y); };
    return quad::integrate_decaying(f, 0.0, rate, kPi * tol) / kPi;
}

double convolve_kernel(const KernelSpec& s, const BoundaryTrace& psi, double x, double y, int which, double tol)
{
    if (psi.support && !(psi.support->second > psi.support->first)) return 0.0;
    const double w = symbol_rate(s, x, which);
    const double ktol = 1e-3 * tol;
    Tail tail;
    if (s.kind == KernelKind::halfplane_eps) {
        // elementary kernel at x' = sqrt(x^2 - eps^2) carries the mass and the |u|^-3 tail;
        // the remainder symbol vanishes at omega = 0 together with its omega^2 log omega term
        const double xe = std::sqrt((x - s.eps) * (x + s.eps));
        const double mass = s.eps * s.eps / (x * x);
        const double main = mass * halfplane_solve(psi, xe, y, 0.5 * tol / mass);
        const SymbolTable G(
            [&](double om) {
                const double z = om * xe;
                const double el = z < 1e-300 ? 1.0 : z * sf::k1e(z) * std::exp(-z);
                return kernel_symbol(s, om, x, 0) - mass * el;
            },
            w, ktol, true);
        tail.exponential = false;
        tail.power = 5;
        const double u0 = 8 * std::max(x, w);
        tail.amp = 4 * std::max(std::fabs(G(u0)) * std::pow(u0, 5), mass * std::pow(x, 4));
        return main + convolve(G, psi, y, w, tail, 0.5 * tol);
    }
    const SymbolTable G([&](double om) { return kernel_symbol(s, om, x, which); }, w, ktol, false);
    tail.rate = s.kind == KernelKind::strip_eps ? j11() / s.eps : kPi / (s.eps_prime - s.eps);
    tail.amp = 4 * std::max(std::fabs(G(0.0)), 1.0 / w);
    return convolve(G, psi, y, w, tail, tol);
}

}  // namespace

KernelValue kernel_eval(const KernelSpec& spec, double x, double y, double tol)
{
    check_kernel_domain(spec, x);
    KernelValue v;
    v.value = kernel_component(spec, x, y, 0, tol);
    if (spec.kind == KernelKind::strip_pair) v.dual = kernel_component(spec, x, y, 1, tol);
    return v;
}

double kernel_solve(const KernelSpec& spec, const BoundaryTrace& psi, double x, double y, double tol)
{
    if (spec.kind == KernelKind::halfplane_elementary) return halfplane_solve(psi, x, y, tol);
    check_kernel_domain(spec, x);
    return convolve_kernel(spec, psi, x, y, 0, tol);
}

double strip_solve(double eps, double eps_prime, const BoundaryTrace& psi_eps, const BoundaryTrace& psi_eps_prime,
                   double x, double y, double tol)
{
    const KernelSpec spec{KernelKind::strip_pair, eps, eps_prime};
    check_kernel_domain(spec, x);
    return convolve_kernel(spec, psi_eps, x, y, 0, 0.5 * tol) + convolve_kernel(spec, psi_eps_prime, x, y, 1, 0.5 * tol);
}

namespace {

// x^-1 I1(pi n x) / I1(pi n), with its x -> 0 limit
double a_radial(int n, double x)
{
    if (n == 0) return 1.0;
    const double l = kPi * n;
    if (x == 0.0) return 0.5 * l / (sf::i1e(l) * std::exp(l));
    return sf::i1_ratio(l * x, l) / x;
}

// x^-1 J1(lambda x), with its x -> 0 limit
double b_radial(double lambda, double x)
{
    if (x == 0.0) return 0.5 * lambda;
    return sf::j1(lambda * x) / x;
}

// sinh(lambda z) / sinh(2 lambda) for z in [0, 2]
double b_weight(double lambda, double z)
{
    return std::exp(lambda * (z - 2)) * (-std::expm1(-2 * lambda * z)) / (-std::expm1(-4 * lambda));
}

std::vector<quad::Node> rule_on(double a, double b, const std::vector<double>& breaks, int panels)
{
    const auto cuts = rule_breaks(a, b, breaks);
    std::vector<quad::Node> nodes;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const int k = std::max(2, static_cast<int>(std::ceil(panels * (cuts[i + 1] - cuts[i]) / (b - a))));
        const auto part = quad::composite_rule(cuts[i], cuts[i + 1], k);
        nodes.insert(nodes.end(), part.begin(), part.end());
    }
    return nodes;
}

}  // namespace

double SeriesSolutionQ::eval_a(double x, double y) const
{
    double s = a.empty() ? 0.0 : a[0];
    for (int n = 1; n <= N; ++n) {
        const double r = a_radial(n, x);
        if (r == 0.0) continue;
        s += r * (a[n] * std::cos(kPi * n * y) + b[n] * std::sin(kPi * n * y));
    }
    return s;
}

double SeriesSolutionQ::eval(double x, double y) const
{
    double s = eval_a(x, y);
    for (int n = 0; n < N; ++n) {
        const double lam = basis.zeros[n];
        const double rad = b_radial(lam, x) / basis.normalizers[n];
        s += rad * (c[n] * b_weight(lam, 1 + y) + d[n] * b_weight(lam, 1 - y));
    }
    return s;
}

ScalarField SeriesSolutionQ::field() const
{
    const SeriesSolutionQ copy = *this;
    return field_from_eval([copy](double x, double y) { return copy.eval(x, y); }, "series on (0,1) x (-1,1)");
}

SeriesSolutionQ series_solve_quad(const QuadTraces& traces, int N)
{
    if (N < 1) throw Error(ErrorKind::BadParams, "N must be positive");
    SeriesSolutionQ sol;
    sol.N = N;
    sol.basis = sf::j1_basis(N);
    sol.a.assign(N + 1, 0.0);
    sol.b.assign(N + 1, 0.0);
    sol.c.assign(N, 0.0);
    sol.d.assign(N, 0.0);

    const int panels = std::max(200, 8 * N);
    for (const auto& node : rule_on(-1, 1, traces.right.breaks, panels)) {
        const double v = traces.right(node.x) * node.w;
        sol.a[0] += 0.5 * v;
        for (int n = 1; n <= N; ++n) {
            sol.a[n] += v * std::cos(kPi * n * node.x);
            sol.b[n] += v * std::sin(kPi * n * node.x);
        }
    }

    auto bessel = [&](const BoundaryTrace& side, double yside, std::vector<double>& out) {
        for (const auto& node : rule_on(0, 1, side.breaks, panels)) {
            const double g = side(node.x) - sol.eval_a(node.x, yside);
            const double v = node.w * node.x * node.x * g;
            for (int n = 0; n < N; ++n) out[n] += v * sf::j1(sol.basis.zeros[n] * node.x);
        }
    };
    bessel(traces.top, 1.0, sol.c);
    bessel(traces.bottom, -1.0, sol.d);

    auto check = [&](const std::vector<double>& v, std::size_t first, const char* name) {
        double head = 0;
        for (std::size_t i = first; i < v.size(); ++i) head = std::max(head, std::fabs(v[i]));
        if (head > 0 && std::fabs(v.back()) > 1e-8 * head) {
            sol.truncation_warning = true;
            if (!sol.warning.empty()) sol.warning += "; ";
            sol.warning += std::string(name) + " coefficients not below 1e-8 of their largest at N";
        }
    };
    check(sol.a, 0, "a");
    check(sol.b, 1, "b");
    check(sol.c, 0, "c");
    check(sol.d, 0, "d");
    return sol;
}

double boundary_trace_at_zero(const SeriesSolutionQ& sol, double y, double margin)
{
    if (!(std::fabs(y) <= 1 - margin))
        throw Error(ErrorKind::CornerProximity, "y = " + std::to_string(y) + " is within the corner margin");
    return sol.eval(0.0, y);
}

std::vector<double> solve_points(const std::vector<QueryPoint>& points,
                                 const std::function<double(double, double)>& fn, sweep::Policy policy)
{
    std::vector<double> out(points.size());
    sweep::for_each_index(points.size(), [&](std::size_t i) { out[i] = fn(points[i].x, points[i].y); }, policy);
    return out;
}

}  // namespace polylab
