#include "polylab/barriers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "polylab/error.hpp"
#include "polylab/specfun.hpp"

namespace polylab {

namespace {

constexpr double kSqrt8 = 2.8284271247461900976;

struct StJet {
    double g = 0, gs = 0, gt = 0, gss = 0, gst = 0, gtt = 0;
};

using StFn = std::function<StJet(double, double)>;

// (s,t) jet pulled back to (x,y) with s = x^-2/2, t = sqrt(8) y
ScalarField st_field(StFn g, std::string note)
{
    return field_from_jet(
        [g](double x, double y) {
            const double s = 0.5 / (x * x), t = kSqrt8 * y;
            const StJet j = g(s, t);
            const double sx = -1.0 / (x * x * x), sxx = 3.0 / (x * x * x * x);
            FieldJet f;
            f.f = j.g;
            f.fx = j.gs * sx;
            f.fy = kSqrt8 * j.gt;
            f.fxx = j.gss * sx * sx + j.gs * sxx;
            f.fxy = kSqrt8 * j.gst * sx;
            f.fyy = 8.0 * j.gtt;
            return f;
        },
        std::move(note));
}

double get(const BarrierParams& p, const char* key) { return p.at(key); }

void require(bool ok, const std::string& what)
{
    if (!ok) throw Error(ErrorKind::ParamOutOfRange, what);
}

struct Check {
    std::string name;
    std::vector<Vec2> points;
    std::function<double(const Vec2&)> margin;
};

struct Plan {
    std::vector<Vec2> residual_points;  // (x, y)
    std::vector<Check> checks;
};

std::vector<Vec2> halton_1d(int n, double a, double b, double fixed, bool first_varies)
{
    std::vector<Vec2> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double v = a + (b - a) * sweep::halton(i + 21, 2);
        pts.push_back(first_varies ? Vec2{v, fixed} : Vec2{fixed, v});
    }
    return pts;
}

// (s, t) samples with log-uniform s
std::vector<Vec2> st_samples(int n, double s_lo, double s_hi, double t_lo, double t_hi)
{
    auto raw = sweep::halton_points(n, 0, 1, t_lo, t_hi);
    const double a = std::log(s_lo), b = std::log(s_hi);
    for (auto& p : raw) p[0] = std::exp(a + (b - a) * p[0]);
    return raw;
}

std::vector<Vec2> st_to_xy(const std::vector<Vec2>& st)
{
    std::vector<Vec2> out;
    out.reserve(st.size());
    for (const auto& p : st) out.push_back(from_st({p[0], p[1]}));
    return out;
}

struct GrowthConstants {
    double tau0_sq, sigma0, d_over_s0;
};

GrowthConstants growth_constants(const BarrierParams& p)
{
    const double c = get(p, "c"), s0 = get(p, "s0"), t0 = get(p, "t0"), M = get(p, "M"), f0 = get(p, "f0");
    require(c > 1, "c must exceed 1");
    require(s0 > 0, "s0 must be positive");
    require(f0 > 0, "f0 must be positive");
    require(t0 != M, "t0 and M must differ");
    const double tau0_sq = 1 + 0.5 * s0 * (t0 - M) * (t0 - M);
    return {tau0_sq, growth_sigma(c, tau0_sq), growth_d_over_s0(c, tau0_sq, f0)};
}

BarrierCert build_quadrant(BarrierParams p)
{
    const double eps = get(p, "eps"), epsp = get(p, "eps_prime"), delta = get(p, "delta"), ybar = get(p, "ybar");
    require(eps > 0 && epsp > 0 && delta > 0, "eps, eps_prime and delta must be positive");
    p["y_star"] = std::sqrt((eps + epsp) / (4 * eps));
    p["x_min"] = std::sqrt(delta / (eps + epsp));
    BarrierCert cert;
    cert.kind = BarrierKind::quadrant_lower;
    cert.params = p;
    cert.field = field_from_jet(
        [=](double x, double y) {
            const double d = y - ybar, x2 = x * x, x4 = x2 * x2;
            FieldJet j;
            j.f = eps * (x2 - 4 * d * d) + epsp - delta / x2;
            j.fx = 2 * eps * x + 2 * delta / (x2 * x);
            j.fy = -8 * eps * d;
            j.fxx = 2 * eps - 6 * delta / x4;
            j.fyy = -8 * eps;
            return j;
        },
        "positive set precompact in the strip 0 < x < 1");
    return cert;
}

BarrierCert build_growth(BarrierParams p)
{
    const auto k = growth_constants(p);
    const double s0 = get(p, "s0"), M = get(p, "M");
    p["tau0_sq"] = k.tau0_sq;
    p["sigma0"] = k.sigma0;
    p["D_over_s0"] = k.d_over_s0;
    p["D"] = k.d_over_s0 * s0;
    const double dp = k.d_over_s0;
    BarrierCert cert;
    cert.kind = BarrierKind::growth_t;
    cert.params = p;
    cert.field = st_field(
        [=](double s, double t) {
            StJet j;
            j.g = dp * (-s0 / s - s / s0 + 2 + s0 * (t - M) * (t - M));
            j.gs = dp * (s0 / (s * s) - 1 / s0);
            j.gss = -2 * dp * s0 / (s * s * s);
            j.gt = 2 * dp * s0 * (t - M);
            j.gtt = 2 * dp * s0;
            return j;
        },
        "quadratic in t, vanishes at t = M, s = s0");
    return cert;
}

BarrierCert build_monotone(BarrierParams p)
{
    const auto k = growth_constants(p);
    const double s0 = get(p, "s0"), t0 = get(p, "t0"), M = get(p, "M"), f0 = get(p, "f0");
    const double mu = get(p, "mu"), eta = get(p, "eta");
    require(mu > 0 && mu < 1, "mu must lie in (0, 1)");
    require(eta >= 0, "eta must be nonnegative");
    const double S = s0 * (t0 - M) * (t0 - M);
    // f(s0, t) >= alpha f0 ((t - M)/(t0 - M))^2 from growth_t
    const double alpha = k.d_over_s0 * S / f0;
    // half of it keeps the parabola strictly below the growth bound
    const double af0 = 0.5 * alpha * f0;
    const double N = (1 - mu) * af0;
    const double Dc = (1 - mu) / mu * af0 / S;
    const double A = N * (1 - 1 / (mu * S));
    p["alpha"] = alpha;
    p["sigma0"] = k.sigma0;
    p["tau0_sq"] = k.tau0_sq;
    p["A"] = A;
    p["D"] = Dc;
    BarrierCert cert;
    cert.kind = BarrierKind::monotone_s;
    cert.params = p;
    cert.field = st_field(
        [=](double s, double t) {
            StJet j;
            j.g = A + Dc * (s0 / s - s0 * (t - t0) * (t - t0)) - eta * eta * (s - s0);
            j.gs = -Dc * s0 / (s * s) - eta * eta;
            j.gss = 2 * Dc * s0 / (s * s * s);
            j.gt = -2 * Dc * s0 * (t - t0);
            j.gtt = -2 * Dc * s0;
            return j;
        },
        "positive set precompact in s > s0 when eta > 0");
    return cert;
}

BarrierCert build_eigen(BarrierParams p)
{
    const double A = get(p, "A"), epsp = get(p, "eps_prime");
    require(A > 0 && epsp > 0, "A and eps_prime must be positive");
    const double alpha2 = specfun::j1_basis(2).zeros[1];
    const double lam = 1 / (2 * epsp * alpha2);
    p["alpha2"] = alpha2;
    p["lambda"] = lam;
    const ScalarField base = eigenfunction({Operator::modified, 1, lam, Variant::primary, Variant::tilde});
    BarrierCert cert;
    cert.kind = BarrierKind::eigen_eta;
    cert.params = p;
    cert.field = field_from_jet(
        [base, A](double x, double y) {
            FieldJet j = base.jet(x, y);
            j.f *= A;
            j.fx *= A;
            j.fy *= A;
            j.fxx *= A;
            j.fxy *= A;
            j.fyy *= A;
            return j;
        },
        "exponential growth cosh(y / (2 eps' alpha))");
    return cert;
}

Plan plan_quadrant(const BarrierCert& cert, int n)
{
    const auto& p = cert.params;
    const double eps = get(p, "eps"), epsp = get(p, "eps_prime"), delta = get(p, "delta"), ybar = get(p, "ybar");
    const double ys = get(p, "y_star"), xmin = get(p, "x_min");
    const ScalarField f = cert.field;
    Plan plan;
    plan.residual_points = sweep::halton_points(n, 0, 1, ybar - 2 * ys, ybar + 2 * ys);
    plan.checks.push_back({"positive_set_precompact", plan.residual_points, [=](const Vec2& q) {
                               if (!(f(q[0], q[1]) > 0)) return 1.0;
                               return std::min(q[0] - xmin, ys - std::fabs(q[1] - ybar));
                           }});
    // on x = 1 the barrier sits under the delta-free comparison function
    plan.checks.push_back({"below_on_x_equals_1", halton_1d(n, ybar - 2 * ys, ybar + 2 * ys, 1.0, false),
                           [=](const Vec2& q) {
                               const double d = q[1] - ybar;
                               return eps * (1 - 4 * d * d) + epsp - f(1.0, q[1]);
                           }});
    // delta -> 0 path at (delta^{1/4}, ybar)
    std::vector<Vec2> deltas;
    for (int i = 0; i < n; ++i) deltas.push_back({delta * std::pow(1e-8, sweep::halton(i + 21, 2)), 0});
    plan.checks.push_back({"delta_limit", deltas, [=](const Vec2& q) {
                               BarrierParams pd = p;
                               pd["delta"] = q[0];
                               const double psi = build_quadrant(pd).field(std::pow(q[0], 0.25), ybar);
                               return psi - (epsp - std::sqrt(q[0])) + 1e-15;
                           }});
    return plan;
}

Plan plan_growth(const BarrierCert& cert, int n)
{
    const auto& p = cert.params;
    const double c = get(p, "c"), s0 = get(p, "s0"), t0 = get(p, "t0"), M = get(p, "M"), f0 = get(p, "f0");
    const double dp = get(p, "D_over_s0"), tau0_sq = get(p, "tau0_sq");
    const double L = std::fabs(t0 - M), tlo = std::min(t0, M), thi = std::max(t0, M);
    const ScalarField f = cert.field;
    auto psi = [f](double s, double t) {
        const Vec2 q = from_st({s, t});
        return f(q[0], q[1]);
    };
    const auto st = st_samples(n, 1e-3 * s0, 1e3 * s0, tlo - L, thi + L);
    Plan plan;
    plan.residual_points = st_to_xy(st);
    auto sig = st_samples(n, 1e-3 * s0, 1e3 * s0, 0, 1);
    // tangent to f0 sigma^{+-c} at sigma0, so allow rounding slack
    plan.checks.push_back({"below_lower_barrier_on_t0", sig, [=](const Vec2& q) {
                               const double sigma = q[0] / s0;
                               const double H = f0 * std::pow(sigma, sigma < 1 ? c : -c);
                               return H - psi(q[0], t0) + 1e-10 * f0;
                           }});
    plan.checks.push_back({"nonpositive_on_t_equals_M", sig, [=](const Vec2& q) {
                               return -psi(q[0], M) + 1e-14 * dp;
                           }});
    std::vector<Vec2> inside;
    for (const auto& q : st)
        if (q[1] >= tlo && q[1] <= thi) inside.push_back(q);
    plan.checks.push_back({"positive_set_precompact", inside, [=](const Vec2& q) {
                               if (!(psi(q[0], q[1]) > 0)) return 1.0;
                               const double sigma = q[0] / s0;
                               return 2 * tau0_sq - (sigma + 1 / sigma);
                           }});
    plan.checks.push_back({"decay_profile_at_s0", halton_1d(n, tlo, thi, s0, false), [=](const Vec2& q) {
                               const double want = dp * s0 * (q[1] - M) * (q[1] - M);
                               return 1e-12 * (dp + want) - std::fabs(psi(s0, q[1]) - want);
                           }});
    const double simple = f0 / (2 * std::pow(2 * tau0_sq, c) * (tau0_sq - 1));
    plan.checks.push_back({"simplified_bound", {Vec2{s0, t0}}, [=](const Vec2&) { return dp - simple; }});
    plan.checks.push_back({"closed_form_constant", {Vec2{s0, t0}}, [=](const Vec2&) {
                               return 1e-12 * dp - std::fabs(dp - growth_d_over_s0_closed(c, tau0_sq, f0));
                           }});
    return plan;
}

Plan plan_monotone(const BarrierCert& cert, int n)
{
    const auto& p = cert.params;
    const double s0 = get(p, "s0"), t0 = get(p, "t0"), M = get(p, "M"), f0 = get(p, "f0");
    const double eta = get(p, "eta"), A = get(p, "A"), Dc = get(p, "D"), alpha = get(p, "alpha");
    const double L = std::fabs(t0 - M);
    const ScalarField f = cert.field;
    BarrierParams flat_params = p;
    flat_params["eta"] = 0.0;
    const ScalarField flat = build_monotone(flat_params).field;
    auto psi = [f, flat](double s, double t, double e) {
        const Vec2 q = from_st({s, t});
        return e == 0.0 ? flat(q[0], q[1]) : f(q[0], q[1]);
    };
    const double T = std::sqrt((A / Dc + 1) / s0);
    const double s_max = eta > 0 ? s0 + (A + Dc) / (eta * eta) : 1e3 * s0;
    Plan plan;
    const auto st = st_samples(n, s0, 2 * s_max, t0 - 2 * T, t0 + 2 * T);
    plan.residual_points = st_to_xy(st);
    // f(s0, t) >= alpha f0 (1 - |t - t0| / L)^2 inside the window, >= 0 outside
    plan.checks.push_back({"below_growth_bound_on_s0", halton_1d(n, t0 - 2 * L, t0 + 2 * L, s0, false),
                           [=](const Vec2& q) {
                               const double u = std::fabs(q[1] - t0) / L;
                               const double bound = u <= 1 ? alpha * f0 * (1 - u) * (1 - u) : 0.0;
                               return bound - psi(s0, q[1], eta);
                           }});
    if (eta > 0)
        plan.checks.push_back({"positive_set_precompact", st, [=](const Vec2& q) {
                                   if (!(psi(q[0], q[1], eta) > 0)) return 1.0;
                                   return std::min(s_max - q[0], T - std::fabs(q[1] - t0));
                               }});
    plan.checks.push_back({"monotone_conclusion", halton_1d(n, s0, 1e3 * s0, t0, true), [=](const Vec2& q) {
                               return psi(q[0], t0, 0.0) - A * (1 - 1e-14 * (A > 0 ? 1 : -1));
                           }});
    return plan;
}

Plan plan_eigen(const BarrierCert& cert, int n)
{
    const auto& p = cert.params;
    const double A = get(p, "A"), epsp = get(p, "eps_prime"), alpha2 = get(p, "alpha2"), lam = get(p, "lambda");
    const ScalarField f = cert.field;
    const double Y = 4 * epsp * alpha2;
    Plan plan;
    plan.residual_points = sweep::halton_points(n, 0, 2 * epsp, -Y, Y);
    plan.checks.push_back({"positive_below_2eps_prime", plan.residual_points, [=](const Vec2& q) {
                               return f(q[0], q[1]) / (A * std::cosh(lam * q[1]));
                           }});
    plan.checks.push_back({"exponential_lower_estimate", sweep::halton_points(n, 0, epsp, -Y, Y),
                           [=](const Vec2& q) {
                               const double ch = std::cosh(lam * q[1]);
                               const double floor = A / epsp * specfun::j1(1 / (2 * alpha2)) * ch;
                               return (f(q[0], q[1]) - floor) / (A * ch) + 1e-14;
                           }});
    return plan;
}

Plan plan_for(const BarrierCert& cert, int n)
{
    switch (cert.kind) {
    case BarrierKind::quadrant_lower: return plan_quadrant(cert, n);
    case BarrierKind::growth_t: return plan_growth(cert, n);
    case BarrierKind::monotone_s: return plan_monotone(cert, n);
    case BarrierKind::eigen_eta: return plan_eigen(cert, n);
    }
    throw Error(ErrorKind::BadParams, "unknown barrier kind");
}

BarrierCheck run_check(const std::string& name, const std::vector<Vec2>& pts,
                       const std::function<double(const Vec2&)>& margin, sweep::Policy policy)
{
    std::vector<double> m(pts.size());
    sweep::for_each_index(pts.size(), [&](std::size_t i) { m[i] = margin(pts[i]); }, policy);
    BarrierCheck c;
    c.name = name;
    c.samples = static_cast<int>(pts.size());
    c.worst_margin = pts.empty() ? 0.0 : m[0];
    for (std::size_t i = 0; i < m.size(); ++i) {
        c.worst_margin = std::min(c.worst_margin, m[i]);
        if (!(m[i] >= 0)) {
            if (c.violations++ == 0) {
                c.first_violation = static_cast<int>(i);
                c.first_point = pts[i];
            }
        }
    }
    return c;
}

}  // namespace

const char* to_string(BarrierKind k)
{
    switch (k) {
    case BarrierKind::quadrant_lower: return "quadrant_lower";
    case BarrierKind::growth_t: return "growth_t";
    case BarrierKind::monotone_s: return "monotone_s";
    case BarrierKind::eigen_eta: return "eigen_eta";
    }
    return "?";
}

BarrierKind barrier_kind_from_string(const std::string& name)
{
    for (auto k : {BarrierKind::quadrant_lower, BarrierKind::growth_t, BarrierKind::monotone_s, BarrierKind::eigen_eta})
        if (name == to_string(k)) return k;
    throw Error(ErrorKind::BadParams, "unknown barrier kind '" + name + "'");
}

int BarrierReport::violations() const
{
    int n = 0;
    for (const auto& c : checks) n += c.violations;
    return n;
}

BarrierParams default_params(BarrierKind kind)
{
    switch (kind) {
    case BarrierKind::quadrant_lower: return {{"eps", 1}, {"eps_prime", 1}, {"delta", 1e-6}, {"ybar", 0}};
    case BarrierKind::growth_t: return {{"c", 2}, {"s0", 1}, {"t0", 0}, {"M", -2}, {"f0", 1}};
    case BarrierKind::monotone_s:
        return {{"c", 2}, {"s0", 1}, {"t0", 0}, {"M", -2}, {"f0", 1}, {"mu", 0.5}, {"eta", 0.1}};
    case BarrierKind::eigen_eta: return {{"A", 1}, {"eps_prime", 1}};
    }
    return {};
}

double growth_sigma(double c, double tau0_sq)
{
    return c / (c - 1) * (tau0_sq - std::sqrt(tau0_sq * tau0_sq - (c * c - 1) / (c * c)));
}

double growth_d_over_s0(double c, double tau0_sq, double f0)
{
    const double sigma = growth_sigma(c, tau0_sq);
    return 0.5 * (c + 1) * f0 * std::pow(sigma, c) / (tau0_sq - sigma);
}

double growth_d_over_s0_closed(double c, double tau0_sq, double f0)
{
    const double r = std::sqrt(tau0_sq * tau0_sq - (c * c - 1) / (c * c));
    return 0.5 * (c * c - 1) * f0 * std::pow(c / (c - 1), c) * std::pow(tau0_sq - r, c) / (-tau0_sq + c * r);
}

BarrierCert build_barrier(BarrierKind kind, const BarrierParams& params)
{
    BarrierParams p = default_params(kind);
    for (const auto& [key, value] : params) {
        if (!p.count(key)) throw Error(ErrorKind::ParamOutOfRange, "unknown parameter '" + key + "'");
        if (!std::isfinite(value)) throw Error(ErrorKind::ParamOutOfRange, "parameter '" + key + "' is not finite");
        p[key] = value;
    }
    switch (kind) {
    case BarrierKind::quadrant_lower: return build_quadrant(p);
    case BarrierKind::growth_t: return build_growth(p);
    case BarrierKind::monotone_s: return build_monotone(p);
    case BarrierKind::eigen_eta: return build_eigen(p);
    }
    throw Error(ErrorKind::BadParams, "unknown barrier kind");
}

BarrierReport verify_barrier(const BarrierCert& cert, const BarrierOptions& options)
{
    if (options.samples < 1) throw Error(ErrorKind::ParamOutOfRange, "samples must be positive");
    const Plan plan = plan_for(cert, options.samples);
    BarrierReport r;
    r.samples = static_cast<int>(plan.residual_points.size());

    const ScalarField& f = cert.field;
    const double tol = options.residual_tol;
    r.checks.push_back(run_check(
        "pde_residual", plan.residual_points,
        [&](const Vec2& q) { return tol - std::fabs(relative_residual(f, Operator::modified, q[0], q[1])); },
        options.policy));
    r.max_residual = tol - r.checks.back().worst_margin;
    for (const auto& c : plan.checks) r.checks.push_back(run_check(c.name, c.points, c.margin, options.policy));
    return r;
}

void require_passed(const BarrierCert& cert)
{
    for (const auto& c : cert.report.checks) {
        if (c.violations == 0) continue;
        std::ostringstream msg;
        msg.precision(17);
        msg << to_string(cert.kind) << " check " << c.name << " failed at sample " << c.first_violation << " ("
            << c.first_point[0] << ", " << c.first_point[1] << "), " << c.violations << " of " << c.samples
            << " samples violate it";
        throw Error(ErrorKind::VerificationFailed, msg.str(), c.first_violation);
    }
}

BarrierCert make_barrier(BarrierKind kind, const BarrierParams& params, const BarrierOptions& options)
{
    BarrierCert cert = build_barrier(kind, params);
    cert.report = verify_barrier(cert, options);
    require_passed(cert);
    return cert;
}

}  // namespace polylab
