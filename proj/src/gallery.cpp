#include "polylab/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <unsupported/Eigen/AutoDiff>

#include "polylab/error.hpp"

namespace polylab {

namespace {

using Ad1 = Eigen::AutoDiffScalar<Eigen::Vector2d>;
using Ad2 = Eigen::AutoDiffScalar<Eigen::Matrix<Ad1, 2, 1>>;

constexpr double kSqrt2 = std::numbers::sqrt2;

std::pair<Ad2, Ad2> seeds(double x, double y)
{
    Ad2 X(Ad1(x, 2, 0), Eigen::Matrix<Ad1, 2, 1>::Unit(2, 0));
    Ad2 Y(Ad1(y, 2, 1), Eigen::Matrix<Ad1, 2, 1>::Unit(2, 1));
    for (int i = 0; i < 2; ++i) {
        X.derivatives()(i).derivatives().setZero();
        Y.derivatives()(i).derivatives().setZero();
    }
    return {X, Y};
}

FieldJet to_jet(const Ad2& v)
{
    FieldJet j;
    j.f = v.value().value();
    j.fx = v.derivatives()(0).value();
    j.fy = v.derivatives()(1).value();
    j.fxx = v.derivatives()(0).derivatives()(0);
    j.fxy = v.derivatives()(0).derivatives()(1);
    j.fyy = v.derivatives()(1).derivatives()(1);
    return j;
}

// Closed forms are written once, generic in the scalar type.
template <class F>
ScalarField ad_field(F f, std::string note = {})
{
    return field_from_jet(
        [f](double x, double y) {
            const auto [X, Y] = seeds(x, y);
            return to_jet(f(X, Y));
        },
        std::move(note));
}

template <class F1, class F2>
Potential ad_potential(std::string name, F1 f1, F2 f2, std::vector<double> corners,
                       std::function<bool(double, double)> valid)
{
    Potential p;
    p.name = std::move(name);
    p.corners = std::move(corners);
    p.valid = std::move(valid);
    p.jet = [f1, f2](double x, double y) {
        const auto [X, Y] = seeds(x, y);
        PotentialJet pj;
        const FieldJet a = to_jet(f1(X, Y)), b = to_jet(f2(X, Y));
        pj.phi = {a.f, b.f};
        pj.A << a.fx, a.fy, b.fx, b.fy;
        pj.H[0] << a.fxx, a.fxy, a.fxy, a.fyy;
        pj.H[1] << b.fxx, b.fxy, b.fxy, b.fyy;
        return pj;
    };
    return p;
}

template <class T>
T disc(const T& x, const T& y)
{
    using std::sqrt;
    const T R = x * x + y * y;
    return sqrt((1.0 - R) * (1.0 - R) + 4.0 * y * y);
}

template <class T>
T ex1_phi(const T& x, const T& y)
{
    using std::sqrt;
    const T R = x * x + y * y;
    return kSqrt2 - sqrt(1.0 - R + disc(x, y));
}

template <class T>
T step_phi(const T& x, const T& y)
{
    using std::sqrt;
    return 0.5 * (1.0 + y / sqrt(x * x + y * y));
}

template <class T>
T delta_psi(const T& x, const T& y)
{
    using std::sqrt;
    const T r2 = x * x + y * y;
    return 0.5 * x * x / (r2 * sqrt(r2));
}

template <class T>
T pulse_phi(const T& x, const T& y)
{
    using std::sqrt;
    const T yp = y + 0.5, ym = y - 0.5;
    return 0.5 * (yp / sqrt(x * x + yp * yp) - ym / sqrt(x * x + ym * ym));
}

template <class T>
T ex4_phi(const T& x, const T& y)
{
    using std::log;
    using std::sqrt;
    const T r = sqrt(x * x + y * y);
    return y * r + x * x * log((y + r) / x);
}

template <class T>
T ex7_phi1(const T& x, const T& y)
{
    using std::sqrt;
    return y / sqrt(x * x + y * y);
}

template <class T>
T ex7_phi2(const T& x, const T& y)
{
    using std::sqrt;
    return sqrt(x * x + y * y);
}

template <class T>
T ex8_phi1(const T& x, const T& y)
{
    using std::sqrt;
    const T R = x * x + y * y;
    return std::sqrt(0.5) * sqrt(1.0 - R + disc(x, y));
}

// phi1 >= 0 sheet: phi2 carries the sign of y
template <class T>
T ex8_phi2(const T& x, const T& y)
{
    using std::sqrt;
    const T R = x * x + y * y;
    const double sign = y < 0 ? -1.0 : 1.0;
    return sign * std::sqrt(0.5) * sqrt(R - 1.0 + disc(x, y));
}

template <class F>
ScalarField dual_of(F f)
{
    return ad_field([f](const auto& x, const auto& y) { return f(x, y) / (x * x); });
}

void require_params(int id, const std::map<std::string, double>& given, const std::map<std::string, double>& defaults)
{
    for (const auto& [k, v] : given) {
        if (!defaults.count(k))
            throw Error(ErrorKind::BadParams, "Example " + std::to_string(id) + " has no parameter '" + k + "'");
        if (!std::isfinite(v)) throw Error(ErrorKind::BadParams, "parameter '" + k + "' is not finite");
    }
}

std::map<std::string, double> merged(const std::map<std::string, double>& defaults,
                                     const std::map<std::string, double>& given)
{
    auto out = defaults;
    for (const auto& [k, v] : given) out[k] = v;
    return out;
}

// cut along {y = 0, x >= 1}
bool off_branch_ray(double x, double y) { return x < 0.9 || std::fabs(y) > 0.05; }

}  // namespace

const GalleryField& GalleryEntry::field(const std::string& name) const
{
    for (const auto& f : fields)
        if (f.name == name) return f;
    throw Error(ErrorKind::BadParams, "Example " + std::to_string(id) + " has no field '" + name + "'");
}

std::vector<int> gallery_ids() { return {1, 2, 3, 4, 5, 6, 7, 8}; }

OutlineSpec example6_outline(double v1, double v2, double v3, double alpha, double beta)
{
    OutlineSpec s;
    s.vertices = {{0, 1}, {1, 0}};
    s.ray_in = {0, -1};
    s.ray_out = {1, 0};
    s.speeds = {v1, v2, v3};
    s.alpha = alpha;
    s.beta = beta;
    return s;
}

ExpandedMap example6_displayed(double v1, double v2, double v3, double alpha, double beta)
{
    const double k = v2 / (2 * kSqrt2);
    const double y2 = kSqrt2 / v2;
    ExpandedMap e;
    e.constant = {-(v3 / 2 - k) * y2, 1 - k * y2};
    e.linear = {v3 / 2, -v1 / 2};
    e.rho = {{0.0, Vec2(k, v1 / 2 - k)}, {y2, Vec2(v3 / 2 - k, k)}};
    e.quad = {alpha / 2, beta / 2};
    return e;
}

GalleryEntry gallery(int id, const std::map<std::string, double>& params)
{
    GalleryEntry e;
    e.id = id;
    e.regular = [](double, double) { return true; };
    const auto un = Operator::unmodified, mod = Operator::modified;
    switch (id) {
    case 1:
        require_params(id, params, {});
        e.title = "Superharmonic solutions";
        e.fields = {{"phi", ad_field([](const auto& x, const auto& y) { return ex1_phi(x, y); }), un,
                     "solves off the branch ray"},
                    {"f", dual_of([](const auto& x, const auto& y) { return ex1_phi(x, y); }), mod, "phi x^-2"}};
        e.singular_set = "branch point (1,0), branch ray {y=0, x>=1}";
        e.regular = off_branch_ray;
        break;
    case 2:
        require_params(id, params, {});
        e.title = "Step functions and delta functions";
        e.fields = {{"phi", ad_field([](const auto& x, const auto& y) { return step_phi(x, y); }), un, "unit step trace"},
                    {"psi", ad_field([](const auto& x, const auto& y) { return delta_psi(x, y); }), un, "Dirac trace"},
                    {"f", dual_of([](const auto& x, const auto& y) { return step_phi(x, y); }), mod, "phi x^-2"},
                    {"g", dual_of([](const auto& x, const auto& y) { return delta_psi(x, y); }), mod, "psi x^-2"}};
        e.singular_set = "origin";
        break;
    case 3:
        require_params(id, params, {});
        e.title = "A pulse on {x=0}";
        e.fields = {{"phi", ad_field([](const auto& x, const auto& y) { return pulse_phi(x, y); }), un, "pulse trace"},
                    {"f", dual_of([](const auto& x, const auto& y) { return pulse_phi(x, y); }), mod, "phi x^-2"}};
        e.singular_set = "(0, -1/2) and (0, 1/2)";
        break;
    case 4:
        require_params(id, params, {});
        e.title = "A solution that is only C^{1,alpha}";
        e.fields = {{"phi", ad_field([](const auto& x, const auto& y) { return ex4_phi(x, y); }), un,
                     "trace y|y|"}};
        e.singular_set = "origin (C^{1,alpha} only)";
        break;
    case 5: {
        const std::map<std::string, double> defs{{"M", 1.0}, {"k", 0.0}};
        require_params(id, params, defs);
        e.params = merged(defs, params);
        const double M = e.params["M"], k = e.params["k"];
        if (!(M > 0)) throw Error(ErrorKind::BadParams, "Example 5 needs M > 0");
        if (!(k >= -1 && k <= 1)) throw Error(ErrorKind::BadParams, "Example 5 needs k in [-1, 1]");
        e.title = "Doubly-invariant scalar-flat metrics on C^2";
        e.map = quarterplane_map(M * (1 + k) / kSqrt2, M * (1 - k) / kSqrt2);
        e.potential = make_potential(*e.map, "example5");
        e.conformal_factor = [M, k](double x, double y) {
            const double r = std::hypot(x, y);
            return (1 + M * r + M * k * y) / r;
        };
        e.curvature = [M, k](double x, double y) {
            const double r = std::hypot(x, y), s = y / r;
            const double den = 1 + M * r * (1 + k * s);
            return -M * (1 - M * k * r * (k + s)) / (den * den * den);
        };
        e.singular_set = "corner (0,0)";
        e.region = {0.05, 4.0, -3.0, 4.0};
        break;
    }
    case 6: {
        const std::map<std::string, double> defs{{"v1", 1.0}, {"v2", 1.0}, {"v3", 1.0}, {"alpha", 0.0}, {"beta", 0.0}};
        require_params(id, params, defs);
        e.params = merged(defs, params);
        for (const char* v : {"v1", "v2", "v3"})
            if (!(e.params[v] > 0)) throw Error(ErrorKind::BadParams, std::string("Example 6 needs ") + v + " > 0");
        for (const char* v : {"alpha", "beta"})
            if (!(e.params[v] >= 0)) throw Error(ErrorKind::BadParams, std::string("Example 6 needs ") + v + " >= 0");
        e.title = "Doubly-invariant scalar-flat metrics on TCP^1";
        e.outline = example6_outline(e.params["v1"], e.params["v2"], e.params["v3"], e.params["alpha"], e.params["beta"]);
        e.map = synthesize(validate_outline(*e.outline));
        e.potential = make_potential(*e.map, "example6");
        e.singular_set = "corners (0,0) and (0, sqrt2/v2)";
        e.region = {0.05, 4.0, -3.0, 4.0};
        break;
    }
    case 7:
        require_params(id, params, {});
        e.title = "A polytope with an edge at infinity";
        e.fields = {{"phi1", ad_field([](const auto& x, const auto& y) { return ex7_phi1(x, y); }), un, "y / r"},
                    {"phi2", ad_field([](const auto& x, const auto& y) { return ex7_phi2(x, y); }), un, "r"}};
        e.potential = ad_potential(
            "example7", [](const auto& x, const auto& y) { return ex7_phi1(x, y); },
            [](const auto& x, const auto& y) { return ex7_phi2(x, y); }, {0.0}, {});
        e.phi_to_xy = [](const Vec2& p) { return Vec2(std::sqrt(1 - p[0] * p[0]) * p[1], p[0] * p[1]); };
        e.singular_set = "origin; the segment phi2 = 0 is at infinite distance";
        break;
    case 8: {
        require_params(id, params, {});
        e.title = "A polytope with a disconnected outline";
        e.fields = {{"phi1", ad_field([](const auto& x, const auto& y) { return ex8_phi1(x, y); }), un, "phi1 >= 0 sheet"},
                    {"phi2", ad_field([](const auto& x, const auto& y) { return ex8_phi2(x, y); }), un, "sign of y"}};
        e.regular = off_branch_ray;
        e.potential = ad_potential(
            "example8", [](const auto& x, const auto& y) { return ex8_phi1(x, y); },
            [](const auto& x, const auto& y) { return ex8_phi2(x, y); }, {}, e.regular);
        e.phi_to_xy = [](const Vec2& p) {
            return Vec2(std::sqrt((1 - p[0] * p[0]) * (1 + p[1] * p[1])), p[0] * p[1]);
        };
        e.singular_set = "critical point (1,0) of z = x + iy; branch cut {y=0, x>1} of the phi1 >= 0 sheet";
        break;
    }
    default: throw Error(ErrorKind::BadParams, "no gallery example " + std::to_string(id));
    }
    return e;
}

bool GalleryReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const GalleryCheck& c) { return c.passed; });
}

namespace {

class Sampler {
public:
    Sampler(const GalleryEntry& e, std::uint64_t seed) : e_(e), rng_(seed) {}

    std::vector<Vec2> points(int n)
    {
        std::uniform_real_distribution<double> ux(e_.region.x0, e_.region.x1), uy(e_.region.y0, e_.region.y1);
        std::vector<Vec2> out;
        while (static_cast<int>(out.size()) < n) {
            const double x = ux(rng_), y = uy(rng_);
            if (e_.regular(x, y)) out.emplace_back(x, y);
        }
        return out;
    }

    // (r, theta) in [0.1, 5] x [0, pi/2] as (x, y)
    std::vector<Vec2> polar(int n)
    {
        std::uniform_real_distribution<double> ur(0.1, 5.0), ut(0.0, std::numbers::pi / 2);
        std::vector<Vec2> out;
        while (static_cast<int>(out.size()) < n) {
            const double r = ur(rng_), t = ut(rng_);
            if (r * std::cos(t) >= 1e-3) out.emplace_back(r * std::cos(t), r * std::sin(t));
        }
        return out;
    }

    std::mt19937_64& rng() { return rng_; }

private:
    const GalleryEntry& e_;
    std::mt19937_64 rng_;
};

GalleryCheck run(const std::string& name, const std::string& suite, const std::vector<Vec2>& pts, double tol,
                 const std::function<double(double, double)>& deviation, sweep::Policy policy)
{
    const auto dev = sweep::map_points(pts, deviation, policy);
    GalleryCheck c{name, suite, static_cast<int>(pts.size()), 0.0, tol, true};
    for (double d : dev) {
        if (!(d <= tol)) c.passed = false;
        if (std::isnan(d)) c.max_deviation = d;
        else if (!std::isnan(c.max_deviation)) c.max_deviation = std::max(c.max_deviation, d);
    }
    return c;
}

double coefficient_error(const ExpandedMap& a, const ExpandedMap& b)
{
    if (a.rho.size() != b.rho.size()) return std::numeric_limits<double>::infinity();
    double e = std::max({(a.constant - b.constant).cwiseAbs().maxCoeff(), (a.linear - b.linear).cwiseAbs().maxCoeff(),
                         (a.quad - b.quad).cwiseAbs().maxCoeff()});
    for (std::size_t i = 0; i < a.rho.size(); ++i)
        e = std::max({e, std::fabs(a.rho[i].first - b.rho[i].first),
                      (a.rho[i].second - b.rho[i].second).cwiseAbs().maxCoeff()});
    return e;
}

}  // namespace

GalleryReport crosscheck(const GalleryEntry& e, int samples, std::uint64_t seed, sweep::Policy policy)
{
    if (samples < 1) throw Error(ErrorKind::BadParams, "samples must be positive");
    GalleryReport rep;
    rep.id = e.id;
    Sampler sm(e, seed);

    for (const auto& gf : e.fields) {
        if (!gf.op) continue;
        const auto pts = sm.points(samples);
        rep.checks.push_back(run("residual_" + gf.name, "residual", pts, 1e-9,
                                 [&](double x, double y) { return std::fabs(relative_residual(gf.field, *gf.op, x, y)); },
                                 policy));
    }

    auto boundary_trace = [&](const std::string& name, const std::function<double(double)>& expect) {
        const auto& f = e.field("phi").field;
        std::vector<Vec2> pts;
        for (const auto& p : sm.points(samples)) pts.emplace_back(1e-7, p[1]);
        rep.checks.push_back(run(name, "residual", pts, 1e-6,
                                 [&](double x, double y) { return std::fabs(f(x, y) - expect(y)); }, policy));
    };

    switch (e.id) {
    case 1: {
        const auto& phi = e.field("phi").field;
        rep.checks.push_back(run("superharmonic_fd", "residual", sm.points(samples), 1e-6,
                                 [&](double x, double y) {
                                     return residual(phi, Operator::unmodified, x, y, ResidualMode::fd);
                                 },
                                 policy));
        boundary_trace("zero_trace", [](double) { return 0.0; });
        break;
    }
    case 2: {
        const auto& phi = e.field("phi").field;
        const auto& psi = e.field("psi").field;
        rep.checks.push_back(run("psi_is_phi_y", "identity", sm.points(samples), 1e-12,
                                 [&](double x, double y) { return std::fabs(phi.jet(x, y).fy - psi(x, y)); }, policy));
        // |y| >= 1e-3 keeps the trace away from the jump
        boundary_trace("step_trace", [](double y) { return std::fabs(y) < 1e-3 ? 0.5 : (y > 0 ? 1.0 : 0.0); });
        break;
    }
    case 3:
        boundary_trace("pulse_trace", [](double y) {
            return std::fabs(std::fabs(y) - 0.5) < 1e-3 ? 0.5 : (std::fabs(y) < 0.5 ? 1.0 : 0.0);
        });
        break;
    case 4:
        boundary_trace("quadratic_trace", [](double y) { return y * std::fabs(y); });
        break;
    case 5: {
        const auto& pot = *e.potential;
        const auto pts = sm.polar(samples);
        rep.checks.push_back(run("curvature_closed_form", "curvature", pts, 1e-5,
                                 [&](double x, double y) { return std::fabs(gauss_curvature(pot, x, y) - e.curvature(x, y)); },
                                 policy));
        rep.checks.push_back(run("conformal_factor_closed_form", "curvature", pts, 1e-10,
                                 [&](double x, double y) {
                                     const double F = metric_sigma(pot, x, y, Chart::xy).m11;
                                     return std::fabs(F - e.conformal_factor(x, y)) / F;
                                 },
                                 policy));
        if (e.params.at("k") == 0.0)
            rep.checks.push_back(run("rotational_symmetry", "curvature", pts, 1e-8,
                                     [&](double x, double y) {
                                         const double r = std::hypot(x, y);
                                         return std::fabs(gauss_curvature(pot, x, y) - gauss_curvature(pot, r, 0.0));
                                     },
                                     policy));
        break;
    }
    case 6: {
        const auto& p = e.params;
        GalleryCheck c{"coefficients_vs_display", "identity", 1, 0, 1e-14, true};
        c.max_deviation = coefficient_error(expand(*e.map), example6_displayed(p.at("v1"), p.at("v2"), p.at("v3"),
                                                                                p.at("alpha"), p.at("beta")));
        c.passed = c.max_deviation <= c.tol;
        rep.checks.push_back(c);
        const auto v = validate_outline(*e.outline);
        std::vector<Vec2> pts;
        std::uniform_real_distribution<double> uy(-4.0, 6.0);
        for (int i = 0; i < samples; ++i) pts.emplace_back(0.0, uy(sm.rng()));
        rep.checks.push_back(run("outline_round_trip", "identity", pts, 1e-12,
                                 [&](double, double y) { return (eval_map(*e.map, 0.0, y) - outline_point(v, y)).norm(); },
                                 policy));
        break;
    }
    case 7:
    case 8: {
        const auto& f1 = e.field("phi1").field;
        const auto& f2 = e.field("phi2").field;
        rep.checks.push_back(run("inverse_round_trip", "identity", sm.points(samples), 1e-10,
                                 [&](double x, double y) {
                                     return (e.phi_to_xy(Vec2(f1(x, y), f2(x, y))) - Vec2(x, y)).norm() /
                                            (1 + std::hypot(x, y));
                                 },
                                 policy));
        if (e.id == 7) {
            const Vec2 p = e.phi_to_xy(Vec2(0, 1));
            GalleryCheck c{"display_point", "identity", 1, (p - Vec2(1, 0)).norm(), 1e-15, true};
            c.passed = c.max_deviation <= c.tol;
            rep.checks.push_back(c);
        } else {
            // |grad x| in (phi1, phi2) along phi2 = 0 vanishes at phi1 = 0
            std::vector<Vec2> pts;
            for (int i = 0; i <= 2 * samples; ++i) pts.emplace_back(-0.9 + 1.8 * i / (2 * samples), 0.0);
            double best = std::numeric_limits<double>::infinity();
            const double h = 1e-6;
            for (const auto& q : pts) {
                auto xof = [&](double a, double b) { return e.phi_to_xy(Vec2(a, b))[0]; };
                const double gx = (xof(q[0] + h, q[1]) - xof(q[0] - h, q[1])) / (2 * h);
                const double gy = (xof(q[0], q[1] + h) - xof(q[0], q[1] - h)) / (2 * h);
                best = std::min(best, std::hypot(gx, gy));
            }
            GalleryCheck c{"critical_point_of_x", "identity", static_cast<int>(pts.size()), best, 1e-6, best < 1e-6};
            rep.checks.push_back(c);
        }
        break;
    }
    default: break;
    }

    if (e.potential) {
        auto more = check_potential(*e.potential, e.region, samples, seed + 1, policy, e.regular);
        rep.checks.insert(rep.checks.end(), more.begin(), more.end());
    }
    return rep;
}

std::vector<GalleryCheck> check_potential(const Potential& pot, const Region& region, int samples,
                                          std::uint64_t seed, sweep::Policy policy,
                                          std::function<bool(double, double)> regular)
{
    if (samples < 1) throw Error(ErrorKind::BadParams, "samples must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(region.x0, region.x1), uy(region.y0, region.y1);
    std::vector<Vec2> pts;
    while (static_cast<int>(pts.size()) < samples) {
        const double x = ux(rng), y = uy(rng);
        if (x <= 0) continue;
        if (regular && !regular(x, y)) continue;
        if (pot.valid && !pot.valid(x, y)) continue;
        bool near_corner = false;
        for (double c : pot.corners) near_corner = near_corner || std::hypot(x, y - c) < 1e-2;
        if (!near_corner) pts.emplace_back(x, y);
    }
    std::vector<GalleryCheck> out;
    for (int i = 0; i < 2; ++i)
        out.push_back(run(i == 0 ? "jet_residual_phi1" : "jet_residual_phi2", "residual", pts, 1e-9,
                          [&](double x, double y) {
                              const auto j = pot.jet(x, y);
                              FieldJet f;
                              f.f = j.phi[i];
                              f.fx = j.A(i, 0);
                              f.fy = j.A(i, 1);
                              f.fxx = j.H[i](0, 0);
                              f.fxy = j.H[i](0, 1);
                              f.fyy = j.H[i](1, 1);
                              const double scale = operator_scale(f, Operator::unmodified, x);
                              const double r = apply_operator(f, Operator::unmodified, x);
                              return std::fabs(scale > 0 ? r / scale : r);
                          },
                          policy));
    out.push_back(run("curvature_methods_agree", "curvature", pts, 1e-4,
                      [&](double x, double y) {
                          return std::fabs(gauss_curvature(pot, x, y) -
                                           gauss_curvature(pot, x, y, CurvatureMethod::logdet));
                      },
                      policy));
    out.push_back(run("det_inverse_metric", "det", pts, 1e-10,
                      [&](double x, double y) {
                          return std::fabs(metric_four(pot, x, y).Ginv.determinant() - x * x) / (x * x);
                      },
                      policy));
    out.push_back(run("chart_congruence", "det", pts, 1e-10,
                      [&](double x, double y) {
                          const Mat2 A = pot.jet(x, y).A;
                          const Mat2 gphi = metric_sigma(pot, x, y, Chart::phi).matrix();
                          const Mat2 gxy = metric_sigma(pot, x, y, Chart::xy).matrix();
                          return (A.transpose() * gphi * A - gxy).norm() / gxy.norm();
                      },
                      policy));
    out.push_back(run("block_inverse", "det", pts, 1e-12,
                      [&](double x, double y) {
                          const auto b = metric_four(pot, x, y);
                          return (b.G * b.Ginv - Mat2::Identity()).norm();
                      },
                      policy));
    out.push_back(run("abreu_residual", "abreu", pts, 1e-10,
                      [&](double x, double y) { return std::fabs(abreu_residual(pot, x, y)); }, policy));
    out.push_back(run("conformal_scalar_nonnegative", "conformal", pts, 1e-8,
                      [&](double x, double y) { return std::max(0.0, -conformal_scalar(pot, x, y)); }, policy));
    return out;
}

}  // namespace polylab
