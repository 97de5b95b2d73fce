#include "polylab/pde.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "polylab/error.hpp"
#include "polylab/specfun.hpp"

namespace polylab {

namespace sf = specfun;

namespace {

constexpr double kSqrt8 = 2.8284271247461900976;

double coeff(Operator op) { return op == Operator::unmodified ? -1.0 : 3.0; }

double default_step(double x) { return std::min(0.25 * x, std::max(1e-5, 1e-3 * x)); }

// u, u', u'' of one separated factor
struct Radial {
    double u, du, ddu;
};

Radial radial(const EigenEntry& e, double x)
{
    const double lam = e.lambda;
    const bool tilde = e.u == Variant::tilde;
    if (e.sign == 0) {
        if (e.table == Operator::unmodified) return tilde ? Radial{1, 0, 0} : Radial{x * x, 2 * x, 2};
        if (!tilde) return {1, 0, 0};
        return {1 / (x * x), -2 / (x * x * x), 6 / (x * x * x * x)};
    }
    const double z = lam * x;
    if (e.table == Operator::unmodified) {
        if (e.sign > 0) {
            const double z0 = tilde ? sf::y0(z) : sf::j0(z);
            const double z1 = tilde ? sf::y1(z) : sf::j1(z);
            return {x * z1, lam * x * z0, lam * z0 - lam * lam * x * z1};
        }
        if (!tilde) {
            const double i0 = sf::i0(z), i1 = sf::i1(z);
            return {x * i1, lam * x * i0, lam * i0 + lam * lam * x * i1};
        }
        const double k0 = sf::k0(z), k1 = sf::k1(z);
        return {x * k1, -lam * x * k0, -lam * k0 + lam * lam * x * k1};
    }
    if (e.sign > 0) {
        const double z0 = tilde ? sf::y0(z) : sf::j0(z);
        const double z1 = tilde ? sf::y1(z) : sf::j1(z);
        const double z2 = 2 * z1 / z - z0;
        const double dz2 = z1 - 2 * z2 / z;
        return {z1 / x, -lam * z2 / x, lam * z2 / (x * x) - lam * lam * dz2 / x};
    }
    if (!tilde) {
        const double i1 = sf::i1(z);
        const double i2 = sf::i0(z) - 2 * i1 / z;
        const double di2 = i1 - 2 * i2 / z;
        return {i1 / x, lam * i2 / x, -lam * i2 / (x * x) + lam * lam * di2 / x};
    }
    const double k1 = sf::k1(z);
    const double k2 = sf::k0(z) + 2 * k1 / z;
    const double dk2 = -k1 - 2 * k2 / z;
    return {k1 / x, -lam * k2 / x, lam * k2 / (x * x) - lam * lam * dk2 / x};
}

Radial transverse(const EigenEntry& e, double y)
{
    const double lam = e.lambda;
    const bool tilde = e.v == Variant::tilde;
    if (e.sign == 0) return tilde ? Radial{1, 0, 0} : Radial{y, 1, 0};
    const double z = lam * y;
    if (e.sign > 0) {
        if (tilde) return {std::cosh(z), lam * std::sinh(z), lam * lam * std::cosh(z)};
        return {std::sinh(z), lam * std::cosh(z), lam * lam * std::sinh(z)};
    }
    if (tilde) return {std::cos(z), -lam * std::sin(z), -lam * lam * std::cos(z)};
    return {std::sin(z), lam * std::cos(z), -lam * lam * std::sin(z)};
}

}  // namespace

ScalarField field_from_jet(std::function<FieldJet(double, double)> jet, std::string note)
{
    ScalarField f;
    f.eval = [jet](double x, double y) { return jet(x, y).f; };
    f.jet = std::move(jet);
    f.growth_note = std::move(note);
    return f;
}

ScalarField field_from_eval(std::function<double(double, double)> eval, std::string note)
{
    ScalarField f;
    f.eval = std::move(eval);
    f.growth_note = std::move(note);
    return f;
}

double apply_operator(const FieldJet& j, Operator op, double x)
{
    return j.fxx + j.fyy + coeff(op) * j.fx / x;
}

double operator_scale(const FieldJet& j, Operator op, double x)
{
    return std::fabs(j.fxx) + std::fabs(j.fyy) + std::fabs(coeff(op) * j.fx / x) + std::fabs(j.f) / (x * x);
}

FieldJet fd_jet(const ScalarField& field, double x, double y, double h)
{
    const auto& f = field.eval;
    const double f0 = f(x, y);
    auto level = [&](double s) {
        FieldJet j;
        const double xp = f(x + s, y), xm = f(x - s, y), yp = f(x, y + s), ym = f(x, y - s);
        j.fx = (xp - xm) / (2 * s);
        j.fy = (yp - ym) / (2 * s);
        j.fxx = (xp - 2 * f0 + xm) / (s * s);
        j.fyy = (yp - 2 * f0 + ym) / (s * s);
        j.fxy = (f(x + s, y + s) - f(x + s, y - s) - f(x - s, y + s) + f(x - s, y - s)) / (4 * s * s);
        return j;
    };
    const FieldJet a = level(h), b = level(0.5 * h);
    FieldJet r;
    r.f = f0;
    r.fx = (4 * b.fx - a.fx) / 3;
    r.fy = (4 * b.fy - a.fy) / 3;
    r.fxx = (4 * b.fxx - a.fxx) / 3;
    r.fyy = (4 * b.fyy - a.fyy) / 3;
    r.fxy = (4 * b.fxy - a.fxy) / 3;
    return r;
}

double residual(const ScalarField& field, Operator op, double x, double y, ResidualMode mode, double h)
{
    if (!(x > 0.0)) throw Error(ErrorKind::Domain, "residual requires x > 0");
    if (mode == ResidualMode::analytic) {
        if (!field.has_jet()) throw Error(ErrorKind::MissingDerivatives, "field has no analytic derivatives");
        return apply_operator(field.jet(x, y), op, x);
    }
    return apply_operator(fd_jet(field, x, y, h > 0.0 ? h : default_step(x)), op, x);
}

double relative_residual(const ScalarField& field, Operator op, double x, double y)
{
    if (!field.has_jet()) throw Error(ErrorKind::MissingDerivatives, "field has no analytic derivatives");
    const FieldJet j = field.jet(x, y);
    const double scale = operator_scale(j, op, x);
    const double r = apply_operator(j, op, x);
    return scale > 0.0 ? r / scale : r;
}

ScalarField dualize(const ScalarField& field, Dual direction)
{
    const int p = direction == Dual::phi_to_f ? -2 : 2;
    ScalarField out;
    auto base = field.eval;
    out.eval = [base, p](double x, double y) { return base(x, y) * std::pow(x, p); };
    out.growth_note = field.growth_note;
    if (field.has_jet()) {
        auto jet = field.jet;
        out.jet = [jet, p](double x, double y) {
            const FieldJet j = jet(x, y);
            const double w = std::pow(x, p), dw = p * std::pow(x, p - 1), ddw = p * (p - 1) * std::pow(x, p - 2);
            FieldJet r;
            r.f = w * j.f;
            r.fx = w * j.fx + dw * j.f;
            r.fy = w * j.fy;
            r.fxx = w * j.fxx + 2 * dw * j.fx + ddw * j.f;
            r.fxy = w * j.fxy + dw * j.fy;
            r.fyy = w * j.fyy;
            return r;
        };
    }
    return out;
}

StPoint to_st(double x, double y)
{
    if (!(x > 0.0)) throw Error(ErrorKind::Domain, "to_st requires x > 0");
    return {0.5 / (x * x), kSqrt8 * y};
}

Vec2 from_st(const StPoint& p)
{
    if (!(p.s > 0.0)) throw Error(ErrorKind::Domain, "from_st requires s > 0");
    return {1.0 / std::sqrt(2.0 * p.s), p.t / kSqrt8};
}

double st_residual_fd(const ScalarField& field, double s, double t, double h)
{
    auto g = [&](double a, double b) {
        const Vec2 xy = from_st({a, b});
        return field.eval(xy[0], xy[1]);
    };
    auto level = [&](double q) {
        const double g0 = g(s, t);
        const double gss = (g(s + q, t) - 2 * g0 + g(s - q, t)) / (q * q);
        const double gtt = (g(s, t + q) - 2 * g0 + g(s, t - q)) / (q * q);
        return s * s * s * gss + gtt;
    };
    return (4 * level(0.5 * h) - level(h)) / 3;
}

std::string describe(const EigenEntry& e)
{
    static const char* sign_name[] = {"-lambda^2", "0", "+lambda^2"};
    const bool mod = e.table == Operator::modified;
    std::string u, v;
    if (e.sign == 0) {
        if (mod)
            u = e.u == Variant::tilde ? "x^-2" : "1";
        else
            u = e.u == Variant::tilde ? "1" : "x^2";
        v = e.v == Variant::tilde ? "1" : "y";
    } else {
        const char* pre = mod ? "x^-1" : "x";
        const char* fn = e.sign > 0 ? (e.u == Variant::tilde ? "Y1" : "J1") : (e.u == Variant::tilde ? "K1" : "I1");
        u = std::string(pre) + " " + fn + "(lx)";
        if (e.sign > 0)
            v = e.v == Variant::tilde ? "cosh(ly)" : "sinh(ly)";
        else
            v = e.v == Variant::tilde ? "cos(ly)" : "sin(ly)";
    }
    return std::string(mod ? "modified" : "unmodified") + " " + sign_name[e.sign + 1] + ": " + u + " * " + v;
}

ScalarField eigenfunction(const EigenEntry& entry)
{
    if (entry.sign != 0 && !(entry.lambda > 0.0))
        throw Error(ErrorKind::BadParams, "eigenfunction needs lambda > 0");
    return field_from_jet(
        [entry](double x, double y) {
            const Radial u = radial(entry, x);
            const Radial v = transverse(entry, y);
            FieldJet j;
            j.f = u.u * v.u;
            j.fx = u.du * v.u;
            j.fy = u.u * v.du;
            j.fxx = u.ddu * v.u;
            j.fxy = u.du * v.du;
            j.fyy = u.u * v.ddu;
            return j;
        },
        describe(entry));
}

std::vector<EigenEntry> eigen_catalog(double lambda, bool all_products)
{
    std::vector<EigenEntry> out;
    for (Operator table : {Operator::unmodified, Operator::modified})
        for (int sign : {1, 0, -1})
            for (Variant u : {Variant::primary, Variant::tilde})
                for (Variant v : {Variant::primary, Variant::tilde}) {
                    if (!all_products && u != v) continue;
                    out.push_back({table, sign, lambda, u, v});
                }
    return out;
}

EigenEntry dual_entry(const EigenEntry& e)
{
    EigenEntry d = e;
    d.table = e.table == Operator::unmodified ? Operator::modified : Operator::unmodified;
    return d;
}

double gradient_bound_probe(const ScalarField& field, const Region& region, int samples)
{
    const int n = std::max(2, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(samples)))));
    double sup = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = region.x0 + (region.x1 - region.x0) * i / (n - 1);
        if (!(x > 0.0)) continue;
        for (int k = 0; k < n; ++k) {
            const double y = region.y0 + (region.y1 - region.y0) * k / (n - 1);
            FieldJet j;
            if (field.has_jet()) {
                j = field.jet(x, y);
            } else {
                j = fd_jet(field, x, y, default_step(x));
            }
            if (!(j.f > 0.0))
                throw Error(ErrorKind::NonPositiveField, "field is not positive at (" + std::to_string(x) +
                                                             ", " + std::to_string(y) + ")");
            sup = std::max(sup, x * std::hypot(j.fx, j.fy) / j.f);
        }
    }
    return sup;
}

}  // namespace polylab
