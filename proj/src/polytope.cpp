#include "polylab/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "polylab/error.hpp"

namespace polylab {

namespace {

constexpr double kTurnTol = 1e-12;

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

Vec2 unit_or_throw(const Vec2& v, const char* what, int index)
{
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n))
        throw Error(ErrorKind::NonConvex, std::string(what) + " has zero length", index);
    return v / n;
}

}  // namespace

ValidatedOutline validate_outline(const OutlineSpec& spec)
{
    const int n_vert = static_cast<int>(spec.vertices.size());
    const int n_edge = spec.edge_count();
    if (static_cast<int>(spec.speeds.size()) != n_edge)
        throw Error(ErrorKind::BadParams, "expected " + std::to_string(n_edge) + " speeds, got " +
                                              std::to_string(spec.speeds.size()));
    for (int j = 0; j < n_edge; ++j) {
        if (!(spec.speeds[j] > 0.0) || !std::isfinite(spec.speeds[j]))
            throw Error(ErrorKind::ZeroSpeed, "edge " + std::to_string(j) + " has non-positive speed",
                        j);
    }
    if (spec.alpha < 0.0 || spec.beta < 0.0)
        throw Error(ErrorKind::BadParams, "alpha and beta must be nonnegative");
    if (n_vert > 0 && (spec.vertices[0].x() != 0.0 || spec.vertices[0].y() != 1.0))
        throw Error(ErrorKind::BadNormalization, "first corner must be (0,1)", 0);

    ValidatedOutline out;
    out.spec = spec;
    out.directions.reserve(n_edge);
    out.directions.push_back(unit_or_throw(spec.ray_in, "ray_in", 0));
    for (int i = 0; i + 1 < n_vert; ++i)
        out.directions.push_back(unit_or_throw(spec.vertices[i + 1] - spec.vertices[i], "segment", i + 1));
    out.directions.push_back(unit_or_throw(spec.ray_out, "ray_out", n_vert));
    if (n_vert == 0) {
        if ((out.directions[0] - out.directions[1]).norm() > kTurnTol)
            throw Error(ErrorKind::NonConvex, "a polytope without corners needs ray_in == ray_out", 0);
        out.directions.pop_back();
    }
    out.spec.ray_in = out.directions.front();
    out.spec.ray_out = out.directions.back();

    double total_turn = 0.0;
    for (int i = 0; i < n_vert; ++i) {
        const Vec2& u = out.directions[i];
        const Vec2& w = out.directions[i + 1];
        const double c = cross(u, w);
        if (std::fabs(c) <= kTurnTol && u.dot(w) > 0.0)
            throw Error(ErrorKind::NonConvex, "vertex " + std::to_string(i) + " has zero turn", i);
        const int s = c > 0.0 ? 1 : -1;
        if (std::fabs(c) <= kTurnTol) {
            throw Error(ErrorKind::NonConvex, "vertex " + std::to_string(i) + " reverses direction", i);
        }
        if (out.turning == 0)
            out.turning = s;
        else if (s != out.turning)
            throw Error(ErrorKind::NonConvex, "vertex " + std::to_string(i) + " turns the wrong way", i);
        total_turn += std::atan2(std::fabs(c), u.dot(w));
    }
    if (total_turn > std::numbers::pi + 1e-12)
        throw Error(ErrorKind::NonConvex, "outline winds more than a half turn", n_vert - 1);

    out.kinks.reserve(n_vert);
    double y = 0.0;
    for (int i = 0; i < n_vert; ++i) {
        out.kinks.push_back(y);
        if (i + 1 < n_vert) y += (spec.vertices[i + 1] - spec.vertices[i]).norm() / spec.speeds[i + 1];
    }
    return out;
}

MomentumMap synthesize(const ValidatedOutline& outline)
{
    const auto& spec = outline.spec;
    const int n_vert = static_cast<int>(spec.vertices.size());
    const int n_edge = static_cast<int>(outline.directions.size());
    std::vector<Vec2> w(n_edge);
    for (int j = 0; j < n_edge; ++j) w[j] = spec.speeds[j] * outline.directions[j];

    MomentumMap map;
    map.base = n_vert >= 2 ? spec.vertices[0] : Vec2(0.0, 0.0);
    map.y1 = 0.0;
    const Vec2 lin = 0.5 * (w.front() + w.back());
    map.linear1 = lin.x();
    map.linear2 = lin.y();
    for (int i = 0; i < n_vert; ++i) {
        const Vec2 jump = 0.5 * (w[i + 1] - w[i]);
        map.kinks.push_back({outline.kinks[i], jump.x(), jump.y()});
    }
    map.quad1 = 0.5 * spec.alpha;
    map.quad2 = 0.5 * spec.beta;
    return map;
}

MomentumMap halfplane_map()
{
    MomentumMap m;
    m.linear2 = 1.0;
    m.quad1 = 0.5;
    return m;
}

MomentumMap quarterplane_map(double alpha, double beta)
{
    const double s = std::numbers::sqrt2 / 2.0;
    return one_vertex_map(-s, s, s, s, alpha, beta);
}

MomentumMap one_vertex_map(double a, double b, double c, double d, double alpha, double beta)
{
    MomentumMap m;
    m.linear1 = a;
    m.linear2 = c;
    m.kinks.push_back({0.0, b, d});
    m.quad1 = 0.5 * alpha;
    m.quad2 = 0.5 * beta;
    return m;
}

Vec2 eval_map(const MomentumMap& map, double x, double y)
{
    double p1 = map.base.x() + map.linear1 * (y - map.y1) + map.quad1 * x * x;
    double p2 = map.base.y() + map.linear2 * (y - map.y1) + map.quad2 * x * x;
    for (const auto& k : map.kinks) {
        const double t = std::hypot(x, y - k.y0) - std::fabs(map.y1 - k.y0);
        p1 += k.jump1 * t;
        p2 += k.jump2 * t;
    }
    return {p1, p2};
}

JacobianAt eval_jacobian(const MomentumMap& map, double x, double y)
{
    JacobianAt j;
    j.a11 = 2.0 * map.quad1 * x;
    j.a21 = 2.0 * map.quad2 * x;
    j.a12 = map.linear1;
    j.a22 = map.linear2;
    for (const auto& k : map.kinks) {
        const double dy = y - k.y0;
        const double rho = std::hypot(x, dy);
        j.a11 += k.jump1 * x / rho;
        j.a21 += k.jump2 * x / rho;
        j.a12 += k.jump1 * dy / rho;
        j.a22 += k.jump2 * dy / rho;
    }
    j.det = j.a11 * j.a22 - j.a12 * j.a21;
    return j;
}

HessianAt eval_hessian(const MomentumMap& map, double x, double y)
{
    HessianAt h;
    h.phi1 = {2.0 * map.quad1, 0.0, 0.0};
    h.phi2 = {2.0 * map.quad2, 0.0, 0.0};
    for (const auto& k : map.kinks) {
        const double dy = y - k.y0;
        const double rho = std::hypot(x, dy);
        const double r3 = rho * rho * rho;
        const double xx = dy * dy / r3, xy = -x * dy / r3, yy = x * x / r3;
        h.phi1[0] += k.jump1 * xx;
        h.phi1[1] += k.jump1 * xy;
        h.phi1[2] += k.jump1 * yy;
        h.phi2[0] += k.jump2 * xx;
        h.phi2[1] += k.jump2 * xy;
        h.phi2[2] += k.jump2 * yy;
    }
    return h;
}

ExpandedMap expand(const MomentumMap& map)
{
    ExpandedMap e;
    e.linear = {map.linear1, map.linear2};
    e.constant = map.base - e.linear * map.y1;
    for (const auto& k : map.kinks) {
        const Vec2 jump(k.jump1, k.jump2);
        e.constant -= jump * std::fabs(map.y1 - k.y0);
        e.rho.emplace_back(k.y0, jump);
    }
    e.quad = {map.quad1, map.quad2};
    return e;
}

Vec2 outline_point(const ValidatedOutline& outline, double y)
{
    const auto& spec = outline.spec;
    const int n_vert = static_cast<int>(spec.vertices.size());
    const auto& u = outline.directions;
    if (n_vert == 0) return spec.speeds[0] * u[0] * y;
    const Vec2 shift = n_vert >= 2 ? Vec2(0.0, 0.0) : Vec2(-spec.vertices[0]);
    if (y <= outline.kinks[0]) return spec.vertices[0] + shift + spec.speeds[0] * u[0] * (y - outline.kinks[0]);
    int i = static_cast<int>(std::upper_bound(outline.kinks.begin(), outline.kinks.end(), y) -
                             outline.kinks.begin()) - 1;
    return spec.vertices[i] + shift + spec.speeds[i + 1] * u[i + 1] * (y - outline.kinks[i]);
}

double trace_lipschitz(const ValidatedOutline& outline)
{
    return *std::max_element(outline.spec.speeds.begin(), outline.spec.speeds.end());
}

bool validate_one_vertex(double a, double b, double c, double d, double alpha, double beta)
{
    const double det_m = a * d - b * c;
    const double det_n = a * beta - alpha * c;
    const double det_k = b * beta - alpha * d;
    if (det_m == 0.0) return false;
    if (det_n * det_m < 0.0) return false;
    if (det_n == 0.0) return det_k == 0.0;
    return std::fabs(det_k / det_n) <= 1.0;
}

NondegeneracyReport check_nondegenerate(const MomentumMap& map, int per_axis)
{
    NondegeneracyReport rep;
    double ylo = 0.0, yhi = 0.0;
    for (const auto& k : map.kinks) {
        ylo = std::min(ylo, k.y0);
        yhi = std::max(yhi, k.y0);
    }
    const double ymid = 0.5 * (ylo + yhi);
    rep.min_abs_det_over_x = INFINITY;
    rep.ok = true;
    for (int i = 0; i < per_axis; ++i) {
        const double x = std::pow(10.0, -3.0 + 6.0 * i / (per_axis - 1));
        for (int j = 0; j < per_axis; ++j) {
            const double t = -3.0 + 6.0 * std::fabs(2.0 * j - (per_axis - 1)) / (per_axis - 1);
            const double mag = std::pow(10.0, t);
            const double y = ymid + (2 * j < per_axis - 1 ? -mag : mag);
            const auto jac = eval_jacobian(map, x, y);
            const int s = jac.det > 0.0 ? 1 : (jac.det < 0.0 ? -1 : 0);
            ++rep.samples;
            rep.min_abs_det_over_x = std::min(rep.min_abs_det_over_x, std::fabs(jac.det) / x);
            if (s == 0 || (rep.sign != 0 && s != rep.sign)) rep.ok = false;
            if (rep.sign == 0) rep.sign = s;
        }
    }
    return rep;
}

int edge_count(const MomentumMap& map) { return static_cast<int>(map.kinks.size()) + 1; }

}  // namespace polylab
