#include "polylab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "polylab/error.hpp"

namespace polylab {

namespace {

struct Local {
    PotentialJet jet;
    Mat2 B;
    double det = 0;
    double F = 0;
};

Local local_frame(const Potential& pot, double x, double y)
{
    if (!(x > 0.0)) throw Error(ErrorKind::Domain, "geometry requires x > 0");
    Local l;
    l.jet = pot.jet(x, y);
    l.det = l.jet.A.determinant();
    if (!(std::fabs(l.det) >= kSingularDet))
        throw Error(ErrorKind::SingularJacobian,
                    "|det A| below threshold at (" + std::to_string(x) + ", " + std::to_string(y) + ")");
    l.B = l.jet.A.inverse();
    l.F = std::fabs(l.det) / x;
    return l;
}

void check_corners(const Potential& pot, double x, double y)
{
    for (double yc : pot.corners)
        if (std::hypot(x, y - yc) < kCornerExclusion)
            throw Error(ErrorKind::CornerExclusion, "point within exclusion radius of corner y=" +
                                                        std::to_string(yc));
}

Mat2 dA(const PotentialJet& j, int m)
{
    Mat2 d;
    for (int i = 0; i < 2; ++i)
        for (int c = 0; c < 2; ++c) d(i, c) = j.H[i](c, m);
    return d;
}

// d(det A)/dx^m
Vec2 grad_det(const Local& l)
{
    Vec2 g;
    for (int m = 0; m < 2; ++m) g[m] = l.det * (l.B * dA(l.jet, m)).trace();
    return g;
}

std::array<Mat2, 2> dg_phi(const Local& l, double x)
{
    const Vec2 gd = grad_det(l);
    const double sgn = l.det > 0 ? 1.0 : -1.0;
    const Mat2 P = l.B.transpose() * l.B;
    std::array<Mat2, 2> dxy;
    for (int m = 0; m < 2; ++m) {
        const double dF = sgn * gd[m] / x - (m == 0 ? l.F / x : 0.0);
        const Mat2 dB = -l.B * dA(l.jet, m) * l.B;
        const Mat2 dP = dB.transpose() * l.B + l.B.transpose() * dB;
        dxy[m] = dF * P + l.F * dP;
    }
    std::array<Mat2, 2> out;
    for (int s = 0; s < 2; ++s) out[s] = dxy[0] * l.B(0, s) + dxy[1] * l.B(1, s);
    return out;
}

ChristoffelData christoffel_from(const Local& l, double x)
{
    const auto dg = dg_phi(l, x);
    const Mat2 ginv = l.jet.A * l.jet.A.transpose() / l.F;
    ChristoffelData c;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                c.gamma[i][j][k] = 0.5 * (dg[0](i, j) * ginv(0, k) + dg[1](i, j) * ginv(1, k));
    for (int k = 0; k < 2; ++k) {
        double t = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) t += ginv(i, j) * c.gamma[i][j][k];
        c.traced[k] = t;
    }
    return c;
}

std::pair<double, double> christoffel_norms(const Local& l, const ChristoffelData& c)
{
    const Mat2 g = l.F * l.B.transpose() * l.B;
    const Mat2 ginv = l.jet.A * l.jet.A.transpose() / l.F;
    double full = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int s = 0; s < 2; ++s)
                    for (int t = 0; t < 2; ++t)
                        for (int q = 0; q < 2; ++q)
                            full += ginv(i, s) * ginv(j, t) * g(k, q) * c.gamma[i][j][k] * c.gamma[s][t][q];
    double tr = 0.0;
    for (int k = 0; k < 2; ++k)
        for (int q = 0; q < 2; ++q) tr += g(k, q) * c.traced[k] * c.traced[q];
    return {full, tr};
}

// grad log(|det A|/x)
Vec2 grad_log_factor(const Potential& pot, double x, double y)
{
    const Local l = local_frame(pot, x, y);
    Vec2 g = grad_det(l) / l.det;
    g[0] -= 1.0 / x;
    return g;
}

double flat_laplacian_log_factor(const Potential& pot, double x, double y, double h)
{
    auto div = [&](double s) {
        const double gxp = grad_log_factor(pot, x + s, y)[0];
        const double gxm = grad_log_factor(pot, x - s, y)[0];
        const double gyp = grad_log_factor(pot, x, y + s)[1];
        const double gym = grad_log_factor(pot, x, y - s)[1];
        return (gxp - gxm + gyp - gym) / (2.0 * s);
    };
    return (4.0 * div(0.5 * h) - div(h)) / 3.0;
}

}  // namespace

double fd_step(double x) { return std::min(std::max(1e-6, 1e-4 * x), 0.25 * x); }

Potential make_potential(const MomentumMap& map, std::string name)
{
    Potential p;
    p.name = std::move(name);
    for (const auto& k : map.kinks) p.corners.push_back(k.y0);
    p.jet = [map](double x, double y) {
        PotentialJet j;
        j.phi = eval_map(map, x, y);
        j.A = eval_jacobian(map, x, y).matrix();
        const auto h = eval_hessian(map, x, y);
        j.H[0] << h.phi1[0], h.phi1[1], h.phi1[1], h.phi1[2];
        j.H[1] << h.phi2[0], h.phi2[1], h.phi2[1], h.phi2[2];
        return j;
    };
    return p;
}

Potential potential_from_inverse(std::string name, std::function<Vec2(double, double)> inverse,
                                 std::function<ForwardJet(const Vec2&)> forward,
                                 std::vector<double> corners, std::function<bool(double, double)> valid)
{
    Potential p;
    p.name = std::move(name);
    p.corners = std::move(corners);
    p.valid = std::move(valid);
    p.jet = [inverse = std::move(inverse), forward = std::move(forward)](double x, double y) {
        PotentialJet j;
        j.phi = inverse(x, y);
        const ForwardJet f = forward(j.phi);
        j.A = f.B.inverse();
        // d_m A = -A (d_m B) A, with d_m = sum_t A(t,m) d/dphi^t
        for (int m = 0; m < 2; ++m) {
            Mat2 dB;
            for (int r = 0; r < 2; ++r)
                for (int s = 0; s < 2; ++s) dB(r, s) = f.D[r](s, 0) * j.A(0, m) + f.D[r](s, 1) * j.A(1, m);
            const Mat2 dAm = -j.A * dB * j.A;
            for (int i = 0; i < 2; ++i)
                for (int c = 0; c < 2; ++c) j.H[i](c, m) = dAm(i, c);
        }
        for (int i = 0; i < 2; ++i) j.H[i] = 0.5 * (j.H[i] + j.H[i].transpose()).eval();
        return j;
    };
    return p;
}

MetricSigma metric_sigma(const Potential& pot, double x, double y, Chart chart)
{
    const Local l = local_frame(pot, x, y);
    MetricSigma m;
    m.chart = chart;
    if (chart == Chart::xy) {
        m.m11 = m.m22 = l.F;
        return m;
    }
    const Mat2 g = l.F * l.B.transpose() * l.B;
    m.m11 = g(0, 0);
    m.m12 = 0.5 * (g(0, 1) + g(1, 0));
    m.m22 = g(1, 1);
    return m;
}

FourMetricBlocks metric_four(const Potential& pot, double x, double y)
{
    const Local l = local_frame(pot, x, y);
    FourMetricBlocks b;
    b.G = l.F * l.B.transpose() * l.B;
    b.Ginv = l.jet.A * l.jet.A.transpose() / l.F;
    return b;
}

ChristoffelData christoffel(const Potential& pot, double x, double y)
{
    return christoffel_from(local_frame(pot, x, y), x);
}

std::array<Mat2, 2> metric_derivative_phi(const Potential& pot, double x, double y)
{
    return dg_phi(local_frame(pot, x, y), x);
}

double gauss_curvature(const Potential& pot, double x, double y, CurvatureMethod method)
{
    check_corners(pot, x, y);
    if (method == CurvatureMethod::christoffel) {
        const Local l = local_frame(pot, x, y);
        const auto [full, tr] = christoffel_norms(l, christoffel_from(l, x));
        return full - tr;
    }
    const Local l = local_frame(pot, x, y);
    return -flat_laplacian_log_factor(pot, x, y, fd_step(x)) / l.F;
}

double abreu_residual(const Potential& pot, double x, double y)
{
    const Local l = local_frame(pot, x, y);
    const Vec2 gd = grad_det(l);
    const double ad = std::fabs(l.det);
    // x * sum_i d/dphi^i ( A(i,0) / |det A| )
    double sum = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
            const double d = (l.jet.H[i](0, k) - l.jet.A(i, 0) * gd[k] / l.det) / ad;
            sum += l.B(k, i) * d;
        }
    return x * sum;
}

double conformal_scalar(const Potential& pot, double x, double y)
{
    const Local l = local_frame(pot, x, y);
    const auto norms = christoffel_norms(l, christoffel_from(l, x));
    return norms.first / x;
}

double pseudo_kahler_asymmetry(const Potential& pot, double x, double y)
{
    const Local l = local_frame(pot, x, y);
    const double h = fd_step(x);
    auto gphi = [&](double a, double b) {
        const Local q = local_frame(pot, a, b);
        return Mat2(q.F * q.B.transpose() * q.B);
    };
    std::array<Mat2, 2> dxy = {(gphi(x + h, y) - gphi(x - h, y)) / (2 * h),
                               (gphi(x, y + h) - gphi(x, y - h)) / (2 * h)};
    std::array<Mat2, 2> dg;
    for (int s = 0; s < 2; ++s) dg[s] = dxy[0] * l.B(0, s) + dxy[1] * l.B(1, s);
    double worst = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) worst = std::max(worst, std::fabs(dg[k](i, j) - dg[j](i, k)));
    return worst;
}

}  // namespace polylab
