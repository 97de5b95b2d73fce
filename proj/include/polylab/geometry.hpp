#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "polylab/polytope.hpp"

namespace polylab {

// Value, first and second (x,y)-derivatives of the pair (phi1, phi2) at one point.
struct PotentialJet {
    Vec2 phi{0, 0};
    Mat2 A = Mat2::Zero();                  // A(i,j) = d phi^i / d x^j
    std::array<Mat2, 2> H{Mat2::Zero(), Mat2::Zero()};  // H[i](j,m) = d^2 phi^i / dx^j dx^m
};

// Anything the geometry routines can consume: a synthesized momentum map or a closed-form pair.
struct Potential {
    std::string name;
    std::function<PotentialJet(double, double)> jet;
    std::vector<double> corners;  // kink locations y_i on {x = 0}
    // Optional restriction of the (x,y) domain (branch charts).
    std::function<bool(double, double)> valid;
};

Potential make_potential(const MomentumMap& map, std::string name = "map");

// Second-order jet of (x,y) as functions of (phi1, phi2).
struct ForwardJet {
    Vec2 xy{0, 0};
    Mat2 B = Mat2::Zero();                  // B(r,s) = d x^r / d phi^s
    std::array<Mat2, 2> D{Mat2::Zero(), Mat2::Zero()};  // D[r](s,t) = d^2 x^r / dphi^s dphi^t
};

// Builds a Potential from an explicit inverse (x,y) -> phi and the forward jet phi -> (x,y).
Potential potential_from_inverse(std::string name, std::function<Vec2(double, double)> inverse,
                                 std::function<ForwardJet(const Vec2&)> forward,
                                 std::vector<double> corners = {},
                                 std::function<bool(double, double)> valid = {});

enum class Chart { xy, phi };

struct MetricSigma {
    Chart chart = Chart::xy;
    double m11 = 0, m12 = 0, m22 = 0;
    Mat2 matrix() const
    {
        Mat2 m;
        m << m11, m12, m12, m22;
        return m;
    }
};

struct FourMetricBlocks {
    Mat2 G = Mat2::Zero();
    Mat2 Ginv = Mat2::Zero();
};

struct ChristoffelData {
    double gamma[2][2][2] = {};  // gamma[i][j][k] = Gamma^k_ij
    double traced[2] = {};       // Gamma^k = g^{ij} Gamma^k_ij
};

enum class CurvatureMethod { logdet, christoffel };

inline constexpr double kCornerExclusion = 1e-3;
inline constexpr double kSingularDet = 1e-14;

MetricSigma metric_sigma(const Potential& pot, double x, double y, Chart chart);
FourMetricBlocks metric_four(const Potential& pot, double x, double y);
ChristoffelData christoffel(const Potential& pot, double x, double y);

// dg[s](i,j) = d g_ij / d phi^s for g the phi-chart metric.
std::array<Mat2, 2> metric_derivative_phi(const Potential& pot, double x, double y);

// K = -(x/|det A|) Lap log(|det A|/x), equal to |Gamma^k_ij|^2 - |Gamma^k|^2.
double gauss_curvature(const Potential& pot, double x, double y,
                       CurvatureMethod method = CurvatureMethod::christoffel);

double abreu_residual(const Potential& pot, double x, double y);
double conformal_scalar(const Potential& pot, double x, double y);

// max |d_k g_ij - d_j g_ik| with the phi-derivatives taken by central differences.
double pseudo_kahler_asymmetry(const Potential& pot, double x, double y);

double fd_step(double x);

inline MetricSigma metric_sigma(const MomentumMap& m, double x, double y, Chart c)
{
    return metric_sigma(make_potential(m), x, y, c);
}
inline FourMetricBlocks metric_four(const MomentumMap& m, double x, double y)
{
    return metric_four(make_potential(m), x, y);
}
inline double gauss_curvature(const MomentumMap& m, double x, double y,
                              CurvatureMethod method = CurvatureMethod::christoffel)
{
    return gauss_curvature(make_potential(m), x, y, method);
}
inline double abreu_residual(const MomentumMap& m, double x, double y)
{
    return abreu_residual(make_potential(m), x, y);
}
inline double conformal_scalar(const MomentumMap& m, double x, double y)
{
    return conformal_scalar(make_potential(m), x, y);
}

}  // namespace polylab
