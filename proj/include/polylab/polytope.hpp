#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace polylab {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

// Outline of a convex polytope in the (phi1, phi2)-plane. Edges are traversed in
// the direction of increasing y: ray_in, then the finite segments, then ray_out.
struct OutlineSpec {
    std::vector<Vec2> vertices;
    Vec2 ray_in{0.0, 1.0};
    Vec2 ray_out{0.0, 1.0};
    std::vector<double> speeds;  // one per edge
    double alpha = 0.0;
    double beta = 0.0;

    int edge_count() const { return static_cast<int>(vertices.size()) + 1; }
};

struct ValidatedOutline {
    OutlineSpec spec;
    std::vector<Vec2> directions;  // unit edge directions, one per edge
    std::vector<double> kinks;     // y_i, one per vertex, y_1 = 0
    int turning = 0;               // +1 left turns, -1 right turns, 0 for a single edge
};

ValidatedOutline validate_outline(const OutlineSpec& spec);

struct KinkTerm {
    double y0 = 0.0;
    double jump1 = 0.0;
    double jump2 = 0.0;
};

// Phi(x,y) = base + linear (y - y1) + sum_i jump_i (rho_i - |y1 - y_i|) + quad x^2,
// rho_i = sqrt(x^2 + (y - y_i)^2).
struct MomentumMap {
    Vec2 base{0.0, 0.0};
    double y1 = 0.0;
    double linear1 = 0.0;
    double linear2 = 0.0;
    std::vector<KinkTerm> kinks;
    double quad1 = 0.0;
    double quad2 = 0.0;
};

struct JacobianAt {
    double a11 = 0, a12 = 0, a21 = 0, a22 = 0;
    double det = 0;
    Mat2 matrix() const
    {
        Mat2 m;
        m << a11, a12, a21, a22;
        return m;
    }
};

// Second derivatives (xx, xy, yy) of each potential.
struct HessianAt {
    std::array<double, 3> phi1{};
    std::array<double, 3> phi2{};
};

// Same map written as c + l y + sum_i r_i rho_i + q x^2, for coefficient comparisons.
struct ExpandedMap {
    Vec2 constant{0, 0};
    Vec2 linear{0, 0};
    std::vector<std::pair<double, Vec2>> rho;
    Vec2 quad{0, 0};
};

MomentumMap synthesize(const ValidatedOutline& outline);
MomentumMap halfplane_map();
MomentumMap quarterplane_map(double alpha, double beta);
// phi1 = a y + b r + alpha x^2/2, phi2 = c y + d r + beta x^2/2
MomentumMap one_vertex_map(double a, double b, double c, double d, double alpha, double beta);

Vec2 eval_map(const MomentumMap& map, double x, double y);
JacobianAt eval_jacobian(const MomentumMap& map, double x, double y);
HessianAt eval_hessian(const MomentumMap& map, double x, double y);
ExpandedMap expand(const MomentumMap& map);

// Point of the outline reached at parameter y, in the frame used by synthesize.
Vec2 outline_point(const ValidatedOutline& outline, double y);

// Lipschitz constant of the trace, max_j v_j.
double trace_lipschitz(const ValidatedOutline& outline);

bool validate_one_vertex(double a, double b, double c, double d, double alpha, double beta);

struct NondegeneracyReport {
    bool ok = false;
    int sign = 0;
    double min_abs_det_over_x = 0.0;
    int samples = 0;
};

// Samples det A on a log-spaced grid of the right half-plane.
NondegeneracyReport check_nondegenerate(const MomentumMap& map, int per_axis = 41);

int edge_count(const MomentumMap& map);

}  // namespace polylab
