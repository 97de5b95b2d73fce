#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polylab/geometry.hpp"
#include "polylab/pde.hpp"
#include "polylab/sweep.hpp"

namespace polylab {

struct GalleryField {
    std::string name;
    ScalarField field;              // analytic jet available
    std::optional<Operator> op;     // governing equation, if any
    std::string note;
};

struct GalleryEntry {
    int id = 0;
    std::string title;
    std::map<std::string, double> params;
    std::vector<GalleryField> fields;

    std::optional<OutlineSpec> outline;  // Example 6
    std::optional<MomentumMap> map;      // Examples 5 and 6
    std::optional<Potential> potential;  // Examples 5 to 8

    // Example 5 closed forms in (x, y) = (r cos theta, r sin theta)
    std::function<double(double, double)> conformal_factor;
    std::function<double(double, double)> curvature;

    // Examples 7 and 8: (phi1, phi2) -> (x, y)
    std::function<Vec2(const Vec2&)> phi_to_xy;

    std::string singular_set;
    Region region{0.05, 4.0, -3.0, 3.0};
    // false on points too close to the singular set for sampled checks
    std::function<bool(double, double)> regular;

    const GalleryField& field(const std::string& name) const;
};

std::vector<int> gallery_ids();

// Example 5: M > 0, k in [-1, 1]. Example 6: v1, v2, v3 > 0, alpha, beta >= 0.
// Other examples take no parameters. Throws BadParams.
GalleryEntry gallery(int id, const std::map<std::string, double>& params = {});

// Outline with vertices (0,1), (1,0) and the displayed Example 6 coefficients.
OutlineSpec example6_outline(double v1, double v2, double v3, double alpha, double beta);
ExpandedMap example6_displayed(double v1, double v2, double v3, double alpha, double beta);

struct GalleryCheck {
    std::string name;
    std::string suite;  // residual, curvature, abreu, det, conformal, identity
    int samples = 0;
    double max_deviation = 0;
    double tol = 0;
    bool passed = false;
};

struct GalleryReport {
    int id = 0;
    std::vector<GalleryCheck> checks;
    bool passed() const;
};

GalleryReport crosscheck(const GalleryEntry& entry, int samples = 100, std::uint64_t seed = 1,
                         sweep::Policy policy = sweep::Policy::parallel);

// Checks any potential pair at random points of the region: unmodified-equation residual of
// phi1 and phi2, agreement of the two curvature methods, det G^-1 = x^2, chart congruence,
// G G^-1 = I, Abreu residual and nonnegativity of the conformal scalar.
std::vector<GalleryCheck> check_potential(const Potential& pot, const Region& region, int samples,
                                          std::uint64_t seed, sweep::Policy policy = sweep::Policy::parallel,
                                          std::function<bool(double, double)> regular = {});

}  // namespace polylab
