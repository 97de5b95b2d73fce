#pragma once

#include <map>
#include <string>
#include <vector>

#include "polylab/pde.hpp"
#include "polylab/sweep.hpp"

namespace polylab {

enum class BarrierKind { quadrant_lower, growth_t, monotone_s, eigen_eta };

const char* to_string(BarrierKind k);
BarrierKind barrier_kind_from_string(const std::string& name);

using BarrierParams = std::map<std::string, double>;

struct BarrierCheck {
    std::string name;
    int samples = 0;
    int violations = 0;
    double worst_margin = 0;  // smallest margin seen, negative means violated
    int first_violation = -1;
    Vec2 first_point{0, 0};
};

struct BarrierReport {
    int samples = 0;
    double max_residual = 0;  // relative, see relative_residual
    std::vector<BarrierCheck> checks;

    int violations() const;
    bool passed() const { return violations() == 0; }
};

struct BarrierCert {
    BarrierKind kind = BarrierKind::quadrant_lower;
    BarrierParams params;  // inputs plus derived constants
    ScalarField field;     // in (x, y); growth_t and monotone_s are built in (s, t)
    BarrierReport report;
};

struct BarrierOptions {
    int samples = 10000;
    double residual_tol = 1e-10;
    sweep::Policy policy = sweep::Policy::parallel;
};

// Defaults: eps = eps_prime = 1, delta = 1e-6, ybar = 0 for quadrant_lower;
// c = 2, s0 = 1, t0 = 0, M = -2, f0 = 1 for growth_t; monotone_s adds mu = 0.5, eta = 0.1;
// A = 1, eps_prime = 1 for eigen_eta.
BarrierParams default_params(BarrierKind kind);

// Fills in defaults, derives constants, builds the field. No sampling.
BarrierCert build_barrier(BarrierKind kind, const BarrierParams& params);

// build_barrier followed by sampled verification; throws VerificationFailed naming the
// first violating sample, ParamOutOfRange for parameters outside their range.
BarrierCert make_barrier(BarrierKind kind, const BarrierParams& params = {},
                         const BarrierOptions& options = {});

// Same sampling as make_barrier, returning the report instead of throwing.
BarrierReport verify_barrier(const BarrierCert& cert, const BarrierOptions& options = {});

// Throws VerificationFailed for the first failing check of cert.report.
void require_passed(const BarrierCert& cert);

// growth_t constants
double growth_sigma(double c, double tau0_sq);
// D s0^-1 = (c+1) f0 sigma^c / (2 (tau0^2 - sigma))
double growth_d_over_s0(double c, double tau0_sq, double f0);
// the same constant written without sigma
double growth_d_over_s0_closed(double c, double tau0_sq, double f0);

}  // namespace polylab
