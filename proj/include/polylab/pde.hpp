#pragma once

#include <functional>
#include <string>
#include <vector>

#include "polylab/polytope.hpp"

namespace polylab {

struct FieldJet {
    double f = 0, fx = 0, fy = 0, fxx = 0, fxy = 0, fyy = 0;
};

struct ScalarField {
    std::function<double(double, double)> eval;
    std::function<FieldJet(double, double)> jet;  // optional analytic derivatives
    std::string growth_note;

    bool has_jet() const { return static_cast<bool>(jet); }
    double operator()(double x, double y) const { return eval(x, y); }
};

ScalarField field_from_jet(std::function<FieldJet(double, double)> jet, std::string note = {});
ScalarField field_from_eval(std::function<double(double, double)> eval, std::string note = {});

// unmodified: f_xx + f_yy - x^-1 f_x;  modified: f_xx + f_yy + 3 x^-1 f_x
enum class Operator { unmodified, modified };
enum class ResidualMode { analytic, fd };

double apply_operator(const FieldJet& j, Operator op, double x);
double operator_scale(const FieldJet& j, Operator op, double x);

// h <= 0 selects the default step schedule.
double residual(const ScalarField& field, Operator op, double x, double y, ResidualMode mode,
                double h = 0.0);
// Residual divided by |f_xx| + |f_yy| + |c x^-1 f_x| + |f| x^-2.
double relative_residual(const ScalarField& field, Operator op, double x, double y);

// Second derivatives by central differences with one Richardson level.
FieldJet fd_jet(const ScalarField& field, double x, double y, double h);

enum class Dual { phi_to_f, f_to_phi };
ScalarField dualize(const ScalarField& field, Dual direction);

struct StPoint {
    double s = 0;
    double t = 0;
};
StPoint to_st(double x, double y);
Vec2 from_st(const StPoint& p);
// s^3 f_ss + f_tt at (s,t) by central differences of f composed with from_st.
double st_residual_fd(const ScalarField& field, double s, double t, double h);

enum class Variant { primary, tilde };

struct EigenEntry {
    Operator table = Operator::unmodified;
    int sign = 0;  // +1 for lambda^2, 0, -1 for -lambda^2
    double lambda = 1.0;
    Variant u = Variant::primary;
    Variant v = Variant::primary;
};

std::string describe(const EigenEntry& e);
ScalarField eigenfunction(const EigenEntry& entry);
// The 12 table rows (u paired with v, u~ with v~); all_products adds the mixed products.
std::vector<EigenEntry> eigen_catalog(double lambda = 1.0, bool all_products = false);
// The modified-table entry that x^-2 maps the given unmodified entry onto.
EigenEntry dual_entry(const EigenEntry& e);

struct Region {
    double x0 = 0, x1 = 1, y0 = -1, y1 = 1;
};

// sup of x |grad log f| over an n-by-n grid with n = ceil(sqrt(samples)).
double gradient_bound_probe(const ScalarField& field, const Region& region, int samples);

}  // namespace polylab
