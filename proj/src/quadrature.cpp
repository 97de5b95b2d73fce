#include "polylab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "polylab/error.hpp"

namespace polylab::quad {

namespace {

constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error, absval;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const Fn& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = fc * wgk[7];
    double resg = fc * wg[3];
    double resabs = std::fabs(resk);
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        resk += wgk[j] * (f1 + f2);
        resabs += wgk[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1) resg += wg[j / 2] * (f1 + f2);
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.value = resk * h;
    p.absval = resabs * std::fabs(h);
    p.error = std::fabs((resk - resg) * h);
    if (!std::isfinite(p.value))
        throw Error(ErrorKind::NonConvergence, "non-finite integrand value");
    return p;
}

}  // namespace

Result integrate_adaptive_ex(const Fn& f, double a, double b, double tol, int max_intervals)
{
    Result r;
    if (a == b) return r;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    std::priority_queue<Panel> heap;
    Panel p0 = gk15(f, a, b);
    heap.push(p0);
    double err = p0.error, absval = p0.absval;
    int n = 1;
    while (err > std::max(tol, 50 * eps * absval)) {
        if (n >= max_intervals)
            throw Error(ErrorKind::NonConvergence,
                        "adaptive quadrature exceeded interval cap, error estimate " +
                            std::to_string(err));
        Panel w = heap.top();
        const double m = 0.5 * (w.a + w.b);
        if (!(m > w.a && m < w.b))
            throw Error(ErrorKind::NonConvergence, "interval underflow in adaptive quadrature");
        heap.pop();
        Panel l = gk15(f, w.a, m);
        Panel rr = gk15(f, m, w.b);
        err += l.error + rr.error - w.error;
        absval += l.absval + rr.absval - w.absval;
        heap.push(l);
        heap.push(rr);
        ++n;
        if (err < 0) err = 0;
    }
    // re-sum to shed accumulated cancellation from the running totals
    double s = 0.0, e = 0.0;
    while (!heap.empty()) {
        s += heap.top().value;
        e += heap.top().error;
        heap.pop();
    }
    r.value = sign * s;
    r.error = e;
    r.intervals = n;
    return r;
}

double integrate_adaptive(const Fn& f, double a, double b, double tol, int max_intervals)
{
    return integrate_adaptive_ex(f, a, b, tol, max_intervals).value;
}

double integrate_pieces(const Fn& f, const double* breaks, int nbreaks, double tol)
{
    double s = 0.0;
    const int pieces = nbreaks - 1;
    for (int i = 0; i < pieces; ++i) {
        if (breaks[i + 1] > breaks[i])
            s += integrate_adaptive(f, breaks[i], breaks[i + 1], tol / pieces);
    }
    return s;
}

std::vector<Node> composite_rule(double a, double b, int panels)
{
    std::vector<Node> out;
    if (panels < 1 || !(b > a)) return out;
    out.reserve(static_cast<std::size_t>(panels) * 15);
    const double width = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * width, h = 0.5 * width;
        for (int j = 0; j < 7; ++j) {
            out.push_back({c - h * xgk[j], h * wgk[j]});
            out.push_back({c + h * xgk[j], h * wgk[j]});
        }
        out.push_back({c, h * wgk[7]});
    }
    return out;
}

double decay_cutoff(double a, double rate, double C, double tol)
{
    const double scale = tol * std::min(1.0, rate);
    const double span = (C > scale) ? std::log(C / scale) / rate : 0.0;
    return a + std::max(span, 1.0 / rate);
}

double integrate_decaying(const Fn& f, double a, double rate, double tol)
{
    if (!(rate > 0)) throw Error(ErrorKind::Domain, "decay rate must be positive");
    constexpr int kSamples = 64;
    const double L = 16.0 / rate;
    const double h = L / kSamples;
    double C1 = 0.0;
    for (int k = 0; k <= kSamples; ++k) {
        const double w = a + k * h;
        C1 = std::max(C1, std::fabs(f(w)) * std::exp(rate * (w - a)));
    }
    const double floor = 1e-3 * tol;
    double C2 = 0.0;
    for (int k = 1; k <= kSamples; ++k) {
        const double w = a + L + k * h;
        const double v = std::fabs(f(w));
        if (v <= floor) continue;
        const double env = v * std::exp(rate * (w - a));
        if (env > 100.0 * C1)
            throw Error(ErrorKind::DecayMismatch,
                        "integrand exceeds declared exponential envelope at w=" +
                            std::to_string(w));
        C2 = std::max(C2, env);
    }
    const double C = std::max(C1, C2);
    const double wmax = decay_cutoff(a, rate, C, tol);
    return integrate_adaptive(f, a, wmax, tol);
}

}  // namespace polylab::quad
