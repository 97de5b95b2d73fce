#include "polylab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "polylab/barriers.hpp"
#include "polylab/error.hpp"
#include "polylab/gallery.hpp"
#include "polylab/geometry.hpp"
#include "polylab/io.hpp"
#include "polylab/pde.hpp"
#include "polylab/polytope.hpp"
#include "polylab/solvers.hpp"
#include "polylab/sweep.hpp"

namespace polylab::cli {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

double to_double(const std::string& s, const std::string& what)
{
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorKind::BadParams, what + ": '" + s + "' is not a number");
    }
}

int to_int(const std::string& s, const std::string& what)
{
    const double v = to_double(s, what);
    if (v != std::floor(v) || std::fabs(v) > 1e9) throw Error(ErrorKind::BadParams, what + ": '" + s + "' is not an integer");
    return static_cast<int>(v);
}

void emit(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-")
        out << text;
    else
        io::write_file(path, text);
}

// A potential plus what the check suites need to sample it.
struct Target {
    std::string label;
    std::optional<Potential> pot;
    std::optional<GalleryEntry> entry;
    Region region{0.05, 4.0, -3.0, 3.0};
    std::function<bool(double, double)> regular;
    bool flat = false;  // curvature must vanish identically
};

Target map_target(const std::string& arg, const std::map<std::string, double>& params)
{
    Target t;
    t.label = arg;
    MomentumMap map;
    if (arg == "halfplane") {
        if (!params.empty()) throw Error(ErrorKind::BadParams, "halfplane takes no parameters");
        map = halfplane_map();
        t.flat = true;
    } else if (arg == "quarterplane") {
        double alpha = 0, beta = 0;
        for (const auto& [k, v] : params) {
            if (k == "alpha")
                alpha = v;
            else if (k == "beta")
                beta = v;
            else
                throw Error(ErrorKind::BadParams, "quarterplane: unknown parameter '" + k + "'");
        }
        if (alpha < 0 || beta < 0) throw Error(ErrorKind::BadParams, "quarterplane: alpha and beta must be nonnegative");
        map = quarterplane_map(alpha, beta);
        t.flat = alpha == 0 && beta == 0;
    } else {
        if (!params.empty()) throw Error(ErrorKind::BadParams, "map files take no parameters");
        map = io::map_from_json(io::read_file(arg));
        t.flat = map.kinks.empty() && map.quad1 == 0 && map.quad2 == 0;
    }
    double lo = 0, hi = 0;
    for (const auto& k : map.kinks) {
        lo = std::min(lo, k.y0);
        hi = std::max(hi, k.y0);
    }
    t.region = {0.05, 4.0, lo - 3.0, hi + 3.0};
    t.pot = make_potential(map, arg);
    return t;
}

Target example_target(int id, const std::map<std::string, double>& params)
{
    Target t;
    t.entry = gallery(id, params);
    t.label = "example " + std::to_string(id);
    t.pot = t.entry->potential;
    t.region = t.entry->region;
    t.regular = t.entry->regular;
    return t;
}

const std::vector<std::string>& potential_fields()
{
    static const std::vector<std::string> names{"phi1", "phi2", "detA", "factor", "K", "abreu", "stilde"};
    return names;
}

std::function<double(double, double)> potential_field(const Potential& pot, const std::string& name)
{
    if (name == "phi1") return [&pot](double x, double y) { return pot.jet(x, y).phi[0]; };
    if (name == "phi2") return [&pot](double x, double y) { return pot.jet(x, y).phi[1]; };
    if (name == "detA") return [&pot](double x, double y) { return pot.jet(x, y).A.determinant(); };
    if (name == "factor") return [&pot](double x, double y) { return metric_sigma(pot, x, y, Chart::xy).m11; };
    if (name == "K") return [&pot](double x, double y) { return gauss_curvature(pot, x, y); };
    if (name == "abreu") return [&pot](double x, double y) { return abreu_residual(pot, x, y); };
    if (name == "stilde") return [&pot](double x, double y) { return conformal_scalar(pot, x, y); };
    throw Error(ErrorKind::BadParams, "unknown field '" + name + "'");
}

// NaN where the field is undefined: x = 0, corners, off-chart points, failed evaluations.
std::function<double(double, double)> guarded(std::function<double(double, double)> fn, const Potential* pot)
{
    return [fn = std::move(fn), pot](double x, double y) {
        if (pot && pot->valid && !pot->valid(x, y)) return kNaN;
        try {
            const double v = fn(x, y);
            return std::isfinite(v) ? v : kNaN;
        } catch (const Error&) {
            return kNaN;
        }
    };
}

std::string grid_csv(const GridSpec& g, const std::vector<std::string>& names,
                     const std::vector<std::function<double(double, double)>>& fns)
{
    const auto pts = sweep::grid_points(g.x0, g.x1, g.nx, g.y0, g.y1, g.ny);
    std::vector<std::vector<double>> cols;
    for (const auto& fn : fns) cols.push_back(sweep::map_points(pts, fn, sweep::Policy::parallel));
    io::CsvTable table;
    table.header = {"x", "y"};
    table.header.insert(table.header.end(), names.begin(), names.end());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<double> row{pts[i][0], pts[i][1]};
        for (const auto& c : cols) row.push_back(c[i]);
        table.rows.push_back(std::move(row));
    }
    return io::format_csv(table);
}

json check_json(const GalleryCheck& c)
{
    return {{"name", c.name},
            {"suite", c.suite},
            {"samples", c.samples},
            {"max_deviation", std::isfinite(c.max_deviation) ? json(c.max_deviation) : json(nullptr)},
            {"tol", c.tol},
            {"passed", c.passed}};
}

std::vector<GalleryCheck> eigen_suite(int samples, std::uint64_t seed, double tol)
{
    std::vector<GalleryCheck> out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(0.1, 10), uy(-5, 5);
    std::vector<Vec2> pts;
    for (int i = 0; i < samples; ++i) {
        const double x = ux(rng);
        pts.emplace_back(x, uy(rng));
    }
    for (const auto& e : eigen_catalog()) {
        const auto f = eigenfunction(e);
        const auto dev = sweep::map_points(
            pts, [&](double x, double y) { return std::fabs(relative_residual(f, e.table, x, y)); },
            sweep::Policy::parallel);
        double worst = 0;
        for (double d : dev) worst = std::isnan(d) || std::isnan(worst) ? kNaN : std::max(worst, d);
        out.push_back({describe(e), "eigen", samples, worst, tol, worst <= tol});
    }
    return out;
}

std::vector<GalleryCheck> barrier_suite(int samples, double tol)
{
    std::vector<GalleryCheck> out;
    for (auto kind : {BarrierKind::quadrant_lower, BarrierKind::growth_t, BarrierKind::monotone_s,
                      BarrierKind::eigen_eta}) {
        const auto cert = build_barrier(kind, default_params(kind));
        BarrierOptions opt;
        opt.samples = samples;
        opt.residual_tol = tol;
        const auto rep = verify_barrier(cert, opt);
        const std::string k = to_string(kind);
        out.push_back({k + "/residual", "barriers", rep.samples, rep.max_residual, tol, rep.max_residual < tol});
        for (const auto& bc : rep.checks)
            out.push_back({k + "/" + bc.name, "barriers", bc.samples, std::max(0.0, -bc.worst_margin), 0.0,
                           bc.violations == 0});
    }
    return out;
}

std::vector<GalleryCheck> target_suite(const Target& t, const std::string& suite, int samples, std::uint64_t seed)
{
    std::vector<GalleryCheck> all;
    if (t.entry) {
        all = crosscheck(*t.entry, samples, seed).checks;
    } else {
        all = check_potential(*t.pot, t.region, samples, seed, sweep::Policy::parallel, t.regular);
        if (t.flat) {
            std::mt19937_64 rng(seed + 7);
            std::uniform_real_distribution<double> ux(t.region.x0, t.region.x1), uy(t.region.y0, t.region.y1);
            std::vector<Vec2> pts;
            while (static_cast<int>(pts.size()) < samples) {
                const Vec2 p(ux(rng), uy(rng));
                bool near_corner = false;
                for (double c : t.pot->corners) near_corner = near_corner || std::hypot(p[0], p[1] - c) < 1e-2;
                if (!near_corner) pts.push_back(p);
            }
            const auto dev = sweep::map_points(
                pts,
                [&](double x, double y) {
                    return std::max(std::fabs(gauss_curvature(*t.pot, x, y, CurvatureMethod::logdet)),
                                    std::fabs(gauss_curvature(*t.pot, x, y, CurvatureMethod::christoffel)));
                },
                sweep::Policy::parallel);
            double worst = 0;
            for (double d : dev) worst = std::max(worst, d);
            all.push_back({"curvature_zero", "curvature", samples, worst, 1e-6, worst < 1e-6});
        }
    }
    std::vector<GalleryCheck> out;
    for (const auto& c : all)
        if (suite == "all" || c.suite == suite) out.push_back(c);
    return out;
}

std::map<std::string, double> params_or_empty(const std::string& text)
{
    return text.empty() ? std::map<std::string, double>{} : parse_params(text);
}

BoundaryTrace trace_file(const std::string& path, const std::string& column)
{
    const auto table = io::require_columns(io::parse_csv(io::read_file(path)), {column, "value"});
    std::vector<std::pair<double, double>> samples;
    for (const auto& r : table.rows) samples.emplace_back(r[0], r[1]);
    return BoundaryTrace::from_samples(std::move(samples));
}

std::string points_csv(const std::vector<QueryPoint>& pts, const std::vector<double>& values)
{
    io::CsvTable table;
    table.header = {"x", "y", "value"};
    for (std::size_t i = 0; i < pts.size(); ++i) table.rows.push_back({pts[i].x, pts[i].y, values[i]});
    return io::format_csv(table);
}

std::vector<QueryPoint> read_points(const std::string& path)
{
    std::vector<QueryPoint> pts;
    for (const auto& [x, y] : io::read_points_csv(path)) pts.push_back({x, y});
    return pts;
}

}  // namespace

GridSpec parse_grid(const std::string& text)
{
    const auto parts = split(text, ',');
    if (parts.size() != 6) throw Error(ErrorKind::BadParams, "grid must be x0,x1,nx,y0,y1,ny");
    GridSpec g;
    g.x0 = to_double(parts[0], "grid x0");
    g.x1 = to_double(parts[1], "grid x1");
    g.nx = to_int(parts[2], "grid nx");
    g.y0 = to_double(parts[3], "grid y0");
    g.y1 = to_double(parts[4], "grid y1");
    g.ny = to_int(parts[5], "grid ny");
    if (!(g.x0 >= 0 && g.x0 < g.x1) || !std::isfinite(g.x1)) throw Error(ErrorKind::BadParams, "grid needs 0 <= x0 < x1");
    if (!(g.y0 < g.y1) || !std::isfinite(g.y0) || !std::isfinite(g.y1))
        throw Error(ErrorKind::BadParams, "grid needs y0 < y1");
    if (g.nx < 2 || g.ny < 2) throw Error(ErrorKind::BadParams, "grid needs nx, ny >= 2");
    if (static_cast<long long>(g.nx) * g.ny > 50'000'000) throw Error(ErrorKind::BadParams, "grid too large");
    return g;
}

std::map<std::string, double> parse_params(const std::string& text)
{
    std::map<std::string, double> out;
    for (const auto& item : split(text, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw Error(ErrorKind::BadParams, "parameter '" + item + "' is not k=v");
        const std::string key = item.substr(0, eq);
        if (out.count(key)) throw Error(ErrorKind::BadParams, "parameter '" + key + "' given twice");
        out[key] = to_double(item.substr(eq + 1), "parameter " + key);
    }
    return out;
}

ParamCount family_params(int edges)
{
    if (edges < 1) throw Error(ErrorKind::BadParams, "an outline has at least one edge");
    if (edges == 1) return {3, 0};
    if (edges == 2) return {4, 2};
    return {edges + 2, edges + 2};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"polylab: scalar-flat toric polytope metrics and the degenerate-elliptic PDE toolkit", "polylab"};
    app.require_subcommand(1);

    // synth
    std::string outline_path, synth_out;
    auto* synth = app.add_subcommand("synth", "Synthesize a momentum map from an outline JSON file");
    synth->add_option("--outline", outline_path, "outline JSON")->required();
    synth->add_option("--out", synth_out, "momentum-map JSON")->required();

    // eval
    std::string eval_map, eval_params, eval_grid, eval_fields, eval_out;
    int eval_example = 0;
    auto* eval = app.add_subcommand("eval", "Evaluate geometric fields of a map on a grid");
    auto* eval_map_opt = eval->add_option("--map", eval_map, "map JSON, 'halfplane' or 'quarterplane'");
    auto* eval_ex_opt = eval->add_option("--example", eval_example, "gallery example 5 to 8");
    eval_map_opt->excludes(eval_ex_opt);
    eval->add_option("--params", eval_params, "k=v,... for quarterplane or the example");
    eval->add_option("--grid", eval_grid, "x0,x1,nx,y0,y1,ny")->required();
    eval->add_option("--fields", eval_fields, "comma list of phi1,phi2,detA,factor,K,abreu,stilde")->required();
    eval->add_option("--out", eval_out, "CSV output, stdout when omitted");

    // check
    std::string check_map, check_params, check_suite, check_out;
    int check_example = 0, check_samples = 0;
    std::uint64_t check_seed = 1;
    std::optional<double> check_tol;
    auto* check = app.add_subcommand("check", "Run a check suite and print a JSON report");
    auto* check_map_opt = check->add_option("--map", check_map, "map JSON, 'halfplane' or 'quarterplane'");
    auto* check_ex_opt = check->add_option("--example", check_example, "gallery example 1 to 8");
    check_map_opt->excludes(check_ex_opt);
    check->add_option("--params", check_params, "k=v,...");
    check->add_option("--suite", check_suite, "residual, curvature, abreu, det, conformal, identity, all, barriers, eigen")
        ->required()
        ->check(CLI::IsMember(
            {"residual", "curvature", "abreu", "det", "conformal", "identity", "all", "barriers", "eigen"}));
    check->add_option("--samples", check_samples, "sample count (suite default when omitted)");
    check->add_option("--seed", check_seed, "random seed");
    check->add_option("--tol", check_tol, "tolerance overriding each check's own");
    check->add_option("--out", check_out, "also write the report here");

    // solve
    auto* solve = app.add_subcommand("solve", "Evaluate a PDE solver at query points");
    solve->require_subcommand(1);
    std::string pts_path, solve_out;
    double tol = 0;

    std::string hp_trace;
    double hp_growth = 0;
    std::optional<double> hp_eps;
    auto* hp = solve->add_subcommand("halfplane", "Convolution with the half-plane kernel (x > 0 or x > eps)");
    hp->add_option("--trace", hp_trace, "CSV y,value (a repeated y marks a jump)")->required();
    hp->add_option("--growth", hp_growth, "declared growth exponent of the trace");
    hp->add_option("--eps", hp_eps, "use the kernel of the half-plane x > eps");

    double st_eps = 1, st_eps_prime = 2;
    std::string st_trace_eps, st_trace_eps_prime;
    auto* strip = solve->add_subcommand("strip", "Modified equation on eps < x < eps_prime");
    strip->add_option("--eps", st_eps)->required();
    strip->add_option("--eps-prime", st_eps_prime)->required();
    strip->add_option("--trace-eps", st_trace_eps, "CSV y,value")->required();
    strip->add_option("--trace-eps-prime", st_trace_eps_prime, "CSV y,value")->required();

    std::string se_right, se_top, se_bottom;
    int se_N = 60;
    auto* series = solve->add_subcommand("series", "Series solution on (0,1) x (-1,1)");
    series->add_option("--right", se_right, "CSV y,value on x = 1")->required();
    series->add_option("--top", se_top, "CSV x,value on y = 1")->required();
    series->add_option("--bottom", se_bottom, "CSV x,value on y = -1")->required();
    series->add_option("--N", se_N, "number of terms")->check(CLI::Range(1, 2000));

    for (auto* s : {hp, strip, series}) {
        s->add_option("--points", pts_path, "CSV x,y")->required();
        s->add_option("--out", solve_out, "CSV output, stdout when omitted");
        s->add_option("--tol", tol, "quadrature tolerance");
    }

    // gallery
    std::string gal_params, gal_field, gal_grid, gal_out;
    int gal_example = 0;
    auto* gal = app.add_subcommand("gallery", "Plot-ready CSV of a gallery field; lists fields without --field");
    gal->add_option("--example", gal_example, "example 1 to 8")->required();
    gal->add_option("--params", gal_params, "k=v,...");
    gal->add_option("--field", gal_field, "field name");
    gal->add_option("--grid", gal_grid, "x0,x1,nx,y0,y1,ny");
    gal->add_option("--out", gal_out, "CSV output, stdout when omitted");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*synth) {
            const auto outline = validate_outline(io::outline_from_json(io::read_file(outline_path)));
            const auto map = synthesize(outline);
            io::write_file(synth_out, io::map_to_json(map) + "\n");
            const int n = outline.spec.edge_count();
            const auto pc = family_params(n);
            out << "edges=" << n << " params=" << pc.raw << " params_mod_homothety=" << pc.modulo_homothety << "\n";
            out << "kinks=";
            for (std::size_t i = 0; i < outline.kinks.size(); ++i)
                out << (i ? "," : "") << io::format_number(outline.kinks[i]);
            out << "\n";
            return kExitOk;
        }

        if (*eval) {
            if (eval_map.empty() && eval_example == 0) throw Error(ErrorKind::BadParams, "eval needs --map or --example");
            const auto params = params_or_empty(eval_params);
            const Target t = eval_map.empty() ? example_target(eval_example, params) : map_target(eval_map, params);
            if (!t.pot)
                throw Error(ErrorKind::BadParams, t.label + " has no momentum map; use the gallery command");
            const auto grid = parse_grid(eval_grid);
            const auto names = split(eval_fields, ',');
            if (names.empty()) throw Error(ErrorKind::BadParams, "no fields requested");
            std::vector<std::function<double(double, double)>> fns;
            for (const auto& n : names) {
                if (std::find(potential_fields().begin(), potential_fields().end(), n) == potential_fields().end())
                    throw Error(ErrorKind::BadParams, "unknown field '" + n + "'");
                fns.push_back(guarded(potential_field(*t.pot, n), &*t.pot));
            }
            emit(eval_out, grid_csv(grid, names, fns), out);
            return kExitOk;
        }

        if (*check) {
            std::vector<GalleryCheck> checks;
            json report;
            report["suite"] = check_suite;
            if (check_samples < 0) throw Error(ErrorKind::BadParams, "samples must be positive");
            if (check_tol && !(*check_tol >= 0)) throw Error(ErrorKind::BadParams, "tol must be nonnegative");
            if (check_suite == "eigen" || check_suite == "barriers") {
                if (!check_map.empty() || check_example != 0)
                    throw Error(ErrorKind::BadParams, "the " + check_suite + " suite takes no target");
                if (check_suite == "eigen") {
                    const int n = check_samples ? check_samples : 100;
                    checks = eigen_suite(n, check_seed, check_tol.value_or(1e-9));
                } else {
                    const int n = check_samples ? check_samples : 10000;
                    checks = barrier_suite(n, check_tol.value_or(1e-10));
                }
                report["target"] = nullptr;
            } else {
                if (check_map.empty() && check_example == 0)
                    throw Error(ErrorKind::BadParams, "suite " + check_suite + " needs --map or --example");
                const auto params = params_or_empty(check_params);
                const Target t = check_map.empty() ? example_target(check_example, params) : map_target(check_map, params);
                checks = target_suite(t, check_suite, check_samples ? check_samples : 200, check_seed);
                if (checks.empty())
                    throw Error(ErrorKind::BadParams, "suite " + check_suite + " has no checks for " + t.label);
                report["target"] = t.label;
                if (check_tol)
                    for (auto& c : checks) {
                        c.tol = *check_tol;
                        c.passed = c.max_deviation <= c.tol;
                    }
            }
            report["seed"] = check_seed;
            int passed = 0;
            report["checks"] = json::array();
            for (const auto& c : checks) {
                passed += c.passed ? 1 : 0;
                report["checks"].push_back(check_json(c));
            }
            report["passed"] = passed;
            report["total"] = checks.size();
            report["ok"] = passed == static_cast<int>(checks.size());
            const std::string text = report.dump(2) + "\n";
            out << text;
            if (!check_out.empty()) io::write_file(check_out, text);
            return report["ok"].get<bool>() ? kExitOk : kExitViolation;
        }

        if (*solve) {
            const auto pts = read_points(pts_path);
            std::function<double(double, double)> fn;
            std::optional<BoundaryTrace> a, b;
            std::optional<SeriesSolutionQ> sol;
            if (*hp) {
                a = trace_file(hp_trace, "y");
                a->growth_exponent = hp_growth;
                if (hp_eps) {
                    const KernelSpec spec{KernelKind::halfplane_eps, *hp_eps};
                    const double t = tol > 0 ? tol : 1e-8;
                    fn = [&, spec, t](double x, double y) { return kernel_solve(spec, *a, x, y, t); };
                } else {
                    const double t = tol > 0 ? tol : 1e-10;
                    fn = [&, t](double x, double y) { return halfplane_solve(*a, x, y, t); };
                }
            } else if (*strip) {
                a = trace_file(st_trace_eps, "y");
                b = trace_file(st_trace_eps_prime, "y");
                const double t = tol > 0 ? tol : 1e-8;
                fn = [&, t](double x, double y) { return strip_solve(st_eps, st_eps_prime, *a, *b, x, y, t); };
            } else {
                sol = series_solve_quad({trace_file(se_right, "y"), trace_file(se_top, "x"), trace_file(se_bottom, "x")},
                                        se_N);
                if (sol->truncation_warning) err << "warning: " << sol->warning << "\n";
                fn = [&](double x, double y) {
                    if (x < 0 || x > 1 || y < -1 || y > 1)
                        throw Error(ErrorKind::Domain, "point outside (0,1) x (-1,1)");
                    return x == 0 ? boundary_trace_at_zero(*sol, y) : sol->eval(x, y);
                };
            }
            const auto values = solve_points(pts, fn, sweep::Policy::parallel);
            emit(solve_out, points_csv(pts, values), out);
            return kExitOk;
        }

        if (*gal) {
            const GalleryEntry e = gallery(gal_example, params_or_empty(gal_params));
            if (gal_field.empty()) {
                for (const auto& f : e.fields) out << f.name << "\n";
                if (e.potential)
                    for (const auto& n : potential_fields()) out << n << "\n";
                if (e.conformal_factor) out << "conformal_factor\n";
                if (e.curvature) out << "curvature\n";
                return kExitOk;
            }
            if (gal_grid.empty()) throw Error(ErrorKind::BadParams, "gallery needs --grid with --field");
            const auto grid = parse_grid(gal_grid);
            std::function<double(double, double)> fn;
            const Potential* pot = e.potential ? &*e.potential : nullptr;
            if (std::any_of(e.fields.begin(), e.fields.end(), [&](const auto& f) { return f.name == gal_field; }))
                fn = e.field(gal_field).field.eval;
            else if (gal_field == "conformal_factor" && e.conformal_factor)
                fn = e.conformal_factor;
            else if (gal_field == "curvature" && e.curvature)
                fn = e.curvature;
            else if (pot && std::find(potential_fields().begin(), potential_fields().end(), gal_field) !=
                                potential_fields().end())
                fn = potential_field(*pot, gal_field);
            else
                throw Error(ErrorKind::BadParams, "example " + std::to_string(e.id) + " has no field '" + gal_field + "'");
            emit(gal_out, grid_csv(grid, {gal_field}, {guarded(fn, pot)}), out);
            return kExitOk;
        }
    } catch (const Error& e) {
        err << e.what() << "\n";
        return is_input_error(e.kind()) ? kExitInput : kExitViolation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitViolation;
    }
    return kExitInput;
}

}  // namespace polylab::cli
