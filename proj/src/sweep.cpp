#include "polylab/sweep.hpp"

#include <omp.h>

#include <cstdlib>
#include <exception>
#include <string>

namespace polylab::sweep {

int thread_cap()
{
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("POLYLAB_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap > 0 && cap < n) n = static_cast<int>(cap);
    }
    return n;
}

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body, Policy policy)
{
    std::vector<std::exception_ptr> errors(n);
    if (policy == Policy::serial) {
        for (std::size_t i = 0; i < n; ++i) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    } else {
        const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16) num_threads(thread_cap())
        for (long long i = 0; i < count; ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::vector<double> map_points(const std::vector<Vec2>& points,
                               const std::function<double(double, double)>& fn, Policy policy)
{
    std::vector<double> out(points.size());
    for_each_index(points.size(), [&](std::size_t i) { out[i] = fn(points[i][0], points[i][1]); }, policy);
    return out;
}

std::vector<Vec2> grid_points(double x0, double x1, int nx, double y0, double y1, int ny)
{
    std::vector<Vec2> pts;
    pts.reserve(static_cast<std::size_t>(nx) * ny);
    for (int i = 0; i < nx; ++i) {
        const double x = nx == 1 ? x0 : x0 + (x1 - x0) * i / (nx - 1);
        for (int k = 0; k < ny; ++k) {
            const double y = ny == 1 ? y0 : y0 + (y1 - y0) * k / (ny - 1);
            pts.emplace_back(x, y);
        }
    }
    return pts;
}

double halton(int index, int base)
{
    double f = 1.0, r = 0.0;
    for (int i = index; i > 0; i /= base) {
        f /= base;
        r += f * (i % base);
    }
    return r;
}

std::vector<Vec2> halton_points(int count, double x0, double x1, double y0, double y1, int skip)
{
    std::vector<Vec2> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) {
        const int k = i + skip + 1;
        pts.emplace_back(x0 + (x1 - x0) * halton(k, 2), y0 + (y1 - y0) * halton(k, 3));
    }
    return pts;
}

}  // namespace polylab::sweep
