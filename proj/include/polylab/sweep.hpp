#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "polylab/polytope.hpp"

namespace polylab::sweep {

enum class Policy { serial, parallel };

// Thread count honoured by the parallel policy; POLYLAB_THREADS caps it.
int thread_cap();

// Runs body(i) for i in [0, n). If any call throws, the exception from the lowest
// index is rethrown after the loop, so both policies fail identically.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body, Policy policy);

std::vector<double> map_points(const std::vector<Vec2>& points,
                               const std::function<double(double, double)>& fn, Policy policy);

// Row-major grid with y varying fastest.
std::vector<Vec2> grid_points(double x0, double x1, int nx, double y0, double y1, int ny);

// Halton points in [x0,x1] x [y0,y1] (bases 2 and 3), skipping the first `skip` terms.
std::vector<Vec2> halton_points(int count, double x0, double x1, double y0, double y1, int skip = 20);
double halton(int index, int base);

}  // namespace polylab::sweep
