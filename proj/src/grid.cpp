#include "layerlab/grid.hpp"

#include <algorithm>
#include <cmath>

namespace layerlab {

namespace {

double max_abs_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

bool finite_all(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

double max_abs(const FieldState& s) {
    double m = std::max({max_abs_of(s.ex), max_abs_of(s.ey), max_abs_of(s.hz)});
    if (s.has_split()) m = std::max({m, max_abs_of(s.hzx), max_abs_of(s.hzy)});
    if (s.has_w()) m = std::max(m, max_abs_of(s.w));
    return m;
}

bool all_finite(const FieldState& s) {
    if (!finite_all(s.ex) || !finite_all(s.ey) || !finite_all(s.hz)) return false;
    if (s.has_split() && (!finite_all(s.hzx) || !finite_all(s.hzy))) return false;
    if (s.has_w() && !finite_all(s.w)) return false;
    return true;
}

}  // namespace layerlab
