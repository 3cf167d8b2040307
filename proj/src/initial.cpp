#include "layerlab/initial.hpp"

#include <cmath>
#include <numbers>

namespace layerlab {

namespace {

constexpr double kGaussianFloor = 1e-12;

// splitmix64: a fixed bijective mixer, so the random field is a pure function
// of (seed, cell).
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double cell_uniform(std::uint64_t seed, std::int64_t ci, std::int64_t cj) {
    std::uint64_t h = mix64(seed ^ mix64(static_cast<std::uint64_t>(ci) * 0x9e3779b97f4a7c15ULL) ^
                            mix64(static_cast<std::uint64_t>(cj) + 0x7f4a7c15ULL));
    // top 53 bits -> [0,1) -> [-1,1]
    const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
    return 2.0 * u - 1.0;
}

}  // namespace

double InitialCondition::support_radius() const {
    if (kind == Kind::gaussian) {
        // exp(-d^2/(2 r^2)) < floor  <=>  d > r*sqrt(2*ln(1/floor))
        return r * std::sqrt(2.0 * std::log(1.0 / kGaussianFloor));
    }
    return r;
}

double initial_hz(const InitialCondition& init, double x, double y) {
    const double ox = x - init.xc;
    const double oy = y - init.yc;
    const double d = std::hypot(ox, oy);
    switch (init.kind) {
        case InitialCondition::Kind::modulated_bump: {
            // squared-cosine envelope vanishing at the ball boundary
            if (d > init.r) return 0.0;
            const double env = std::cos(std::numbers::pi * d / (2.0 * init.r));
            const double phase = init.k * std::numbers::pi * (init.vx * ox + init.vy * oy) / init.r;
            return env * env * std::cos(phase);
        }
        case InitialCondition::Kind::gaussian: {
            const double g = std::exp(-d * d / (2.0 * init.r * init.r));
            return g < kGaussianFloor ? 0.0 : g;
        }
        case InitialCondition::Kind::random: {
            if (d > init.r) return 0.0;
            const auto ci = static_cast<std::int64_t>(std::floor(x / init.base_cell));
            const auto cj = static_cast<std::int64_t>(std::floor(y / init.base_cell));
            return cell_uniform(init.seed, ci, cj);
        }
    }
    return 0.0;
}

void fill_initial_state(const InitialCondition& init, const YeeGrid& grid, FieldState& state) {
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
            state.hz_at(i, j) = initial_hz(init, grid.hz_x(i), grid.hz_y(j));
    if (state.has_split()) {
        for (size_t n = 0; n < state.hz.size(); ++n) {
            state.hzx[n] = 0.5 * state.hz[n];
            state.hzy[n] = 0.5 * state.hz[n];
        }
    }
    // E fields and the SPML auxiliary start at zero (already so on allocation).
}

}  // namespace layerlab
