#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace layerlab {

/**
 * Uniform staggered (Yee) grid over the rectangle [x_min,x_max] x [y_min,y_max].
 *
 * Node layout for the TE fields:
 *   Ex at (i+1/2, j)     i in [0,nx),  j in [0,ny]
 *   Ey at (i, j+1/2)     i in [0,nx],  j in [0,ny)
 *   Hz at (i+1/2, j+1/2) i in [0,nx),  j in [0,ny)
 * E fields live at integer time levels, Hz at half-integer levels.
 */
struct YeeGrid {
    double x_min{0.0}, x_max{0.0};
    double y_min{0.0}, y_max{0.0};
    int nx{0}, ny{0};
    double dx{0.0}, dy{0.0};
    double dt{0.0};
    int n_steps{0};

    YeeGrid() = default;

    YeeGrid(double x0, double x1, double y0, double y1,
            int nx_in, int ny_in, double dt_in, int n_steps_in)
        : x_min(x0), x_max(x1), y_min(y0), y_max(y1),
          nx(nx_in), ny(ny_in),
          dx((x1 - x0) / nx_in), dy((y1 - y0) / ny_in),
          dt(dt_in), n_steps(n_steps_in) {
        if (nx < 2 || ny < 2)
            throw std::invalid_argument("YeeGrid: need nx >= 2 and ny >= 2");
        if (!(dx > 0.0) || !(dy > 0.0) || !(dt > 0.0))
            throw std::invalid_argument("YeeGrid: spacings and dt must be positive");
        if (n_steps < 1)
            throw std::invalid_argument("YeeGrid: n_steps must be >= 1");
        if (!(cfl() < 1.0))
            throw std::invalid_argument(
                "YeeGrid: CFL number dt*sqrt(1/dx^2+1/dy^2) = " +
                std::to_string(cfl()) + " violates the stability bound < 1");
    }

    [[nodiscard]] double cfl() const {
        return dt * std::sqrt(1.0 / (dx * dx) + 1.0 / (dy * dy));
    }

    /// Halves dx, dy, dt and doubles nx, ny, n_steps. Domain unchanged.
    [[nodiscard]] YeeGrid refined() const {
        return {x_min, x_max, y_min, y_max, 2 * nx, 2 * ny, dt / 2.0, 2 * n_steps};
    }

    [[nodiscard]] YeeGrid refined(int levels) const {
        YeeGrid g = *this;
        for (int l = 0; l < levels; ++l) g = g.refined();
        return g;
    }

    // staggered coordinate maps
    [[nodiscard]] double ex_x(int i) const { return x_min + (i + 0.5) * dx; }
    [[nodiscard]] double ex_y(int j) const { return y_min + j * dy; }
    [[nodiscard]] double ey_x(int i) const { return x_min + i * dx; }
    [[nodiscard]] double ey_y(int j) const { return y_min + (j + 0.5) * dy; }
    [[nodiscard]] double hz_x(int i) const { return x_min + (i + 0.5) * dx; }
    [[nodiscard]] double hz_y(int j) const { return y_min + (j + 0.5) * dy; }

    // inverse maps (nearest staggered index)
    [[nodiscard]] int ex_i(double x) const { return static_cast<int>(std::lround((x - x_min) / dx - 0.5)); }
    [[nodiscard]] int ex_j(double y) const { return static_cast<int>(std::lround((y - y_min) / dy)); }
    [[nodiscard]] int ey_i(double x) const { return static_cast<int>(std::lround((x - x_min) / dx)); }
    [[nodiscard]] int ey_j(double y) const { return static_cast<int>(std::lround((y - y_min) / dy - 0.5)); }
    [[nodiscard]] int hz_i(double x) const { return static_cast<int>(std::lround((x - x_min) / dx - 0.5)); }
    [[nodiscard]] int hz_j(double y) const { return static_cast<int>(std::lround((y - y_min) / dy - 0.5)); }
};

/**
 * Field arrays at one time level. ex/ey/hz are always present; hzx/hzy are
 * allocated for split-field (Berenger) states and w for SPML states.
 * Arrays are stored row-major with x contiguous.
 */
struct FieldState {
    int nx{0}, ny{0};
    std::vector<double> ex;   // nx * (ny+1)
    std::vector<double> ey;   // (nx+1) * ny
    std::vector<double> hz;   // nx * ny
    std::vector<double> hzx;  // nx * ny, split-field only
    std::vector<double> hzy;  // nx * ny, split-field only
    std::vector<double> w;    // nx * (ny+1), SPML only (colocated with ex)

    FieldState() = default;

    FieldState(int nx_in, int ny_in, bool split_field, bool with_w)
        : nx(nx_in), ny(ny_in),
          ex(static_cast<size_t>(nx_in) * (ny_in + 1), 0.0),
          ey(static_cast<size_t>(nx_in + 1) * ny_in, 0.0),
          hz(static_cast<size_t>(nx_in) * ny_in, 0.0) {
        if (split_field) {
            hzx.assign(hz.size(), 0.0);
            hzy.assign(hz.size(), 0.0);
        }
        if (with_w) w.assign(ex.size(), 0.0);
    }

    [[nodiscard]] bool has_split() const { return !hzx.empty(); }
    [[nodiscard]] bool has_w() const { return !w.empty(); }

    [[nodiscard]] double& ex_at(int i, int j) { return ex[static_cast<size_t>(j) * nx + i]; }
    [[nodiscard]] const double& ex_at(int i, int j) const { return ex[static_cast<size_t>(j) * nx + i]; }
    [[nodiscard]] double& ey_at(int i, int j) { return ey[static_cast<size_t>(j) * (nx + 1) + i]; }
    [[nodiscard]] const double& ey_at(int i, int j) const { return ey[static_cast<size_t>(j) * (nx + 1) + i]; }
    [[nodiscard]] double& hz_at(int i, int j) { return hz[static_cast<size_t>(j) * nx + i]; }
    [[nodiscard]] const double& hz_at(int i, int j) const { return hz[static_cast<size_t>(j) * nx + i]; }
    [[nodiscard]] double& w_at(int i, int j) { return w[static_cast<size_t>(j) * nx + i]; }
    [[nodiscard]] const double& w_at(int i, int j) const { return w[static_cast<size_t>(j) * nx + i]; }
};

/// Max absolute value over all allocated arrays of the state.
double max_abs(const FieldState& s);

/// True if every entry of every allocated array is finite.
bool all_finite(const FieldState& s);

}  // namespace layerlab
