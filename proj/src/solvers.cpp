#include "layerlab/solvers.hpp"

#include <stdexcept>

namespace layerlab {

StepContext StepContext::make(const YeeGrid& grid, const AbsorptionProfile& layer,
                              double nu_in, double mu_in, BoundaryMode boundary_in) {
    StepContext c;
    c.grid = grid;
    c.sigma_at_int.resize(grid.nx + 1);
    c.sigma_at_half.resize(grid.nx);
    for (int i = 0; i <= grid.nx; ++i) c.sigma_at_int[i] = sample_sigma(layer, grid.ey_x(i));
    for (int i = 0; i < grid.nx; ++i) c.sigma_at_half[i] = sample_sigma(layer, grid.hz_x(i));
    c.nu = nu_in;
    c.mu = mu_in;
    c.boundary = boundary_in;
    return c;
}

namespace {

void check_shapes(const FieldState& s, const StepContext& c) {
    const YeeGrid& g = c.grid;
    if (s.nx != g.nx || s.ny != g.ny ||
        s.ex.size() != static_cast<size_t>(g.nx) * (g.ny + 1) ||
        s.ey.size() != static_cast<size_t>(g.nx + 1) * g.ny ||
        s.hz.size() != static_cast<size_t>(g.nx) * g.ny)
        throw std::invalid_argument("stepper: field shapes do not match the grid");
}

// Ey update with optional semi-implicit damping sigma_i*(Ey^n+Ey^{n-1})/2.
// Reads only ey(i,j) and the old hz row, so updating in place is safe.
void update_ey_damped(FieldState& s, const StepContext& c, bool with_sigma) {
    const YeeGrid& g = c.grid;
    const double cx = g.dt / g.dx;
    const int nx = g.nx, ny = g.ny;
    for (int j = 0; j < ny; ++j) {
        double* eyr = &s.ey_at(0, j);
        const double* hzr = &s.hz_at(0, j);
        for (int i = 1; i < nx; ++i) {
            const double h = with_sigma ? 0.5 * g.dt * c.mu * c.sigma_at_int[i] : 0.0;
            eyr[i] = ((1.0 - h) * eyr[i] - cx * (hzr[i] - hzr[i - 1])) / (1.0 + h);
        }
        if (c.boundary == BoundaryMode::periodic) {
            const double h = with_sigma ? 0.5 * g.dt * c.mu * c.sigma_at_int[0] : 0.0;
            eyr[0] = ((1.0 - h) * eyr[0] - cx * (hzr[0] - hzr[nx - 1])) / (1.0 + h);
            eyr[nx] = eyr[0];
        }
    }
}

// Hz update with optional semi-implicit damping, consuming the advanced E.
void update_hz_damped(FieldState& s, const StepContext& c, bool with_sigma) {
    const YeeGrid& g = c.grid;
    const double cx = g.dt / g.dx;
    const double cy = g.dt / g.dy;
    const int nx = g.nx, ny = g.ny;
    for (int j = 0; j < ny; ++j) {
        const double* eyr = &s.ey_at(0, j);
        const double* exs = &s.ex_at(0, j);
        const double* exn = &s.ex_at(0, j + 1);
        double* hz = &s.hz_at(0, j);
        for (int i = 0; i < nx; ++i) {
            const double h = with_sigma ? 0.5 * g.dt * c.mu * c.sigma_at_half[i] : 0.0;
            hz[i] = ((1.0 - h) * hz[i] - cx * (eyr[i + 1] - eyr[i]) + cy * (exn[i] - exs[i])) /
                    (1.0 + h);
        }
    }
}

}  // namespace

namespace kernels {

void update_ex_plain(FieldState& s, const StepContext& c) {
    const YeeGrid& g = c.grid;
    const double cy = g.dt / g.dy;
    const int nx = g.nx, ny = g.ny;
    for (int j = 1; j < ny; ++j) {
        double* ex = &s.ex_at(0, j);
        const double* hzn = &s.hz_at(0, j);
        const double* hzs = &s.hz_at(0, j - 1);
        for (int i = 0; i < nx; ++i) ex[i] += cy * (hzn[i] - hzs[i]);
    }
    if (c.boundary == BoundaryMode::periodic) {
        double* ex0 = &s.ex_at(0, 0);
        double* exn = &s.ex_at(0, ny);
        const double* hzn = &s.hz_at(0, 0);
        const double* hzs = &s.hz_at(0, ny - 1);
        for (int i = 0; i < nx; ++i) ex0[i] += cy * (hzn[i] - hzs[i]);
        for (int i = 0; i < nx; ++i) exn[i] = ex0[i];
    }
    // layer_east / pec_all: Ex = 0 on the north and south rows, never updated.
}

void update_ey_smart(const FieldState& s, const StepContext& c,
                     double sigma_scale, std::vector<double>& ey_out) {
    const YeeGrid& g = c.grid;
    const double cx = g.dt / g.dx;
    const int nx = g.nx, ny = g.ny;
    const double wp = 0.25 * (1.0 + c.nu) * g.dt;  // semi-implicit self weight
    const double wm = 0.25 * (1.0 - c.nu) * g.dt;  // explicit cross weight
    const double m = c.mu * sigma_scale;
    for (int j = 0; j < ny; ++j) {
        const double* eyr = &s.ey_at(0, j);
        const double* hzr = &s.hz_at(0, j);
        double* out = &ey_out[static_cast<size_t>(j) * (nx + 1)];
        for (int i = 1; i < nx; ++i) {
            const double sg_i = m * c.sigma_at_int[i];
            const double cross =
                wm * (m * c.sigma_at_half[i] * hzr[i] + m * c.sigma_at_half[i - 1] * hzr[i - 1]);
            out[i] = ((1.0 - wp * sg_i) * eyr[i] - cx * (hzr[i] - hzr[i - 1]) - cross) /
                     (1.0 + wp * sg_i);
        }
        if (c.boundary == BoundaryMode::periodic) {
            const double sg_i = m * c.sigma_at_int[0];
            const double cross =
                wm * (m * c.sigma_at_half[0] * hzr[0] + m * c.sigma_at_half[nx - 1] * hzr[nx - 1]);
            out[0] = ((1.0 - wp * sg_i) * eyr[0] - cx * (hzr[0] - hzr[nx - 1]) - cross) /
                     (1.0 + wp * sg_i);
            out[nx] = out[0];
        }
    }
}

void update_hz_smart(const FieldState& s, const std::vector<double>& ey,
                     const StepContext& c, double sigma_scale,
                     std::vector<double>& hz_out) {
    const YeeGrid& g = c.grid;
    const double cx = g.dt / g.dx;
    const double cy = g.dt / g.dy;
    const int nx = g.nx, ny = g.ny;
    const double wp = 0.25 * (1.0 + c.nu) * g.dt;
    const double wm = 0.25 * (1.0 - c.nu) * g.dt;
    const double m = c.mu * sigma_scale;
    for (int j = 0; j < ny; ++j) {
        const double* eyr = &ey[static_cast<size_t>(j) * (nx + 1)];
        const double* exs = &s.ex_at(0, j);
        const double* exn = &s.ex_at(0, j + 1);
        const double* hzr = &s.hz_at(0, j);
        double* out = &hz_out[static_cast<size_t>(j) * nx];
        for (int i = 0; i < nx; ++i) {
            const double sg_h = m * c.sigma_at_half[i];
            const double cross =
                wm * (m * c.sigma_at_int[i + 1] * eyr[i + 1] + m * c.sigma_at_int[i] * eyr[i]);
            out[i] = ((1.0 - wp * sg_h) * hzr[i] - cx * (eyr[i + 1] - eyr[i]) +
                      cy * (exn[i] - exs[i]) - cross) /
                     (1.0 + wp * sg_h);
        }
    }
}

void apply_ey_boundary(const FieldState& s, const StepContext& c, std::vector<double>& ey) {
    const YeeGrid& g = c.grid;
    const int nx = g.nx, ny = g.ny;
    switch (c.boundary) {
        case BoundaryMode::layer_east:
            for (int j = 0; j < ny; ++j) {
                double* row = &ey[static_cast<size_t>(j) * (nx + 1)];
                row[0] = 0.0;                  // west wall, tangential E
                row[nx] = s.hz_at(nx - 1, j);  // east: Ey from the adjacent old Hz
            }
            break;
        case BoundaryMode::pec_all:
            for (int j = 0; j < ny; ++j) {
                double* row = &ey[static_cast<size_t>(j) * (nx + 1)];
                row[0] = 0.0;
                row[nx] = 0.0;
            }
            break;
        case BoundaryMode::periodic:
            break;  // wrap handled inside the update kernels
    }
}

void apply_ex_boundary(FieldState& s, const StepContext& c) {
    if (c.boundary == BoundaryMode::periodic) return;
    const int nx = c.grid.nx, ny = c.grid.ny;
    for (int i = 0; i < nx; ++i) {
        s.ex_at(i, 0) = 0.0;
        s.ex_at(i, ny) = 0.0;
    }
}

}  // namespace kernels

void apply_boundaries(FieldState& s, const StepContext& c) {
    check_shapes(s, c);
    kernels::apply_ey_boundary(s, c, s.ey);
    kernels::apply_ex_boundary(s, c);
}

void step_maxwell(FieldState& s, const StepContext& c) {
    check_shapes(s, c);
    kernels::update_ex_plain(s, c);
    update_ey_damped(s, c, /*with_sigma=*/false);
    apply_boundaries(s, c);
    update_hz_damped(s, c, /*with_sigma=*/false);
}

void step_berenger(FieldState& s, const StepContext& c) {
    check_shapes(s, c);
    if (!s.has_split())
        throw std::invalid_argument("step_berenger: state lacks the hzx/hzy split arrays");
    const YeeGrid& g = c.grid;
    const double cx = g.dt / g.dx;
    const double cy = g.dt / g.dy;
    const int nx = g.nx, ny = g.ny;

    kernels::update_ex_plain(s, c);
    update_ey_damped(s, c, /*with_sigma=*/true);
    apply_boundaries(s, c);

    for (int j = 0; j < ny; ++j) {
        const double* eyr = &s.ey_at(0, j);
        const double* exs = &s.ex_at(0, j);
        const double* exn = &s.ex_at(0, j + 1);
        double* hx = &s.hzx[static_cast<size_t>(j) * nx];
        double* hy = &s.hzy[static_cast<size_t>(j) * nx];
        double* hz = &s.hz_at(0, j);
        for (int i = 0; i < nx; ++i) {
            const double h = 0.5 * g.dt * c.mu * c.sigma_at_half[i];
            hx[i] = ((1.0 - h) * hx[i] - cx * (eyr[i + 1] - eyr[i])) / (1.0 + h);
            hy[i] += cy * (exn[i] - exs[i]);
            hz[i] = hx[i] + hy[i];
        }
    }
}

void step_smart(FieldState& s, const StepContext& c) {
    check_shapes(s, c);
    kernels::update_ex_plain(s, c);
    kernels::update_ey_smart(s, c, 1.0, s.ey);
    apply_boundaries(s, c);
    kernels::update_hz_smart(s, s.ey, c, 1.0, s.hz);
}

void step_spml(FieldState& s, const StepContext& c) {
    check_shapes(s, c);
    if (!s.has_w())
        throw std::invalid_argument("step_spml: state lacks the w auxiliary array");
    const YeeGrid& g = c.grid;
    const double a = 1.0 / g.dt;
    const int nx = g.nx, ny = g.ny;

    // Joint semi-implicit update of (Ex, W); the 2x2 system has determinant
    // exactly 1/dt^2.
    auto coupled_row = [&](int j, const double* hzn, const double* hzs) {
        double* ex = &s.ex_at(0, j);
        double* w = &s.w_at(0, j);
        const double dt2 = g.dt * g.dt;
        for (int i = 0; i < nx; ++i) {
            const double sg = c.mu * c.sigma_at_half[i];
            const double dyh = hzn ? (hzn[i] - hzs[i]) / g.dy : 0.0;
            const double rhs_e = (a + 0.5 * sg) * ex[i] - 0.5 * sg * sg * w[i] + dyh;
            const double rhs_w = 0.5 * ex[i] + (a - 0.5 * sg) * w[i];
            ex[i] = dt2 * ((a + 0.5 * sg) * rhs_e - 0.5 * sg * sg * rhs_w);
            w[i] = dt2 * (0.5 * rhs_e + (a - 0.5 * sg) * rhs_w);
        }
    };
    for (int j = 1; j < ny; ++j) coupled_row(j, &s.hz_at(0, j), &s.hz_at(0, j - 1));
    if (c.boundary == BoundaryMode::periodic) {
        coupled_row(0, &s.hz_at(0, 0), &s.hz_at(0, ny - 1));
        for (int i = 0; i < nx; ++i) {
            s.ex_at(i, ny) = s.ex_at(i, 0);
            s.w_at(i, ny) = s.w_at(i, 0);
        }
    } else {
        // boundary rows: Ex pinned at zero, W relaxes against it
        for (int j : {0, ny}) {
            double* w = &s.w_at(0, j);
            const double* ex = &s.ex_at(0, j);
            for (int i = 0; i < nx; ++i) {
                const double sg = c.mu * c.sigma_at_half[i];
                w[i] = ((1.0 - 0.5 * g.dt * sg) * w[i] + g.dt * ex[i]) /
                       (1.0 + 0.5 * g.dt * sg);
            }
        }
    }

    update_ey_damped(s, c, /*with_sigma=*/true);
    apply_boundaries(s, c);
    update_hz_damped(s, c, /*with_sigma=*/true);
}

}  // namespace layerlab
