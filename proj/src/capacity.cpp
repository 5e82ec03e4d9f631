#include "qarea/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qarea/errors.hpp"

namespace qarea {

namespace {

void require_p_gt2(double p, const char* where) {
    if (!std::isfinite(p) || p <= 2.0)
        throw ValidationError(std::string(where) + ": exponent p must be > 2");
}

// x^(k/2) for x >= 0, with exact repeated-multiplication paths when the
// exponent is a small half-integer (the energy loops live on this).
class HalfPower {
public:
    explicit HalfPower(double e) : e_(e) {
        const double doubled = 2.0 * e;
        if (doubled >= 0.0 && doubled <= 64.0 && doubled == std::floor(doubled)) {
            k_ = static_cast<int>(doubled);
            fast_ = true;
        }
    }

    double operator()(double x) const {
        if (!fast_) return std::pow(x, e_);
        double base = (k_ % 2) ? std::sqrt(x) : x;
        int n = (k_ % 2) ? k_ : k_ / 2;
        double result = 1.0;
        while (n) {
            if (n & 1) result *= base;
            base *= base;
            n >>= 1;
        }
        return result;
    }

private:
    double e_;
    int k_ = 0;
    bool fast_ = false;
};

double sq(double x) { return x * x; }

} // namespace

RingCondenser::RingCondenser(double inner_radius, double outer_radius, std::complex<double> c)
    : inner(inner_radius), outer(outer_radius), center(c) {
    if (!std::isfinite(inner) || inner <= 0.0 || !std::isfinite(outer))
        throw ValidationError("ring condenser: radii must be finite and positive");
    if (outer <= inner)
        throw ValidationError("ring condenser: degenerate ring (need inner < outer, "
                              "capacity diverges as the gap closes)");
}

double ring_capacity_closed(const RingCondenser& cond, double p) {
    require_p_gt2(p, "ring_capacity_closed");
    const double beta = (p - 2.0) / (p - 1.0);
    const double gap = std::pow(cond.outer, beta) - std::pow(cond.inner, beta);
    return 2.0 * M_PI * std::pow(beta, p - 1.0) * std::pow(gap, 1.0 - p);
}

std::vector<double> radial_grid(const RingCondenser& cond, int n) {
    if (n < 1) throw ValidationError("radial_grid: need at least 1 cell");
    std::vector<double> t(std::size_t(n) + 1);
    for (int i = 0; i <= n; ++i)
        t[i] = cond.inner + (cond.outer - cond.inner) * double(i) / double(n);
    return t;
}

double radial_profile_energy(const RingCondenser& cond, double p,
                             std::span<const double> nodal_u) {
    require_p_gt2(p, "radial_profile_energy");
    if (nodal_u.size() < 2)
        throw ValidationError("radial_profile_energy: need at least 2 nodal values");

    const int n = static_cast<int>(nodal_u.size()) - 1;
    const auto t = radial_grid(cond, n);

    // Piecewise-linear u: each cell contributes
    //   2 pi |du/dt|^p * (t_{i+1}^2 - t_i^2)/2.
    double energy = 0.0;
    for (int i = 0; i < n; ++i) {
        const double dt = t[i + 1] - t[i];
        const double slope = (nodal_u[i + 1] - nodal_u[i]) / dt;
        energy += M_PI * std::pow(std::abs(slope), p) * (sq(t[i + 1]) - sq(t[i]));
    }
    return energy;
}

double radial_capacity_1d(const RingCondenser& cond, double p, int n) {
    require_p_gt2(p, "radial_capacity_1d");
    if (n < 16) throw ValidationError("radial_capacity_1d: need n >= 16 cells");

    // With w_i = pi (t_{i+1}^2 - t_i^2) / dt^p, the discrete energy over
    // competitors with unit total drop is sum w_i d_i^p; its exact minimum
    // (first integral of the optimality condition) is
    //   (sum_i w_i^(-1/(p-1)))^(1-p).
    const auto t = radial_grid(cond, n);
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        const double dt = t[i + 1] - t[i];
        const double w = M_PI * (sq(t[i + 1]) - sq(t[i])) / std::pow(dt, p);
        s += std::pow(w, -1.0 / (p - 1.0));
    }
    return std::pow(s, 1.0 - p);
}

double kruzhkov_bound(double sep_length, double ring_area, double p) {
    if (!std::isfinite(p) || p < 1.0)
        throw ValidationError("kruzhkov_bound: exponent p must be >= 1");
    if (!std::isfinite(sep_length) || sep_length < 0.0)
        throw ValidationError("kruzhkov_bound: separating length must be >= 0");
    if (!std::isfinite(ring_area) || ring_area <= 0.0)
        throw ValidationError("kruzhkov_bound: ring area must be > 0");
    return std::pow(sep_length, p) / std::pow(ring_area, p - 1.0);
}

// --- polygon geometry -------------------------------------------------------

namespace {

using P = std::complex<double>;

double cross3(const P& o, const P& a, const P& b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}

bool within_box(const P& a, const P& b, const P& q) {
    return std::min(a.real(), b.real()) <= q.real() && q.real() <= std::max(a.real(), b.real()) &&
           std::min(a.imag(), b.imag()) <= q.imag() && q.imag() <= std::max(a.imag(), b.imag());
}

bool segments_intersect(const P& a, const P& b, const P& c, const P& d) {
    const double o1 = cross3(a, b, c);
    const double o2 = cross3(a, b, d);
    const double o3 = cross3(c, d, a);
    const double o4 = cross3(c, d, b);
    if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 && o2 != 0 && o3 != 0 &&
        o4 != 0)
        return true;
    if (o1 == 0 && within_box(a, b, c)) return true;
    if (o2 == 0 && within_box(a, b, d)) return true;
    if (o3 == 0 && within_box(c, d, a)) return true;
    if (o4 == 0 && within_box(c, d, b)) return true;
    return false;
}

} // namespace

double isoperimetric_deficit(std::span<const std::complex<double>> polygon) {
    const std::size_t n = polygon.size();
    if (n < 3)
        throw GeometryError("isoperimetric_deficit: need at least 3 vertices");

    for (std::size_t i = 0; i < n; ++i) {
        const P& a = polygon[i];
        const P& b = polygon[(i + 1) % n];
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw GeometryError("isoperimetric_deficit: non-finite vertex");
        if (a == b)
            throw GeometryError("isoperimetric_deficit: zero-length edge");
    }

    // Simplicity: non-adjacent edges may not meet; adjacent edges may not
    // fold back onto each other.
    for (std::size_t i = 0; i < n; ++i) {
        const P& a = polygon[i];
        const P& b = polygon[(i + 1) % n];
        const P& c = polygon[(i + 2) % n];
        if (cross3(a, b, c) == 0.0 &&
            (b.real() - a.real()) * (c.real() - b.real()) +
                    (b.imag() - a.imag()) * (c.imag() - b.imag()) <
                0.0)
            throw GeometryError("isoperimetric_deficit: polygon folds back on itself");
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) continue;
            if (segments_intersect(a, b, polygon[j], polygon[(j + 1) % n]))
                throw GeometryError("isoperimetric_deficit: self-intersecting polygon");
        }
    }

    double perimeter = 0.0;
    double shoelace = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const P& a = polygon[i];
        const P& b = polygon[(i + 1) % n];
        perimeter += std::abs(b - a);
        shoelace += a.real() * b.imag() - b.real() * a.imag();
    }
    const double area = 0.5 * std::abs(shoelace);
    return perimeter * perimeter - 4.0 * M_PI * area;
}

// --- discrete 2D minimizer --------------------------------------------------

GridField GridField::for_condenser(const RingCondenser& cond, int resolution, double p) {
    require_p_gt2(p, "GridField::for_condenser");
    if (resolution < 8)
        throw ValidationError("GridField::for_condenser: resolution must be >= 8");

    const double R = cond.outer;
    const double r = cond.inner;
    GridField f(resolution, 2.0 * R / resolution);

    const double beta = (p - 2.0) / (p - 1.0);
    const double rb = std::pow(r, beta);
    const double Rb = std::pow(R, beta);

    for (int j = 0; j < resolution; ++j) {
        const double y = -R + (j + 0.5) * f.h_;
        for (int i = 0; i < resolution; ++i) {
            const double x = -R + (i + 0.5) * f.h_;
            const double d = std::hypot(x, y);
            const std::size_t k = f.idx(i, j);
            if (d <= r) {
                f.mask_[k] = CellKind::ClampedOne;
                f.values_[k] = 1.0;
            } else if (d >= R) {
                f.mask_[k] = CellKind::ClampedZero;
                f.values_[k] = 0.0;
            } else {
                f.mask_[k] = CellKind::Interior;
                f.values_[k] = std::clamp((Rb - std::pow(d, beta)) / (Rb - rb), 0.0, 1.0);
            }
        }
    }
    return f;
}

namespace {

double energy_of(std::span<const double> u, int n, double h, double p) {
    const HalfPower hp(0.5 * p);
    const double inv_h = 1.0 / h;
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
        double row = 0.0;
        const std::size_t base = std::size_t(j) * n;
        for (int i = 0; i < n; ++i) {
            const std::size_t k = base + i;
            const double u0 = u[k];
            const double gx = (i + 1 < n) ? (u[k + 1] - u0) * inv_h : 0.0;
            const double gy = (j + 1 < n) ? (u[k + n] - u0) * inv_h : 0.0;
            const double g2 = gx * gx + gy * gy;
            if (g2 > 0.0) row += hp(g2);
        }
        total += row;
    }
    return total * h * h;
}

void gradient_of(std::span<const double> u, std::span<const CellKind> mask, int n, double h,
                 double p, std::span<double> grad) {
    std::fill(grad.begin(), grad.end(), 0.0);
    const HalfPower hpm(0.5 * (p - 2.0));
    const double inv_h = 1.0 / h;
    for (int j = 0; j < n; ++j) {
        const std::size_t base = std::size_t(j) * n;
        for (int i = 0; i < n; ++i) {
            const std::size_t k = base + i;
            const double u0 = u[k];
            const double gx = (i + 1 < n) ? (u[k + 1] - u0) * inv_h : 0.0;
            const double gy = (j + 1 < n) ? (u[k + n] - u0) * inv_h : 0.0;
            const double g2 = gx * gx + gy * gy;
            if (g2 == 0.0) continue;
            const double c = p * hpm(g2) * h; // d(|g|^p h^2)/d(gx) / h
            const double ax = c * gx;
            const double ay = c * gy;
            grad[k] -= ax + ay;
            if (i + 1 < n) grad[k + 1] += ax;
            if (j + 1 < n) grad[k + n] += ay;
        }
    }
    for (std::size_t k = 0; k < grad.size(); ++k)
        if (mask[k] != CellKind::Interior) grad[k] = 0.0;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

double grid_energy(const GridField& field, double p) {
    require_p_gt2(p, "grid_energy");
    return energy_of(field.values(), field.resolution(), field.cell_size(), p);
}

void grid_energy_gradient(const GridField& field, double p, std::span<double> out) {
    require_p_gt2(p, "grid_energy_gradient");
    if (out.size() != field.values().size())
        throw ValidationError("grid_energy_gradient: output size must match the cell count");
    gradient_of(field.values(), field.mask(), field.resolution(), field.cell_size(), p, out);
}

void GridOptimConfig::validate() const {
    if (max_iters < 1) throw ValidationError("optimizer: max_iters must be >= 1");
    if (!(tol > 0.0)) throw ValidationError("optimizer: tol must be > 0");
    if (!(ls_backtrack > 0.0) || !(ls_backtrack < 1.0))
        throw ValidationError("optimizer: ls_backtrack must lie in (0, 1)");
    if (!(ls_c > 0.0) || !(ls_c < 1.0))
        throw ValidationError("optimizer: ls_c must lie in (0, 1)");
    if (stall_window < 1) throw ValidationError("optimizer: stall_window must be >= 1");
}

GridCapacityResult minimize_grid_energy(GridField& field, double p,
                                        const GridOptimConfig& cfg) {
    cfg.validate();
    require_p_gt2(p, "minimize_grid_energy");

    const int n = field.resolution();
    const double h = field.cell_size();
    auto u = field.values();
    const auto mask = field.mask();
    const std::size_t m = u.size();

    std::vector<double> grad(m), grad_new(m), dir(m), trial(m);

    gradient_of(u, mask, n, h, p, grad);
    double energy = energy_of(u, n, h, p);

    GridCapacityResult res;
    res.trace.push_back(energy);

    double gg = dot(grad, grad);
    if (gg == 0.0) {
        res.energy = energy;
        res.status = GridCapacityResult::Status::Converged;
        return res;
    }

    for (std::size_t k = 0; k < m; ++k) dir[k] = -grad[k];

    double alpha_prev = -1.0;
    bool converged = false;
    int it = 0;

    while (it < cfg.max_iters) {
        ++it;

        double gd = dot(grad, dir);
        if (gd >= 0.0) { // direction went uphill; restart with steepest descent
            for (std::size_t k = 0; k < m; ++k) dir[k] = -grad[k];
            gd = -gg;
        }
        if (gd == 0.0) {
            converged = true;
            break;
        }

        double dir_inf = 0.0;
        for (std::size_t k = 0; k < m; ++k) dir_inf = std::max(dir_inf, std::abs(dir[k]));

        double alpha = alpha_prev > 0.0 ? 2.0 * alpha_prev : 0.1 / dir_inf;
        double e_trial = 0.0;
        int backtracks = 0;
        for (;;) {
            for (std::size_t k = 0; k < m; ++k) trial[k] = u[k] + alpha * dir[k];
            e_trial = energy_of(trial, n, h, p);
            if (e_trial <= energy + cfg.ls_c * alpha * gd) break;
            alpha *= cfg.ls_backtrack;
            if (++backtracks > 100) {
                std::ostringstream os;
                os << "minimize_grid_energy: line search failed at iteration " << it
                   << " (energy " << energy << ")";
                throw LineSearchError(os.str(), energy);
            }
        }

        std::copy(trial.begin(), trial.end(), u.begin());
        energy = e_trial;
        alpha_prev = alpha;
        res.trace.push_back(energy);

        gradient_of(u, mask, n, h, p, grad_new);
        const double gg_new = dot(grad_new, grad_new);
        if (gg_new == 0.0) {
            converged = true;
            break;
        }

        // Polak-Ribiere with nonnegativity restart, plus a periodic hard reset.
        double beta_pr = (dot(grad_new, grad_new) - dot(grad_new, grad)) / gg;
        if (beta_pr < 0.0 || it % 100 == 0) beta_pr = 0.0;
        for (std::size_t k = 0; k < m; ++k) dir[k] = -grad_new[k] + beta_pr * dir[k];
        grad.swap(grad_new);
        gg = gg_new;

        if (static_cast<int>(res.trace.size()) > cfg.stall_window) {
            const double past = res.trace[res.trace.size() - 1 - cfg.stall_window];
            if (past - energy <= cfg.tol * std::max(std::abs(energy), 1e-300)) {
                converged = true;
                break;
            }
        }
    }

    res.energy = energy;
    res.iterations = it;
    res.status = converged ? GridCapacityResult::Status::Converged
                           : GridCapacityResult::Status::IterationCap;
    return res;
}

GridCapacityResult grid_capacity_2d(const RingCondenser& cond, double p, int resolution,
                                    const GridOptimConfig& cfg) {
    if (resolution < 32)
        throw ValidationError("grid_capacity_2d: resolution must be >= 32");
    GridField field = GridField::for_condenser(cond, resolution, p);
    return minimize_grid_energy(field, p, cfg);
}

std::vector<CapacityStudyRow> grid_refinement_study(const RingCondenser& cond, double p,
                                                    std::span<const int> resolutions,
                                                    const GridOptimConfig& cfg) {
    const double closed = ring_capacity_closed(cond, p);
    std::vector<CapacityStudyRow> rows;
    rows.reserve(resolutions.size());
    for (int N : resolutions) {
        const GridCapacityResult res = grid_capacity_2d(cond, p, N, cfg);
        rows.push_back({N, res.energy, closed, std::abs(res.energy - closed) / closed});
    }
    return rows;
}

} // namespace qarea
