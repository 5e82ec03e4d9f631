#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qarea {

// Concentric ring condenser: compact inner disc of radius `inner` inside the
// open disc of radius `outer`, both about `center`.
struct RingCondenser {
    double inner = 0.0;
    double outer = 0.0;
    std::complex<double> center{0.0, 0.0};

    RingCondenser(double inner_radius, double outer_radius,
                  std::complex<double> c = {0.0, 0.0});
};

// Exact p-capacity of the planar ring condenser, p > 2:
//
//   2 pi ((p-2)/(p-1))^(p-1) * (R^b - r^b)^(1-p),   b = (p-2)/(p-1).
//
// Equals the p-modulus of the family of curves joining the two boundary
// circles.  Stays finite as r -> 0+: points have positive p-capacity when
// p > 2.
double ring_capacity_closed(const RingCondenser& cond, double p);

// Uniform radial grid with n cells on [inner, outer] (n+1 nodes).
std::vector<double> radial_grid(const RingCondenser& cond, int n);

// Energy 2 pi * integral |u'(t)|^p t dt of the piecewise-linear radial
// function with the given nodal values on radial_grid(cond, nodal_u.size()-1).
double radial_profile_energy(const RingCondenser& cond, double p,
                             std::span<const double> nodal_u);

// Exact minimum of radial_profile_energy over piecewise-linear competitors
// with u(inner) = 1, u(outer) = 0, n >= 16 cells.  The minimizer is obtained
// in closed form from the first integral of the optimality condition, so the
// value is a rigorous one-sided check: it is >= ring_capacity_closed and
// converges to it as n grows.
double radial_capacity_1d(const RingCondenser& cond, double p, int n);

// Lower capacity bound from the shortest separating curve:
//
//   cap >= sep_length^p / ring_area^(p-1),   p >= 1.
//
// For ring condensers callers pass sep_length = 2 pi r and
// ring_area = pi (R^2 - r^2); the shortest smooth curve enclosing the inner
// disc is the inner circle itself, an analytic input rather than a computed
// one.
double kruzhkov_bound(double sep_length, double ring_area, double p);

// Isoperimetric deficit L^2 - 4 pi A of a simple polygon (L perimeter, A
// shoelace area).  Nonnegative for every simple polygon and zero only in the
// circular limit.  Throws GeometryError for fewer than 3 vertices or
// self-intersecting input.
double isoperimetric_deficit(std::span<const std::complex<double>> polygon);

// --- discrete 2D p-energy minimizer ---------------------------------------

enum class CellKind : std::uint8_t {
    Interior,    // free unknown
    ClampedOne,  // cell center inside the compact inner disc, u = 1
    ClampedZero, // cell center outside the open outer disc, u = 0
};

// Scalar grid function on the square of side 2R around the condenser center,
// N x N cells of size h = 2R/N, row-major storage.  Cells cut by the circles
// are classified by center-point membership.  Free cells are initialized from
// the closed-form radial minimizer for the given exponent, sampled at cell
// centers.
class GridField {
public:
    static GridField for_condenser(const RingCondenser& cond, int resolution, double p);

    int resolution() const noexcept { return n_; }
    double cell_size() const noexcept { return h_; }

    double value(int i, int j) const { return values_[idx(i, j)]; }
    double& value(int i, int j) { return values_[idx(i, j)]; }
    CellKind cell(int i, int j) const { return mask_[idx(i, j)]; }

    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }
    std::span<const CellKind> mask() const noexcept { return mask_; }

private:
    GridField(int n, double h) : n_(n), h_(h), values_(std::size_t(n) * n, 0.0),
                                 mask_(std::size_t(n) * n, CellKind::ClampedZero) {}
    std::size_t idx(int i, int j) const { return std::size_t(j) * n_ + i; }

    int n_;
    double h_;
    std::vector<double> values_;
    std::vector<CellKind> mask_;
};

// Discrete Dirichlet p-energy  sum_cells |grad u|^p h^2  with forward
// cell-centered differences and one-point quadrature per cell.
double grid_energy(const GridField& field, double p);

// Gradient of grid_energy with respect to the cell values, zeroed on clamped
// cells.  out.size() must equal the number of cells.
void grid_energy_gradient(const GridField& field, double p, std::span<double> out);

struct GridOptimConfig {
    int max_iters = 20000;
    double tol = 1e-10;        // relative energy decrease over stall_window
    double ls_backtrack = 0.5; // step shrink factor
    double ls_c = 1e-4;        // Armijo sufficient-decrease constant
    int stall_window = 25;

    void validate() const;
};

struct GridCapacityResult {
    enum class Status { Converged, IterationCap };

    double energy = 0.0;
    int iterations = 0;
    Status status = Status::Converged;
    // Energy after every accepted step; nonincreasing by construction.
    std::vector<double> trace;
};

// Minimizes grid_energy over the free cells in place via nonlinear conjugate
// gradient (Polak-Ribiere with restarts) and Armijo backtracking.  Throws
// LineSearchError (carrying the last energy) when no decrease can be found;
// hitting max_iters is reported through the status, not an error.
GridCapacityResult minimize_grid_energy(GridField& field, double p,
                                        const GridOptimConfig& cfg = {});

// Builds the field for the condenser at the given resolution (N >= 32) and
// minimizes.  Approaches ring_capacity_closed as N grows, up to the
// discretization bias of the staircase boundary.
GridCapacityResult grid_capacity_2d(const RingCondenser& cond, double p,
                                    int resolution, const GridOptimConfig& cfg = {});

struct CapacityStudyRow {
    int N;
    double energy;
    double closed_form;
    double rel_err;
};

// Refinement study: grid_capacity_2d at each resolution against the closed
// form.
std::vector<CapacityStudyRow> grid_refinement_study(const RingCondenser& cond, double p,
                                                    std::span<const int> resolutions,
                                                    const GridOptimConfig& cfg = {});

} // namespace qarea
