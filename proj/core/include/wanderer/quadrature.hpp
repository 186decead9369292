#ifndef WANDERER_QUADRATURE_HPP
#define WANDERER_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <vector>

namespace wanderer {

using cplx = std::complex<double>;

struct GaussLegendre {
    std::vector<double> x, w;  // nodes and weights on [-1, 1]
};

// Newton iteration on the Legendre recurrence; cached per order
const GaussLegendre& gauss_legendre(int n);

// integral of f over [a, b] split into equal panels
double integrate(const std::function<double(double)>& f, double a, double b, int panels = 8, int order = 24);

enum class Orientation { Plus, Minus };

// Gamma_a^+: rays a + r e^{+-i pi/4}; Gamma_a^-: rays a + r e^{+-3 i pi/4}; both upward.
struct ContourSpec {
    double anchor = 0.0;
    Orientation orientation = Orientation::Plus;
    double truncation_radius = 8.0;
    int panels_per_ray = 16;
    int nodes_per_panel = 24;
    int grading_levels = 6;      // geometric refinement toward the anchor and singular radii
    double grading_ratio = 0.3;
    std::vector<double> singular_radii;  // extra points (distance from the anchor) needing refinement
};

struct ContourNodes {
    std::vector<cplx> z;
    std::vector<cplx> dz;  // quadrature weight times direction, orientation included
    std::size_t size() const { return z.size(); }
};

void validate(const ContourSpec& spec);
cplx ray_direction(Orientation o, bool upper);
std::vector<double> ray_breakpoints(const ContourSpec& spec);
ContourNodes build_contour(const ContourSpec& spec);

// Complex log of the separable integrand factor along a contour
using LogFactor = std::function<cplx(cplx)>;

struct PlanOptions {
    double tol = 1e-12;
    int nodes_per_panel = 24;
    double phase_budget = 6.0;  // max variation of the log integrand per panel
    double max_radius = 40.0;
    int min_panels = 4;
};

// Chooses radius and panel count from the integrand: the radius is where every factor
// has dropped below tol relative to its peak on the contour, and panels are sized so
// that the log integrand varies by at most phase_budget across a panel.
ContourSpec plan_contour(double anchor, Orientation o, const std::vector<LogFactor>& factors,
                         const PlanOptions& opt);

}  // namespace wanderer

#endif
