#include "sharpgap/sturm.hpp"

#include "sharpgap/errors.hpp"
#include "sharpgap/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace sharpgap {

namespace {

// RK4 grid for one parameter set. T_k is tabulated at nodes and midpoints
// so that repeated shots during bisection only pay for the arithmetic.
class ShootingGrid {
public:
    ShootingGrid(const ModelParams& params, std::size_t steps)
        : coef_(static_cast<double>(params.n - 1)), steps_(steps)
    {
        params.validate();
        if (steps < kMinShootingSteps) {
            std::ostringstream msg;
            msg << "shooting needs at least " << kMinShootingSteps << " steps (got " << steps << ")";
            throw InvalidParams(msg.str());
        }
        const double half = params.half_diameter();
        const KappaTrig trig(params.kappa);
        if (half >= trig.first_pole()) {
            std::ostringstream msg;
            msg << "integration interval [0, " << half << "] contains the T_kappa pole at "
                << trig.first_pole();
            throw PoleError(msg.str());
        }
        h_ = half / static_cast<double>(steps);
        nodes_.resize(steps + 1);
        t_node_.resize(steps + 1);
        t_mid_.resize(steps);
        for (std::size_t i = 0; i <= steps; ++i) {
            nodes_[i] = (i == steps) ? half : static_cast<double>(i) * h_;
            t_node_[i] = trig.t(nodes_[i]);
        }
        for (std::size_t i = 0; i < steps; ++i)
            t_mid_[i] = trig.t(nodes_[i] + 0.5 * h_);
    }

    [[nodiscard]] std::size_t steps() const noexcept { return steps_; }

    // Integrates the IVP. With `record` false only the zero search runs and
    // integration stops at the first sign change of Phi'.
    PhiTrajectory shoot(double sigma, bool record) const
    {
        PhiTrajectory out;
        out.sigma = sigma;
        if (record) {
            out.grid = nodes_;
            out.phi.resize(steps_ + 1);
            out.dphi.resize(steps_ + 1);
            out.phi[0] = 0.0;
            out.dphi[0] = 1.0;
        }

        double y = 0.0;   // Phi
        double z = 1.0;   // Phi'
        for (std::size_t i = 0; i < steps_; ++i) {
            const double ta = t_node_[i];
            const double tm = t_mid_[i];
            const double tb = t_node_[i + 1];

            const double k1y = z;
            const double k1z = coef_ * ta * z - sigma * y;
            const double y2 = y + 0.5 * h_ * k1y;
            const double z2 = z + 0.5 * h_ * k1z;
            const double k2y = z2;
            const double k2z = coef_ * tm * z2 - sigma * y2;
            const double y3 = y + 0.5 * h_ * k2y;
            const double z3 = z + 0.5 * h_ * k2z;
            const double k3y = z3;
            const double k3z = coef_ * tm * z3 - sigma * y3;
            const double y4 = y + h_ * k3y;
            const double z4 = z + h_ * k3z;
            const double k4y = z4;
            const double k4z = coef_ * tb * z4 - sigma * y4;

            const double yn = y + h_ / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
            const double zn = z + h_ / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);

            if (!out.first_dphi_zero && zn <= 0.0) {
                out.first_dphi_zero = locate_zero(i, sigma, y, z, yn, zn);
                if (!record)
                    return out;
            }
            y = yn;
            z = zn;
            if (record) {
                out.phi[i + 1] = y;
                out.dphi[i + 1] = z;
            }
        }
        return out;
    }

private:
    // Bisection on the cubic Hermite interpolant of Phi' over step i, which
    // starts positive and ends non-positive.
    double locate_zero(std::size_t i, double sigma, double y0, double z0, double y1, double z1) const
    {
        const double a = nodes_[i];
        const double b = nodes_[i + 1];
        if (z1 == 0.0)
            return b;
        const double dz0 = coef_ * t_node_[i] * z0 - sigma * y0;
        const double dz1 = coef_ * t_node_[i + 1] * z1 - sigma * y1;
        const double len = b - a;
        auto hermite = [&](double theta) {
            const double t2 = theta * theta;
            const double t3 = t2 * theta;
            const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
            const double h10 = t3 - 2.0 * t2 + theta;
            const double h01 = -2.0 * t3 + 3.0 * t2;
            const double h11 = t3 - t2;
            return h00 * z0 + h10 * len * dz0 + h01 * z1 + h11 * len * dz1;
        };
        double lo = 0.0;
        double hi = 1.0;
        while ((hi - lo) * len > kZeroLocationTol) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi)
                break;
            if (hermite(mid) > 0.0)
                lo = mid;
            else
                hi = mid;
        }
        return a + hi * len;
    }

    double coef_;
    std::size_t steps_;
    double h_ = 0.0;
    std::vector<double> nodes_;
    std::vector<double> t_node_;
    std::vector<double> t_mid_;
};

bool predicate(const ShootingGrid& grid, double sigma)
{
    return grid.shoot(sigma, false).increasing();
}

double initial_sigma_hi(const ModelParams& p)
{
    const double pd = std::numbers::pi / p.diameter;
    return std::max(1.0, p.n * std::max(p.kappa, 0.0) + 4.0 * pd * pd);
}

struct Bracket {
    double lo;
    double hi;
    int iterations;
};

Bracket bisect(const ShootingGrid& grid, double lo, double hi, double width)
{
    int it = 0;
    while (hi - lo > width) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if (predicate(grid, mid))
            lo = mid;
        else
            hi = mid;
        ++it;
    }
    return {lo, hi, it};
}

Bracket full_bracket(const ShootingGrid& grid, const ModelParams& params, double width)
{
    double hi = initial_sigma_hi(params);
    while (predicate(grid, hi)) {
        hi *= 2.0;
        if (hi > kSigmaCap) {
            std::ostringstream msg;
            msg << "no predicate failure below sigma = " << kSigmaCap << " for n=" << params.n
                << " kappa=" << params.kappa << " D=" << params.diameter;
            throw NonConvergence(msg.str());
        }
    }
    return bisect(grid, 0.0, hi, width);
}

// Re-bracket near a guess from a coarser level, widening until valid.
Bracket local_bracket(const ShootingGrid& grid, double guess, double radius, double width)
{
    double lo = std::max(0.0, guess - radius);
    double r = radius;
    while (!predicate(grid, lo)) {
        r *= 2.0;
        lo = std::max(0.0, guess - r);
        if (lo == 0.0)
            break;
    }
    r = radius;
    double hi = guess + r;
    while (predicate(grid, hi)) {
        r *= 2.0;
        hi = guess + r;
        if (hi > kSigmaCap)
            throw NonConvergence("could not re-bracket the eigenvalue on a refined grid");
    }
    return bisect(grid, lo, hi, width);
}

// Smallest power-of-two step count, at least the default, keeping
// h * (n-1) * |T_k| <= 1/2 across the interval.
std::size_t starting_steps(const ModelParams& params)
{
    const double half = params.half_diameter();
    const double tmax = std::fabs(tk(params.kappa, half));
    const double need = half * (params.n - 1) * tmax / 0.5;
    std::size_t steps = kInitialShootingSteps;
    while (static_cast<double>(steps) < need && steps < kMaxShootingSteps)
        steps *= 2;
    return steps;
}

EigenResult make_result(const ShootingGrid& grid, const Bracket& b, int iterations)
{
    EigenResult r;
    r.bracket_lo = b.lo;
    r.bracket_hi = b.hi;
    r.mu = 0.5 * (b.lo + b.hi);
    r.tol = b.hi - b.lo;
    r.iterations = iterations;
    r.steps = grid.steps();
    r.trajectory = grid.shoot(b.lo, true);
    return r;
}

} // namespace

PhiTrajectory integrate_phi(const ModelParams& params, double sigma, std::size_t steps)
{
    const ShootingGrid grid(params, steps);
    return grid.shoot(sigma, true);
}

EigenResult first_eigenvalue_fixed(const ModelParams& params, double tol, std::size_t steps)
{
    if (!(tol > 0.0))
        throw InvalidParams("tolerance must be positive");
    const ShootingGrid grid(params, steps);
    const Bracket b = full_bracket(grid, params, tol);
    return make_result(grid, b, b.iterations);
}

EigenResult first_eigenvalue(const ModelParams& params, double tol)
{
    if (!(tol > 0.0))
        throw InvalidParams("tolerance must be positive");
    params.validate();

    // Each level bisects well below tol so that bracket quantisation does
    // not masquerade as a grid effect in the refinement check.
    const double width = tol / 16.0;
    std::size_t steps = starting_steps(params);

    ShootingGrid grid(params, steps);
    Bracket b = full_bracket(grid, params, width);
    int iterations = b.iterations;

    std::vector<double> mus{0.5 * (b.lo + b.hi)};
    for (;;) {
        const std::size_t k = mus.size();
        if (k >= 3 && std::fabs(mus[k - 1] - mus[k - 2]) < tol / 4.0
            && std::fabs(mus[k - 2] - mus[k - 3]) < tol / 4.0)
            break;
        if (steps * 2 > kMaxShootingSteps) {
            // Near the Bonnet-Myers limit the first admissible level is close
            // to the cap; a single settled change is accepted there.
            if (k >= 2 && std::fabs(mus[k - 1] - mus[k - 2]) < tol / 4.0)
                break;
            std::ostringstream msg;
            msg.precision(17);
            msg << "grid refinement did not settle mu to " << tol / 4.0 << " within "
                << kMaxShootingSteps << " steps (last change "
                << (k >= 2 ? std::fabs(mus[k - 1] - mus[k - 2]) : 0.0) << ")";
            throw NonConvergence(msg.str());
        }
        steps *= 2;
        grid = ShootingGrid(params, steps);
        const double change = k >= 2 ? std::fabs(mus[k - 1] - mus[k - 2]) : tol;
        b = local_bracket(grid, mus.back(), std::max(4.0 * change, tol), width);
        iterations += b.iterations;
        mus.push_back(0.5 * (b.lo + b.hi));
    }
    return make_result(grid, b, iterations);
}

double sphere_limit_eigenvalue(int n, double kappa)
{
    if (n < 2)
        throw InvalidParams("dimension n must be >= 2");
    if (!(kappa > 0.0))
        throw InvalidParams("the sphere limit needs kappa > 0");
    return n * kappa;
}

// ---------------------------------------------------------------------------

namespace {

// Symmetric tridiagonal matrix: diagonal d, off-diagonal e (size n-1).
struct Tridiagonal {
    std::vector<double> d;
    std::vector<double> e;
};

struct OracleSystem {
    Tridiagonal matrix;          // M^{-1/2} K M^{-1/2}
    std::vector<double> mass;    // lumped weighted mass
    std::vector<double> stiffness;   // face weights w(s_{j+1/2}) / h
};

OracleSystem assemble(const ModelParams& params, std::size_t cells)
{
    params.validate();
    if (cells < kMinOracleCells) {
        std::ostringstream msg;
        msg << "oracle needs at least " << kMinOracleCells << " cells (got " << cells << ")";
        throw InvalidParams(msg.str());
    }
    const double half = params.half_diameter();
    const double h = params.diameter / static_cast<double>(cells);
    const int power = params.n - 1;
    auto weight = [&](double s) { return std::pow(ck(params.kappa, s), power); };
    auto node = [&](std::size_t j) {
        return j == cells ? half : -half + static_cast<double>(j) * h;
    };

    OracleSystem sys;
    sys.mass.resize(cells + 1);
    for (std::size_t j = 0; j <= cells; ++j) {
        const double share = (j == 0 || j == cells) ? 0.5 : 1.0;
        sys.mass[j] = share * h * weight(node(j));
    }

    std::vector<double> diag(cells + 1, 0.0);
    std::vector<double> edge(cells);
    for (std::size_t j = 0; j < cells; ++j) {
        const double mid = -half + (static_cast<double>(j) + 0.5) * h;
        edge[j] = weight(mid) / h;
        diag[j] += edge[j];
        diag[j + 1] += edge[j];
    }
    sys.stiffness = edge;

    sys.matrix.d.resize(cells + 1);
    sys.matrix.e.resize(cells);
    for (std::size_t j = 0; j <= cells; ++j)
        sys.matrix.d[j] = diag[j] / sys.mass[j];
    for (std::size_t j = 0; j < cells; ++j)
        sys.matrix.e[j] = -edge[j] / std::sqrt(sys.mass[j] * sys.mass[j + 1]);
    return sys;
}

// Number of eigenvalues strictly below x (Sturm sequence via LDL^T pivots).
std::size_t count_below(const Tridiagonal& t, double x, double pivmin)
{
    std::size_t count = 0;
    double q = t.d[0] - x;
    if (std::fabs(q) < pivmin)
        q = -pivmin;
    if (q < 0.0)
        ++count;
    for (std::size_t j = 1; j < t.d.size(); ++j) {
        q = t.d[j] - x - t.e[j - 1] * t.e[j - 1] / q;
        if (std::fabs(q) < pivmin)
            q = -pivmin;
        if (q < 0.0)
            ++count;
    }
    return count;
}

// k-th smallest eigenvalue (0-based) by bisection on the Sturm count.
double kth_eigenvalue(const Tridiagonal& t, std::size_t k)
{
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double emax = 0.0;
    for (std::size_t j = 0; j < t.d.size(); ++j) {
        const double left = j > 0 ? std::fabs(t.e[j - 1]) : 0.0;
        const double right = j < t.e.size() ? std::fabs(t.e[j]) : 0.0;
        lo = std::min(lo, t.d[j] - left - right);
        hi = std::max(hi, t.d[j] + left + right);
        emax = std::max(emax, right);
    }
    const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, emax * emax);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if (count_below(t, mid, pivmin) > k)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

// Solves (T - shift I) x = b with partial pivoting; b is overwritten.
void solve_shifted(const Tridiagonal& t, double shift, std::vector<double>& b)
{
    const std::size_t n = t.d.size();
    std::vector<double> dl(t.e.begin(), t.e.end());
    std::vector<double> d(n);
    std::vector<double> du(t.e.begin(), t.e.end());
    std::vector<double> du2(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        d[j] = t.d[j] - shift;
    const double tiny = 1e-300;

    for (std::size_t j = 0; j + 1 < n; ++j) {
        if (std::fabs(d[j]) >= std::fabs(dl[j])) {
            if (d[j] == 0.0)
                d[j] = tiny;
            const double f = dl[j] / d[j];
            d[j + 1] -= f * du[j];
            b[j + 1] -= f * b[j];
            dl[j] = 0.0;
        } else {
            const double f = d[j] / dl[j];
            d[j] = dl[j];
            const double tmp = d[j + 1];
            d[j + 1] = du[j] - f * tmp;
            if (j + 2 < n) {
                du2[j] = du[j + 1];
                du[j + 1] = -f * du2[j];
            }
            du[j] = tmp;
            std::swap(b[j], b[j + 1]);
            b[j + 1] -= f * b[j];
        }
    }
    if (d[n - 1] == 0.0)
        d[n - 1] = tiny;
    b[n - 1] /= d[n - 1];
    if (n > 1)
        b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (std::size_t jj = n - 2; jj-- > 0;)
        b[jj] = (b[jj] - du[jj] * b[jj + 1] - du2[jj] * b[jj + 2]) / d[jj];
}

struct Eigenpair {
    double value;
    std::vector<double> nodal;   // unnormalised nodal values
};

// Sturm bisection resolves the eigenvalue only to about eps * ||T||, which
// grows like 1/h^2. One inverse-iteration vector and the energy form of the
// Rayleigh quotient (a ratio of positive sums, free of cancellation) recover
// it to near relative precision.
Eigenpair eigenpair(const OracleSystem& sys, std::size_t k)
{
    const std::size_t n = sys.mass.size();
    const double rough = kth_eigenvalue(sys.matrix, k);

    std::vector<double> x(n);
    for (std::size_t j = 0; j < n; ++j)
        x[j] = 1.0 + 0.1 * std::sin(1.7 * static_cast<double>(j) + 0.3 * static_cast<double>(k));
    const double shift = rough + 1e-10 * std::max(1.0, std::fabs(rough));
    for (int it = 0; it < 3; ++it) {
        solve_shifted(sys.matrix, shift, x);
        double norm = 0.0;
        for (double v : x)
            norm = std::max(norm, std::fabs(v));
        for (double& v : x)
            v /= norm;
    }
    for (std::size_t j = 0; j < n; ++j)
        x[j] /= std::sqrt(sys.mass[j]);

    double energy = 0.0;
    double weight = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double dv = x[j + 1] - x[j];
        energy += sys.stiffness[j] * dv * dv;
    }
    for (std::size_t j = 0; j < n; ++j)
        weight += sys.mass[j] * x[j] * x[j];
    return {energy / weight, std::move(x)};
}

} // namespace

double sl_fd_oracle(const ModelParams& params, std::size_t cells)
{
    return eigenpair(assemble(params, cells), 1).value;
}

double sl_fd_oracle_extrapolated(const ModelParams& params, std::size_t cells)
{
    const double coarse = sl_fd_oracle(params, cells);
    const double fine = sl_fd_oracle(params, 2 * cells);
    return (4.0 * fine - coarse) / 3.0;
}

std::vector<DiscreteMode> sl_fd_modes(const ModelParams& params, std::size_t cells, std::size_t count)
{
    const OracleSystem sys = assemble(params, cells);
    const std::size_t n = sys.mass.size();
    if (count > n)
        throw InvalidParams("more modes requested than grid nodes");

    std::vector<DiscreteMode> modes;
    modes.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        Eigenpair pair = eigenpair(sys, k);
        // Max-norm 1, positive at s = D/2.
        auto& x = pair.nodal;
        double peak = 0.0;
        for (double v : x)
            peak = std::max(peak, std::fabs(v));
        const double sign = x[n - 1] < 0.0 ? -1.0 : 1.0;
        for (double& v : x)
            v *= sign / peak;
        modes.push_back({pair.value, std::move(x)});
    }
    return modes;
}

} // namespace sharpgap
