#include "qelast/driver/vqa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qelast/error.hpp"
#include "qelast/stateprep/fit.hpp"

namespace qelast {

std::vector<double> random_admissible_profile(const Mesh1D &mesh, double bound, double u_bar,
                                              std::mt19937_64 &rng) {
    require(bound >= 0 && bound < 1, ErrorKind::invalid_argument, "bound must lie in [0, 1)");
    std::uniform_real_distribution<double> slope(-bound, bound);
    std::vector<double> u(mesh.nq() + 1, u_bar);
    const int p = mesh.order();
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const double s = bound > 0 ? slope(rng) : 0.0;
        for (int a = 1; a <= p; ++a)
            u[mesh.node(e, a)] = u[mesh.node(e, 0)] + s * mesh.h(e) * a / p;
    }
    return u;
}

std::vector<double> iht_companion(const Mesh1D &mesh, const std::vector<double> &u) {
    require(mesh.order() == 1, ErrorKind::invalid_argument, "companion field needs order 1");
    std::vector<double> y(mesh.num_elements());
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const double d = (u[e + 1] - u[e]) / mesh.h(e);
        y[e] = d / (d + 2);
    }
    return y;
}

int VqaCost::size() const {
    const int p = 1 + ControlParams::angle_count(m_.n(), m_.d);
    return m_.has_y() ? 2 * p : p;
}

std::vector<double> VqaCost::pack(const ControlParams &u, const ControlParams *y) const {
    std::vector<double> x{u.scale};
    x.insert(x.end(), u.angles.begin(), u.angles.end());
    if (m_.has_y()) {
        x.push_back(y->scale);
        x.insert(x.end(), y->angles.begin(), y->angles.end());
    }
    return x;
}

void VqaCost::unpack(const std::vector<double> &x, ControlParams &u, ControlParams &y) const {
    const int p = ControlParams::angle_count(m_.n(), m_.d);
    u = ControlParams{x[0], std::vector<double>(x.begin() + 1, x.begin() + 1 + p), m_.n(), m_.d};
    if (m_.has_y())
        y = ControlParams{x[1 + p], std::vector<double>(x.begin() + 2 + p, x.begin() + 2 + 2 * p),
                          m_.n(), m_.d};
}

double VqaCost::operator()(const std::vector<double> &x) const {
    ControlParams u, y;
    unpack(x, u, y);
    const ControlParams *yp = m_.has_y() ? &y : nullptr;
    const double c = quantum_cost(m_, u, yp, o_.backend, o_.adder);
    if (o_.check_backends) {
        const Backend other = o_.backend == Backend::circuit ? Backend::algebraic : Backend::circuit;
        const double c2 = quantum_cost(m_, u, yp, other, o_.adder);
        require(std::abs(c - c2) <= 1e-9 * std::max(1.0, std::abs(c)), ErrorKind::invalid_argument,
                "circuit and algebraic backends disagree");
    }
    return c;
}

namespace {

ControlParams fit_initial(const std::vector<double> &v, int n, int d, std::uint64_t seed,
                          double &residual) {
    double nrm = 0;
    for (double x : v)
        nrm += x * x;
    if (nrm == 0) {
        residual = 0;
        return ControlParams{0.0, std::vector<double>(ControlParams::angle_count(n, d), 0.0), n, d};
    }
    FitOptions fo;
    fo.seed = seed;
    const FitResult r = fit_state_at_depth(v, n, d, fo);
    residual = r.residual;
    return r.params;
}

} // namespace

RunResult run_vqa(const EnergyModel &m, const std::vector<double> &u_init,
                  const std::vector<double> &y_init, const VqaOptions &o) {
    const int N = m.mesh.nq();
    require(static_cast<int>(u_init.size()) == N + 1, ErrorKind::dimension_mismatch,
            "initial nodal vector length must be N_q + 1");
    RunResult r;
    ControlParams u0 = fit_initial(std::vector<double>(u_init.begin() + 1, u_init.end()), m.n(),
                                   m.d, o.seed, r.init_fit_residual);
    ControlParams y0;
    if (m.has_y()) {
        double ry = 0;
        y0 = fit_initial(y_init, m.n(), m.d, o.seed + 1, ry);
        r.init_fit_residual = std::max(r.init_fit_residual, ry);
    }
    VqaCost cost(m, o);
    r.opt = minimize(cost, cost.pack(u0, m.has_y() ? &y0 : nullptr), o.optimizer);
    cost.unpack(r.opt.x, r.u, r.y);
    r.cost = r.opt.f;
    r.stopped = r.opt.stopped;
    r.u_nodal = nodal_from_dofs(m.bc.u_bar, realize_vector(r.u));
    if (m.has_y())
        r.y_field = realize_vector(r.y);
    double ms = std::numeric_limits<double>::infinity();
    for (double d : gauss_slopes(m.mesh, r.u_nodal))
        ms = std::min(ms, 1 + d);
    r.min_stretch = ms;
    r.admissible = std::isfinite(r.cost) && ms > 0;
    return r;
}

Reference make_reference(const EnergyModel &m) {
    Reference ref;
    ref.analytic = analytic_solution(m.mu, m.bc, m.mesh.length());
    return ref;
}

InitialGuess initial_guess(const EnergyModel &m, const VqaOptions &o, int attempt) {
    std::mt19937_64 rng(o.seed * 1000003ULL + static_cast<std::uint64_t>(attempt));
    InitialGuess g;
    g.u = random_admissible_profile(m.mesh, o.init_bound, m.bc.u_bar, rng);
    if (m.has_y())
        g.y = iht_companion(m.mesh, g.u);
    g.run_seed = rng();
    return g;
}

ClassicalMinimum classical_reference(const EnergyModel &m, const std::vector<double> &u_nodal) {
    const std::vector<double> y = m.has_y() ? iht_companion(m.mesh, u_nodal) : std::vector<double>{};
    return classical_minimize(m, u_nodal, y);
}

Stat stat_of(const std::vector<double> &v) {
    Stat s;
    if (v.empty())
        return s;
    for (double x : v)
        s.mean += x;
    s.mean /= static_cast<double>(v.size());
    if (v.size() > 1) {
        double q = 0;
        for (double x : v)
            q += (x - s.mean) * (x - s.mean);
        s.std = std::sqrt(q / static_cast<double>(v.size() - 1));
    }
    return s;
}

namespace {

// Marks successes against the best cost of stopped, admissible runs.
int mark_success(std::vector<RunResult> &runs, double rel, double &best) {
    best = std::numeric_limits<double>::infinity();
    for (const auto &r : runs)
        if (r.stopped && r.admissible)
            best = std::min(best, r.cost);
    int n = 0;
    for (auto &r : runs) {
        r.success = r.stopped && r.admissible && std::abs(r.cost - best) <= rel * std::abs(best);
        n += r.success;
    }
    return n;
}

} // namespace

BatchResult run_batch(const EnergyModel &m, const Reference &ref, const VqaOptions &o) {
    BatchResult b;
    const int cap = o.attempts > 0 ? o.attempts : o.runs * o.max_attempt_factor;
    for (int a = 0; a < cap; ++a) {
        const InitialGuess g = initial_guess(m, o, a);
        VqaOptions oa = o;
        oa.seed = g.run_seed;
        RunResult r = run_vqa(m, g.u, g.y, oa);
        r.attempt = a;
        if (r.admissible) {
            const ClassicalMinimum cl = classical_reference(m, r.u_nodal);
            r.u_cl = cl.u;
            r.cl_energy = cl.energy;
            r.cl_converged = cl.converged;
            if (ref.analytic)
                r.metrics = compute_metrics(m.mesh, r.u_nodal, r.u_cl, *ref.analytic);
        } else {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            r.metrics.E_L2_pct = r.metrics.E_maxgrad = r.metrics.E_trace = nan;
        }
        b.runs.push_back(std::move(r));
        b.successes = mark_success(b.runs, o.success_rel, b.best_cost);
        if (o.attempts <= 0 && b.successes >= o.runs)
            break;
    }
    b.complete = o.attempts > 0 || b.successes >= o.runs;
    b.success_ratio = b.runs.empty() ? 0.0 : double(b.successes) / double(b.runs.size());
    if (ref.analytic)
        b.taylor_invalid = m.needs_slope_bound() && ref.analytic->max_slope() >= 1.0;
    std::vector<double> l2, mg, tr, ev, c;
    for (std::size_t i = 0; i < b.runs.size(); ++i) {
        const auto &r = b.runs[i];
        if (r.success && (b.best_run < 0 || r.cost < b.runs[b.best_run].cost))
            b.best_run = static_cast<int>(i);
    }
    for (const auto &r : b.runs)
        if (r.success) {
            l2.push_back(r.metrics.E_L2_pct);
            mg.push_back(r.metrics.E_maxgrad);
            tr.push_back(r.metrics.E_trace);
            ev.push_back(static_cast<double>(r.opt.evaluations));
            c.push_back(r.cost);
        }
    b.e_l2 = stat_of(l2);
    b.e_maxgrad = stat_of(mg);
    b.e_trace = stat_of(tr);
    b.evaluations = stat_of(ev);
    b.cost = stat_of(c);
    return b;
}

} // namespace qelast
