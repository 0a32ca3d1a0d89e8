#include "qelast/driver/bfgs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "qelast/error.hpp"

namespace qelast {

void OptimizerConfig::validate() const {
    require(stop_single < stop_triple, ErrorKind::config, "stop_single must be below stop_triple");
    require(max_iterations > 0, ErrorKind::config, "max_iterations must be positive");
    require(fd_step >= 0, ErrorKind::config, "fd_step must be non-negative");
    require(0 < wolfe_c1 && wolfe_c1 < wolfe_c2 && wolfe_c2 < 1, ErrorKind::config,
            "Wolfe constants need 0 < c1 < c2 < 1");
}

std::vector<double> fd_gradient(const Objective &f, const std::vector<double> &x, double fx,
                                double step) {
    if (step <= 0)
        step = std::sqrt(std::numeric_limits<double>::epsilon());
    std::vector<double> g(x.size());
    std::vector<double> xp = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double h = step * std::max(1.0, std::abs(x[i]));
        xp[i] = x[i] + h;
        const double h_eff = xp[i] - x[i];
        g[i] = (f(xp) - fx) / h_eff;
        xp[i] = x[i];
    }
    return g;
}

bool StopRule::update(double cost) {
    if (!has_prev_) {
        has_prev_ = true;
        prev_ = cost;
        return false;
    }
    const double delta = std::abs(cost - prev_);
    prev_ = cost;
    if (delta < single_)
        return true;
    streak_ = delta < triple_ ? streak_ + 1 : 0;
    return streak_ >= 3;
}

namespace {

using Vec = Eigen::VectorXd;

struct Point {
    double alpha = 0.0;
    double phi = 0.0;
    double dphi = 0.0;
    Vec g;
};

class LineSearch {
  public:
    LineSearch(const Objective &f, const Gradient &grad, const Vec &x, const Vec &p, double c1,
               double c2)
        : f_(f), grad_(grad), x_(x), p_(p), c1(c1), c2(c2) {}

    double value(double a) {
        const double v = f_(at(a));
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    }

    void slope(Point &pt) {
        const auto gv = grad_(at(pt.alpha), pt.phi);
        pt.g = Eigen::Map<const Vec>(gv.data(), static_cast<long>(gv.size()));
        pt.dphi = pt.g.dot(p_);
    }

    // Strong Wolfe point, or a sufficient-decrease point as a fallback.
    bool run(const Point &zero, double a0, Point &out) {
        Point prev = zero;
        double a = a0;
        for (int i = 0; i < 25; ++i) {
            Point cur;
            cur.alpha = a;
            cur.phi = value(a);
            if (cur.phi > zero.phi + c1 * a * zero.dphi || (i > 0 && cur.phi >= prev.phi))
                return zoom(zero, prev, cur, out);
            slope(cur);
            if (std::abs(cur.dphi) <= -c2 * zero.dphi) {
                out = cur;
                return true;
            }
            if (cur.dphi >= 0)
                return zoom(zero, cur, prev, out);
            prev = cur;
            a *= 2.0;
        }
        out = prev;
        return prev.alpha > 0;
    }

  private:
    std::vector<double> at(double a) const {
        const Vec y = x_ + a * p_;
        return std::vector<double>(y.data(), y.data() + y.size());
    }

    bool zoom(const Point &zero, Point lo, Point hi, Point &out) {
        for (int i = 0; i < 40; ++i) {
            const double d = hi.alpha - lo.alpha;
            double a = lo.alpha + d / 2;
            if (std::isfinite(hi.phi)) {
                const double den = 2 * (hi.phi - lo.phi - lo.dphi * d);
                if (den > 0) {
                    const double q = lo.alpha - lo.dphi * d * d / den;
                    const double lo_b = std::min(lo.alpha, hi.alpha) + 0.1 * std::abs(d);
                    const double hi_b = std::max(lo.alpha, hi.alpha) - 0.1 * std::abs(d);
                    if (q >= lo_b && q <= hi_b)
                        a = q;
                }
            }
            if (std::abs(d) < 1e-16 * std::max(1.0, std::abs(lo.alpha)))
                break;
            Point cur;
            cur.alpha = a;
            cur.phi = value(a);
            if (cur.phi > zero.phi + c1 * a * zero.dphi || cur.phi >= lo.phi) {
                hi = cur;
                continue;
            }
            slope(cur);
            if (std::abs(cur.dphi) <= -c2 * zero.dphi) {
                out = cur;
                return true;
            }
            if (cur.dphi * (hi.alpha - lo.alpha) >= 0)
                hi = lo;
            lo = cur;
        }
        out = lo;
        return lo.alpha > 0 && lo.phi < zero.phi;
    }

    const Objective &f_;
    const Gradient &grad_;
    Vec x_, p_;
    double c1, c2;
};

} // namespace

MinimizeResult minimize(const Objective &f_in, const std::vector<double> &x0,
                        const OptimizerConfig &cfg, const Gradient &grad_in) {
    cfg.validate();
    MinimizeResult res;
    long evals = 0;
    const Objective f = [&](const std::vector<double> &x) {
        ++evals;
        return f_in(x);
    };
    const Gradient grad = grad_in ? grad_in : Gradient([&](const std::vector<double> &x, double fx) {
        return fd_gradient(f, x, fx, cfg.fd_step);
    });

    const long p = static_cast<long>(x0.size());
    Vec x = Eigen::Map<const Vec>(x0.data(), p);
    double fx = f(x0);
    require(std::isfinite(fx), ErrorKind::inadmissible, "objective is not finite at the start");
    auto gv = grad(x0, fx);
    Vec g = Eigen::Map<const Vec>(gv.data(), p);
    Eigen::MatrixXd H = Eigen::MatrixXd::Identity(p, p);
    bool fresh = true;
    StopRule rule(cfg.stop_single, cfg.stop_triple);
    rule.update(fx);
    res.history.push_back({0, fx, g.norm(), evals});

    auto finish = [&](bool stopped, std::string status) {
        res.x.assign(x.data(), x.data() + p);
        res.f = fx;
        res.evaluations = evals;
        res.stopped = stopped;
        res.status = std::move(status);
        return res;
    };

    for (int it = 1; it <= cfg.max_iterations; ++it) {
        if (cfg.grad_tol > 0 && g.lpNorm<Eigen::Infinity>() < cfg.grad_tol)
            return finish(true, "gradient tolerance");
        if (!g.allFinite())
            return finish(false, "non-finite gradient");
        Vec dir = -H * g;
        if (dir.dot(g) >= 0) {
            H.setIdentity();
            fresh = true;
            dir = -g;
        }
        Point zero;
        zero.phi = fx;
        zero.dphi = g.dot(dir);
        zero.g = g;
        const double a0 = fresh ? std::min(1.0, 1.0 / std::max(dir.norm(), 1e-300)) : 1.0;
        LineSearch ls(f, grad, x, dir, cfg.wolfe_c1, cfg.wolfe_c2);
        Point acc;
        if (!ls.run(zero, a0, acc)) {
            if (fresh)
                return finish(false, "line search failed");
            H.setIdentity();
            fresh = true;
            --it;
            continue;
        }
        if (acc.g.size() == 0)
            ls.slope(acc);
        const Vec s = acc.alpha * dir;
        const Vec y = acc.g - g;
        x += s;
        fx = acc.phi;
        g = acc.g;
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            const double rho = 1.0 / sy;
            const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(p, p);
            H = (I - rho * s * y.transpose()) * H * (I - rho * y * s.transpose()) +
                rho * s * s.transpose();
            fresh = false;
        }
        res.history.push_back({it, fx, g.norm(), evals});
        if (cfg.cost_rule && rule.update(fx))
            return finish(true, "cost change below tolerance");
    }
    return finish(false, "iteration limit");
}

} // namespace qelast
