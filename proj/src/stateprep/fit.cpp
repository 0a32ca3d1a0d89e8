#include "qelast/stateprep/fit.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Dense>
#include <json.hpp>

#include "qelast/error.hpp"

namespace qelast {

namespace {

double norm2(const std::vector<double> &v) {
    double s = 0;
    for (double x : v)
        s += x * x;
    return std::sqrt(s);
}

Eigen::VectorXd residual(int n, int d, const std::vector<double> &angles,
                         const Eigen::VectorXd &target) {
    const auto s = unit_state(n, d, angles);
    return Eigen::Map<const Eigen::VectorXd>(s.data(), static_cast<long>(s.size())) - target;
}

// Returns the unit residual norm reached from `angles` (updated in place).
double levenberg_marquardt(int n, int d, std::vector<double> &angles,
                           const Eigen::VectorXd &target, double goal, int max_it) {
    const long p = static_cast<long>(angles.size());
    Eigen::VectorXd r = residual(n, d, angles, target);
    double cost = r.squaredNorm();
    double lambda = 1e-3;
    for (int it = 0; it < max_it && std::sqrt(cost) > goal; ++it) {
        const auto jac = unit_state_jacobian(n, d, angles);
        Eigen::MatrixXd J(target.size(), p);
        for (long k = 0; k < p; ++k)
            J.col(k) = Eigen::Map<const Eigen::VectorXd>(jac[k].data(), target.size());
        const Eigen::MatrixXd A = J.transpose() * J;
        const Eigen::VectorXd g = J.transpose() * r;
        bool accepted = false;
        for (int tries = 0; tries < 12 && !accepted; ++tries) {
            Eigen::MatrixXd M = A;
            M.diagonal().array() += lambda * (A.diagonal().array() + 1e-12);
            const Eigen::VectorXd step = M.ldlt().solve(-g);
            std::vector<double> trial = angles;
            for (long k = 0; k < p; ++k)
                trial[k] += step(k);
            const Eigen::VectorXd rt = residual(n, d, trial, target);
            const double ct = rt.squaredNorm();
            if (ct < cost) {
                const double drop = cost - ct;
                angles = std::move(trial);
                r = rt;
                cost = ct;
                lambda = std::max(lambda / 5.0, 1e-15);
                accepted = true;
                if (drop <= 1e-16 * cost && cost > goal * goal)
                    return std::sqrt(cost);
            } else {
                lambda *= 6.0;
            }
        }
        if (!accepted)
            break;
    }
    for (auto &a : angles)
        a = std::remainder(a, 2 * std::numbers::pi);
    for (auto &a : angles)
        if (a < 0)
            a += 2 * std::numbers::pi;
    return std::sqrt(residual(n, d, angles, target).squaredNorm());
}

std::uint64_t fnv1a(const std::string &s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace

FitResult fit_state_at_depth(const std::vector<double> &target, int n, int d,
                             const FitOptions &opt) {
    require(static_cast<int>(target.size()) == (1 << n), ErrorKind::dimension_mismatch,
            "target length is not 2^n");
    const double scale = norm2(target);
    require(scale > 0, ErrorKind::invalid_argument, "cannot fit the zero vector");
    Eigen::VectorXd unit(target.size());
    for (std::size_t i = 0; i < target.size(); ++i)
        unit(static_cast<long>(i)) = target[i] / scale;
    const double tol_unit = opt.relative ? opt.tol : opt.tol / scale;
    const double goal = tol_unit * 1e-3;

    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
    const int p = ControlParams::angle_count(n, d);

    FitResult best;
    best.residual = INFINITY;
    for (int s = 0; s < opt.restarts; ++s) {
        std::vector<double> a(p, 0.0);
        if (s > 0)
            for (auto &x : a)
                x = angle(rng);
        const double r = levenberg_marquardt(n, d, a, unit, goal, opt.max_iterations) * scale;
        if (r < best.residual) {
            best.params = ControlParams{scale, a, n, d};
            best.residual = r;
        }
        if (best.residual <= goal * scale)
            break;
    }
    best.ok = best.residual <= tol_unit * scale;
    return best;
}

FitResult fit_state(const std::vector<double> &target, int n, int d, const FitOptions &opt) {
    FitResult best;
    best.residual = INFINITY;
    for (int dd = d; dd <= d + opt.max_extra_depth; dd += std::max(1, opt.depth_raise)) {
        FitResult r = fit_state_at_depth(target, n, dd, opt);
        if (r.ok)
            return r;
        if (r.residual < best.residual)
            best = r;
    }
    std::ostringstream msg;
    msg << "state fit did not reach tolerance " << opt.tol << (opt.relative ? " (relative)" : "")
        << "; best residual " << best.residual;
    fail(ErrorKind::fit_failure, msg.str());
}

StateCache::StateCache(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_);
    if (!in)
        return;
    const auto j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        return;
    for (const auto &[k, e] : j.items()) {
        FitResult r;
        r.params.scale = e.at("scale").get<double>();
        r.params.angles = e.at("angles").get<std::vector<double>>();
        r.params.n = e.at("n").get<int>();
        r.params.d = e.at("d").get<int>();
        r.residual = e.at("residual").get<double>();
        r.ok = true;
        entries_[k] = std::move(r);
    }
}

std::string StateCache::key(const std::vector<double> &target, int n, int d,
                            const FitOptions &opt) {
    std::ostringstream s;
    s.precision(17);
    for (double x : target)
        s << x << ",";
    s << "|" << opt.tol << (opt.relative ? "r" : "a") << "|" << opt.seed;
    std::ostringstream k;
    k << std::hex << fnv1a(s.str()) << "-n" << std::dec << n << "-d" << d;
    return k.str();
}

FitResult StateCache::fit(const std::vector<double> &target, int n, int d, const FitOptions &opt) {
    const std::string k = key(target, n, d, opt);
    if (const auto it = entries_.find(k); it != entries_.end())
        return it->second;
    FitResult r = fit_state(target, n, d, opt);
    entries_[k] = r;
    dirty_ = true;
    return r;
}

void StateCache::save() const {
    if (path_.empty() || !dirty_)
        return;
    nlohmann::json j = nlohmann::json::object();
    for (const auto &[k, r] : entries_)
        j[k] = {{"scale", r.params.scale},
                {"angles", r.params.angles},
                {"n", r.params.n},
                {"d", r.params.d},
                {"residual", r.residual}};
    std::ofstream out(path_);
    require(static_cast<bool>(out), ErrorKind::config, "cannot write state cache " + path_);
    out << j.dump(1) << "\n";
}

} // namespace qelast
