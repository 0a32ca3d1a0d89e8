#pragma once

#include <functional>
#include <string>
#include <vector>

namespace qelast {

using Objective = std::function<double(const std::vector<double> &)>;
// Gradient at x; fx is the already known objective value there.
using Gradient = std::function<std::vector<double>(const std::vector<double> &, double fx)>;

struct OptimizerConfig {
    double fd_step = 0.0;  // 0: sqrt(machine epsilon)
    double stop_single = 1e-8;
    double stop_triple = 1e-7;
    double grad_tol = 0.0; // extra stop on |g|_inf, 0 disables
    bool cost_rule = true; // the |C_k - C_{k-1}| rule
    int max_iterations = 2000;
    double wolfe_c1 = 1e-4;
    double wolfe_c2 = 0.9;

    void validate() const;
};

struct IterationRecord {
    int iteration = 0;
    double cost = 0.0;
    double grad_norm = 0.0;
    long evaluations = 0;
};

struct MinimizeResult {
    std::vector<double> x;
    double f = 0.0;
    std::vector<IterationRecord> history;
    long evaluations = 0;
    bool stopped = false; // stopping rule met
    std::string status;
};

// Forward differences, step fd_step * max(1, |x_i|). Counts p evaluations.
std::vector<double> fd_gradient(const Objective &f, const std::vector<double> &x, double fx,
                                double step = 0.0);

// Tracks the cost-difference stopping rule.
class StopRule {
  public:
    StopRule(double single, double triple) : single_(single), triple_(triple) {}
    // Feeds the next accepted cost; true when the run should stop.
    bool update(double cost);

  private:
    double single_, triple_;
    bool has_prev_ = false;
    double prev_ = 0.0;
    int streak_ = 0;
};

// BFGS with a strong-Wolfe line search. The gradient defaults to fd_gradient.
MinimizeResult minimize(const Objective &f, const std::vector<double> &x0,
                        const OptimizerConfig &cfg, const Gradient &grad = {});

} // namespace qelast
