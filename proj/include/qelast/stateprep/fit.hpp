#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qelast/ansatz.hpp"

namespace qelast {

struct FitOptions {
    double tol = 1e-5;       // absolute: |target - scale V|0>|
    bool relative = false;   // tol relative to |target| instead
    int restarts = 32;
    int max_iterations = 400;
    int depth_raise = 2;     // on failure d += depth_raise, up to d + max_extra_depth
    int max_extra_depth = 6;
    std::uint64_t seed = 7;
};

struct FitResult {
    ControlParams params;
    double residual = 0.0; // absolute Euclidean residual
    bool ok = false;
};

// Multi-start Levenberg-Marquardt on the unit residual. Throws fit_failure
// when no depth reaches the tolerance; best residual is in the message.
FitResult fit_state(const std::vector<double> &target, int n, int d, const FitOptions &opt = {});

// Single depth, never raises; ok flag reports the tolerance.
FitResult fit_state_at_depth(const std::vector<double> &target, int n, int d,
                             const FitOptions &opt);

// Fits keyed by (vector hash, n, d), optionally persisted as JSON.
class StateCache {
  public:
    StateCache() = default;
    explicit StateCache(std::string path);

    FitResult fit(const std::vector<double> &target, int n, int d, const FitOptions &opt);
    void save() const;
    std::size_t size() const { return entries_.size(); }

    static std::string key(const std::vector<double> &target, int n, int d, const FitOptions &opt);

  private:
    std::string path_;
    std::map<std::string, FitResult> entries_;
    bool dirty_ = false;
};

} // namespace qelast
