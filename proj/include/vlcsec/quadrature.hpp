#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace vlcsec {

struct QuadratureConfig {
    double half_width_sigmas = 10.0;  // support beyond the extreme means
    double rel_tol = 1e-7;
    int max_subdivisions = 20000;

    void validate() const;
    friend bool operator==(const QuadratureConfig&, const QuadratureConfig&) = default;
};

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    int subdivisions = 0;
};

/// Globally adaptive 15-point Gauss-Kronrod integration over the union of
/// the given [a, b] pieces. The interval with the largest error estimate is
/// bisected until the summed estimate drops below
/// max(abs_tol, rel_tol * |integral|). Throws QuadratureError when
/// `max_subdivisions` bisections are not enough.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const std::pair<double, double>> pieces,
                                    double rel_tol, double abs_tol, int max_subdivisions);

}  // namespace vlcsec
