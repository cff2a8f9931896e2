#include "vlcsec/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>

namespace vlcsec {

namespace {

// Kronrod abscissae on [0, 1]; odd indices are the embedded Gauss nodes.
constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;

    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod(const std::function<double(double)>& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[static_cast<std::size_t>(j)];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kWgk[static_cast<std::size_t>(j)] * sum;
        if (j % 2 == 1) gauss += kWg[static_cast<std::size_t>(j / 2)] * sum;
    }
    return Segment{a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

void QuadratureConfig::validate() const
{
    if (!(half_width_sigmas >= 6.0)) throw std::invalid_argument("quadrature half-width must be >= 6 sigma");
    if (!(rel_tol > 0.0)) throw std::invalid_argument("quadrature rel_tol must be positive");
    if (max_subdivisions < 1) throw std::invalid_argument("quadrature max_subdivisions must be >= 1");
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const std::pair<double, double>> pieces,
                                    double rel_tol, double abs_tol, int max_subdivisions)
{
    std::priority_queue<Segment> heap;
    double total = 0.0;
    double error = 0.0;
    for (const auto& [a, b] : pieces) {
        if (!(b > a)) continue;
        Segment s = gauss_kronrod(f, a, b);
        total += s.value;
        error += s.error;
        heap.push(s);
    }

    int subdivisions = 0;
    while (error > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (subdivisions >= max_subdivisions)
            throw QuadratureError("adaptive quadrature did not converge within " +
                                  std::to_string(max_subdivisions) + " subdivisions (error estimate " +
                                  std::to_string(error) + ")");
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment left = gauss_kronrod(f, worst.a, mid);
        const Segment right = gauss_kronrod(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
    }

    // Re-sum to shed drift from the incremental updates.
    QuadratureResult r;
    r.subdivisions = subdivisions;
    while (!heap.empty()) {
        r.value += heap.top().value;
        r.abs_error += heap.top().error;
        heap.pop();
    }
    return r;
}

}  // namespace vlcsec
