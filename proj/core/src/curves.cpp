#include "brownspec/curves.hpp"

#include <cmath>

#include "brownspec/errors.hpp"

namespace brownspec {

bool TimeCurve::is_uniform(double rtol) const {
    if (t.size() < 2) return true;
    const double h = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    if (!(h > 0.0)) return false;
    for (std::size_t k = 1; k < t.size(); ++k) {
        if (std::abs((t[k] - t[k - 1]) - h) > rtol * h + 1e-14 * std::abs(t[k])) return false;
    }
    return true;
}

double TimeCurve::uniform_step(double rtol) const {
    if (t.size() < 2) throw GridError("uniform grid needs at least two samples");
    if (values.size() != t.size()) throw GridError("time curve has mismatched sample counts");
    if (!is_uniform(rtol)) throw GridError("time grid is not uniform");
    return (t.back() - t.front()) / static_cast<double>(t.size() - 1);
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi >= lo) || n == 0) throw DomainError("log_grid needs 0 < lo <= hi and n >= 1");
    std::vector<double> g(n);
    if (n == 1) {
        g[0] = lo;
        return g;
    }
    const double a = std::log10(lo), b = std::log10(hi);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    if (!(hi >= lo) || n == 0) throw DomainError("linear_grid needs lo <= hi and n >= 1");
    std::vector<double> g(n);
    if (n == 1) {
        g[0] = lo;
        return g;
    }
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    g.back() = hi;
    return g;
}

std::vector<double> uniform_times(double h, std::size_t n) {
    std::vector<double> t(n);
    for (std::size_t k = 0; k < n; ++k) t[k] = h * static_cast<double>(k);
    return t;
}

} // namespace brownspec
