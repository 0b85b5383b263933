#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace brownspec {

enum class CurveKind { MSD, VACF, Generic };
enum class Normalization { Dimensional, Normalized };

// Fourier convention shared by every spectrum in the library.
inline constexpr std::string_view kConventionNote =
    "S(omega) = 2 Re int_0^inf <v(0).v(t)> exp(-i omega t) dt; even in omega, "
    "int_0^inf S domega = pi <v.v>; equals the two-sided per-Hz density at f = omega/(2 pi)";

struct TimeCurve {
    std::vector<double> t;
    std::vector<double> values;
    CurveKind kind = CurveKind::Generic;

    std::size_t size() const noexcept { return t.size(); }
    // Step of a uniform grid; throws GridError when spacing varies by more than rtol.
    double uniform_step(double rtol = 1e-9) const;
    bool is_uniform(double rtol = 1e-9) const;
};

struct SpectrumCurve {
    std::vector<double> omega;
    std::vector<double> values;
    Normalization normalization = Normalization::Dimensional;
    std::string convention_note{kConventionNote};

    std::size_t size() const noexcept { return omega.size(); }
};

// n points from lo to hi inclusive, logarithmically spaced (n == 1 gives {lo}).
std::vector<double> log_grid(double lo, double hi, std::size_t n);
// n points from lo to hi inclusive, evenly spaced.
std::vector<double> linear_grid(double lo, double hi, std::size_t n);
// Samples t_k = k*h, k = 0..n-1.
std::vector<double> uniform_times(double h, std::size_t n);

} // namespace brownspec
