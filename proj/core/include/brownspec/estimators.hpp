#pragma once

#include <cstddef>
#include <vector>

#include "brownspec/curves.hpp"
#include "brownspec/simkit.hpp"

namespace brownspec {

enum class Window { Rectangular, Hann };
enum class Detrend { None, Mean };

struct WelchConfig {
    std::size_t segment_length = 1024;
    double overlap = 0.5; // fraction of a segment shared with the next, in [0, 0.9]
    Window window = Window::Hann;
    Detrend detrend = Detrend::Mean;

    // Throws ConfigError when the segment does not fit series_length or overlap is out of range.
    void validate(std::size_t series_length) const;
    // Hop between segment starts, at least 1.
    std::size_t hop() const;
};

// Curve plus the standard error of each point. Trajectories are the
// independent samples: n_samples of them, each reduced to one estimate first.
struct TimeCurveEstimate {
    TimeCurve curve;
    std::vector<double> std_error;
    std::size_t n_samples = 0;
};

struct SpectrumEstimate {
    SpectrumCurve curve;
    std::vector<double> std_error;
    std::size_t n_samples = 0;
};

// Running per-index mean and variance over samples added in a fixed order.
class SampleAccumulator {
public:
    explicit SampleAccumulator(std::size_t size = 0) : sum_(size, 0.0), sumsq_(size, 0.0) {}
    void add(const std::vector<double>& sample);
    std::size_t count() const noexcept { return count_; }
    std::size_t size() const noexcept { return sum_.size(); }
    std::vector<double> mean() const;
    // Standard error of the mean; zero with fewer than two samples.
    std::vector<double> std_error() const;

private:
    std::vector<double> sum_;
    std::vector<double> sumsq_;
    std::size_t count_ = 0;
};

// Welch-averaged periodogram of the velocity, summed over axes. Output is the
// two-sided density of the library convention at omega_j = 2 pi j / (L dt),
// j = 0..L/2; integrated over all omega it gives 2 pi <v.v>.
// Internally one-sided densities are accumulated and converted in result().
class WelchAccumulator {
public:
    WelchAccumulator(const WelchConfig& cfg, double dt, std::size_t series_length);
    // Per-trajectory periodograms are computed on up to `threads` workers and
    // summed in trajectory order, so the result does not depend on threads.
    void add(const Ensemble& ens, unsigned threads = 1);
    // One trajectory given as dims series of length series_length, axis-major.
    void add_series(const double* data, int dims);
    SpectrumEstimate result() const;

private:
    std::vector<double> one_sided(const double* data, int dims) const;

    WelchConfig cfg_;
    double dt_;
    std::size_t n_;
    std::vector<double> window_;
    double window_power_ = 0.0; // sum of w^2
    SampleAccumulator acc_;
};

SpectrumCurve welch_psd(const Ensemble& ens, const WelchConfig& cfg);
SpectrumEstimate welch_psd_estimate(const Ensemble& ens, const WelchConfig& cfg, unsigned threads = 1);

// Mean of |r(t_k) - r(0)|^2 over trajectories (single time origin), k = 0..n_steps-1.
TimeCurve ensemble_msd(const Ensemble& ens);
TimeCurveEstimate ensemble_msd_estimate(const Ensemble& ens);

// MSD averaged over all time origins within each trajectory, then over
// trajectories. Lags 0..max_lag (clamped to n_steps-1).
class MsdAccumulator {
public:
    MsdAccumulator(double dt, std::size_t series_length, std::size_t max_lag);
    void add(const Ensemble& ens, unsigned threads = 1);
    void add_series(const double* position, int dims);
    TimeCurveEstimate result() const;

private:
    std::vector<double> one(const double* position, int dims) const;

    double dt_;
    std::size_t n_;
    std::size_t max_lag_;
    SampleAccumulator acc_;
};

TimeCurveEstimate time_averaged_msd(const Ensemble& ens, std::size_t max_lag, unsigned threads = 1);

// <v(s).v(s+k)> averaged over time origins s and trajectories, lags 0..max_lag.
class VacfAccumulator {
public:
    VacfAccumulator(double dt, std::size_t series_length, std::size_t max_lag);
    void add(const Ensemble& ens, unsigned threads = 1);
    void add_series(const double* velocity, int dims);
    TimeCurveEstimate result() const;

private:
    std::vector<double> one(const double* velocity, int dims) const;

    double dt_;
    std::size_t n_;
    std::size_t max_lag_;
    SampleAccumulator acc_;
};

TimeCurve ensemble_vacf(const Ensemble& ens, std::size_t max_lag);
TimeCurveEstimate ensemble_vacf_estimate(const Ensemble& ens, std::size_t max_lag, unsigned threads = 1);

struct StationarityReport {
    std::size_t n_origins = 1;
    std::size_t max_lag = 0;
    double max_abs_difference = 0.0; // sup-norm between any two origin blocks
    double max_z = 0.0;              // same, in units of the combined standard error
    double threshold = 5.0;
    bool pass = true;
};

// Splits every trajectory into n_origins disjoint blocks, estimates the VACF
// on each block (lags 0..max_lag, default a quarter block) and compares all pairs.
StationarityReport stationarity_check(const Ensemble& ens, std::size_t n_origins, std::size_t max_lag = 0);

// Least-squares slope of log y against log x over points with lo <= x <= hi
// and y > 0. Throws DomainError with fewer than two usable points.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double lo, double hi);

} // namespace brownspec
