#include "brownspec/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <numbers>
#include <string>
#include <thread>

#include "brownspec/errors.hpp"
#include "brownspec/fft.hpp"

namespace brownspec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Computes f(i) for i in [0, count) on up to `threads` workers, then feeds the
// results to sink in index order.
void map_ordered(std::size_t count, unsigned threads, const std::function<std::vector<double>(std::size_t)>& f,
                 const std::function<void(const std::vector<double>&)>& sink) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) sink(f(i));
        return;
    }
    std::vector<std::vector<double>> out(count);
    std::vector<std::exception_ptr> errors(count);
    const unsigned T = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < T; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < count; i += T) {
                try {
                    out[i] = f(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    for (const auto& r : out) sink(r);
}

void check_ensemble(const Ensemble& ens, std::size_t n) {
    if (ens.n_steps != n) {
        throw ConfigError("ensemble has " + std::to_string(ens.n_steps) + " samples per trajectory, expected " +
                          std::to_string(n));
    }
    const std::size_t need = static_cast<std::size_t>(ens.dims) * n;
    for (const auto& tr : ens.trajectories) {
        if (tr.velocity.size() != need || tr.position.size() != need) {
            throw ConfigError("trajectory storage does not match dims x n_steps");
        }
    }
}

} // namespace

void SampleAccumulator::add(const std::vector<double>& sample) {
    if (sample.size() != sum_.size()) throw DomainError("sample length does not match the accumulator");
    for (std::size_t i = 0; i < sample.size(); ++i) {
        sum_[i] += sample[i];
        sumsq_[i] += sample[i] * sample[i];
    }
    ++count_;
}

std::vector<double> SampleAccumulator::mean() const {
    std::vector<double> m(sum_.size(), 0.0);
    if (count_ == 0) return m;
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = sum_[i] / static_cast<double>(count_);
    return m;
}

std::vector<double> SampleAccumulator::std_error() const {
    std::vector<double> se(sum_.size(), 0.0);
    if (count_ < 2) return se;
    const double n = static_cast<double>(count_);
    for (std::size_t i = 0; i < se.size(); ++i) {
        const double mu = sum_[i] / n;
        const double var = std::max(0.0, (sumsq_[i] - n * mu * mu) / (n - 1.0));
        se[i] = std::sqrt(var / n);
    }
    return se;
}

// ---- Welch ----

void WelchConfig::validate(std::size_t series_length) const {
    if (segment_length < 2) throw ConfigError("Welch segment_length must be >= 2");
    if (segment_length > series_length) {
        throw ConfigError("Welch segment_length " + std::to_string(segment_length) + " exceeds series length " +
                          std::to_string(series_length));
    }
    if (!(overlap >= 0.0 && overlap <= 0.9)) throw ConfigError("Welch overlap must lie in [0, 0.9]");
}

std::size_t WelchConfig::hop() const {
    const auto h = static_cast<std::size_t>(std::llround(static_cast<double>(segment_length) * (1.0 - overlap)));
    return std::max<std::size_t>(h, 1);
}

WelchAccumulator::WelchAccumulator(const WelchConfig& cfg, double dt, std::size_t series_length)
    : cfg_(cfg), dt_(dt), n_(series_length), acc_(cfg.segment_length / 2 + 1) {
    cfg_.validate(series_length);
    if (!(dt > 0.0)) throw ConfigError("Welch dt must be > 0");
    const std::size_t L = cfg_.segment_length;
    window_.assign(L, 1.0);
    if (cfg_.window == Window::Hann) {
        for (std::size_t k = 0; k < L; ++k) {
            window_[k] = 0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(k) / static_cast<double>(L)));
        }
    }
    for (double w : window_) window_power_ += w * w;
}

std::vector<double> WelchAccumulator::one_sided(const double* data, int dims) const {
    const std::size_t L = cfg_.segment_length;
    const std::size_t nb = L / 2 + 1;
    const std::size_t hop = cfg_.hop();
    const std::size_t n_seg = 1 + (n_ - L) / hop;
    std::vector<double> G(nb, 0.0), seg(L);
    for (int a = 0; a < dims; ++a) {
        const double* x = data + static_cast<std::size_t>(a) * n_;
        for (std::size_t s = 0; s < n_seg; ++s) {
            const double* p = x + s * hop;
            double mean = 0.0;
            if (cfg_.detrend == Detrend::Mean) {
                for (std::size_t k = 0; k < L; ++k) mean += p[k];
                mean /= static_cast<double>(L);
            }
            for (std::size_t k = 0; k < L; ++k) seg[k] = (p[k] - mean) * window_[k];
            const auto X = fft::forward_real(seg);
            for (std::size_t j = 0; j < nb; ++j) {
                const bool edge = j == 0 || (L % 2 == 0 && j == L / 2);
                G[j] += (edge ? 1.0 : 2.0) * std::norm(X[j]);
            }
        }
    }
    const double scale = dt_ / (window_power_ * static_cast<double>(n_seg));
    for (double& g : G) g *= scale;
    return G;
}

void WelchAccumulator::add_series(const double* data, int dims) { acc_.add(one_sided(data, dims)); }

void WelchAccumulator::add(const Ensemble& ens, unsigned threads) {
    check_ensemble(ens, n_);
    map_ordered(
        ens.trajectories.size(), threads,
        [&](std::size_t i) { return one_sided(ens.trajectories[i].velocity.data(), ens.dims); },
        [&](const std::vector<double>& g) { acc_.add(g); });
}

SpectrumEstimate WelchAccumulator::result() const {
    const std::size_t L = cfg_.segment_length;
    SpectrumEstimate est;
    est.n_samples = acc_.count();
    est.curve.normalization = Normalization::Dimensional;
    est.curve.values = acc_.mean();
    est.std_error = acc_.std_error();
    est.curve.omega.resize(est.curve.values.size());
    for (std::size_t j = 0; j < est.curve.omega.size(); ++j) {
        est.curve.omega[j] = kTwoPi * static_cast<double>(j) / (static_cast<double>(L) * dt_);
        // One-sided per-Hz G1 -> two-sided density; the edge bins were not doubled.
        const bool edge = j == 0 || (L % 2 == 0 && j == L / 2);
        if (!edge) {
            est.curve.values[j] *= 0.5;
            est.std_error[j] *= 0.5;
        }
    }
    return est;
}

SpectrumEstimate welch_psd_estimate(const Ensemble& ens, const WelchConfig& cfg, unsigned threads) {
    WelchAccumulator acc(cfg, ens.dt, ens.n_steps);
    acc.add(ens, threads);
    return acc.result();
}

SpectrumCurve welch_psd(const Ensemble& ens, const WelchConfig& cfg) { return welch_psd_estimate(ens, cfg).curve; }

// ---- MSD ----

TimeCurveEstimate ensemble_msd_estimate(const Ensemble& ens) {
    const std::size_t n = ens.n_steps;
    check_ensemble(ens, n);
    SampleAccumulator acc(n);
    std::vector<double> d(n);
    for (const auto& tr : ens.trajectories) {
        std::fill(d.begin(), d.end(), 0.0);
        for (int a = 0; a < ens.dims; ++a) {
            const double* x = tr.position.data() + static_cast<std::size_t>(a) * n;
            for (std::size_t k = 0; k < n; ++k) {
                const double dx = x[k] - x[0];
                d[k] += dx * dx;
            }
        }
        acc.add(d);
    }
    TimeCurveEstimate est;
    est.curve.t = uniform_times(ens.dt, n);
    est.curve.values = acc.mean();
    est.curve.kind = CurveKind::MSD;
    est.std_error = acc.std_error();
    est.n_samples = acc.count();
    return est;
}

TimeCurve ensemble_msd(const Ensemble& ens) { return ensemble_msd_estimate(ens).curve; }

MsdAccumulator::MsdAccumulator(double dt, std::size_t series_length, std::size_t max_lag)
    : dt_(dt), n_(series_length), max_lag_(std::min(max_lag, series_length ? series_length - 1 : 0)),
      acc_(max_lag_ + 1) {
    if (series_length < 2) throw ConfigError("MSD needs at least two samples");
}

std::vector<double> MsdAccumulator::one(const double* position, int dims) const {
    // MSD(m) = [sum_{k<n-m} (x_k^2 + x_{k+m}^2) - 2 sum_k x_k x_{k+m}] / (n - m)
    std::vector<double> out(max_lag_ + 1, 0.0);
    std::vector<double> sq(n_ + 1);
    for (int a = 0; a < dims; ++a) {
        const double* x = position + static_cast<std::size_t>(a) * n_;
        // Positions are referenced to the first sample to limit cancellation.
        std::vector<double> y(x, x + n_);
        const double x0 = y[0];
        for (double& v : y) v -= x0;
        sq[0] = 0.0;
        for (std::size_t k = 0; k < n_; ++k) sq[k + 1] = sq[k] + y[k] * y[k];
        const auto ac = fft::autocorrelation_sums(y.data(), n_, max_lag_);
        for (std::size_t m = 0; m <= max_lag_; ++m) {
            const double head = sq[n_ - m];      // sum_{k<n-m} y_k^2
            const double tail = sq[n_] - sq[m]; // sum_{k>=m} y_k^2
            out[m] += std::max(0.0, head + tail - 2.0 * ac[m]) / static_cast<double>(n_ - m);
        }
    }
    out[0] = 0.0;
    return out;
}

void MsdAccumulator::add_series(const double* position, int dims) { acc_.add(one(position, dims)); }

void MsdAccumulator::add(const Ensemble& ens, unsigned threads) {
    check_ensemble(ens, n_);
    map_ordered(
        ens.trajectories.size(), threads,
        [&](std::size_t i) { return one(ens.trajectories[i].position.data(), ens.dims); },
        [&](const std::vector<double>& r) { acc_.add(r); });
}

TimeCurveEstimate MsdAccumulator::result() const {
    TimeCurveEstimate est;
    est.curve.t = uniform_times(dt_, max_lag_ + 1);
    est.curve.values = acc_.mean();
    est.curve.kind = CurveKind::MSD;
    est.std_error = acc_.std_error();
    est.n_samples = acc_.count();
    return est;
}

TimeCurveEstimate time_averaged_msd(const Ensemble& ens, std::size_t max_lag, unsigned threads) {
    MsdAccumulator acc(ens.dt, ens.n_steps, max_lag);
    acc.add(ens, threads);
    return acc.result();
}

// ---- VACF ----

VacfAccumulator::VacfAccumulator(double dt, std::size_t series_length, std::size_t max_lag)
    : dt_(dt), n_(series_length), max_lag_(std::min(max_lag, series_length ? series_length - 1 : 0)),
      acc_(max_lag_ + 1) {
    if (series_length < 1) throw ConfigError("VACF needs at least one sample");
}

std::vector<double> VacfAccumulator::one(const double* velocity, int dims) const {
    std::vector<double> out(max_lag_ + 1, 0.0);
    for (int a = 0; a < dims; ++a) {
        const auto ac = fft::autocorrelation_sums(velocity + static_cast<std::size_t>(a) * n_, n_, max_lag_);
        for (std::size_t m = 0; m <= max_lag_; ++m) out[m] += ac[m] / static_cast<double>(n_ - m);
    }
    return out;
}

void VacfAccumulator::add_series(const double* velocity, int dims) { acc_.add(one(velocity, dims)); }

void VacfAccumulator::add(const Ensemble& ens, unsigned threads) {
    check_ensemble(ens, n_);
    map_ordered(
        ens.trajectories.size(), threads,
        [&](std::size_t i) { return one(ens.trajectories[i].velocity.data(), ens.dims); },
        [&](const std::vector<double>& r) { acc_.add(r); });
}

TimeCurveEstimate VacfAccumulator::result() const {
    TimeCurveEstimate est;
    est.curve.t = uniform_times(dt_, max_lag_ + 1);
    est.curve.values = acc_.mean();
    est.curve.kind = CurveKind::VACF;
    est.std_error = acc_.std_error();
    est.n_samples = acc_.count();
    return est;
}

TimeCurveEstimate ensemble_vacf_estimate(const Ensemble& ens, std::size_t max_lag, unsigned threads) {
    VacfAccumulator acc(ens.dt, ens.n_steps, max_lag);
    acc.add(ens, threads);
    return acc.result();
}

TimeCurve ensemble_vacf(const Ensemble& ens, std::size_t max_lag) {
    return ensemble_vacf_estimate(ens, max_lag).curve;
}

// ---- stationarity ----

StationarityReport stationarity_check(const Ensemble& ens, std::size_t n_origins, std::size_t max_lag) {
    StationarityReport rep;
    if (n_origins < 1) throw ConfigError("n_origins must be >= 1");
    rep.n_origins = n_origins;
    if (n_origins == 1) return rep;
    check_ensemble(ens, ens.n_steps);
    const std::size_t block = ens.n_steps / n_origins;
    if (block < 2) throw ConfigError("too many origins for the series length");
    rep.max_lag = max_lag > 0 ? std::min(max_lag, block - 1) : std::max<std::size_t>(block / 4, 1);
    if (ens.trajectories.size() < 2) throw ConfigError("stationarity check needs at least two trajectories");

    std::vector<TimeCurveEstimate> est;
    std::vector<double> buf(static_cast<std::size_t>(ens.dims) * block);
    for (std::size_t b = 0; b < n_origins; ++b) {
        VacfAccumulator acc(ens.dt, block, rep.max_lag);
        for (const auto& tr : ens.trajectories) {
            for (int a = 0; a < ens.dims; ++a) {
                const double* src = tr.velocity.data() + static_cast<std::size_t>(a) * ens.n_steps + b * block;
                std::copy(src, src + block, buf.begin() + static_cast<std::ptrdiff_t>(a) * block);
            }
            acc.add_series(buf.data(), ens.dims);
        }
        est.push_back(acc.result());
    }
    for (std::size_t i = 0; i < n_origins; ++i) {
        for (std::size_t j = i + 1; j < n_origins; ++j) {
            for (std::size_t m = 0; m <= rep.max_lag; ++m) {
                const double d = std::abs(est[i].curve.values[m] - est[j].curve.values[m]);
                const double se = std::hypot(est[i].std_error[m], est[j].std_error[m]);
                rep.max_abs_difference = std::max(rep.max_abs_difference, d);
                if (se > 0.0) {
                    rep.max_z = std::max(rep.max_z, d / se);
                } else if (d > 0.0) {
                    rep.max_z = INFINITY;
                }
            }
        }
    }
    rep.pass = rep.max_z < rep.threshold;
    return rep;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double lo, double hi) {
    if (x.size() != y.size()) throw DomainError("loglog_slope: x and y differ in length");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] >= lo && x[i] <= hi && x[i] > 0.0 && y[i] > 0.0)) continue;
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) throw DomainError("loglog_slope: fewer than two usable points");
    const double dn = static_cast<double>(n);
    const double den = sxx - sx * sx / dn;
    if (!(den > 0.0)) throw DomainError("loglog_slope: degenerate abscissae");
    return (sxy - sx * sy / dn) / den;
}

} // namespace brownspec
