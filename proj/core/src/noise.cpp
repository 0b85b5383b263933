#include <algorithm>
#include <cmath>
#include <sstream>

#include "brownspec/errors.hpp"
#include "brownspec/fft.hpp"
#include "brownspec/simkit.hpp"

namespace brownspec {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

std::mt19937_64 trajectory_rng(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed;
    const std::uint64_t a = splitmix64(s);
    std::uint64_t t = a ^ (index * 0xd1b54a32d192ed03ULL);
    std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(t)), static_cast<std::uint32_t>(splitmix64(t) >> 32),
                      static_cast<std::uint32_t>(splitmix64(t)), static_cast<std::uint32_t>(splitmix64(t) >> 32)};
    return std::mt19937_64(seq);
}

CirculantSampler::CirculantSampler(const std::vector<double>& cov, std::size_t n) : n_(n) {
    if (n == 0) throw ConfigError("CirculantSampler: n must be >= 1");
    if (cov.empty()) throw ConfigError("CirculantSampler: empty covariance");
    L_ = fft::good_size(std::max<std::size_t>(2 * n, 2));
    fft::cvec row(L_);
    const std::size_t half = L_ / 2;
    for (std::size_t k = 0; k <= half; ++k) {
        const double c = (k < n && k < cov.size()) ? cov[k] : 0.0;
        row[k] = c;
        if (k != 0 && k != L_ - k) row[L_ - k] = c;
    }
    const fft::cvec eig = fft::forward(row);
    double max_eig = 0.0;
    for (const auto& e : eig) max_eig = std::max(max_eig, e.real());
    if (!(max_eig > 0.0)) throw IndefiniteCovariance("circulant embedding has no positive eigenvalue");
    sqrt_eig_.resize(L_);
    std::size_t n_clipped = 0;
    for (std::size_t j = 0; j < L_; ++j) {
        double lam = eig[j].real();
        if (lam < 0.0) {
            if (lam < -1e-10 * max_eig) {
                std::ostringstream os;
                os << "covariance is not positive semidefinite: embedding eigenvalue " << lam
                   << " below -1e-10 x max (" << max_eig << ")";
                throw IndefiniteCovariance(os.str());
            }
            lam = 0.0;
            ++n_clipped;
        }
        sqrt_eig_[j] = std::sqrt(lam / static_cast<double>(L_));
    }
    clipped_ = static_cast<double>(n_clipped) / static_cast<double>(L_);
}

void CirculantSampler::sample(std::mt19937_64& rng, std::vector<double>& out) const {
    std::normal_distribution<double> gauss(0.0, 1.0);
    fft::cvec eps(L_);
    for (std::size_t j = 0; j < L_; ++j) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        eps[j] = std::complex<double>(re, im) * sqrt_eig_[j];
    }
    const fft::cvec y = fft::forward(eps);
    out.resize(n_);
    for (std::size_t k = 0; k < n_; ++k) out[k] = y[k].real();
}

std::vector<double> synthesize_colored_noise(const TimeCurve& cov, std::size_t n, std::uint64_t seed) {
    if (cov.size() >= 2) cov.uniform_step();
    CirculantSampler sampler(cov.values, n);
    auto rng = trajectory_rng(seed, 0);
    std::vector<double> out;
    sampler.sample(rng, out);
    return out;
}

} // namespace brownspec
