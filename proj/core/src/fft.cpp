#include "brownspec/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>

namespace brownspec::fft {

namespace {

enum class PlanKind { Forward, Backward, RealForward };

std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

// FFTW_ESTIMATE keeps planning deterministic; FFTW_UNALIGNED lets the plans run
// on any std::vector storage through the new-array execute interface.
fftw_plan get_plan(PlanKind kind, std::size_t n) {
    static std::map<std::pair<int, std::size_t>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex());
    const auto key = std::make_pair(static_cast<int>(kind), n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const int ni = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan p = nullptr;
    if (kind == PlanKind::RealForward) {
        double* in = fftw_alloc_real(n);
        fftw_complex* out = fftw_alloc_complex(n / 2 + 1);
        p = fftw_plan_dft_r2c_1d(ni, in, out, flags);
        fftw_free(in);
        fftw_free(out);
    } else {
        fftw_complex* in = fftw_alloc_complex(n);
        fftw_complex* out = fftw_alloc_complex(n);
        p = fftw_plan_dft_1d(ni, in, out, kind == PlanKind::Forward ? FFTW_FORWARD : FFTW_BACKWARD, flags);
        fftw_free(in);
        fftw_free(out);
    }
    cache.emplace(key, p);
    return p;
}

cvec run_complex(const cvec& x, PlanKind kind) {
    cvec in(x);
    cvec out(x.size());
    if (x.empty()) return out;
    fftw_execute_dft(get_plan(kind, x.size()), reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

} // namespace

cvec forward(const cvec& x) { return run_complex(x, PlanKind::Forward); }
cvec backward(const cvec& x) { return run_complex(x, PlanKind::Backward); }

cvec forward_real(const std::vector<double>& x) {
    cvec out(x.size() / 2 + 1);
    if (x.empty()) return {};
    std::vector<double> in(x);
    fftw_execute_dft_r2c(get_plan(PlanKind::RealForward, x.size()), in.data(),
                         reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

std::size_t good_size(std::size_t n) {
    if (n <= 1) return 1;
    std::size_t best = 1;
    while (best < n) best *= 2;
    for (std::size_t p5 = 1; p5 < best; p5 *= 5) {
        for (std::size_t p35 = p5; p35 < best; p35 *= 3) {
            std::size_t v = p35;
            while (v < n) v *= 2;
            if (v < best) best = v;
        }
    }
    return best;
}

std::vector<double> autocorrelation_sums(const double* x, std::size_t n, std::size_t max_lag) {
    std::vector<double> s(max_lag + 1, 0.0);
    if (n == 0) return s;
    const std::size_t L = good_size(n + std::min(max_lag, n));
    cvec buf(L);
    for (std::size_t i = 0; i < n; ++i) buf[i] = x[i];
    cvec X = forward(buf);
    for (auto& c : X) c = std::norm(c);
    cvec r = backward(X);
    const double scale = 1.0 / static_cast<double>(L);
    for (std::size_t k = 0; k <= max_lag && k < n; ++k) s[k] = r[k].real() * scale;
    return s;
}

std::vector<double> causal_convolution(const std::vector<double>& a, const std::vector<double>& b,
                                       std::size_t n) {
    std::vector<double> out(n, 0.0);
    if (n == 0 || a.empty() || b.empty()) return out;
    const std::size_t na = std::min(a.size(), n), nb = std::min(b.size(), n);
    if (na * nb <= 65536) {
        for (std::size_t i = 0; i < na; ++i) {
            for (std::size_t j = 0; j < nb && i + j < n; ++j) out[i + j] += a[i] * b[j];
        }
        return out;
    }
    const std::size_t L = good_size(na + nb);
    cvec A(L), B(L);
    for (std::size_t i = 0; i < na; ++i) A[i] = a[i];
    for (std::size_t i = 0; i < nb; ++i) B[i] = b[i];
    cvec FA = forward(A), FB = forward(B);
    for (std::size_t i = 0; i < L; ++i) FA[i] *= FB[i];
    cvec c = backward(FA);
    const double scale = 1.0 / static_cast<double>(L);
    for (std::size_t k = 0; k < n && k < L; ++k) out[k] = c[k].real() * scale;
    return out;
}

} // namespace brownspec::fft
