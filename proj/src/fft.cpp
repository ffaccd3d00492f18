#include "bbmstab/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <numbers>

#include "bbmstab/errors.hpp"

namespace bbmstab {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

FftWorkspace::FftWorkspace(std::size_t n) : n_(n) {
    if (n < 2) throw DomainError("transform size must be at least 2");
    real_buf_ = fftw_alloc_real(n);
    cplx_buf_ = fftw_alloc_complex(n / 2 + 1);
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_fwd_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), real_buf_,
                                     static_cast<fftw_complex*>(cplx_buf_),
                                     FFTW_ESTIMATE);
    plan_inv_ = fftw_plan_dft_c2r_1d(static_cast<int>(n),
                                     static_cast<fftw_complex*>(cplx_buf_),
                                     real_buf_, FFTW_ESTIMATE);
}

FftWorkspace::~FftWorkspace() {
    if (!real_buf_) return;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
        fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
    }
    fftw_free(real_buf_);
    fftw_free(cplx_buf_);
}

FftWorkspace::FftWorkspace(FftWorkspace&& other) noexcept
    : n_(other.n_),
      plan_fwd_(other.plan_fwd_),
      plan_inv_(other.plan_inv_),
      real_buf_(other.real_buf_),
      cplx_buf_(other.cplx_buf_) {
    other.real_buf_ = nullptr;
    other.cplx_buf_ = nullptr;
    other.plan_fwd_ = nullptr;
    other.plan_inv_ = nullptr;
    other.n_ = 0;
}

FftWorkspace& FftWorkspace::operator=(FftWorkspace&& other) noexcept {
    if (this != &other) {
        this->~FftWorkspace();
        new (this) FftWorkspace(std::move(other));
    }
    return *this;
}

void FftWorkspace::forward(const double* in, std::complex<double>* out) {
    std::memcpy(real_buf_, in, n_ * sizeof(double));
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    std::memcpy(out, cplx_buf_, spectrum_size() * sizeof(std::complex<double>));
}

void FftWorkspace::inverse(const std::complex<double>* in, double* out) {
    std::memcpy(cplx_buf_, in, spectrum_size() * sizeof(std::complex<double>));
    fftw_execute(static_cast<fftw_plan>(plan_inv_));
    const double inv_n = 1.0 / static_cast<double>(n_);
    for (std::size_t j = 0; j < n_; ++j) out[j] = real_buf_[j] * inv_n;
}

void FftWorkspace::forward(const std::vector<double>& in,
                           std::vector<std::complex<double>>& out) {
    if (in.size() != n_) throw DomainError("forward: size mismatch");
    out.resize(spectrum_size());
    forward(in.data(), out.data());
}

void FftWorkspace::inverse(const std::vector<std::complex<double>>& in,
                           std::vector<double>& out) {
    if (in.size() != spectrum_size()) throw DomainError("inverse: size mismatch");
    out.resize(n_);
    inverse(in.data(), out.data());
}

std::vector<double> half_wavenumbers(std::size_t n, double length) {
    std::vector<double> k(n / 2 + 1);
    const double base = 2.0 * std::numbers::pi / length;
    for (std::size_t j = 0; j < k.size(); ++j) k[j] = base * static_cast<double>(j);
    return k;
}

std::vector<double> spectral_derivative(const std::vector<double>& values,
                                        double length) {
    FftWorkspace fft(values.size());
    std::vector<std::complex<double>> hat;
    fft.forward(values, hat);
    const auto k = half_wavenumbers(values.size(), length);
    for (std::size_t j = 0; j < hat.size(); ++j)
        hat[j] *= std::complex<double>(0.0, k[j]);
    if (values.size() % 2 == 0) hat.back() = 0.0;  // odd derivative: drop Nyquist
    std::vector<double> out;
    fft.inverse(hat, out);
    return out;
}

}  // namespace bbmstab
