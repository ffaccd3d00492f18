#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace bbmstab {

// Real-to-complex FFT workspace for a fixed transform size.  FFTW plan
// creation is not thread-safe; a process-wide mutex guards it.  execute()
// calls on distinct workspaces may run concurrently.
class FftWorkspace {
  public:
    explicit FftWorkspace(std::size_t n);
    ~FftWorkspace();
    FftWorkspace(const FftWorkspace&) = delete;
    FftWorkspace& operator=(const FftWorkspace&) = delete;
    FftWorkspace(FftWorkspace&& other) noexcept;
    FftWorkspace& operator=(FftWorkspace&& other) noexcept;

    std::size_t size() const { return n_; }
    std::size_t spectrum_size() const { return n_ / 2 + 1; }

    // out has n/2+1 bins, unnormalized
    void forward(const double* in, std::complex<double>* out);
    // inverse of forward up to the factor n; divides by n internally
    void inverse(const std::complex<double>* in, double* out);

    void forward(const std::vector<double>& in, std::vector<std::complex<double>>& out);
    void inverse(const std::vector<std::complex<double>>& in, std::vector<double>& out);

  private:
    std::size_t n_ = 0;
    void* plan_fwd_ = nullptr;
    void* plan_inv_ = nullptr;
    double* real_buf_ = nullptr;
    void* cplx_buf_ = nullptr;
};

// wavenumbers 2*pi*j/L for the r2c half-spectrum, j = 0..n/2
std::vector<double> half_wavenumbers(std::size_t n, double length);

// spectral derivative of a periodic sample vector (Nyquist bin zeroed)
std::vector<double> spectral_derivative(const std::vector<double>& values, double length);

}  // namespace bbmstab
