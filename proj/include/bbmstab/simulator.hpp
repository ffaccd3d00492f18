#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bbmstab/moment.hpp"
#include "bbmstab/nonlinearity.hpp"
#include "bbmstab/wave.hpp"

namespace bbmstab {

// periodic grid x_j = -L/2 + j dx, j = 0..n-1
struct Grid {
    double length;
    std::size_t n;
    double dx() const { return length / static_cast<double>(n); }
    double x(std::size_t j) const { return -0.5 * length + dx() * static_cast<double>(j); }
};

struct State {
    double time = 0.0;
    std::vector<double> u, v;
};

ConservedPair conserved(const State& s, const Grid& g, const HomogeneousNonlinearity& h);

enum class InitialKind {
    Exact,     // the solitary pair itself
    Scaled,    // (1 + eps) times the pair
    Bump,      // pair + eps * gaussian on the first component
    TwoSpeed,  // (phi at omega, mu phi at second_omega); reference keeps omega
};

struct InitialCondition {
    InitialKind kind = InitialKind::Exact;
    double eps = 0.0;
    double second_omega = 0.0;  // TwoSpeed only
};

struct SimulationConfig {
    double domain_length = 0.0;       // 0 = automatic 40/B (wrap-around < 1e-10)
    std::size_t n_modes = 1024;       // power of two
    double dt = 5e-3;
    double t_end = 20.0;
    std::optional<bool> dealias;      // default: on for p >= 2
    InitialCondition initial;
    double blowup_max = 1e6;
    double stable_factor = 5.0;       // max deviation <= factor * initial
    double unstable_factor = 10.0;    // final deviation >= factor * initial
    double record_every = 0.5;        // history sampling interval
};

// Semilinear evolution  U_t = -(1 - d_xx)^{-1} d_x (U + grad H(U))  on the
// periodic box, classical RK4; the inverse-derivative factor is the Fourier
// multiplier ik/(1+k^2) applied componentwise, with the gradient evaluated
// pointwise and optionally 2/3-rule dealiased.
class BbmSimulator {
  public:
    BbmSimulator(HomogeneousNonlinearity h, Grid grid, bool dealias);
    ~BbmSimulator();
    BbmSimulator(const BbmSimulator&) = delete;
    BbmSimulator& operator=(const BbmSimulator&) = delete;

    const Grid& grid() const { return grid_; }
    bool dealias() const;
    // one RK4 step of size dt in place; throws BlowupError past the cap
    void step(State& s, double dt, double blowup_max = 1e6) const;

  private:
    struct Impl;
    Impl* impl_;
    Grid grid_;
};

// solitary profile shifted then periodized onto the grid (first component;
// the second is mu times it)
std::vector<double> sampled_profile(const WaveProfile& wave, const Grid& g,
                                    double shift);

// Translation-minimized H^1 distance to the solitary pair:
//   dist^2 = min_s |U(. - s) - Phi|_{H^1}^2,
// evaluated via Parseval with spectral translation; coarse scan over grid
// shifts, then golden-section refinement to 1e-8 dx.
struct ModulatedDistance {
    double distance;
    double shift;
};
ModulatedDistance modulated_distance(const State& s, const Grid& g,
                                     const WaveProfile& wave);
double h1_norm(const std::vector<double>& u, const std::vector<double>& v,
               const Grid& g);

struct HistorySample {
    double time;
    ConservedPair invariants;
    double deviation;
    double shift;
};

struct SimulationRun {
    std::string verdict;  // heuristic-stable | heuristic-unstable | indeterminate | blowup
    double initial_deviation;
    double max_deviation;
    double final_deviation;
    std::optional<double> blowup_time;
    std::vector<HistorySample> history;
    double quadratic_drift;  // relative, over the run
    double energy_drift;
    State final_state;
    Grid grid;
};

SimulationRun stability_experiment(const HomogeneousNonlinearity& h, double mu,
                                   double omega, const SimulationConfig& config);

// columns: time, quadratic invariant, energy invariant, deviation
void write_history_csv(const std::string& path, const std::vector<HistorySample>& history);
std::string history_csv(const std::vector<HistorySample>& history);

// one-line JSON header (grid size, dx, time) + '\n' + raw little-endian
// float64 payload, u then v
void write_snapshot(const std::string& path, const State& s, const Grid& g);
State read_snapshot(const std::string& path, Grid& g);

}  // namespace bbmstab
