#pragma once

#include "bbmstab/nonlinearity.hpp"

namespace bbmstab {

// Solitary profile phi(x) = [A sech^2(B x)]^(1/p) solving
//   -omega phi'' + (omega - 1) phi - hu phi^(p+1) = 0,
// with A = (p+2)(omega-1)/(2 hu) and B = (p/2) sqrt((omega-1)/omega).
// The two-component wave is (phi, mu*phi).
class WaveProfile {
  public:
    WaveProfile(int p, double omega, double hu, double mu);

    int p() const { return p_; }
    double omega() const { return omega_; }
    double hu() const { return hu_; }
    double mu() const { return mu_; }
    double amplitude() const { return amp_; }   // A
    double width() const { return width_; }     // B

    double phi(double x) const;
    double dphi(double x) const;
    // potential coefficient (p+1) hu phi^p = phi0, a pure sech^2:
    //   phi0(x) = ((p+1)(p+2)(omega-1)/2) sech^2(B x)
    double phi0(double x) const;

    // residual of the profile equation at x, relative scale
    double ode_residual(double x) const;

  private:
    int p_;
    double omega_, hu_, mu_, amp_, width_;
};

}  // namespace bbmstab
