#include "bbmstab/criterion.hpp"

#include <cmath>

#include "bbmstab/errors.hpp"

namespace bbmstab {

double positivity_threshold(int p) { return 1.0 / (p + 1); }

CriterionMatrix build_criterion_matrix(const HomogeneousNonlinearity& h,
                                       const ProportionalRatio& ratio) {
    if (!(ratio.hu > 0.0))
        throw NotAdmissibleError("H_u(1,mu) <= 0: criterion matrix undefined");
    const double mu = ratio.mu;
    const auto hess = h.hessian(1.0, mu);
    const double scale = 1.0 / ((h.p() + 1) * ratio.hu);

    CriterionMatrix m;
    m.entries = {{{scale * hess.uu, scale * hess.uv},
                  {scale * hess.uv, scale * hess.vv}}};
    m.det = m.entries[0][0] * m.entries[1][1] - m.entries[0][1] * m.entries[1][0];
    m.eigenvalues = {1.0, m.det};

    // (1,mu) is always the eigenvector for eigenvalue 1; its orthogonal
    // complement carries det. Columns signed first-nonzero-positive.
    const double norm = std::sqrt(1.0 + mu * mu);
    double c0 = 1.0 / norm, c1 = mu / norm;
    double d0 = -mu / norm, d1 = 1.0 / norm;
    if (d0 == 0.0 ? d1 < 0.0 : d0 < 0.0) {
        d0 = -d0;
        d1 = -d1;
    }
    m.orthogonal = {{{c0, d0}, {c1, d1}}};
    return m;
}

std::string verdict_name(VerdictKind kind) {
    switch (kind) {
        case VerdictKind::StableAllSpeeds: return "stable-all-speeds";
        case VerdictKind::ThresholdStable: return "threshold-stable";
        case VerdictKind::CriterionFails: return "criterion-fails";
        case VerdictKind::NotAdmissible: return "not-admissible";
    }
    return "unknown";
}

StabilityVerdict classify(const CriterionMatrix& m, int p,
                          std::optional<double> omega_p) {
    StabilityVerdict v;
    v.det = m.det;
    v.bound = positivity_threshold(p);
    if (m.det < v.bound) {
        if (p <= 4) {
            v.kind = VerdictKind::StableAllSpeeds;
        } else {
            if (!omega_p)
                throw MissingThresholdError(
                    "p > 4 with the determinant condition met needs omega_p");
            v.kind = VerdictKind::ThresholdStable;
            v.omega_p = omega_p;
        }
    } else {
        v.kind = VerdictKind::CriterionFails;
    }
    return v;
}

double symmetric_family_det(int p, double b1, double b2) {
    return (b1 + (p - 2) * b2) / (b1 + (p + 2) * b2);
}

double symmetric_family_boundary(int p, double b2) {
    return (4.0 + 2.0 * p - p * p) * b2 / p;
}

double symmetric_family_bound(int p, double b2) {
    return -static_cast<double>(p + 1) * (p - 3) * b2 / p;
}

}  // namespace bbmstab
