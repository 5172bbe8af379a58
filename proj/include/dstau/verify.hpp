#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dstau/hierarchy.hpp"
#include "dstau/miura.hpp"

namespace dstau {

/// One checked identity, with one residual per component. eps-free identities
/// carry residuals of eps order 0.
struct IdentityCheck {
    std::string group;
    std::string identity;
    std::vector<EpsSeries> residual;
    bool residual_zero() const;
};

using Report = std::vector<IdentityCheck>;
bool all_zero(const Report& r);

/// [D_i, D_j] for all pairs: exactly, and as eps-graded derivations modulo
/// eps^{K+1}. Characteristics with jets beyond jet_depth are reported as failures.
Report verify_integrability(DSHierarchy& H, const std::vector<FlowLabel>& labels, int eps_order, int jet_depth);

/// Omega_{a,k1;b,k2} - Omega_{b,k2;a,k1}.
Report verify_omega_symmetry(DSHierarchy& H, int kmax);

/// D_{a,k1}(Omega_{b,k2;c,k3}) - D_{c,k3}(Omega_{a,k1;b,k2}) over all triples with k <= kmax.
Report verify_tau_symmetry(DSHierarchy& H, int kmax);

/// Omega built from the resolvents of the generic Lax operator: f(Omega) - Omega in
/// the ring with the S-variables, and agreement with the slice computation.
Report verify_omega_gauge(DSHierarchy& H, int kmax);

/// Omega_{1,k;1,k} with the opposite expansion of 1/(lambda - mu)^2.
Report verify_expansion_region(DSHierarchy& H, int k);

/// D_{1,0}(u_alpha) + u_{alpha,1}, and the two assertions of the unique solve.
Report verify_d10(DSHierarchy& H);

/// Lax residual and normalization of all basic resolvents of L through depth.
Report verify_resolvents(const LaxOperator& L, int depth);

/// Some Omega entry with a nonzero total derivative.
Report verify_nondegeneracy(DSHierarchy& H);

struct TauCoordinateReport {
    MiuraCheck check;
    std::optional<MiuraPair> pair;
    std::map<FlowLabel, std::vector<EpsSeries>> reconstructed;
    Report checks;
};

/// V = (Omega_{a,0;1,0})_a as tau-coordinates: Miura check, inversion, flow
/// reconstruction compared with the direct flows, and commutativity of the
/// induced flows on the v-side.
TauCoordinateReport tau_coordinate_check(DSHierarchy& H, const std::vector<FlowLabel>& labels, int eps_order,
                                         int jet_depth);

}  // namespace dstau
