#pragma once

#include <map>
#include <vector>

#include "dstau/labels.hpp"
#include "dstau/series.hpp"

namespace dstau {

/// How the generators act on jets: u_{alpha,m} is d^m u_alpha, or S^m u_alpha
/// for difference polynomials (m in Z).
enum class JetKind { differential, difference };

/// l-tuple V_alpha(u; eps) defining v_alpha -> V_alpha. Jets of component
/// alpha > l are rejected.
struct MiuraTuple {
    std::vector<EpsSeries> values;
    JetKind kind = JetKind::differential;
    MiuraTuple() = default;
    explicit MiuraTuple(std::vector<EpsSeries> v, JetKind kind = JetKind::differential);
    int arity() const { return static_cast<int>(values.size()); }
    int order() const;
};

struct MiuraCheck {
    bool ok = false;
    /// det(dV^[0]_alpha / du_beta).
    DiffPoly jacobian;
};
MiuraCheck check_miura(const MiuraTuple& V);

/// V together with its inverse U (in v-jets): phi_V(U_alpha) = u_alpha and
/// psi_U(V_alpha) = v_alpha modulo eps^{K+1}.
struct MiuraPair {
    MiuraTuple forward;
    std::vector<EpsSeries> inverse;
    int eps_order = 0;
    int jet_depth = 0;
    /// Largest |jet order| of U^[q] over alpha, per eps-stage q.
    std::vector<int> stage_jet_order;
};

/// phi_V: v-jets -> u-jets, v_{alpha,m} -> d^m V_alpha (S^m V_alpha).
EpsSeries forward_map(const MiuraTuple& V, const EpsSeries& p);
/// psi_U: u-jets -> v-jets, u_{alpha,m} -> d^m U_alpha.
EpsSeries inverse_map(const MiuraPair& pair, const EpsSeries& p);

/// Stage 0 inverts the eps^0 map (requires a constant Jacobian determinant, so
/// the inverse is polynomial); stage q solves J(U^[0]) U^[q] = -(known terms).
/// The eps^0 part must involve only the jets u_{beta,0}.
MiuraPair invert_miura(const MiuraTuple& V, int eps_order, int jet_depth);

/// Characteristic psi_U(D(V_alpha)) of the induced derivation on v-jets.
Derivation induce_derivation(const MiuraPair& pair, const Derivation& D);

/// D_j(u_alpha) = sum phi_V(dU_alpha/dv_{beta,m}) d^m(D_1(Omega_{j;(beta,0)})) with
/// D_1 = -d, for V_beta = Omega_{(1,0);(beta,0)}. Omega entries are eps-free and
/// regraded here.
std::map<FlowLabel, std::vector<EpsSeries>> reconstruct_flows(const OmegaTable& omega, const MiuraPair& pair,
                                                              const std::vector<FlowLabel>& labels);

}  // namespace dstau
