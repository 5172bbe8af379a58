#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dstau/gauge.hpp"
#include "dstau/labels.hpp"
#include "dstau/series.hpp"

namespace dstau {

/// Basic resolvents of one Lax operator, recomputed when a deeper one is requested.
class ResolventCache {
public:
    explicit ResolventCache(LaxOperator L) : L_(std::move(L)) {}
    const LaxOperator& lax() const { return L_; }
    const Resolvent& get(int a, int depth);
    const Dressing& dressing() const { return D_; }
    int depth() const { return depth_; }

private:
    LaxOperator L_;
    int depth_ = -1;
    Dressing D_;
    std::vector<Resolvent> res_;
};

/// Principal depth of R_a and R_b needed for Omega_{a,k1;b,k2}.
int omega_depth(const LoopRealization& R, const OmegaKey& key);
/// Coefficient of lambda^{-k1 N - 1} mu^{-k2 N - 1} in
/// pi((R_a(lambda)|R_b(mu)) - counterterm)/(lambda - mu)^2, expanding 1/(lambda - mu)^2
/// in mu/lambda (or in lambda/mu when opposite_region is set).
DiffPoly omega_entry(const LoopRealization& R, const Resolvent& ra, const Resolvent& rb, int k1, int k2,
                     bool opposite_region = false);

/// [plus, L] = -d(plus) + [plus, Lambda + q].
LoopElement lax_bracket(const LaxOperator& L, const LoopElement& plus);
/// b-coordinates of D^pre_{a,k}(q) for the Lax operator of the cache.
std::vector<DiffPoly> pre_ds_flow(const GaugeFrame& frame, ResolventCache& cache, const FlowLabel& f);
/// Applies the eps-free derivation with characteristic W to p.
DiffPoly apply_characteristic(const std::vector<DiffPoly>& W, const DiffPoly& p);
/// Places the degree-d part of each W_alpha at eps^{d-1} (derivations of degree 1).
Derivation eps_derivation(const std::vector<DiffPoly>& W, int truncation_order);

struct D10Solution {
    LoopElement psi, theta, b;
    bool psi_is_minus_dQ = false;
    bool theta_is_Q_minus_b = false;
};

/// DS hierarchy of one (type, vertex, gauge): flows and tau-structure in the
/// u-jets of the canonical form.
class DSHierarchy {
public:
    explicit DSHierarchy(const GaugeFrame& frame);

    const GaugeFrame& frame() const { return frame_; }
    const LoopRealization& realization() const { return *frame_.realization(); }
    int arity() const { return frame_.rank(); }
    InvariantRewriter& rewriter() { return rewriter_; }
    ResolventCache& slice_resolvents() { return slice_; }

    /// b-coordinates X_j of D^pre(q) evaluated on the gauge slice.
    const std::vector<DiffPoly>& pre_ds_on_slice(const FlowLabel& f);
    /// D^pre(p) for a q-polynomial p, evaluated on the gauge slice.
    DiffPoly pre_ds_apply_on_slice(const DiffPoly& p, const FlowLabel& f);
    /// D_{a,k}(u_alpha) from the bracket formula for D(Q_can).
    const std::vector<DiffPoly>& flow(const FlowLabel& f);
    /// Same flow obtained as D^pre(u_alpha(q)) restricted to the slice.
    std::vector<DiffPoly> flow_from_invariants(const FlowLabel& f);
    /// Omega_{a,k1;b,k2} in u-jets.
    const DiffPoly& omega(const OmegaKey& key);
    /// The unique solution of psi = [Lambda + b + theta, L_can].
    D10Solution d10_unique_solve();

    /// Replaces a cached Omega entry; used to build negative controls.
    void override_omega(const OmegaKey& key, DiffPoly value) { omega_[key] = std::move(value); }

private:
    const GaugeFrame& frame_;
    InvariantRewriter rewriter_;
    ResolventCache slice_;
    std::map<FlowLabel, std::vector<DiffPoly>> pre_, flows_;
    std::map<FlowLabel, std::map<JetVar, DiffPoly>> pre_jets_;
    OmegaTable omega_;
};

}  // namespace dstau
