#pragma once

#include <string>
#include <vector>

#include "dstau/resolvent.hpp"

namespace dstau {

/// DS-type gauge: V inside b with b = V + [e, n] direct. The b-basis is ordered
/// (v_1..v_l, [e,p_1]..[e,p_dim n]), and q-variables are coordinates in it.
class GaugeFrame {
public:
    GaugeFrame(Realization R, const std::string& gauge = "lowest");

    const Realization& realization() const { return R_; }
    const std::string& name() const { return name_; }
    int rank() const { return static_cast<int>(V_.size()); }
    int dim_b() const { return static_cast<int>(b_.size()); }
    int dim_n() const { return static_cast<int>(n_.size()); }
    const std::vector<Vec>& V() const { return V_; }
    const std::vector<Vec>& n_basis() const { return n_; }
    const std::vector<Vec>& b_basis() const { return b_; }
    /// Principal degree of v_alpha (equal to -m'_alpha).
    int v_degree(int alpha) const { return vdeg_[static_cast<std::size_t>(alpha - 1)]; }

    /// Coordinates of a b-valued finite vector in the ordered b-basis.
    std::vector<DiffPoly> coordinates(const Vec& x) const;
    Vec combine(const std::vector<DiffPoly>& coords) const;

    /// q = sum_j q_j b_j with q_j the jet variable of index j (1-based).
    LaxOperator generic_lax() const;
    /// q = sum_alpha u_alpha v_alpha: the Lax operator restricted to the gauge slice.
    LaxOperator slice_lax() const;
    LaxOperator lax(const std::vector<DiffPoly>& b_coords) const;

    /// S = sum_i S_i p_i with S_i the jet variable of index dim b + i.
    LoopElement generic_S() const;

private:
    Realization R_;
    std::string name_;
    std::vector<Vec> V_, n_, b_;
    std::vector<int> vdeg_, b_indices_;
    RMatrix to_coords_;
};

/// e^{ad S}(d + Lambda + q) - d - Lambda for S valued in n.
LoopElement gauge_transform(const LaxOperator& L, const LoopElement& S);

struct CanonicalForm {
    LoopElement S;  // S_can, n-valued
    LoopElement Q;  // Q_can, V-valued
    /// V-coordinates of Q_can: the gauge invariants u_alpha as polynomials in q.
    std::vector<DiffPoly> u;
};

CanonicalForm canonical_form(const LaxOperator& L, const GaugeFrame& frame);

/// f(w) - w with f(q_j) the b-coordinates of e^{ad S}(d + Lambda + q) - d - Lambda,
/// S generic. Zero iff w is a gauge invariant.
DiffPoly gauge_defect(const DiffPoly& w, const GaugeFrame& frame);
bool gauge_invariance_check(const DiffPoly& w, const GaugeFrame& frame);

/// Expresses a gauge invariant in the u-jets: evaluation on the gauge slice
/// (q_alpha -> u_alpha, other q -> 0). Throws "not a gauge invariant" when
/// substituting u(q) back does not return w.
class InvariantRewriter {
public:
    explicit InvariantRewriter(const GaugeFrame& frame);
    const std::vector<DiffPoly>& u() const { return cf_.u; }
    const CanonicalForm& canonical() const { return cf_; }
    DiffPoly evaluate_on_slice(const DiffPoly& w) const;
    DiffPoly rewrite(const DiffPoly& w);
    /// u-polynomial -> q-polynomial through u_alpha = u_alpha(q).
    DiffPoly pull_back(const DiffPoly& p);

private:
    const GaugeFrame& frame_;
    CanonicalForm cf_;
    JetSubstitution back_;
};

}  // namespace dstau
