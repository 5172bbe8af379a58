#pragma once

#include <vector>

#include "dstau/miura.hpp"

namespace dstau {

/// Difference polynomial in u_{alpha,m}, m in [lo, hi]. The variables reuse JetVar
/// with order = shift index.
class DiffcePoly {
public:
    DiffcePoly(DiffPoly p, int lo, int hi);
    static DiffcePoly variable(int alpha, int m, int lo, int hi);

    const DiffPoly& poly() const { return p_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    friend bool operator==(const DiffcePoly&, const DiffcePoly&) = default;

private:
    DiffPoly p_;
    int lo_, hi_;
};

/// S^steps; throws "window overflow" when a variable leaves the window.
DiffcePoly shift(const DiffcePoly& p, int steps);

/// D_W(u_{alpha,m}) = S^m(W_alpha), extended by Leibniz.
class DiscreteDerivation {
public:
    explicit DiscreteDerivation(std::vector<DiffPoly> W);
    const std::vector<DiffPoly>& characteristic() const { return w_; }
    int arity() const { return static_cast<int>(w_.size()); }
    /// The window of the result grows by the shift range of W.
    DiffcePoly apply(const DiffcePoly& p) const;

private:
    std::vector<DiffPoly> w_;
};

DiscreteDerivation commutator(const DiscreteDerivation& d1, const DiscreteDerivation& d2);

/// D_W on eps-series of difference polynomials, u_{alpha,m} -> S^m(W_alpha).
EpsSeries apply_discrete(const std::vector<EpsSeries>& W, const EpsSeries& p);
std::vector<EpsSeries> discrete_commutator(const std::vector<EpsSeries>& W1, const std::vector<EpsSeries>& W2);
/// Characteristic psi_U(D_W(V_alpha)) of the induced derivation on v-jets.
std::vector<EpsSeries> induce_discrete(const MiuraPair& pair, const std::vector<EpsSeries>& W);

/// Forward map v_{alpha,m} -> S^m V_alpha and its inverse, order by order in eps.
MiuraPair discrete_miura(const std::vector<EpsSeries>& V, int eps_order, int shift_depth);

/// u_{alpha,m} -> sum_{j <= K} (eps m)^j / j! u_{alpha,j}.
EpsSeries embed_differential(const DiffPoly& p, int eps_order);
inline EpsSeries embed_differential(const DiffcePoly& p, int eps_order) { return embed_differential(p.poly(), eps_order); }
/// sum_j eps^j d^j(s) / j!, the image of S under the embedding.
EpsSeries exp_eps_d(const EpsSeries& s);
/// Characteristic embed(W_alpha) of the embedded derivation.
Derivation embed_derivation(const DiscreteDerivation& D, int eps_order);

}  // namespace dstau
