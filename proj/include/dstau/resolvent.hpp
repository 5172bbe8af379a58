#pragma once

#include <map>
#include <utility>
#include <vector>

#include "dstau/kacmoody.hpp"

namespace dstau {

/// L = d + Lambda(lambda) + q with q a b-valued element at lambda^0.
struct LaxOperator {
    Realization R;
    LoopElement q;
};

/// Entrywise total derivative of a loop element.
LoopElement total_derivative(const LoopElement& x);

/// Degree components of ad_U^p(base), built lazily from the slices of U
/// (degrees <= -1). base_max bounds the principal degree of base.
class NestedAd {
public:
    /// U and base are held by reference and may grow between calls.
    NestedAd(const LoopRealization& R, const LoopElement& U, const LoopElement& base, int base_max);
    const Vec& get(int p, int degree);
    /// Adds to a cached component (used once a new slice of U becomes known).
    void patch(int p, int degree, const Vec& delta);

private:
    const LoopRealization& R_;
    const LoopElement& U_;
    const LoopElement& base_;
    int base_max_;
    Vec zero_;
    std::map<std::pair<int, int>, Vec> memo_;
};

/// e^{ad U}(d + Lambda + q) = d + Lambda + H with U in im ad Lambda and H in the
/// Heisenberg subalgebra, both of negative principal degree. depth d means the
/// slices U^(-1..-d) and H^(0..-d) are exact.
struct Dressing {
    LoopElement U;
    LoopElement H;
    int depth = 0;
};

Dressing compute_dressing(const LaxOperator& L, int depth);

/// R_{m_a} = e^{-ad U} Lambda_{m_a}, exact in principal degrees m_a .. m_a - depth.
struct Resolvent {
    int a = 1;
    int exponent = 1;
    int depth = 0;
    LoopElement R;
    int lowest_degree() const { return exponent - depth; }
};

Resolvent compute_resolvent(const LaxOperator& L, const Dressing& dressing, int a, int depth);
/// All basic resolvents a = 1..n at a common depth (dressing computed once).
std::vector<Resolvent> compute_resolvents(const LaxOperator& L, int depth);

/// Depth needed for (lambda^{kN} R_{m_a})_+ to be exact.
int depth_for_plus(const LoopRealization& R, int a, int k);
/// (lambda^{kN} R_{m_a})_+ ; throws when the resolvent is too shallow.
LoopElement shifted_resolvent_plus(const LoopRealization& R, const Resolvent& res, int k);

/// d R + [Lambda + q, R] in the degrees where it is determined by the computed slices.
LoopElement lax_residual(const LaxOperator& L, const Resolvent& res);
/// (R_a | R_b) - h delta_{a+b,n+1} lambda^N over the lambda powers fixed by both depths.
Laurent normalization_residual(const LoopRealization& R, const Resolvent& ra, const Resolvent& rb);
/// U-slices in im ad Lambda and H-slices in the Heisenberg span, plus the
/// defining identity residual through the computed depth.
LoopElement dressing_residual(const LaxOperator& L, const Dressing& dressing);

}  // namespace dstau
