#include "dstau/resolvent.hpp"

#include <algorithm>

namespace dstau {

namespace {

bool vec_is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const DiffPoly& p) { return p.is_zero(); });
}

LoopElement keep_degrees(const LoopElement& x, int lo, int hi) {
    LoopElement out;
    out.truncated = x.truncated;
    for (const auto& [d, v] : x.slices)
        if (d >= lo && d <= hi && !vec_is_zero(v)) out.slices[d] = v;
    return out;
}

// [x, y] restricted to principal degrees lo..hi, skipping slice pairs that land outside.
LoopElement bracket_window(const LoopRealization& R, const LoopElement& x, const LoopElement& y, int lo, int hi) {
    LoopElement out;
    for (const auto& [dx, vx] : x.slices)
        for (const auto& [dy, vy] : y.slices) {
            if (dx + dy < lo || dx + dy > hi) continue;
            LoopElement a, b;
            a.slices[dx] = vx;
            b.slices[dy] = vy;
            out += R.bracket(a, b);
        }
    out.truncated = x.truncated || y.truncated;
    return keep_degrees(out, lo, hi);
}

LoopElement slice_of(const LoopElement& x, int d) {
    LoopElement out;
    auto it = x.slices.find(d);
    if (it != x.slices.end()) out.slices[d] = it->second;
    return out;
}

}  // namespace

LoopElement total_derivative(const LoopElement& x) {
    LoopElement out;
    out.truncated = x.truncated;
    for (const auto& [d, v] : x.slices) {
        Vec w(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) w[i] = total_derivative(v[i]);
        if (!vec_is_zero(w)) out.slices[d] = std::move(w);
    }
    return out;
}

// ---------------------------------------------------------------------------
// NestedAd
// ---------------------------------------------------------------------------

NestedAd::NestedAd(const LoopRealization& R, const LoopElement& U, const LoopElement& base, int base_max)
    : R_(R), U_(U), base_(base), base_max_(base_max), zero_(static_cast<std::size_t>(R.dim())) {}

const Vec& NestedAd::get(int p, int degree) {
    if (p == 0) {
        auto it = base_.slices.find(degree);
        return it == base_.slices.end() ? zero_ : it->second;
    }
    // ad_U lowers the degree by at least one.
    if (degree > base_max_ - p) return zero_;
    auto key = std::make_pair(p, degree);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Vec out(static_cast<std::size_t>(R_.dim()));
    for (const auto& [du, u] : U_.slices) {
        if (du >= 0 || vec_is_zero(u)) continue;
        int src = degree - du;
        if (src > base_max_ - (p - 1)) continue;
        const Vec& inner = get(p - 1, src);
        if (vec_is_zero(inner)) continue;
        R_.base().add_bracket(out, u, inner);
    }
    return memo_.emplace(key, std::move(out)).first->second;
}

void NestedAd::patch(int p, int degree, const Vec& delta) {
    Vec& v = const_cast<Vec&>(get(p, degree));
    if (&v == &zero_) throw Error("patch outside the computed range");
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += delta[i];
}

// ---------------------------------------------------------------------------
// Dressing
// ---------------------------------------------------------------------------

Dressing compute_dressing(const LaxOperator& L, int depth) {
    if (depth < 0) throw Error("dressing depth must be non-negative");
    const LoopRealization& R = *L.R;
    Dressing out;
    out.depth = depth;
    LoopElement A = R.cyclic() + L.q;
    int dim = R.dim();
    NestedAd adA(R, out.U, A, 1);
    LoopElement dU;  // d(U), kept in step with U
    NestedAd adB(R, out.U, dU, -1);
    for (int k = 0; k <= depth; ++k) {
        Vec T(static_cast<std::size_t>(dim));
        if (auto it = L.q.slices.find(-k); it != L.q.slices.end()) T = it->second;
        Rational fact(1);
        for (int p = 1; p <= k + 1; ++p) {
            fact = fact * Rational(p);
            const Vec& a = adA.get(p, -k);
            for (int i = 0; i < dim; ++i) T[static_cast<std::size_t>(i)].add_scaled(a[static_cast<std::size_t>(i)], Rational(1) / fact);
        }
        fact = Rational(1);
        for (int p = 0; p + 1 <= k; ++p) {
            fact = fact * Rational(p + 1);
            const Vec& b = adB.get(p, -k);
            for (int i = 0; i < dim; ++i) T[static_cast<std::size_t>(i)].add_scaled(b[static_cast<std::size_t>(i)], -Rational(1) / fact);
        }
        auto [h, y] = R.split_slice(-k, T);
        if (!h.is_zero()) {
            LoopElement hv = R.heisenberg_element(-k);
            for (auto& [d, v] : hv.slices)
                for (auto& c : v) c = c * h;
            out.H += hv;
        }
        if (k == depth) break;
        if (vec_is_zero(y)) continue;
        // T + [U^(-k-1), Lambda] = H^(-k), so U^(-k-1) = y.
        const Vec& u = y;
        out.U.slices[-k - 1] = u;
        Vec du(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) du[i] = total_derivative(u[i]);
        dU.slices[-k - 1] = du;
        // [U^(-k-1), Lambda] enters ad_U(A) in degree -k.
        Vec patch(static_cast<std::size_t>(dim));
        R.base().add_bracket(patch, u, R.cyclic_slice());
        adA.patch(1, -k, patch);
    }
    out.H.prune();
    return out;
}

LoopElement dressing_residual(const LaxOperator& L, const Dressing& D) {
    const LoopRealization& R = *L.R;
    // Degree -k involves U^(-k-1), so the identity is checked down to -(depth - 1).
    int lo = -D.depth + 1;
    // e^{ad U}(d + Lambda + q) - d - Lambda - H, summed directly.
    LoopElement total = R.cyclic() + L.q;
    LoopElement term = total;
    for (int p = 1;; ++p) {
        term = bracket_window(R, D.U, term, lo, 1) * (Rational(1) / Rational(p));
        if (term.is_zero()) break;
        total += term;
    }
    LoopElement dU = total_derivative(D.U);
    LoopElement t = dU;
    for (int p = 0;; ++p) {
        if (p > 0) t = bracket_window(R, D.U, t, lo, 1);
        if (t.is_zero()) break;
        total -= t * (Rational(1) / factorial(p + 1));
    }
    total -= R.cyclic();
    total -= D.H;
    LoopElement res = keep_degrees(total, lo, 1);
    // Structural part: U slices in the image of ad Lambda, H slices in the Heisenberg span.
    for (const auto& [d, v] : D.U.slices) {
        auto [h, y] = R.split_slice(d, v);
        if (!h.is_zero()) res += slice_of(D.U, d);
    }
    for (const auto& [d, v] : D.H.slices) {
        auto [h, y] = R.split_slice(d, v);
        if (!vec_is_zero(y)) res += slice_of(D.H, d);
    }
    res.prune();
    return res;
}

// ---------------------------------------------------------------------------
// Resolvents
// ---------------------------------------------------------------------------

Resolvent compute_resolvent(const LaxOperator& L, const Dressing& D, int a, int depth) {
    const LoopRealization& R = *L.R;
    if (a < 1 || a > R.n_exponents()) throw Error("exponent index out of range");
    if (depth > D.depth) throw Error("insufficient dressing depth for the resolvent");
    Resolvent out;
    out.a = a;
    out.exponent = R.exponents()[static_cast<std::size_t>(a - 1)];
    out.depth = depth;
    LoopElement lead = R.heisenberg(a);
    NestedAd ad(R, D.U, lead, out.exponent);
    int dim = R.dim();
    for (int j = 0; j <= depth; ++j) {
        int d = out.exponent - j;
        Vec v(static_cast<std::size_t>(dim));
        Rational fact(1);
        for (int p = 0; p <= j; ++p) {
            if (p > 0) fact = fact * Rational(p);
            Rational c = (p % 2 == 0 ? Rational(1) : Rational(-1)) / fact;
            const Vec& t = ad.get(p, d);
            for (int i = 0; i < dim; ++i) v[static_cast<std::size_t>(i)].add_scaled(t[static_cast<std::size_t>(i)], c);
        }
        if (!vec_is_zero(v)) out.R.slices[d] = std::move(v);
    }
    return out;
}

std::vector<Resolvent> compute_resolvents(const LaxOperator& L, int depth) {
    Dressing D = compute_dressing(L, depth);
    std::vector<Resolvent> out;
    for (int a = 1; a <= L.R->n_exponents(); ++a) out.push_back(compute_resolvent(L, D, a, depth));
    return out;
}

int depth_for_plus(const LoopRealization& R, int a, int k) {
    return R.exponents()[static_cast<std::size_t>(a - 1)] + k * R.period() - R.min_basis_degree();
}

LoopElement shifted_resolvent_plus(const LoopRealization& R, const Resolvent& res, int k) {
    if (k < 0) throw Error("shift index must be non-negative");
    int need = depth_for_plus(R, res.a, k);
    if (res.depth < need)
        throw Error("resolvent depth " + std::to_string(res.depth) + " is insufficient for (lambda^{kN} R_" +
                    std::to_string(res.a) + ")_+ with k = " + std::to_string(k) + " (need " + std::to_string(need) + ")");
    return R.project_plus(R.shift_lambda(res.R, k));
}

LoopElement lax_residual(const LaxOperator& L, const Resolvent& res) {
    const LoopRealization& R = *L.R;
    // Degree d of the residual sees R down to d - 1 through Lambda.
    int lo = res.lowest_degree() + 1, hi = res.exponent + 1;
    LoopElement out = total_derivative(res.R) + bracket_window(R, R.cyclic() + L.q, res.R, lo, hi);
    return keep_degrees(out, lo, hi);
}

Laurent normalization_residual(const LoopRealization& R, const Resolvent& ra, const Resolvent& rb) {
    int top = ra.exponent + rb.exponent;
    int lo = top - std::min(ra.depth, rb.depth);
    Laurent form;
    for (const auto& [da, va] : ra.R.slices)
        for (const auto& [db, vb] : rb.R.slices) {
            if (da + db < lo || da + db > top) continue;
            LoopElement a, b;
            a.slices[da] = va;
            b.slices[db] = vb;
            for (const auto& [k, c] : R.bilinear(a, b)) form[k] += c;
        }
    int s = R.lambda_degree();
    Laurent out;
    for (int T = lo; T <= top; ++T) {
        if (T % s != 0) continue;
        int k = T / s;
        DiffPoly v;
        if (auto it = form.find(k); it != form.end()) v = it->second;
        if (ra.a + rb.a == R.n_exponents() + 1 && k == R.order()) v -= DiffPoly(Rational(R.coxeter()));
        if (!v.is_zero()) out[k] = v;
    }
    return out;
}

}  // namespace dstau
