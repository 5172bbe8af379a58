#include "dstau/hierarchy.hpp"

#include <algorithm>
#include <sstream>

namespace dstau {

namespace {

bool vec_is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const DiffPoly& p) { return p.is_zero(); });
}

LoopElement slice_of(const LoopElement& x, int d) {
    LoopElement out;
    auto it = x.slices.find(d);
    if (it != x.slices.end() && !vec_is_zero(it->second)) out.slices[d] = it->second;
    return out;
}

int max_lambda_power(const LoopRealization& R, const LoopElement& x) {
    int best = 0;
    bool any = false;
    for (const auto& [d, v] : x.slices)
        for (int i = 0; i < R.dim(); ++i)
            if (!v[static_cast<std::size_t>(i)].is_zero()) {
                int k = R.lambda_power(d, i);
                best = any ? std::max(best, k) : k;
                any = true;
            }
    return best;
}

}  // namespace

std::string to_string(const FlowLabel& f) { return std::to_string(f.a) + ":" + std::to_string(f.k); }

FlowLabel parse_flow_label(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw Error("flow label '" + text + "' must have the form a:k");
    FlowLabel f;
    try {
        std::size_t used = 0;
        f.a = std::stoi(text.substr(0, colon), &used);
        if (used != colon) throw Error("");
        std::string rest = text.substr(colon + 1);
        f.k = std::stoi(rest, &used);
        if (used != rest.size()) throw Error("");
    } catch (...) {
        throw Error("flow label '" + text + "' must have the form a:k");
    }
    if (f.a < 1 || f.k < 0) throw Error("flow label '" + text + "' out of range (a >= 1, k >= 0)");
    return f;
}

std::string to_string(const OmegaKey& k) {
    return std::to_string(k.a) + "," + std::to_string(k.k1) + ";" + std::to_string(k.b) + "," + std::to_string(k.k2);
}

// ---------------------------------------------------------------------------
// Resolvents and Omega
// ---------------------------------------------------------------------------

const Resolvent& ResolventCache::get(int a, int depth) {
    if (depth > depth_) {
        D_ = compute_dressing(L_, depth);
        res_.clear();
        for (int b = 1; b <= L_.R->n_exponents(); ++b) res_.push_back(compute_resolvent(L_, D_, b, depth));
        depth_ = depth;
    }
    if (a < 1 || a > static_cast<int>(res_.size())) throw Error("exponent index out of range");
    return res_[static_cast<std::size_t>(a - 1)];
}

int omega_depth(const LoopRealization& R, const OmegaKey& key) {
    int ma = R.exponents()[static_cast<std::size_t>(key.a - 1)];
    int mb = R.exponents()[static_cast<std::size_t>(key.b - 1)];
    // Only pairs of slices with total degree -(k1 + k2) r h contribute.
    return ma + mb + (key.k1 + key.k2) * R.period();
}

DiffPoly omega_entry(const LoopRealization& R, const Resolvent& ra, const Resolvent& rb, int k1, int k2,
                     bool opposite_region) {
    OmegaKey key{ra.a, k1, rb.a, k2};
    int need = omega_depth(R, key);
    if (ra.depth < need || rb.depth < need)
        throw Error("resolvent depth insufficient for Omega_{" + to_string(key) + "} (need " + std::to_string(need) + ")");
    int N = R.order();
    int A = -k1 * N - 1;
    int B = -k2 * N - 1;
    bool dual = ra.a + rb.a == R.n_exponents() + 1;
    std::map<int, Vec> ca, cb;
    auto coeff = [&](std::map<int, Vec>& cache, const Resolvent& r, int p) -> const Vec& {
        auto it = cache.find(p);
        if (it == cache.end()) it = cache.emplace(p, R.lambda_coefficient(r.R, p)).first;
        return it->second;
    };
    auto P = [&](int x, int y) {
        DiffPoly v = R.base().pairing(coeff(ca, ra, x), coeff(cb, rb, y));
        if (dual) {
            if (x == N && y == 0) v -= DiffPoly(Rational(ra.exponent) / Rational(R.twist()));
            if (x == 0 && y == N) v -= DiffPoly(Rational(rb.exponent) / Rational(R.twist()));
        }
        return v;
    };
    DiffPoly out;
    if (!opposite_region) {
        int top = max_lambda_power(R, ra.R);
        for (int s = 0; A + s + 2 <= top; ++s) out.add_scaled(P(A + s + 2, B - s), Rational(s + 1));
    } else {
        int top = max_lambda_power(R, rb.R);
        for (int s = 0; B + s + 2 <= top; ++s) out.add_scaled(P(A - s, B + s + 2), Rational(s + 1));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Flows
// ---------------------------------------------------------------------------

LoopElement lax_bracket(const LaxOperator& L, const LoopElement& plus) {
    const LoopRealization& R = *L.R;
    LoopElement out = R.bracket(plus, R.cyclic() + L.q);
    out -= total_derivative(plus);
    out.prune();
    return out;
}

std::vector<DiffPoly> pre_ds_flow(const GaugeFrame& frame, ResolventCache& cache, const FlowLabel& f) {
    const LoopRealization& R = *frame.realization();
    if (f.a < 1 || f.a > R.n_exponents()) throw Error("flow label " + to_string(f) + " out of range");
    const Resolvent& res = cache.get(f.a, depth_for_plus(R, f.a, f.k));
    LoopElement X = lax_bracket(cache.lax(), shifted_resolvent_plus(R, res, f.k));
    Vec x0 = R.lambda_coefficient(X, 0);
    if (!(R.at_lambda0(x0) == X)) throw Error("pre-DS flow " + to_string(f) + " is not b-valued");
    return frame.coordinates(x0);
}

DiffPoly apply_characteristic(const std::vector<DiffPoly>& W, const DiffPoly& p) {
    if (p.max_alpha() > static_cast<int>(W.size())) throw Error("arity mismatch in derivation");
    return Derivation::from_polys(W).apply(p);
}

Derivation eps_derivation(const std::vector<DiffPoly>& W, int truncation_order) {
    std::vector<EpsSeries> w;
    for (const DiffPoly& p : W) {
        EpsSeries s(truncation_order);
        for (const auto& [m, c] : p.terms()) {
            int d = m.degree();
            if (d == 0) throw Error("characteristic has a term of differential degree 0");
            s.add_to(d - 1, DiffPoly::monomial(m, c));
        }
        w.push_back(s);
    }
    return Derivation(std::move(w));
}

DSHierarchy::DSHierarchy(const GaugeFrame& frame)
    : frame_(frame), rewriter_(frame), slice_(frame.slice_lax()) {
    for (const auto& [d, v] : rewriter_.canonical().S.slices)
        for (const DiffPoly& s : v)
            if (!rewriter_.evaluate_on_slice(s).is_zero()) throw Error("S_can does not vanish on the gauge slice");
}

const std::vector<DiffPoly>& DSHierarchy::pre_ds_on_slice(const FlowLabel& f) {
    auto it = pre_.find(f);
    if (it == pre_.end()) it = pre_.emplace(f, pre_ds_flow(frame_, slice_, f)).first;
    return it->second;
}

DiffPoly DSHierarchy::pre_ds_apply_on_slice(const DiffPoly& p, const FlowLabel& f) {
    const auto& X = pre_ds_on_slice(f);
    auto& jets = pre_jets_[f];
    DiffPoly out;
    for (const JetVar& v : p.variables()) {
        if (v.alpha > static_cast<int>(X.size())) throw Error("variable outside the q-block");
        auto it = jets.find(v);
        if (it == jets.end())
            it = jets.emplace(v, total_derivative(X[static_cast<std::size_t>(v.alpha - 1)], v.order)).first;
        if (it->second.is_zero()) continue;
        DiffPoly c = rewriter_.evaluate_on_slice(partial_derivative(p, v));
        out.add_product(c, it->second);
    }
    return out;
}

const std::vector<DiffPoly>& DSHierarchy::flow(const FlowLabel& f) {
    if (auto it = flows_.find(f); it != flows_.end()) return it->second;
    const LoopRealization& R = realization();
    if (f.a < 1 || f.a > R.n_exponents()) throw Error("flow label " + to_string(f) + " out of range");
    const Resolvent& res = slice_.get(f.a, std::max(slice_.depth(), depth_for_plus(R, f.a, f.k)));
    LoopElement B = shifted_resolvent_plus(R, res, f.k);
    // On the slice S_can = 0, so only the first term of the ad S_can series survives.
    LoopElement DS;
    for (const auto& [d, v] : rewriter_.canonical().S.slices) {
        Vec w(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero()) w[i] = pre_ds_apply_on_slice(v[i], f);
        if (!vec_is_zero(w)) DS.slices[d] = w;
    }
    B += DS;
    LoopElement Y = lax_bracket(slice_.lax(), B);
    Vec y0 = R.lambda_coefficient(Y, 0);
    if (!(R.at_lambda0(y0) == Y)) throw Error("D_" + to_string(f) + "(Q_can) is not at lambda^0");
    std::vector<DiffPoly> c = frame_.coordinates(y0);
    for (std::size_t j = static_cast<std::size_t>(arity()); j < c.size(); ++j)
        if (!c[j].is_zero()) throw Error("D_" + to_string(f) + "(Q_can) is not V-valued");
    c.resize(static_cast<std::size_t>(arity()));
    return flows_.emplace(f, std::move(c)).first->second;
}

std::vector<DiffPoly> DSHierarchy::flow_from_invariants(const FlowLabel& f) {
    std::vector<DiffPoly> out;
    for (const DiffPoly& u : rewriter_.u()) out.push_back(pre_ds_apply_on_slice(u, f));
    return out;
}

const DiffPoly& DSHierarchy::omega(const OmegaKey& key) {
    if (auto it = omega_.find(key); it != omega_.end()) return it->second;
    const LoopRealization& R = realization();
    int n = R.n_exponents();
    if (key.a < 1 || key.a > n || key.b < 1 || key.b > n || key.k1 < 0 || key.k2 < 0)
        throw Error("Omega index " + to_string(key) + " out of range");
    int depth = std::max(slice_.depth(), omega_depth(R, key));
    slice_.get(1, depth);
    DiffPoly v = omega_entry(R, slice_.get(key.a, depth), slice_.get(key.b, depth), key.k1, key.k2);
    return omega_.emplace(key, std::move(v)).first->second;
}

D10Solution DSHierarchy::d10_unique_solve() {
    const LoopRealization& R = realization();
    const LaxOperator& L = slice_.lax();
    D10Solution out;
    LoopElement plus = shifted_resolvent_plus(R, slice_.get(1, std::max(slice_.depth(), depth_for_plus(R, 1, 0))), 0);
    out.b = plus - R.cyclic();
    out.b.prune();
    for (const auto& [d, v] : out.b.slices)
        for (int i = 0; i < R.dim(); ++i)
            if (!v[static_cast<std::size_t>(i)].is_zero() && (d > 0 || R.lambda_power(d, i) != 0))
                throw Error("(R_1)_+ - Lambda is not b-valued");
    LoopElement e = R.at_lambda0(R.e());
    const LoopElement& Q = L.q;
    LoopElement phi = R.bracket(e, Q) + R.bracket(out.b, e + Q) - total_derivative(out.b);
    int dim = R.dim();
    int ell = frame_.rank();
    for (int k = 0; k >= R.min_basis_degree(); --k) {
        LoopElement rhs = slice_of(phi, k) - total_derivative(slice_of(out.theta, k));
        for (const auto& [h, t] : out.theta.slices)
            for (const auto& [l, q] : Q.slices)
                if (h + l == k) rhs += R.bracket(slice_of(out.theta, h), slice_of(Q, l));
        rhs.prune();
        Vec r0 = R.lambda_coefficient(rhs, 0);
        if (!(R.at_lambda0(r0) == rhs)) throw Error("D_{1,0} recursion left lambda^0");
        std::vector<DiffPoly> c = frame_.coordinates(r0);
        Vec psi(static_cast<std::size_t>(dim)), theta(static_cast<std::size_t>(dim));
        for (int a = 0; a < ell; ++a)
            for (int i = 0; i < dim; ++i)
                psi[static_cast<std::size_t>(i)].add_scaled(c[static_cast<std::size_t>(a)],
                                                            frame_.V()[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)].constant_term());
        for (int j = 0; j < frame_.dim_n(); ++j)
            for (int i = 0; i < dim; ++i)
                theta[static_cast<std::size_t>(i)].add_scaled(c[static_cast<std::size_t>(ell + j)],
                                                              frame_.n_basis()[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)].constant_term());
        if (!vec_is_zero(psi)) out.psi.slices[k] = psi;
        if (!vec_is_zero(theta)) out.theta.slices[k - 1] = theta;
    }
    LoopElement minus_dQ = total_derivative(Q) * Rational(-1);
    out.psi_is_minus_dQ = out.psi == minus_dQ;
    out.theta_is_Q_minus_b = out.theta == Q - out.b;
    return out;
}

}  // namespace dstau
