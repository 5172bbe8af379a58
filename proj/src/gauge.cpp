#include "dstau/gauge.hpp"

#include <algorithm>

namespace dstau {

namespace {

bool vec_is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const DiffPoly& p) { return p.is_zero(); });
}

Vec unit(int dim, int i) {
    Vec v(static_cast<std::size_t>(dim));
    v[static_cast<std::size_t>(i)] = DiffPoly(1);
    return v;
}

int finite_degree(const LoopRealization& R, const Vec& x) {
    int deg = 0;
    bool any = false;
    for (int i = 0; i < R.dim(); ++i) {
        if (x[static_cast<std::size_t>(i)].is_zero()) continue;
        if (any && R.basis_degree(i) != deg) throw Error("gauge basis vector is not homogeneous");
        deg = R.basis_degree(i);
        any = true;
    }
    if (!any) throw Error("zero gauge basis vector");
    return deg;
}

}  // namespace

GaugeFrame::GaugeFrame(Realization R, const std::string& gauge) : R_(std::move(R)), name_(gauge) {
    auto it = R_->gauges().find(gauge);
    if (it == R_->gauges().end()) throw Error("unknown gauge '" + gauge + "' for " + R_->label());
    V_ = it->second;
    int dim = R_->dim();
    for (int i = 0; i < dim; ++i) {
        if (R_->basis_class(i) != 0 || R_->basis_degree(i) > 0) continue;
        b_indices_.push_back(i);
        if (R_->basis_degree(i) < 0) n_.push_back(unit(dim, i));
    }
    for (const Vec& v : V_) {
        vdeg_.push_back(finite_degree(*R_, v));
        b_.push_back(v);
    }
    for (const Vec& p : n_) b_.push_back(R_->base().bracket(R_->e(), p));
    int rows = static_cast<int>(b_indices_.size());
    int cols = static_cast<int>(b_.size());
    RMatrix M(rows, cols);
    for (int c = 0; c < cols; ++c) {
        const Vec& v = b_[static_cast<std::size_t>(c)];
        for (int i = 0; i < dim; ++i) {
            bool inside = std::find(b_indices_.begin(), b_indices_.end(), i) != b_indices_.end();
            if (!inside && !v[static_cast<std::size_t>(i)].is_zero()) throw Error("gauge '" + gauge + "' is not inside b");
        }
        for (int r = 0; r < rows; ++r)
            M.at(r, c) = v[static_cast<std::size_t>(b_indices_[static_cast<std::size_t>(r)])].constant_term();
    }
    if (rows != cols || dstau::rank(M) != rows)
        throw Error("gauge '" + gauge + "' is not of DS type: V + [e, n] != b or the sum is not direct");
    to_coords_ = inverse(M);
}

std::vector<DiffPoly> GaugeFrame::coordinates(const Vec& x) const {
    Vec restricted;
    for (int i = 0; i < R_->dim(); ++i) {
        bool inside = std::find(b_indices_.begin(), b_indices_.end(), i) != b_indices_.end();
        if (inside) restricted.push_back(x[static_cast<std::size_t>(i)]);
        else if (!x[static_cast<std::size_t>(i)].is_zero()) throw Error("element is not b-valued");
    }
    return dstau::apply(to_coords_, restricted);
}

Vec GaugeFrame::combine(const std::vector<DiffPoly>& coords) const {
    Vec out(static_cast<std::size_t>(R_->dim()));
    for (std::size_t j = 0; j < coords.size() && j < b_.size(); ++j) {
        if (coords[j].is_zero()) continue;
        for (int i = 0; i < R_->dim(); ++i) {
            Rational c = b_[j][static_cast<std::size_t>(i)].constant_term();
            if (!c.is_zero()) out[static_cast<std::size_t>(i)].add_scaled(coords[j], c);
        }
    }
    return out;
}

LaxOperator GaugeFrame::lax(const std::vector<DiffPoly>& b_coords) const {
    return LaxOperator{R_, R_->at_lambda0(combine(b_coords))};
}

LaxOperator GaugeFrame::generic_lax() const {
    std::vector<DiffPoly> c;
    for (int j = 1; j <= dim_b(); ++j) c.push_back(DiffPoly::jet(j));
    return lax(c);
}

LaxOperator GaugeFrame::slice_lax() const {
    std::vector<DiffPoly> c;
    for (int a = 1; a <= rank(); ++a) c.push_back(DiffPoly::jet(a));
    return lax(c);
}

LoopElement GaugeFrame::generic_S() const {
    Vec s(static_cast<std::size_t>(R_->dim()));
    for (int i = 0; i < dim_n(); ++i) {
        DiffPoly var = DiffPoly::jet(dim_b() + i + 1);
        for (int k = 0; k < R_->dim(); ++k) {
            Rational c = n_[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].constant_term();
            if (!c.is_zero()) s[static_cast<std::size_t>(k)].add_scaled(var, c);
        }
    }
    return R_->at_lambda0(s);
}

LoopElement gauge_transform(const LaxOperator& L, const LoopElement& S) {
    const LoopRealization& R = *L.R;
    for (const auto& [d, v] : S.slices)
        for (int i = 0; i < R.dim(); ++i)
            if (!v[static_cast<std::size_t>(i)].is_zero() &&
                (d >= 0 || R.lambda_power(d, i) != 0))
                throw Error("gauge parameter is not n-valued");
    LoopElement total = R.cyclic() + L.q;
    LoopElement term = total;
    int cap = R.max_basis_degree() - R.min_basis_degree() + 4;
    for (int p = 1;; ++p) {
        term = R.bracket(S, term) * (Rational(1) / Rational(p));
        if (term.is_zero()) break;
        if (p > cap) throw Error("ad S is not nilpotent on the Lax operator");
        total += term;
    }
    LoopElement t = total_derivative(S);
    for (int p = 0; !t.is_zero(); ++p) {
        if (p > cap) throw Error("ad S is not nilpotent on dS");
        total -= t * (Rational(1) / factorial(p + 1));
        t = R.bracket(S, t);
    }
    total -= R.cyclic();
    total.prune();
    return total;
}

CanonicalForm canonical_form(const LaxOperator& L, const GaugeFrame& frame) {
    const LoopRealization& R = *L.R;
    int dim = R.dim();
    int ell = frame.rank();
    CanonicalForm out;
    out.u.assign(static_cast<std::size_t>(ell), DiffPoly());
    LoopElement A = R.cyclic() + L.q;
    LoopElement dS;
    NestedAd adA(R, out.S, A, 1);
    NestedAd adB(R, out.S, dS, -1);
    int kmax = -R.min_basis_degree();
    for (int k = 0; k <= kmax; ++k) {
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
        for (int i = 0; i < dim; ++i)
            if (!T[static_cast<std::size_t>(i)].is_zero() && R.lambda_power(-k, i) != 0)
                throw Error("gauge recursion left lambda^0 in degree " + std::to_string(-k));
        // T = Q^(-k) + [e, S^(-k-1)], read off in the (V, [e, n]) basis.
        std::vector<DiffPoly> c = frame.coordinates(T);
        Vec q(static_cast<std::size_t>(dim)), s(static_cast<std::size_t>(dim));
        for (int a = 0; a < ell; ++a) {
            const DiffPoly& ca = c[static_cast<std::size_t>(a)];
            if (ca.is_zero()) continue;
            out.u[static_cast<std::size_t>(a)] += ca;
            for (int i = 0; i < dim; ++i) {
                Rational b = frame.V()[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)].constant_term();
                if (!b.is_zero()) q[static_cast<std::size_t>(i)].add_scaled(ca, b);
            }
        }
        for (int j = 0; j < frame.dim_n(); ++j) {
            const DiffPoly& cj = c[static_cast<std::size_t>(ell + j)];
            if (cj.is_zero()) continue;
            for (int i = 0; i < dim; ++i) {
                Rational b = frame.n_basis()[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)].constant_term();
                if (!b.is_zero()) s[static_cast<std::size_t>(i)].add_scaled(cj, b);
            }
        }
        if (!vec_is_zero(q)) out.Q.slices[-k] = q;
        if (vec_is_zero(s)) continue;
        out.S.slices[-k - 1] = s;
        Vec ds(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) ds[i] = total_derivative(s[i]);
        dS.slices[-k - 1] = ds;
        Vec patch(static_cast<std::size_t>(dim));
        R.base().add_bracket(patch, s, R.cyclic_slice());
        adA.patch(1, -k, patch);
    }
    return out;
}

DiffPoly gauge_defect(const DiffPoly& w, const GaugeFrame& frame) {
    const LoopRealization& R = *frame.realization();
    LoopElement Q = gauge_transform(frame.generic_lax(), frame.generic_S());
    Vec q0 = R.lambda_coefficient(Q, 0);
    if (!(R.at_lambda0(q0) == Q)) throw Error("gauge transform is not b-valued");
    std::vector<DiffPoly> images = frame.coordinates(q0);
    for (int i = 1; i <= frame.dim_n(); ++i) images.push_back(DiffPoly::jet(frame.dim_b() + i));
    JetSubstitution f(images);
    return f(w) - w;
}

bool gauge_invariance_check(const DiffPoly& w, const GaugeFrame& frame) { return gauge_defect(w, frame).is_zero(); }

InvariantRewriter::InvariantRewriter(const GaugeFrame& frame)
    : frame_(frame), cf_(canonical_form(frame.generic_lax(), frame)), back_(cf_.u) {}

DiffPoly InvariantRewriter::evaluate_on_slice(const DiffPoly& w) const {
    int ell = frame_.rank();
    return substitute(w, [ell](JetVar v) { return v.alpha <= ell ? DiffPoly::variable(v.alpha, v.order) : DiffPoly(); });
}

DiffPoly InvariantRewriter::pull_back(const DiffPoly& p) { return back_(p); }

DiffPoly InvariantRewriter::rewrite(const DiffPoly& w) {
    DiffPoly p = evaluate_on_slice(w);
    if (!(pull_back(p) == w)) throw Error("not a gauge invariant");
    return p;
}

}  // namespace dstau
