#include "dstau/discrete.hpp"

namespace dstau {

namespace {

void check_window(const DiffPoly& p, int lo, int hi) {
    if (p.is_zero()) return;
    if (p.min_order() < lo || p.max_order() > hi)
        throw Error("window overflow: shift indices outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

}  // namespace

DiffcePoly::DiffcePoly(DiffPoly p, int lo, int hi) : p_(std::move(p)), lo_(lo), hi_(hi) {
    if (lo > hi) throw Error("empty shift window");
    check_window(p_, lo_, hi_);
}

DiffcePoly DiffcePoly::variable(int alpha, int m, int lo, int hi) {
    return DiffcePoly(DiffPoly::variable(alpha, m), lo, hi);
}

DiffcePoly shift(const DiffcePoly& p, int steps) {
    return DiffcePoly(shift_orders(p.poly(), steps), p.lo(), p.hi());
}

DiscreteDerivation::DiscreteDerivation(std::vector<DiffPoly> W) : w_(std::move(W)) {}

DiffcePoly DiscreteDerivation::apply(const DiffcePoly& p) const {
    int wlo = 0, whi = 0;
    for (const auto& w : w_)
        if (!w.is_zero()) {
            wlo = std::min(wlo, w.min_order());
            whi = std::max(whi, w.max_order());
        }
    DiffPoly out;
    for (const JetVar& v : p.poly().variables()) {
        if (v.alpha > arity()) throw Error("arity mismatch in discrete derivation");
        out.add_product(partial_derivative(p.poly(), v), shift_orders(w_[static_cast<std::size_t>(v.alpha - 1)], v.order));
    }
    return DiffcePoly(std::move(out), p.lo() + wlo, p.hi() + whi);
}

DiscreteDerivation commutator(const DiscreteDerivation& d1, const DiscreteDerivation& d2) {
    if (d1.arity() != d2.arity()) throw Error("arity mismatch in commutator");
    std::vector<DiffPoly> w;
    for (int a = 0; a < d1.arity(); ++a) {
        const DiffPoly& w1 = d1.characteristic()[static_cast<std::size_t>(a)];
        const DiffPoly& w2 = d2.characteristic()[static_cast<std::size_t>(a)];
        auto window = [](const DiffPoly& p) {
            return DiffcePoly(p, p.is_zero() ? 0 : std::min(0, p.min_order()), p.is_zero() ? 0 : std::max(0, p.max_order()));
        };
        w.push_back(d1.apply(window(w2)).poly() - d2.apply(window(w1)).poly());
    }
    return DiscreteDerivation(std::move(w));
}

EpsSeries apply_discrete(const std::vector<EpsSeries>& W, const EpsSeries& p) {
    int K = p.order();
    for (const auto& w : W) K = std::min(K, w.order());
    EpsSeries out(K);
    for (int q = 0; q <= K; ++q)
        for (const JetVar& v : p[q].variables()) {
            if (v.alpha > static_cast<int>(W.size())) throw Error("arity mismatch in discrete derivation");
            DiffPoly dp = partial_derivative(p[q], v);
            const EpsSeries& w = W[static_cast<std::size_t>(v.alpha - 1)];
            for (int r = 0; q + r <= K; ++r) {
                DiffPoly t = dp * shift_orders(w[r], v.order);
                out.add_to(q + r, t);
            }
        }
    return out;
}

std::vector<EpsSeries> discrete_commutator(const std::vector<EpsSeries>& W1, const std::vector<EpsSeries>& W2) {
    if (W1.size() != W2.size()) throw Error("arity mismatch in commutator");
    std::vector<EpsSeries> w;
    for (std::size_t a = 0; a < W1.size(); ++a) w.push_back(apply_discrete(W1, W2[a]) - apply_discrete(W2, W1[a]));
    return w;
}

std::vector<EpsSeries> induce_discrete(const MiuraPair& pair, const std::vector<EpsSeries>& W) {
    if (pair.forward.kind != JetKind::difference) throw Error("induce_discrete needs a difference Miura pair");
    if (static_cast<int>(W.size()) != pair.forward.arity()) throw Error("arity mismatch in induced derivation");
    std::vector<EpsSeries> out;
    for (const auto& v : pair.forward.values) out.push_back(inverse_map(pair, apply_discrete(W, v.truncated(pair.eps_order))));
    return out;
}

MiuraPair discrete_miura(const std::vector<EpsSeries>& V, int eps_order, int shift_depth) {
    MiuraTuple tuple(V, JetKind::difference);
    if (!check_miura(tuple).ok) throw Error("degenerate leading slice: Jacobian of the eps^0, m = 0 part vanishes");
    return invert_miura(tuple, eps_order, shift_depth);
}

EpsSeries embed_differential(const DiffPoly& p, int eps_order) {
    EpsSubstitution embed(
        [eps_order](JetVar v) {
            EpsSeries s(eps_order);
            Rational c(1);
            for (int j = 0; j <= eps_order; ++j) {
                if (j > 0) c = c * Rational(v.order) / Rational(j);
                s.add_to(j, DiffPoly::jet(v.alpha, j) * c);
            }
            return s;
        },
        eps_order);
    return embed(p);
}

EpsSeries exp_eps_d(const EpsSeries& s) {
    int K = s.order();
    EpsSeries out(K);
    EpsSeries d = s;
    Rational c(1);
    for (int j = 0; j <= K; ++j) {
        if (j > 0) {
            d = total_derivative(d);
            c = c / Rational(j);
        }
        for (int q = 0; q + j <= K; ++q) out.add_to(q + j, d[q] * c);
    }
    return out;
}

Derivation embed_derivation(const DiscreteDerivation& D, int eps_order) {
    std::vector<EpsSeries> w;
    for (const auto& p : D.characteristic()) w.push_back(embed_differential(p, eps_order));
    return Derivation(std::move(w));
}

}  // namespace dstau
