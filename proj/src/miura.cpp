#include "dstau/miura.hpp"

#include <algorithm>

#include "dstau/linalg.hpp"

namespace dstau {

namespace {

std::vector<std::vector<DiffPoly>> leading_jacobian(const MiuraTuple& V) {
    int l = V.arity();
    std::vector<std::vector<DiffPoly>> J(static_cast<std::size_t>(l), std::vector<DiffPoly>(static_cast<std::size_t>(l)));
    for (int a = 0; a < l; ++a)
        for (int b = 0; b < l; ++b)
            J[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                dstau::partial_derivative(V.values[static_cast<std::size_t>(a)][0], JetVar{b + 1, 0});
    return J;
}

// Minor with row r and column c removed.
std::vector<std::vector<DiffPoly>> minor(const std::vector<std::vector<DiffPoly>>& m, std::size_t r, std::size_t c) {
    std::vector<std::vector<DiffPoly>> out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i == r) continue;
        std::vector<DiffPoly> row;
        for (std::size_t j = 0; j < m.size(); ++j)
            if (j != c) row.push_back(m[i][j]);
        out.push_back(std::move(row));
    }
    return out;
}

EpsSubstitution substitution(JetKind kind, std::vector<EpsSeries> images, int K) {
    return kind == JetKind::differential ? EpsSubstitution::differential(std::move(images), K)
                                         : EpsSubstitution::shift(std::move(images), K);
}

}  // namespace


MiuraTuple::MiuraTuple(std::vector<EpsSeries> v, JetKind k) : values(std::move(v)), kind(k) {
    if (values.empty()) throw Error("empty Miura tuple");
    int K = values.front().order();
    for (const auto& x : values) {
        if (x.order() != K) throw Error("Miura tuple components have different eps orders");
        if (x.max_alpha() > arity()) throw Error("arity mismatch: component index beyond the tuple length");
    }
}

int MiuraTuple::order() const { return values.empty() ? 0 : values.front().order(); }

MiuraCheck check_miura(const MiuraTuple& V) {
    MiuraCheck out;
    out.jacobian = determinant(leading_jacobian(V));
    out.ok = !out.jacobian.is_zero();
    return out;
}

EpsSeries forward_map(const MiuraTuple& V, const EpsSeries& p) {
    if (p.max_alpha() > V.arity()) throw Error("arity mismatch in forward map");
    int K = std::min(V.order(), p.order());
    return substitution(V.kind, V.values, K)(p.truncated(K));
}

EpsSeries inverse_map(const MiuraPair& pair, const EpsSeries& p) {
    if (p.max_alpha() > static_cast<int>(pair.inverse.size())) throw Error("arity mismatch in inverse map");
    int K = std::min(pair.eps_order, p.order());
    std::vector<EpsSeries> U;
    for (const auto& u : pair.inverse) U.push_back(u.truncated(K));
    return substitution(pair.forward.kind, std::move(U), K)(p.truncated(K));
}

MiuraPair invert_miura(const MiuraTuple& V, int eps_order, int jet_depth) {
    if (eps_order < 0 || jet_depth < 0) throw Error("negative truncation");
    if (eps_order > V.order()) throw Error("truncation mismatch: Miura tuple known only to eps^" + std::to_string(V.order()));
    for (const auto& x : V.values) {
        if (V.kind == JetKind::differential && !x.is_graded())
            throw Error("Miura tuple component is not graded (eps^q must carry degree q)");
        for (const JetVar& v : x[0].variables())
            if (v.order != 0) throw Error("degenerate leading slice: eps^0 part depends on shifted or differentiated jets");
    }
    int l = V.arity();
    auto J = leading_jacobian(V);
    DiffPoly det = determinant(J);
    if (det.is_zero()) throw Error("not of Miura type: leading Jacobian determinant vanishes");
    if (!det.is_constant()) throw Error("leading map not invertible over coefficient field");
    Rational det_c = det.constant_term();

    // Stage 0: V0 = c + A u + N(u); iterate U0 = A^{-1}(v - c - N(U0)).
    RMatrix A(l, l);
    std::vector<DiffPoly> c(static_cast<std::size_t>(l)), N(static_cast<std::size_t>(l));
    for (int a = 0; a < l; ++a) {
        const DiffPoly& v0 = V.values[static_cast<std::size_t>(a)][0];
        for (const auto& [m, coef] : v0.terms()) {
            if (m.is_one()) {
                c[static_cast<std::size_t>(a)].add_term(m, coef);
            } else if (m.total_degree() == 1) {
                A.at(a, m.factors().front().var.alpha - 1) += coef;
            } else {
                N[static_cast<std::size_t>(a)].add_term(m, coef);
            }
        }
    }
    RMatrix Ainv = inverse(A);
    std::vector<DiffPoly> U0(static_cast<std::size_t>(l));
    auto identity_holds = [&](const std::vector<DiffPoly>& u) {
        for (int a = 0; a < l; ++a) {
            DiffPoly img = substitute(V.values[static_cast<std::size_t>(a)][0],
                                      [&](JetVar v) { return u[static_cast<std::size_t>(v.alpha - 1)]; });
            if (!(img == DiffPoly::jet(a + 1))) return false;
        }
        return true;
    };
    bool done = false;
    for (int it = 0; it < 64 && !done; ++it) {
        std::vector<DiffPoly> rhs(static_cast<std::size_t>(l));
        for (int a = 0; a < l; ++a) {
            rhs[static_cast<std::size_t>(a)] = DiffPoly::jet(a + 1) - c[static_cast<std::size_t>(a)] -
                                               substitute(N[static_cast<std::size_t>(a)], [&](JetVar v) {
                                                   return U0[static_cast<std::size_t>(v.alpha - 1)];
                                               });
        }
        U0 = dstau::apply(Ainv, rhs);
        done = identity_holds(U0);
    }
    if (!done) throw Error("leading map not invertible over coefficient field");

    // J(U0)^{-1} = adj(J)(U0) / det.
    auto at_U0 = [&](const DiffPoly& p) {
        return substitute(p, [&](JetVar v) { return U0[static_cast<std::size_t>(v.alpha - 1)]; });
    };
    std::vector<std::vector<DiffPoly>> Jinv(static_cast<std::size_t>(l), std::vector<DiffPoly>(static_cast<std::size_t>(l)));
    for (std::size_t a = 0; a < static_cast<std::size_t>(l); ++a)
        for (std::size_t b = 0; b < static_cast<std::size_t>(l); ++b) {
            DiffPoly cof = l == 1 ? DiffPoly(1) : determinant(minor(J, b, a));
            if ((a + b) % 2 == 1) cof = -cof;
            Jinv[a][b] = at_U0(cof) * (Rational(1) / det_c);
        }

    MiuraPair pair;
    pair.forward = V;
    pair.eps_order = eps_order;
    pair.jet_depth = jet_depth;
    for (int a = 0; a < l; ++a) pair.inverse.emplace_back(U0[static_cast<std::size_t>(a)], eps_order);
    pair.stage_jet_order.push_back(0);
    for (int q = 1; q <= eps_order; ++q) {
        std::vector<EpsSeries> Uq;
        for (const auto& u : pair.inverse) Uq.push_back(u.truncated(q));
        auto psi = substitution(V.kind, Uq, q);
        std::vector<DiffPoly> r(static_cast<std::size_t>(l));
        for (int a = 0; a < l; ++a) r[static_cast<std::size_t>(a)] = psi(V.values[static_cast<std::size_t>(a)].truncated(q))[q];
        int stage_order = -1;
        for (std::size_t a = 0; a < static_cast<std::size_t>(l); ++a) {
            DiffPoly corr;
            for (std::size_t b = 0; b < static_cast<std::size_t>(l); ++b) corr.add_product(Jinv[a][b], r[b], Rational(-1));
            if (!corr.is_zero()) stage_order = std::max({stage_order, corr.max_order(), -corr.min_order()});
            pair.inverse[a].set(q, std::move(corr));
        }
        if (stage_order > jet_depth)
            throw Error("jet depth " + std::to_string(jet_depth) + " too small: eps-stage " + std::to_string(q) +
                        " of the inverse needs jet order " + std::to_string(stage_order));
        pair.stage_jet_order.push_back(std::max(stage_order, 0));
    }
    return pair;
}

Derivation induce_derivation(const MiuraPair& pair, const Derivation& D) {
    if (D.arity() != pair.forward.arity()) throw Error("arity mismatch in induced derivation");
    if (D.order() < pair.eps_order) throw Error("truncation mismatch: derivation known only to eps^" + std::to_string(D.order()));
    std::vector<EpsSeries> w;
    for (const auto& v : pair.forward.values) w.push_back(inverse_map(pair, D.apply(v.truncated(pair.eps_order))));
    return Derivation(std::move(w));
}

std::map<FlowLabel, std::vector<EpsSeries>> reconstruct_flows(const OmegaTable& omega, const MiuraPair& pair,
                                                              const std::vector<FlowLabel>& labels) {
    if (!check_miura(pair.forward).ok) throw Error("tau-coordinates degenerate");
    int K = pair.eps_order;
    int l = pair.forward.arity();
    // phi_V(dU_alpha / dv_{beta,m}) for all jets present in U.
    std::vector<std::map<JetVar, EpsSeries>> coeff(static_cast<std::size_t>(l));
    for (int a = 0; a < l; ++a) {
        const EpsSeries& U = pair.inverse[static_cast<std::size_t>(a)];
        std::set<JetVar> vars;
        for (const auto& comp : U.components())
            for (const JetVar& v : comp.variables()) vars.insert(v);
        for (const JetVar& v : vars) coeff[static_cast<std::size_t>(a)].emplace(v, forward_map(pair.forward, partial_derivative(U, v)));
    }
    std::map<FlowLabel, std::vector<EpsSeries>> out;
    for (const FlowLabel& j : labels) {
        // d^m(D_1 Omega_{j;(beta,0)}), D_1 = -d.
        std::vector<std::vector<EpsSeries>> rows;
        for (int b = 1; b <= l; ++b) {
            auto it = omega.find(OmegaKey{j.a, j.k, b, 0});
            if (it == omega.end()) throw Error("Omega entry " + to_string(OmegaKey{j.a, j.k, b, 0}) + " missing");
            rows.push_back({-total_derivative(regrade(it->second, K))});
        }
        std::vector<EpsSeries> w;
        for (int a = 0; a < l; ++a) {
            EpsSeries acc(K);
            for (const auto& [v, c] : coeff[static_cast<std::size_t>(a)]) {
                auto& row = rows[static_cast<std::size_t>(v.alpha - 1)];
                while (static_cast<int>(row.size()) <= v.order) row.push_back(total_derivative(row.back()));
                acc += c * row[static_cast<std::size_t>(v.order)];
            }
            w.push_back(acc);
        }
        out.emplace(j, std::move(w));
    }
    return out;
}

}  // namespace dstau
