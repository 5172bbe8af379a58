#include "dstau/verify.hpp"

#include <algorithm>

namespace dstau {

namespace {

std::vector<EpsSeries> exact(const DiffPoly& p) { return {EpsSeries(p, 0)}; }

std::vector<EpsSeries> exact(const std::vector<DiffPoly>& v) {
    std::vector<EpsSeries> out;
    for (const auto& p : v) out.emplace_back(p, 0);
    return out;
}

std::vector<EpsSeries> loop_residual(const LoopElement& x) {
    std::vector<EpsSeries> out;
    for (const auto& [d, v] : x.slices)
        for (const auto& p : v)
            if (!p.is_zero()) out.emplace_back(p, 0);
    return out;
}

std::vector<FlowLabel> all_labels(const DSHierarchy& H, int kmax) {
    std::vector<FlowLabel> out;
    for (int k = 0; k <= kmax; ++k)
        for (int a = 1; a <= H.realization().n_exponents(); ++a) out.push_back({a, k});
    return out;
}

int max_jet(const std::vector<DiffPoly>& W) {
    int m = -1;
    for (const auto& p : W) m = std::max(m, p.max_order());
    return m;
}

}  // namespace

bool IdentityCheck::residual_zero() const {
    return std::all_of(residual.begin(), residual.end(), [](const EpsSeries& s) { return s.is_zero(); });
}

bool all_zero(const Report& r) {
    return std::all_of(r.begin(), r.end(), [](const IdentityCheck& c) { return c.residual_zero(); });
}

Report verify_integrability(DSHierarchy& H, const std::vector<FlowLabel>& labels, int eps_order, int jet_depth) {
    Report out;
    for (const auto& f : labels) {
        int m = max_jet(H.flow(f));
        if (m > jet_depth) {
            // A truncated characteristic would not be the flow; report instead of truncating.
            out.push_back({"integrability", "jet order of D_" + to_string(f) + " is " + std::to_string(m) +
                                                " > jet depth " + std::to_string(jet_depth), exact(DiffPoly(1))});
        }
    }
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j) {
            const auto& Wi = H.flow(labels[i]);
            const auto& Wj = H.flow(labels[j]);
            std::string name = "[D_" + to_string(labels[i]) + ", D_" + to_string(labels[j]) + "]";
            Derivation c = commutator(Derivation::from_polys(Wi), Derivation::from_polys(Wj));
            out.push_back({"integrability", name + " exact", c.characteristic()});
            Derivation ce = commutator(eps_derivation(Wi, eps_order), eps_derivation(Wj, eps_order));
            out.push_back({"integrability", name + " mod eps^" + std::to_string(eps_order + 1), ce.characteristic()});
        }
    return out;
}

Report verify_omega_symmetry(DSHierarchy& H, int kmax) {
    Report out;
    auto labels = all_labels(H, kmax);
    for (const auto& x : labels)
        for (const auto& y : labels) {
            OmegaKey k{x.a, x.k, y.a, y.k};
            OmegaKey t{y.a, y.k, x.a, x.k};
            out.push_back({"omega_symmetry", "Omega_{" + to_string(k) + "} - Omega_{" + to_string(t) + "}",
                           exact(H.omega(k) - H.omega(t))});
        }
    return out;
}

Report verify_tau_symmetry(DSHierarchy& H, int kmax) {
    Report out;
    auto labels = all_labels(H, kmax);
    for (const auto& x : labels)
        for (const auto& y : labels)
            for (const auto& z : labels) {
                DiffPoly lhs = apply_characteristic(H.flow(x), H.omega({y.a, y.k, z.a, z.k}));
                DiffPoly rhs = apply_characteristic(H.flow(z), H.omega({x.a, x.k, y.a, y.k}));
                out.push_back({"tau_symmetry",
                               "D_" + to_string(x) + " Omega_{" + to_string(OmegaKey{y.a, y.k, z.a, z.k}) + "} - D_" +
                                   to_string(z) + " Omega_{" + to_string(OmegaKey{x.a, x.k, y.a, y.k}) + "}",
                               exact(lhs - rhs)});
            }
    return out;
}

Report verify_omega_gauge(DSHierarchy& H, int kmax) {
    Report out;
    const LoopRealization& R = H.realization();
    ResolventCache generic(H.frame().generic_lax());
    auto labels = all_labels(H, kmax);
    int depth = 0;
    for (const auto& x : labels)
        for (const auto& y : labels) depth = std::max(depth, omega_depth(R, {x.a, x.k, y.a, y.k}));
    generic.get(1, depth);
    for (const auto& x : labels)
        for (const auto& y : labels) {
            if (y < x) continue;
            OmegaKey k{x.a, x.k, y.a, y.k};
            DiffPoly w = omega_entry(R, generic.get(x.a, depth), generic.get(y.a, depth), x.k, y.k);
            out.push_back({"gauge_invariance", "f(Omega_{" + to_string(k) + "}) - Omega_{" + to_string(k) + "}",
                           exact(gauge_defect(w, H.frame()))});
            out.push_back({"gauge_invariance", "Omega_{" + to_string(k) + "}|slice - Omega_{" + to_string(k) + "}(u)",
                           exact(H.rewriter().evaluate_on_slice(w) - H.omega(k))});
        }
    return out;
}

Report verify_expansion_region(DSHierarchy& H, int k) {
    const LoopRealization& R = H.realization();
    OmegaKey key{1, k, 1, k};
    ResolventCache& c = H.slice_resolvents();
    int depth = std::max(c.depth(), omega_depth(R, key));
    c.get(1, depth);
    DiffPoly w = omega_entry(R, c.get(1, depth), c.get(1, depth), k, k, true);
    return {{"expansion_region", "Omega_{" + to_string(key) + "} opposite region - Omega_{" + to_string(key) + "}",
             exact(w - H.omega(key))}};
}

Report verify_d10(DSHierarchy& H) {
    Report out;
    const auto& W = H.flow({1, 0});
    for (int a = 1; a <= H.arity(); ++a)
        out.push_back({"d10", "D_1:0(u" + std::to_string(a) + ") + u" + std::to_string(a) + "_x",
                       exact(W[static_cast<std::size_t>(a - 1)] + DiffPoly::jet(a, 1))});
    D10Solution s = H.d10_unique_solve();
    out.push_back({"d10", "psi + d(Q_can)", exact(DiffPoly(s.psi_is_minus_dQ ? 0 : 1))});
    out.push_back({"d10", "theta - (Q_can - b)", exact(DiffPoly(s.theta_is_Q_minus_b ? 0 : 1))});
    return out;
}

Report verify_resolvents(const LaxOperator& L, int depth) {
    Report out;
    const LoopRealization& R = *L.R;
    auto res = compute_resolvents(L, depth);
    for (const auto& r : res)
        out.push_back({"resolvent", "[L, R_" + std::to_string(r.exponent) + "] through depth " + std::to_string(depth),
                       loop_residual(lax_residual(L, r))});
    for (const auto& ra : res)
        for (const auto& rb : res) {
            std::vector<DiffPoly> s;
            for (const auto& [p, c] : normalization_residual(R, ra, rb))
                if (!c.is_zero()) s.push_back(c);
            out.push_back({"resolvent", "(R_" + std::to_string(ra.exponent) + "|R_" + std::to_string(rb.exponent) +
                                            ") - normalization",
                           exact(s)});
        }
    return out;
}

Report verify_nondegeneracy(DSHierarchy& H) {
    DiffPoly d = total_derivative(H.omega({1, 0, 1, 0}));
    // Residual is zero exactly when d Omega_{1,0;1,0} != 0.
    return {{"nondegeneracy", "d Omega_{1,0;1,0} != 0", exact(DiffPoly(d.is_zero() ? 1 : 0))}};
}

TauCoordinateReport tau_coordinate_check(DSHierarchy& H, const std::vector<FlowLabel>& labels, int eps_order,
                                         int jet_depth) {
    TauCoordinateReport out;
    int l = H.arity();
    std::vector<EpsSeries> V;
    for (int a = 1; a <= l; ++a) V.push_back(regrade(H.omega({a, 0, 1, 0}), eps_order));
    MiuraTuple tuple(V);
    out.check = check_miura(tuple);
    out.checks.push_back({"tau_coordinates", "det dV^[0]/du != 0", exact(DiffPoly(out.check.ok ? 0 : 1))});
    if (!out.check.ok) return out;
    out.pair = invert_miura(tuple, eps_order, jet_depth);
    for (int a = 1; a <= l; ++a) {
        EpsSeries u(DiffPoly::jet(a), eps_order);
        EpsSeries v(DiffPoly::jet(a), eps_order);
        out.checks.push_back({"tau_coordinates", "phi_V(U_" + std::to_string(a) + ") - u" + std::to_string(a),
                              {forward_map(tuple, out.pair->inverse[static_cast<std::size_t>(a - 1)]) - u}});
        out.checks.push_back({"tau_coordinates", "psi_U(V_" + std::to_string(a) + ") - v" + std::to_string(a),
                              {inverse_map(*out.pair, V[static_cast<std::size_t>(a - 1)]) - v}});
    }
    OmegaTable table;
    for (const auto& f : labels)
        for (int b = 1; b <= l; ++b) table[{f.a, f.k, b, 0}] = H.omega({f.a, f.k, b, 0});
    out.reconstructed = reconstruct_flows(table, *out.pair, labels);
    std::vector<Derivation> induced;
    for (const auto& f : labels) {
        Derivation direct = eps_derivation(H.flow(f), eps_order);
        const auto& rec = out.reconstructed.at(f);
        for (int a = 1; a <= l; ++a)
            out.checks.push_back({"reconstruction", "reconstructed D_" + to_string(f) + "(u" + std::to_string(a) + ") - D_" +
                                                       to_string(f) + "(u" + std::to_string(a) + ")",
                                  {rec[static_cast<std::size_t>(a - 1)] - direct[a]}});
        induced.push_back(induce_derivation(*out.pair, direct));
    }
    for (std::size_t i = 0; i < induced.size(); ++i)
        for (std::size_t j = i + 1; j < induced.size(); ++j) {
            Derivation c = commutator(induced[i], induced[j]);
            out.checks.push_back({"tau_coordinates", "[D~_" + to_string(labels[i]) + ", D~_" + to_string(labels[j]) + "]",
                                  c.characteristic()});
        }
    return out;
}

}  // namespace dstau
