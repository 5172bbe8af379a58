#include "doctest.h"

#include "generators.hpp"

#include "dstau/hierarchy.hpp"
#include "dstau/json_io.hpp"
#include "dstau/miura.hpp"

using namespace dstau;

namespace {

DiffPoly u(int alpha, int m = 0) { return DiffPoly::jet(alpha, m); }

EpsSeries eps_sum(std::vector<DiffPoly> c, int K) {
    c.resize(static_cast<std::size_t>(K + 1));
    return EpsSeries::from_components(std::move(c), K);
}

// V1 = u1 + a u2^2 + graded tail, V2 = u2 + b + graded tail: constant leading Jacobian.
MiuraTuple random_tuple(gen::Engine& g, int K) {
    std::vector<EpsSeries> v;
    for (int a = 1; a <= 2; ++a) {
        EpsSeries s = gen::graded(g, K, 2);
        DiffPoly lead = a == 1 ? u(1) + gen::rational(g) * u(2) * u(2) : u(2) + DiffPoly(gen::rational(g));
        s.set(0, lead);
        v.push_back(s);
    }
    return MiuraTuple(v);
}

}  // namespace

TEST_CASE("check_miura examples") {
    MiuraCheck id = check_miura(MiuraTuple({EpsSeries(u(1), 2), EpsSeries(u(2), 2)}));
    CHECK(id.ok);
    CHECK(id.jacobian == DiffPoly(1));
    MiuraCheck sq = check_miura(MiuraTuple({EpsSeries(u(1) * u(1), 2)}));
    CHECK(sq.ok);
    CHECK(sq.jacobian == Rational(2) * u(1));
    MiuraCheck flat = check_miura(MiuraTuple({eps_sum({DiffPoly(), u(1, 1)}, 2)}));
    CHECK_FALSE(flat.ok);
    CHECK(flat.jacobian.is_zero());
}

TEST_CASE("forward map examples") {
    MiuraTuple sq({EpsSeries(u(1) * u(1), 2)});
    CHECK(forward_map(sq, EpsSeries(u(1, 1), 2)) == EpsSeries(Rational(2) * u(1) * u(1, 1), 2));
    MiuraTuple id({EpsSeries(u(1), 2)});
    CHECK(forward_map(id, EpsSeries(u(1), 2)) == EpsSeries(u(1), 2));
    MiuraTuple shifted({eps_sum({u(1), u(1, 1)}, 2)});
    EpsSeries want = eps_sum({u(1), u(1, 1)}, 2) * eps_sum({u(1, 1), u(1, 2)}, 2);
    CHECK(forward_map(shifted, EpsSeries(u(1) * u(1, 1), 2)) == want);
    CHECK_THROWS_WITH_AS(forward_map(id, EpsSeries(u(2), 2)), "arity mismatch in forward map", Error);
}

TEST_CASE("inversion examples") {
    MiuraPair id = invert_miura(MiuraTuple({EpsSeries(u(1), 3)}), 3, 4);
    CHECK(id.inverse[0] == EpsSeries(u(1), 3));
    MiuraPair half = invert_miura(MiuraTuple({EpsSeries(Rational(2) * u(1), 1)}), 1, 2);
    CHECK(half.inverse[0] == EpsSeries(Rational(1, 2) * u(1), 1));
    CHECK_THROWS_WITH_AS(invert_miura(MiuraTuple({EpsSeries(u(1) * u(1), 1)}), 1, 2),
                         "leading map not invertible over coefficient field", Error);
}

TEST_CASE("u + eps u_x inverts to the alternating series") {
    const int K = 4;
    MiuraTuple V({eps_sum({u(1), u(1, 1)}, K)});
    MiuraPair pair = invert_miura(V, K, K);
    std::vector<DiffPoly> want;
    for (int q = 0; q <= K; ++q) want.push_back(Rational(q % 2 ? -1 : 1) * u(1, q));
    CHECK(pair.inverse[0] == eps_sum(want, K));
    // Direct substitution: sum_q (-eps)^q d^q V telescopes to u.
    EpsSeries acc(K), dV = V.values[0];
    for (int q = 0; q <= K; ++q) {
        EpsSeries epsq = eps_sum({}, K);
        epsq.set(q, DiffPoly(q % 2 ? -1 : 1));
        acc += epsq * dV;
        dV = total_derivative(dV);
    }
    CHECK(acc == EpsSeries(u(1), K));
    CHECK_THROWS_WITH_AS(invert_miura(V, K, 2),
                         "jet depth 2 too small: eps-stage 3 of the inverse needs jet order 3", Error);
    CHECK_THROWS_AS(invert_miura(V, K + 1, 8), Error);
}

TEST_CASE("round trips on random tuples") {
    gen::Engine g(41);
    const int K = 3;
    for (int i = 0; i < 10; ++i) {
        MiuraTuple V = random_tuple(g, K);
        MiuraPair pair = invert_miura(V, K, 12);
        for (int a = 1; a <= 2; ++a) {
            EpsSeries gen(u(a), K);
            CHECK(forward_map(V, pair.inverse[static_cast<std::size_t>(a - 1)]) == gen);
            CHECK(inverse_map(pair, V.values[static_cast<std::size_t>(a - 1)]) == gen);
            // d-equivariance: phi_V(d U) = d phi_V(U).
            EpsSeries dU = total_derivative(pair.inverse[static_cast<std::size_t>(a - 1)]);
            CHECK(forward_map(V, dU) == EpsSeries(u(a, 1), K));
        }
    }
}

TEST_CASE("induced derivations") {
    gen::Engine g(42);
    const int K = 2;
    MiuraTuple V = random_tuple(g, K);
    MiuraPair pair = invert_miura(V, K, 10);
    CHECK(induce_derivation(pair, Derivation::total(2, K)) == Derivation::total(2, K));

    MiuraPair id = invert_miura(MiuraTuple({EpsSeries(u(1), K), EpsSeries(u(2), K)}), K, 4);
    Derivation d = gen::derivation(g, K, 2);
    CHECK(induce_derivation(id, d) == d);

    for (int i = 0; i < 3; ++i) {
        Derivation d1 = gen::derivation(g, K, 2), d2 = gen::derivation(g, K, 2);
        Derivation lhs = commutator(induce_derivation(pair, d1), induce_derivation(pair, d2));
        Derivation rhs = induce_derivation(pair, commutator(d1, d2));
        CHECK(lhs == rhs);
    }
    CHECK_THROWS_AS(induce_derivation(pair, Derivation::total(1, K)), Error);
}

TEST_CASE("flow reconstruction from two-point functions") {
    GaugeFrame frame(LoopRealization::build("A1_1"));
    DSHierarchy H(frame);
    const int K = 2;
    OmegaTable table;
    for (OmegaKey key : {OmegaKey{1, 0, 1, 0}, OmegaKey{1, 1, 1, 0}}) table[key] = H.omega(key);
    MiuraPair pair = invert_miura(MiuraTuple({regrade(table[{1, 0, 1, 0}], K)}), K, 6);
    auto flows = reconstruct_flows(table, pair, {{1, 0}, {1, 1}});
    CHECK(flows.at({1, 0})[0] == EpsSeries(-u(1, 1), K));
    CHECK(flows.at({1, 1})[0] == eps_derivation(H.flow({1, 1}), K)[1]);

    OmegaTable zero = table;
    zero[{1, 1, 1, 0}] = DiffPoly();
    CHECK(is_zero(reconstruct_flows(zero, pair, {{1, 1}}).at({1, 1})[0]));

    MiuraPair bad = pair;
    bad.forward = MiuraTuple({eps_sum({DiffPoly(), u(1, 1)}, K)});
    CHECK_THROWS_WITH_AS(reconstruct_flows(table, bad, {{1, 1}}), "tau-coordinates degenerate", Error);
    CHECK_THROWS_AS(reconstruct_flows(table, pair, {{1, 2}}), Error);
}

TEST_CASE("Miura pairs serialize with side tags") {
    MiuraTuple V({eps_sum({u(1), u(1, 1)}, 3)});
    MiuraPair pair = invert_miura(V, 3, 4);
    Json j = to_json(pair);
    CHECK(j["forward"][0]["side"] == "u");
    CHECK(j["inverse"][0]["side"] == "v");
    MiuraPair back = miura_pair_from_json(j);
    CHECK(back.inverse == pair.inverse);
    CHECK(back.forward.values == pair.forward.values);
    CHECK(back.eps_order == 3);
    j["inverse"][0]["side"] = "u";
    CHECK_THROWS_AS(miura_pair_from_json(j), Error);
}
