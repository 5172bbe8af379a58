#include "doctest.h"

#include <array>
#include <filesystem>
#include <fstream>

#include "generators.hpp"

#include "dstau/kacmoody.hpp"

using namespace dstau;

namespace {

const std::vector<std::string> kTypes{"A1_1", "A2_1", "A2_2"};

// Random element with constant coefficients, respecting the twist.
LoopElement random_loop(gen::Engine& g, const LoopRealization& R, int max_power = 2, int terms = 5) {
    std::vector<LoopTerm> ts;
    while (static_cast<int>(ts.size()) < terms) {
        int i = gen::uniform(g, 0, R.dim() - 1);
        int k = gen::uniform(g, -max_power, max_power);
        if (!R.allowed(R.degree_of(i, k), i)) continue;
        Rational c = gen::rational(g);
        if (c.is_zero()) continue;
        ts.push_back({i, k, c});
    }
    return R.from_terms(ts);
}

// 2x2 matrix loops: power -> matrix. Independent realization of A_1^(1).
using M2 = std::array<Rational, 4>;
using MatLoop = std::map<int, M2>;

MatLoop to_matrix(const LoopRealization& R, const LoopElement& x) {
    // E = e12, H = diag(1,-1), F = e21.
    MatLoop out;
    for (int k = -8; k <= 8; ++k) {
        Vec c = R.lambda_coefficient(x, k);
        M2 m{c[1].constant_term(), c[0].constant_term(), c[2].constant_term(), -c[1].constant_term()};
        if (m[0].is_zero() && m[1].is_zero() && m[2].is_zero() && m[3].is_zero()) continue;
        out[k] = m;
    }
    return out;
}

MatLoop mat_bracket(const MatLoop& a, const MatLoop& b) {
    MatLoop out;
    for (const auto& [ka, x] : a)
        for (const auto& [kb, y] : b) {
            M2& z = out[ka + kb];
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (int l = 0; l < 2; ++l) {
                        z[2 * i + j] += x[2 * i + l] * y[2 * l + j];
                        z[2 * i + j] -= y[2 * i + l] * x[2 * l + j];
                    }
        }
    std::erase_if(out, [](const auto& kv) {
        for (const auto& c : kv.second)
            if (!c.is_zero()) return false;
        return true;
    });
    return out;
}

}  // namespace

TEST_CASE("tables validate for every supported type and vertex") {
    for (const auto& t : kTypes) {
        CAPTURE(t);
        auto R = LoopRealization::build(t);
        CHECK_NOTHROW(R->validate());
        CHECK_NOTHROW(R->base().validate());
    }
    for (int v = 0; v <= 2; ++v) CHECK_NOTHROW(LoopRealization::build("A2_1", v)->validate());
    CHECK_NOTHROW(LoopRealization::build("A1_1", 1)->validate());
}

TEST_CASE("type names and vertex errors") {
    CHECK(LoopRealization::canonical_type("A_2^(2)") == "A2_2");
    CHECK(LoopRealization::build("A_1^(1)")->type() == "A1_1");
    CHECK_THROWS_WITH_AS(LoopRealization::build("B2_1"),
                         "unsupported algebra type 'B2_1' (supported: A_1^(1), A_2^(1), A_2^(2))", Error);
    CHECK_THROWS_WITH_AS(LoopRealization::build("A2_1", 3), "vertex c_3 out of range 0..2", Error);
    CHECK_THROWS_AS(LoopRealization::build("A2_2", 1), Error);
}

TEST_CASE("exponent data") {
    auto a1 = LoopRealization::build("A1_1");
    auto a2 = LoopRealization::build("A2_1");
    auto t2 = LoopRealization::build("A2_2");
    CHECK(a1->exponents() == std::vector<int>{1});
    CHECK(a2->exponents() == std::vector<int>{1, 2});
    CHECK(t2->exponents() == std::vector<int>{1, 5});
    CHECK(t2->period() == 6);
    CHECK(t2->order() == 2);
    for (const auto& t : kTypes) {
        auto R = LoopRealization::build(t);
        int n = R->n_exponents();
        for (int a = 0; a < n; ++a)
            CHECK(R->exponents()[static_cast<std::size_t>(a)] + R->exponents()[static_cast<std::size_t>(n - 1 - a)] ==
                  R->period());
        CHECK(R->is_exponent(R->exponents().back() + R->period()));
        CHECK_FALSE(R->is_exponent(R->period()));
    }
}

TEST_CASE("Heisenberg elements commute and are normalized") {
    for (const auto& t : kTypes) {
        CAPTURE(t);
        auto R = LoopRealization::build(t);
        int n = R->n_exponents();
        for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b) {
                CHECK(R->bracket(R->heisenberg(a), R->heisenberg(b)).is_zero());
                Laurent f = R->bilinear(R->heisenberg(a), R->heisenberg(n + 1 - b));
                if (a == b) {
                    REQUIRE(f.size() == 1);
                    CHECK(f.begin()->first == R->order());
                    CHECK(f.begin()->second == DiffPoly(R->coxeter()));
                } else {
                    CHECK(f.empty());
                }
            }
    }
}

TEST_CASE("loop bracket agrees with 2x2 matrix loops") {
    auto R = LoopRealization::build("A1_1");
    gen::Engine g(21);
    for (int i = 0; i < 100; ++i) {
        LoopElement x = random_loop(g, *R, 2), y = random_loop(g, *R, 2);
        CHECK(to_matrix(*R, R->bracket(x, y)) == mat_bracket(to_matrix(*R, x), to_matrix(*R, y)));
    }
}

TEST_CASE("loop bracket: antisymmetry and Jacobi on random triples") {
    gen::Engine g(22);
    for (const auto& t : kTypes) {
        CAPTURE(t);
        auto R = LoopRealization::build(t);
        for (int i = 0; i < 40; ++i) {
            LoopElement x = random_loop(g, *R), y = random_loop(g, *R), z = random_loop(g, *R);
            CHECK((R->bracket(x, y) + R->bracket(y, x)).is_zero());
            LoopElement jac = R->bracket(x, R->bracket(y, z)) + R->bracket(y, R->bracket(z, x)) +
                              R->bracket(z, R->bracket(x, y));
            CHECK(jac.is_zero());
        }
    }
}

TEST_CASE("invariant form is ad-invariant on loops") {
    gen::Engine g(23);
    for (const auto& t : kTypes) {
        auto R = LoopRealization::build(t);
        for (int i = 0; i < 30; ++i) {
            LoopElement x = random_loop(g, *R), y = random_loop(g, *R), z = random_loop(g, *R);
            Laurent a = R->bilinear(R->bracket(x, y), z);
            Laurent b = R->bilinear(x, R->bracket(y, z));
            std::erase_if(a, [](const auto& kv) { return kv.second.is_zero(); });
            std::erase_if(b, [](const auto& kv) { return kv.second.is_zero(); });
            CHECK(a == b);
        }
    }
}

TEST_CASE("Heisenberg split re-sums and lands in the kernel") {
    gen::Engine g(24);
    for (const auto& t : kTypes) {
        CAPTURE(t);
        auto R = LoopRealization::build(t);
        for (int i = 0; i < 40; ++i) {
            LoopElement x = random_loop(g, *R);
            auto [h, im] = R->heisenberg_split(x);
            CHECK((h + im - x).is_zero());
            CHECK(R->bracket(R->cyclic(), h).is_zero());
        }
    }
}

TEST_CASE("projections and degrees") {
    gen::Engine g(25);
    for (const auto& t : kTypes) {
        auto R = LoopRealization::build(t);
        for (int i = 0; i < 30; ++i) {
            LoopElement x = random_loop(g, *R);
            CHECK((R->project_plus(x) + R->project_minus(x) - x).is_zero());
            CHECK(R->project_plus(R->project_plus(x)) == R->project_plus(x));
            CHECK(R->project_minus(R->project_plus(x)).is_zero());
            LoopElement s = R->shift_lambda(x, 1);
            CHECK(R->principal_degree(s).degree == R->principal_degree(x).degree + R->period());
        }
        CHECK(R->principal_degree(R->cyclic()).degree == 1);
        CHECK(R->principal_degree(R->cyclic()).homogeneous);
        CHECK_THROWS_WITH_AS(R->principal_degree(LoopElement{}), "degree undefined", Error);
    }
}

TEST_CASE("pi_lambda keeps negative powers congruent to -1 and is idempotent") {
    gen::Engine g(26);
    for (int N : {1, 2}) {
        for (int i = 0; i < 50; ++i) {
            Laurent f;
            for (int j = 0; j < 6; ++j) f[gen::uniform(g, -7, 7)] = DiffPoly(gen::rational(g));
            Laurent p = pi_lambda(f, N);
            CHECK(pi_lambda(p, N) == p);
            for (const auto& [k, c] : p) {
                CHECK(k < 0);
                CHECK((k + 1) % N == 0);
            }
        }
    }
    CHECK(pi_lambda_keeps(-1, 2));
    CHECK_FALSE(pi_lambda_keeps(-2, 2));
    CHECK(pi_lambda_keeps(-3, 2));
    CHECK_FALSE(pi_lambda_keeps(1, 1));
}

TEST_CASE("twist constraint is enforced") {
    auto R = LoopRealization::build("A2_2");
    // x2 is odd: only odd lambda powers are allowed.
    CHECK_THROWS_AS(R->from_terms({{1, 0, Rational(1)}}), Error);
    CHECK_NOTHROW(R->from_terms({{1, 1, Rational(1)}}));
    CHECK_THROWS_WITH_AS(R->heisenberg(3), "Heisenberg index out of range", Error);
}

TEST_CASE("malformed tables are rejected") {
    auto dir = std::filesystem::temp_directory_path();
    auto path = dir / "dstau_bad_table.txt";
    {
        std::ofstream out(path);
        out << "type X\nfrobnicate 1\n";
    }
    CHECK_THROWS_WITH_AS(LoopRealization::from_file(path.string()), "unknown key 'frobnicate' in algebra table", Error);
    CHECK_THROWS_AS(LoopRealization::from_file((dir / "dstau_missing_table.txt").string()), Error);
    std::filesystem::remove(path);
}
