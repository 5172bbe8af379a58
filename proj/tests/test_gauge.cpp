#include "doctest.h"

#include "generators.hpp"

#include "dstau/gauge.hpp"

using namespace dstau;

namespace {

// Square matrices of differential polynomials: an independent realization of
// the untwisted algebras used to cross-check gauge transformations.
struct Mat {
    int n;
    std::vector<DiffPoly> a;
    explicit Mat(int n_) : n(n_), a(static_cast<std::size_t>(n_ * n_)) {}
    DiffPoly& at(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
    const DiffPoly& at(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }
};

Mat operator*(const Mat& x, const Mat& y) {
    Mat z(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j)
            for (int k = 0; k < x.n; ++k) z.at(i, j).add_product(x.at(i, k), y.at(k, j));
    return z;
}

Mat operator+(Mat x, const Mat& y) {
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] += y.a[i];
    return x;
}

Mat scaled(Mat x, const Rational& c) {
    for (auto& e : x.a) e *= c;
    return x;
}

Mat deriv(Mat x) {
    for (auto& e : x.a) e = total_derivative(e);
    return x;
}

Mat identity(int n) {
    Mat m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = DiffPoly(1);
    return m;
}

// Basis matrices in the order of the tables: (row, col, coeff) lists.
using Entries = std::vector<std::tuple<int, int, int>>;
std::vector<Entries> basis_matrices(const std::string& type) {
    if (type == "A1_1") return {{{0, 1, 1}}, {{0, 0, 1}, {1, 1, -1}}, {{1, 0, 1}}};
    return {{{0, 1, 1}}, {{1, 2, 1}}, {{0, 2, 1}}, {{0, 0, 1}, {1, 1, -1}},
            {{1, 1, 1}, {2, 2, -1}}, {{1, 0, 1}}, {{2, 1, 1}}, {{2, 0, 1}}};
}

Mat to_mat(const std::string& type, const Vec& v) {
    auto basis = basis_matrices(type);
    int n = type == "A1_1" ? 2 : 3;
    Mat m(n);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (auto [r, c, s] : basis[i]) m.at(r, c).add_scaled(v[i], Rational(s));
    return m;
}

// exp of a nilpotent matrix.
Mat exp_nilpotent(const Mat& s) {
    Mat out = identity(s.n), term = identity(s.n);
    for (int k = 1; k < s.n; ++k) {
        term = scaled(term * s, Rational(1, k));
        out = out + term;
    }
    return out;
}

DiffPoly q(int j, int m = 0) { return DiffPoly::jet(j, m); }

DiffPoly f_image(const DiffPoly& p, const GaugeFrame& frame) { return p + gauge_defect(p, frame); }

}  // namespace

TEST_CASE("gauge transformation agrees with matrix conjugation") {
    for (std::string type : {"A1_1", "A2_1"}) {
        CAPTURE(type);
        GaugeFrame frame(LoopRealization::build(type));
        const auto& R = *frame.realization();
        LaxOperator L = frame.generic_lax();
        LoopElement S = frame.generic_S();
        LoopElement image = gauge_transform(L, S);

        // g (d + e + q) g^{-1} = d + g (e + q) g^{-1} - g_x g^{-1}; the lambda part commutes with n.
        Vec s0 = R.lambda_coefficient(S, 0);
        Mat s = to_mat(type, s0);
        Mat g = exp_nilpotent(s), ginv = exp_nilpotent(scaled(s, Rational(-1)));
        Mat a = to_mat(type, R.e()) + to_mat(type, R.lambda_coefficient(L.q, 0));
        Mat want = g * a * ginv + scaled(deriv(g) * ginv, Rational(-1)) + scaled(to_mat(type, R.e()), Rational(-1));
        Mat got = to_mat(type, R.lambda_coefficient(image, 0));
        CHECK(got.a == want.a);
        for (int k : {-1, 1, 2}) CHECK(to_mat(type, R.lambda_coefficient(image, k)).a == Mat(got.n).a);
    }
}

TEST_CASE("canonical form on A_1^(1) matches the hand reduction") {
    // q = q1 F/2 + q2 H: conjugation by [[1,0],[s,1]] with s = q2 leaves c + a^2 - a_x, c = q1/2, a = q2.
    GaugeFrame frame(LoopRealization::build("A1_1"));
    CanonicalForm cf = canonical_form(frame.generic_lax(), frame);
    REQUIRE(cf.u.size() == 1);
    CHECK(cf.u[0] == q(1) + Rational(2) * q(2) * q(2) - Rational(2) * q(2, 1));
}

TEST_CASE("invariants are invariant and the q coordinates are not") {
    for (std::string type : {"A1_1", "A2_1", "A2_2"}) {
        CAPTURE(type);
        GaugeFrame frame(LoopRealization::build(type));
        InvariantRewriter rw(frame);
        for (const auto& u : rw.u()) CHECK(gauge_invariance_check(u, frame));
        CHECK_FALSE(gauge_invariance_check(q(1), frame));
        CHECK_FALSE(gauge_invariance_check(q(frame.rank() + 1), frame));
        // Q_can lies in V and S_can in n.
        CHECK(static_cast<int>(rw.u().size()) == frame.rank());
    }
}

TEST_CASE("rewriting invariants in u-jets") {
    GaugeFrame frame(LoopRealization::build("A2_1"));
    InvariantRewriter rw(frame);
    DiffPoly u1 = rw.u()[0], u2 = rw.u()[1];
    DiffPoly w = u1 * total_derivative(u2) + Rational(3) * u1 * u1;
    DiffPoly want = DiffPoly::jet(1) * DiffPoly::jet(2, 1) + Rational(3) * DiffPoly::jet(1) * DiffPoly::jet(1);
    CHECK(rw.rewrite(w) == want);
    CHECK(rw.pull_back(want) == w);
    CHECK_THROWS_WITH_AS(rw.rewrite(q(3)), "not a gauge invariant", Error);
}

TEST_CASE("the gauge action is a differential ring homomorphism") {
    gen::Engine g(31);
    for (std::string type : {"A1_1", "A2_2", "A2_1"}) {
        CAPTURE(type);
        GaugeFrame frame(LoopRealization::build(type));
        int reps = type == "A2_1" ? 4 : 15;
        for (int i = 0; i < reps; ++i) {
            DiffPoly a = gen::poly(g, {frame.dim_b(), 0, 1, 3, 2});
            DiffPoly b = gen::poly(g, {frame.dim_b(), 0, 1, 3, 2});
            CHECK(f_image(total_derivative(a), frame) == total_derivative(f_image(a, frame)));
            CHECK(f_image(a * b, frame) == f_image(a, frame) * f_image(b, frame));
        }
    }
}

TEST_CASE("gauge frame structure") {
    GaugeFrame frame(LoopRealization::build("A2_1"));
    CHECK(frame.rank() == 2);
    CHECK(frame.dim_b() == 5);
    CHECK(frame.dim_n() == 3);
    CHECK(frame.v_degree(1) == -1);
    CHECK(frame.v_degree(2) == -2);
    gen::Engine g(32);
    for (int i = 0; i < 20; ++i) {
        std::vector<DiffPoly> c;
        for (int j = 0; j < frame.dim_b(); ++j) c.push_back(DiffPoly(gen::rational(g)));
        CHECK(frame.coordinates(frame.combine(c)) == c);
    }
    CHECK_NOTHROW(GaugeFrame(LoopRealization::build("A2_1"), "alt"));
    CHECK_THROWS_AS(GaugeFrame(LoopRealization::build("A2_1"), "nosuch"), Error);
}
