#pragma once

#include <functional>
#include <map>
#include <vector>

#include "dstau/diffpoly.hpp"

namespace dstau {

/// Truncated series a^[0] + eps a^[1] + ... + eps^K a^[K] with differential
/// polynomial coefficients. Arithmetic is exact modulo eps^{K+1}; the result of a
/// binary operation carries the smaller of the two truncation orders.
///
/// Elements of the completed algebra have a^[q] homogeneous of differential
/// degree q; intermediate values need not be, see is_graded().
class EpsSeries {
public:
    EpsSeries() : EpsSeries(0) {}
    explicit EpsSeries(int truncation_order);
    EpsSeries(const DiffPoly& leading, int truncation_order);
    /// Components beyond truncation_order are rejected.
    static EpsSeries from_components(std::vector<DiffPoly> components, int truncation_order);
    /// Validated constructor for elements of the completion: throws unless
    /// component q is homogeneous of degree q.
    static EpsSeries graded(std::vector<DiffPoly> components, int truncation_order);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const DiffPoly& operator[](int q) const;
    const std::vector<DiffPoly>& components() const { return c_; }
    void set(int q, DiffPoly value);
    void add_to(int q, const DiffPoly& value);

    bool is_zero() const;
    bool is_graded() const;
    int max_alpha() const;
    int max_order() const;

    EpsSeries truncated(int order) const;

    EpsSeries& operator+=(const EpsSeries& o);
    EpsSeries& operator-=(const EpsSeries& o);
    EpsSeries& operator*=(const Rational& c);
    friend EpsSeries operator+(EpsSeries a, const EpsSeries& b) { return a += b; }
    friend EpsSeries operator-(EpsSeries a, const EpsSeries& b) { return a -= b; }
    friend EpsSeries operator*(const EpsSeries& a, const EpsSeries& b);
    friend EpsSeries operator*(EpsSeries a, const Rational& c) { return a *= c; }
    EpsSeries operator-() const;

    friend bool operator==(const EpsSeries& a, const EpsSeries& b) { return a.c_ == b.c_; }

private:
    std::vector<DiffPoly> c_;
};

bool is_zero(const EpsSeries& p);

/// Total derivative, acting componentwise (d(eps) = 0).
EpsSeries total_derivative(const EpsSeries& p);
EpsSeries partial_derivative(const EpsSeries& p, JetVar v);

/// Places the degree-q part of p at eps^q, dropping degrees above K. This is the
/// bridge from eps-free objects to elements of the completion.
EpsSeries regrade(const DiffPoly& p, int truncation_order);
/// Sets eps = 1: the sum of all components.
DiffPoly flatten(const EpsSeries& p);

EpsSeries truncate_jets(const EpsSeries& p, int max_order);
EpsSeries shift_orders(const EpsSeries& p, int steps);

/// Ring homomorphism on series, fixed by the images of the variables; the eps
/// powers of the argument and of the images add. Images are cached.
class EpsSubstitution {
public:
    using ImageFn = std::function<EpsSeries(JetVar)>;
    EpsSubstitution(ImageFn image, int truncation_order);

    /// u_{alpha,m} -> d^m(images[alpha-1]).
    static EpsSubstitution differential(std::vector<EpsSeries> images, int truncation_order);
    /// u_{alpha,m} -> S^m(images[alpha-1]) for m in Z (difference polynomials).
    static EpsSubstitution shift(std::vector<EpsSeries> images, int truncation_order);

    const EpsSeries& image(JetVar v);
    EpsSeries operator()(const EpsSeries& p);
    EpsSeries operator()(const DiffPoly& p);
    int order() const { return order_; }

private:
    EpsSeries substitute_poly(const DiffPoly& p, int shift);
    ImageFn fn_;
    std::map<JetVar, EpsSeries> cache_;
    int order_;
};

/// Admissible derivation D_W: sum_{alpha,m} d^m(W_alpha) d/du_{alpha,m}, stored by
/// its characteristic W = (D(u_1), ..., D(u_l)).
class Derivation {
public:
    Derivation() = default;
    explicit Derivation(std::vector<EpsSeries> characteristic);
    /// Characteristic given eps-free; every value is placed at eps^0.
    static Derivation from_polys(const std::vector<DiffPoly>& characteristic, int truncation_order = 0);
    /// The total derivative, characteristic (u_{1,1}, ..., u_{l,1}).
    static Derivation total(int arity, int truncation_order = 0);
    static Derivation zero(int arity, int truncation_order = 0);

    int arity() const { return static_cast<int>(w_.size()); }
    int order() const;
    const std::vector<EpsSeries>& characteristic() const { return w_; }
    const EpsSeries& operator[](int alpha) const { return w_.at(static_cast<std::size_t>(alpha - 1)); }
    bool is_zero() const;

    EpsSeries apply(const EpsSeries& p) const;
    /// eps-free application; only meaningful for order-0 derivations.
    DiffPoly apply(const DiffPoly& p) const;

    Derivation& operator+=(const Derivation& o);
    Derivation& operator*=(const Rational& c);
    friend Derivation operator+(Derivation a, const Derivation& b) { return a += b; }
    friend Derivation operator*(Derivation a, const Rational& c) { return a *= c; }
    friend bool operator==(const Derivation&, const Derivation&) = default;

private:
    std::vector<EpsSeries> w_;
};

EpsSeries apply_derivation(const Derivation& d, const EpsSeries& p);
/// Characteristic of [D1, D2] is (D1(W2_alpha) - D2(W1_alpha))_alpha.
Derivation commutator(const Derivation& d1, const Derivation& d2);

}  // namespace dstau
