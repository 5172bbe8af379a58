#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "dstau/rational.hpp"

namespace dstau {

/// The jet variable u_{alpha,order}: the order-th x-derivative of the alpha-th
/// dependent variable. alpha is 1-based. Difference polynomials reuse the same
/// type with a possibly negative order (the shift index).
struct JetVar {
    int alpha = 1;
    int order = 0;
    auto operator<=>(const JetVar&) const = default;
};

struct Factor {
    JetVar var;
    int exp = 1;
    bool operator==(const Factor&) const = default;
};

/// Finite product of jet variables with positive exponents, kept sorted by
/// (alpha, order). The empty monomial is 1.
class Monomial {
public:
    using Factors = boost::container::small_vector<Factor, 4>;
    Monomial() = default;
    static Monomial of(JetVar v, int exp = 1);

    const Factors& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }

    /// Differential degree: sum of order * exponent.
    int degree() const;
    /// Polynomial degree: sum of exponents.
    int total_degree() const;
    int exponent(JetVar v) const;

    Monomial operator*(const Monomial& other) const;
    /// Divides by v^k; requires exponent(v) >= k.
    Monomial divided(JetVar v, int k = 1) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

private:
    explicit Monomial(Factors f) : factors_(std::move(f)) {}
    Factors factors_;
};

/// Exact sparse polynomial in jet variables with rational coefficients.
/// Zero coefficients are never stored, so the zero polynomial is the empty map
/// and structural equality is mathematical equality.
class DiffPoly {
public:
    using TermMap = std::map<Monomial, Rational>;

    DiffPoly() = default;
    DiffPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
    DiffPoly(long c) : DiffPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)

    /// u_{alpha,order}, order >= 0.
    static DiffPoly jet(int alpha, int order = 0);
    /// Variable with an arbitrary integer order (difference polynomials).
    static DiffPoly variable(int alpha, int order);
    static DiffPoly monomial(const Monomial& m, const Rational& c = Rational(1));

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    bool is_constant() const;
    Rational constant_term() const;
    Rational coefficient(const Monomial& m) const;

    /// Accumulates c*m into the polynomial.
    void add_term(const Monomial& m, const Rational& c);

    DiffPoly& operator+=(const DiffPoly& o);
    DiffPoly& operator-=(const DiffPoly& o);
    DiffPoly& operator*=(const DiffPoly& o);
    DiffPoly& operator*=(const Rational& c);
    /// this += c * p, without a temporary.
    void add_scaled(const DiffPoly& p, const Rational& c);
    void add_product(const DiffPoly& a, const DiffPoly& b, const Rational& c = Rational(1));

    friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
    friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
    friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
    friend DiffPoly operator*(DiffPoly a, const Rational& c) { return a *= c; }
    friend DiffPoly operator*(const Rational& c, DiffPoly a) { return a *= c; }
    DiffPoly operator-() const;

    friend bool operator==(const DiffPoly& a, const DiffPoly& b) { return a.terms_ == b.terms_; }

    int max_alpha() const;
    /// Largest jet order present; -1 for constants.
    int max_order() const;
    /// Smallest order present (may be negative for difference polynomials); 0 for constants.
    int min_order() const;
    std::set<JetVar> variables() const;

private:
    TermMap terms_;
};

DiffPoly pow(const DiffPoly& p, int exponent);

/// The total derivative sum_{alpha,m} u_{alpha,m+1} d/du_{alpha,m}.
DiffPoly total_derivative(const DiffPoly& p);
DiffPoly total_derivative(const DiffPoly& p, int times);
DiffPoly partial_derivative(const DiffPoly& p, JetVar v);

/// Differential degree data: deg u_{alpha,m} = m, coefficients degree 0.
struct DegreeInfo {
    bool homogeneous = true;
    int degree = 0;             // valid when homogeneous
    std::vector<int> degrees;   // sorted distinct per-monomial degrees
};
/// Throws Error("degree undefined") for the zero polynomial.
DegreeInfo degree(const DiffPoly& p);
DiffPoly homogeneous_part(const DiffPoly& p, int deg);

/// Adds steps to the order of every variable (the shift automorphism on
/// difference polynomials).
DiffPoly shift_orders(const DiffPoly& p, int steps);

/// Drops every monomial containing a jet of order > max_order.
DiffPoly truncate_jets(const DiffPoly& p, int max_order);

/// Ring homomorphism determined by images of the variables present in p.
DiffPoly substitute(const DiffPoly& p, const std::function<DiffPoly(JetVar)>& image);

/// Differential substitution u_{alpha,m} -> d^m(images[alpha-1]), with the total
/// derivative taken in the target ring. Derivatives are cached per instance.
class JetSubstitution {
public:
    explicit JetSubstitution(std::vector<DiffPoly> images);
    const DiffPoly& image(JetVar v);
    DiffPoly operator()(const DiffPoly& p);
    std::size_t arity() const { return images_.size(); }

private:
    std::vector<std::vector<DiffPoly>> images_;  // images_[alpha-1][m]
};

/// Naming used by the text renderer: arity 1 gives "u", otherwise "u1", "u2", ...
/// Jets append "_x", "_xx", ...; negative orders (shifts) render as "u(-1)".
struct VariableNames {
    std::string base = "u";
    int arity = 1;
    std::string name(JetVar v) const;
};
std::string to_string(const DiffPoly& p, const VariableNames& names = {});

}  // namespace dstau
