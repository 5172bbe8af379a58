#pragma once

#include <map>
#include <string>
#include <vector>

#include "dstau/labels.hpp"

namespace dstau {

/// Univariate rational function in x over Q, kept as num/den with den monic and
/// gcd(num, den) = 1. Polynomials are coefficient vectors, lowest degree first.
class RatFunc {
public:
    using Poly = std::vector<Rational>;

    RatFunc() = default;
    RatFunc(const Rational& c);  // NOLINT(google-explicit-constructor)
    RatFunc(Poly num, Poly den);
    static RatFunc x();

    const Poly& numerator() const { return num_; }
    const Poly& denominator() const { return den_; }
    bool is_zero() const { return num_.empty(); }
    /// Value at x = x0; throws when x0 is a pole.
    Rational at(const Rational& x0) const;
    bool has_pole_at(const Rational& x0) const;

    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    RatFunc operator-() const;
    RatFunc inverse() const;
    friend bool operator==(const RatFunc&, const RatFunc&) = default;

    std::string str() const;

private:
    void normalize();
    Poly num_;
    Poly den_{Rational(1)};
};

RatFunc derivative(const RatFunc& f);
RatFunc pow(const RatFunc& f, int e);

/// Truncated series in several times t_1..t_n with exponential normalization:
/// f = sum_n f_n t^n / n!, kept through total degree T.
class TimeSeries {
public:
    using Index = std::vector<int>;
    TimeSeries() = default;
    TimeSeries(int n_times, int degree);
    static TimeSeries constant(int n_times, int degree, const RatFunc& c);

    int n_times() const { return n_; }
    int degree() const { return T_; }
    const std::map<Index, RatFunc>& coefficients() const { return c_; }
    RatFunc coefficient(const Index& n) const;
    void set(const Index& n, RatFunc v);

    TimeSeries& operator+=(const TimeSeries& o);
    friend TimeSeries operator+(TimeSeries a, const TimeSeries& b) { return a += b; }
    friend TimeSeries operator*(const TimeSeries& a, const TimeSeries& b);
    TimeSeries scaled(const Rational& c) const;
    /// d/dx coefficientwise.
    TimeSeries x_derivative() const;
    /// d/dt_i; the result is known through degree T - 1.
    TimeSeries t_derivative(int i) const;
    TimeSeries truncated(int degree) const;

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
    int n_ = 0;
    int T_ = 0;
    std::map<Index, RatFunc> c_;
};

/// All multi-indices with n entries and total degree exactly d, largest first entry first.
std::vector<TimeSeries::Index> indices_of_degree(int n, int d);

/// Evaluates p along the solution components (u_{alpha,m} -> d_x^m u_alpha).
TimeSeries evaluate(const DiffPoly& p, const std::vector<TimeSeries>& u);

struct FormalSolution {
    std::vector<FlowLabel> flows;
    int t_degree = 0;
    std::vector<RatFunc> initial;
    /// Solution components as series in the times of flows, in that order.
    std::vector<TimeSeries> u;
    /// Coefficients reached along several flows, with the differences found (all zero).
    int consistency_checks = 0;
    int consistency_failures = 0;
};

/// u(x, 0) = initial, d u/d t_j = W_j(u). Refuses non-commuting flows and
/// initial data singular at x = 0.
FormalSolution integrate_formal(const std::map<FlowLabel, std::vector<DiffPoly>>& flows,
                                const std::vector<RatFunc>& initial, int t_degree);

/// C_alpha / (1 - x)^{m_alpha + 1}.
std::vector<RatFunc> gbgw_initial_data(const std::vector<int>& exponents, const std::vector<Rational>& C);

struct TwoPointTable {
    /// Omega_{(1,0);j} evaluated along the solution, per flow j of the solution.
    std::map<FlowLabel, TimeSeries> values;
    /// d_{t_i} Omega_{1;j} - d_{t_j} Omega_{1;i} through degree T - 1.
    std::map<std::pair<FlowLabel, FlowLabel>, TimeSeries> cross_residuals;
    bool residual_zero() const;
};

/// omega must hold Omega_{1,0;j} for every flow j of the solution.
TwoPointTable two_point_functions(const FormalSolution& sol, const OmegaTable& omega);

}  // namespace dstau
