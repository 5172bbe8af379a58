#include "dstau/formal_solution.hpp"

#include <algorithm>
#include <sstream>

#include "dstau/series.hpp"

namespace dstau {

namespace {

using Poly = RatFunc::Poly;

void trim(Poly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly add(const Poly& a, const Poly& b, const Rational& sb = Rational(1)) {
    Poly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i] * sb;
    trim(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

Poly scale(Poly a, const Rational& c) {
    for (auto& x : a) x *= c;
    trim(a);
    return a;
}

// a = q b + r.
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    if (b.empty()) throw Error("polynomial division by zero");
    Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
    while (a.size() >= b.size() && !a.empty()) {
        std::size_t shift = a.size() - b.size();
        Rational c = a.back() / b.back();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
        trim(a);
    }
    trim(q);
    return {q, a};
}

Poly monic_gcd(Poly a, Poly b) {
    while (!b.empty()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.empty()) return {Rational(1)};
    return scale(a, Rational(1) / a.back());
}

Rational eval(const Poly& p, const Rational& x0) {
    Rational v(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x0 + *it;
    return v;
}

Poly poly_derivative(const Poly& p) {
    Poly r;
    for (std::size_t i = 1; i < p.size(); ++i) r.push_back(p[i] * Rational(static_cast<long>(i)));
    trim(r);
    return r;
}

std::string poly_str(const Poly& p) {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = p.size(); i-- > 0;) {
        const Rational& c = p[i];
        if (c.is_zero()) continue;
        Rational mag = c.sign() < 0 ? -c : c;
        if (first) {
            if (c.sign() < 0) os << "-";
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        first = false;
        bool coeff = !mag.is_one() || i == 0;
        if (coeff) os << mag.str();
        if (i > 0) os << (coeff ? "*" : "") << "x" << (i > 1 ? "^" + std::to_string(i) : "");
    }
    return os.str();
}

Rational multinomial(const TimeSeries::Index& a, const TimeSeries::Index& b) {
    Rational c(1);
    for (std::size_t i = 0; i < a.size(); ++i) c *= binomial(a[i] + b[i], a[i]);
    return c;
}

int total(const TimeSeries::Index& n) {
    int s = 0;
    for (int x : n) s += x;
    return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// RatFunc
// ---------------------------------------------------------------------------

RatFunc::RatFunc(const Rational& c) {
    if (!c.is_zero()) num_ = {c};
}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    trim(num_);
    trim(den_);
    if (den_.empty()) throw Error("rational function with zero denominator");
    normalize();
}

RatFunc RatFunc::x() { return RatFunc(Poly{Rational(0), Rational(1)}, Poly{Rational(1)}); }

void RatFunc::normalize() {
    if (num_.empty()) {
        den_ = {Rational(1)};
        return;
    }
    Poly g = monic_gcd(num_, den_);
    if (g.size() > 1) {
        num_ = divmod(num_, g).first;
        den_ = divmod(den_, g).first;
    }
    Rational lead = den_.back();
    if (!lead.is_one()) {
        num_ = scale(num_, Rational(1) / lead);
        den_ = scale(den_, Rational(1) / lead);
    }
}

bool RatFunc::has_pole_at(const Rational& x0) const { return eval(den_, x0).is_zero(); }

Rational RatFunc::at(const Rational& x0) const {
    if (has_pole_at(x0)) throw Error("rational function has a pole at x = " + x0.str());
    return eval(num_, x0) / eval(den_, x0);
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
    if (den_ == o.den_) {
        num_ = add(num_, o.num_);
    } else {
        num_ = add(mul(num_, o.den_), mul(o.num_, den_));
        den_ = mul(den_, o.den_);
    }
    normalize();
    return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
    num_ = mul(num_, o.num_);
    den_ = mul(den_, o.den_);
    normalize();
    return *this;
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = scale(r.num_, Rational(-1));
    return r;
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw Error("inverse of the zero rational function");
    return RatFunc(den_, num_);
}

std::string RatFunc::str() const {
    if (den_.size() == 1) return poly_str(num_);
    return "(" + poly_str(num_) + ")/(" + poly_str(den_) + ")";
}

RatFunc derivative(const RatFunc& f) {
    const Poly& n = f.numerator();
    const Poly& d = f.denominator();
    return RatFunc(add(mul(poly_derivative(n), d), mul(n, poly_derivative(d)), Rational(-1)), mul(d, d));
}

RatFunc pow(const RatFunc& f, int e) {
    if (e < 0) return pow(f.inverse(), -e);
    RatFunc r(Rational(1));
    for (int i = 0; i < e; ++i) r *= f;
    return r;
}

// ---------------------------------------------------------------------------
// TimeSeries
// ---------------------------------------------------------------------------

TimeSeries::TimeSeries(int n_times, int degree) : n_(n_times), T_(degree) {
    if (n_times < 0 || degree < 0) throw Error("invalid time series shape");
}

TimeSeries TimeSeries::constant(int n_times, int degree, const RatFunc& c) {
    TimeSeries s(n_times, degree);
    s.set(Index(static_cast<std::size_t>(n_times), 0), c);
    return s;
}

RatFunc TimeSeries::coefficient(const Index& n) const {
    if (static_cast<int>(n.size()) != n_ || total(n) > T_) throw Error("time index outside the series");
    auto it = c_.find(n);
    return it == c_.end() ? RatFunc() : it->second;
}

void TimeSeries::set(const Index& n, RatFunc v) {
    if (static_cast<int>(n.size()) != n_ || total(n) > T_) throw Error("time index outside the series");
    if (v.is_zero()) {
        c_.erase(n);
    } else {
        c_[n] = std::move(v);
    }
}

TimeSeries& TimeSeries::operator+=(const TimeSeries& o) {
    if (o.n_ != n_) throw Error("time series with different numbers of times");
    T_ = std::min(T_, o.T_);
    for (const auto& [n, v] : o.c_)
        if (total(n) <= T_) set(n, coefficient(n) + v);
    for (auto it = c_.begin(); it != c_.end();) it = total(it->first) > T_ ? c_.erase(it) : std::next(it);
    return *this;
}

TimeSeries operator*(const TimeSeries& a, const TimeSeries& b) {
    if (a.n_ != b.n_) throw Error("time series with different numbers of times");
    TimeSeries r(a.n_, std::min(a.T_, b.T_));
    for (const auto& [i, x] : a.c_)
        for (const auto& [j, y] : b.c_) {
            if (total(i) + total(j) > r.T_) continue;
            TimeSeries::Index k(i.size());
            for (std::size_t t = 0; t < i.size(); ++t) k[t] = i[t] + j[t];
            r.set(k, r.coefficient(k) + x * y * RatFunc(multinomial(i, j)));
        }
    return r;
}

TimeSeries TimeSeries::scaled(const Rational& c) const {
    TimeSeries r(n_, T_);
    for (const auto& [n, v] : c_) r.set(n, v * RatFunc(c));
    return r;
}

TimeSeries TimeSeries::x_derivative() const {
    TimeSeries r(n_, T_);
    for (const auto& [n, v] : c_) r.set(n, derivative(v));
    return r;
}

TimeSeries TimeSeries::t_derivative(int i) const {
    if (T_ == 0) throw Error("truncation mismatch: t-derivative of a degree-0 series");
    TimeSeries r(n_, T_ - 1);
    for (const auto& [n, v] : c_) {
        if (n[static_cast<std::size_t>(i)] == 0) continue;
        Index m = n;
        --m[static_cast<std::size_t>(i)];
        r.set(m, v);
    }
    return r;
}

TimeSeries TimeSeries::truncated(int degree) const {
    TimeSeries r(n_, std::min(degree, T_));
    for (const auto& [n, v] : c_)
        if (total(n) <= r.T_) r.set(n, v);
    return r;
}

std::vector<TimeSeries::Index> indices_of_degree(int n, int d) {
    std::vector<TimeSeries::Index> out;
    if (n == 0) {
        if (d == 0) out.emplace_back();
        return out;
    }
    for (int first = d; first >= 0; --first)
        for (auto rest : indices_of_degree(n - 1, d - first)) {
            rest.insert(rest.begin(), first);
            out.push_back(std::move(rest));
        }
    return out;
}

TimeSeries evaluate(const DiffPoly& p, const std::vector<TimeSeries>& u) {
    if (u.empty()) throw Error("evaluation along an empty solution");
    int n = u.front().n_times();
    int T = u.front().degree();
    for (const auto& s : u) T = std::min(T, s.degree());
    if (p.max_alpha() > static_cast<int>(u.size())) throw Error("arity mismatch in evaluation");
    std::map<JetVar, std::vector<TimeSeries>> powers;
    std::vector<std::vector<TimeSeries>> jets(u.size());
    auto jet = [&](JetVar v) -> const TimeSeries& {
        auto& list = jets[static_cast<std::size_t>(v.alpha - 1)];
        if (list.empty()) list.push_back(u[static_cast<std::size_t>(v.alpha - 1)].truncated(T));
        while (static_cast<int>(list.size()) <= v.order) list.push_back(list.back().x_derivative());
        return list[static_cast<std::size_t>(v.order)];
    };
    TimeSeries out(n, T);
    for (const auto& [m, c] : p.terms()) {
        TimeSeries term = TimeSeries::constant(n, T, RatFunc(c));
        for (const auto& f : m.factors()) {
            auto& list = powers[f.var];
            if (list.empty()) list.push_back(jet(f.var));
            while (static_cast<int>(list.size()) < f.exp) list.push_back(list.back() * list.front());
            term = term * list[static_cast<std::size_t>(f.exp - 1)];
        }
        out += term;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Formal solutions
// ---------------------------------------------------------------------------

FormalSolution integrate_formal(const std::map<FlowLabel, std::vector<DiffPoly>>& flows,
                                const std::vector<RatFunc>& initial, int t_degree) {
    if (t_degree < 0) throw Error("negative t-degree");
    if (initial.empty()) throw Error("empty initial data");
    for (const auto& f : initial)
        if (f.has_pole_at(Rational(0))) throw Error("initial data has a pole at the expansion point x = 0");
    FormalSolution sol;
    sol.t_degree = t_degree;
    sol.initial = initial;
    std::vector<Derivation> ders;
    for (const auto& [label, W] : flows) {
        if (W.size() != initial.size()) throw Error("arity mismatch between flow " + to_string(label) + " and initial data");
        sol.flows.push_back(label);
        ders.push_back(Derivation::from_polys(W));
    }
    for (std::size_t i = 0; i < ders.size(); ++i)
        for (std::size_t j = i + 1; j < ders.size(); ++j)
            if (!commutator(ders[i], ders[j]).is_zero())
                throw Error("flows " + to_string(sol.flows[i]) + " and " + to_string(sol.flows[j]) + " do not commute");
    int n = static_cast<int>(sol.flows.size());
    for (const auto& f : initial) sol.u.push_back(TimeSeries::constant(n, t_degree, f));
    std::vector<std::map<TimeSeries::Index, bool>> known(initial.size());
    for (int d = 0; d < t_degree; ++d) {
        std::vector<TimeSeries> ud;
        for (const auto& s : sol.u) ud.push_back(s.truncated(d));
        for (int i = 0; i < n; ++i) {
            const auto& W = flows.at(sol.flows[static_cast<std::size_t>(i)]);
            for (std::size_t a = 0; a < W.size(); ++a) {
                TimeSeries w = evaluate(W[a], ud);
                for (const auto& idx : indices_of_degree(n, d)) {
                    TimeSeries::Index m = idx;
                    ++m[static_cast<std::size_t>(i)];
                    RatFunc v = w.coefficient(idx);
                    if (known[a][m]) {
                        ++sol.consistency_checks;
                        if (!(sol.u[a].coefficient(m) == v)) ++sol.consistency_failures;
                    } else {
                        sol.u[a].set(m, v);
                        known[a][m] = true;
                    }
                }
            }
        }
    }
    return sol;
}

std::vector<RatFunc> gbgw_initial_data(const std::vector<int>& exponents, const std::vector<Rational>& C) {
    if (C.size() > exponents.size()) throw Error("more constants than exponents");
    std::vector<RatFunc> out;
    for (std::size_t a = 0; a < C.size(); ++a) {
        RatFunc one_minus_x(RatFunc::Poly{Rational(1), Rational(-1)}, RatFunc::Poly{Rational(1)});
        out.push_back(RatFunc(C[a]) * pow(one_minus_x, -(exponents[a] + 1)));
    }
    return out;
}

bool TwoPointTable::residual_zero() const {
    return std::all_of(cross_residuals.begin(), cross_residuals.end(),
                       [](const auto& kv) { return kv.second.coefficients().empty(); });
}

TwoPointTable two_point_functions(const FormalSolution& sol, const OmegaTable& omega) {
    TwoPointTable out;
    if (sol.u.empty()) throw Error("empty formal solution");
    for (const auto& s : sol.u)
        if (s.degree() != sol.t_degree) throw Error("truncation mismatch in formal solution");
    for (const auto& j : sol.flows) {
        auto it = omega.find(OmegaKey{1, 0, j.a, j.k});
        if (it == omega.end()) throw Error("Omega entry " + to_string(OmegaKey{1, 0, j.a, j.k}) + " missing");
        out.values.emplace(j, evaluate(it->second, sol.u));
    }
    if (sol.t_degree == 0) return out;
    for (std::size_t i = 0; i < sol.flows.size(); ++i)
        for (std::size_t j = i + 1; j < sol.flows.size(); ++j) {
            TimeSeries r = out.values.at(sol.flows[j]).t_derivative(static_cast<int>(i)) +
                           out.values.at(sol.flows[i]).t_derivative(static_cast<int>(j)).scaled(Rational(-1));
            out.cross_residuals.emplace(std::make_pair(sol.flows[i], sol.flows[j]), r);
        }
    return out;
}

}  // namespace dstau
