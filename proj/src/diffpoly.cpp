#include "dstau/diffpoly.hpp"

#include <algorithm>
#include <sstream>

namespace dstau {

// ---------------------------------------------------------------------------
// Monomial
// ---------------------------------------------------------------------------

Monomial Monomial::of(JetVar v, int exp) {
    if (exp <= 0) throw Error("monomial exponent must be positive");
    Factors f;
    f.push_back(Factor{v, exp});
    return Monomial(std::move(f));
}

int Monomial::degree() const {
    int d = 0;
    for (const auto& f : factors_) d += f.var.order * f.exp;
    return d;
}

int Monomial::total_degree() const {
    int d = 0;
    for (const auto& f : factors_) d += f.exp;
    return d;
}

int Monomial::exponent(JetVar v) const {
    for (const auto& f : factors_)
        if (f.var == v) return f.exp;
    return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
    Factors out;
    out.reserve(factors_.size() + other.factors_.size());
    auto a = factors_.begin();
    auto b = other.factors_.begin();
    while (a != factors_.end() && b != other.factors_.end()) {
        if (a->var < b->var) {
            out.push_back(*a++);
        } else if (b->var < a->var) {
            out.push_back(*b++);
        } else {
            out.push_back(Factor{a->var, a->exp + b->exp});
            ++a;
            ++b;
        }
    }
    out.insert(out.end(), a, factors_.end());
    out.insert(out.end(), b, other.factors_.end());
    return Monomial(std::move(out));
}

Monomial Monomial::divided(JetVar v, int k) const {
    Factors out;
    out.reserve(factors_.size());
    bool found = false;
    for (const auto& f : factors_) {
        if (f.var == v) {
            found = true;
            if (f.exp < k) throw Error("monomial division with insufficient exponent");
            if (f.exp > k) out.push_back(Factor{v, f.exp - k});
        } else {
            out.push_back(f);
        }
    }
    if (!found && k > 0) throw Error("monomial division by absent variable");
    return Monomial(std::move(out));
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    const auto& fa = a.factors_;
    const auto& fb = b.factors_;
    std::size_t n = std::min(fa.size(), fb.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = fa[i].var <=> fb[i].var; c != 0) return c;
        // Higher exponent first.
        if (auto c = fb[i].exp <=> fa[i].exp; c != 0) return c;
    }
    return fa.size() <=> fb.size();
}

// ---------------------------------------------------------------------------
// DiffPoly
// ---------------------------------------------------------------------------

DiffPoly::DiffPoly(const Rational& c) {
    if (!c.is_zero()) terms_.emplace(Monomial(), c);
}

DiffPoly DiffPoly::jet(int alpha, int order) {
    if (alpha < 1) throw Error("jet variable component index must be >= 1");
    if (order < 0) throw Error("jet variable order must be >= 0");
    return variable(alpha, order);
}

DiffPoly DiffPoly::variable(int alpha, int order) {
    DiffPoly p;
    p.terms_.emplace(Monomial::of(JetVar{alpha, order}), Rational(1));
    return p;
}

DiffPoly DiffPoly::monomial(const Monomial& m, const Rational& c) {
    DiffPoly p;
    p.add_term(m, c);
    return p;
}

bool DiffPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational DiffPoly::constant_term() const { return coefficient(Monomial()); }

Rational DiffPoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void DiffPoly::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

void DiffPoly::add_scaled(const DiffPoly& p, const Rational& c) {
    if (c.is_zero()) return;
    for (const auto& [m, a] : p.terms_) add_term(m, a * c);
}

void DiffPoly::add_product(const DiffPoly& a, const DiffPoly& b, const Rational& c) {
    if (c.is_zero()) return;
    for (const auto& [ma, ca] : a.terms_) {
        Rational cac = ca * c;
        for (const auto& [mb, cb] : b.terms_) add_term(ma * mb, cac * cb);
    }
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
    DiffPoly r;
    r.add_product(a, b);
    return r;
}

DiffPoly& DiffPoly::operator*=(const DiffPoly& o) {
    *this = *this * o;
    return *this;
}

DiffPoly& DiffPoly::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, a] : terms_) a *= c;
    return *this;
}

DiffPoly DiffPoly::operator-() const {
    DiffPoly r = *this;
    for (auto& [m, a] : r.terms_) a = -a;
    return r;
}

int DiffPoly::max_alpha() const {
    int a = 0;
    for (const auto& [m, c] : terms_)
        for (const auto& f : m.factors()) a = std::max(a, f.var.alpha);
    return a;
}

int DiffPoly::max_order() const {
    int o = -1;
    for (const auto& [m, c] : terms_)
        for (const auto& f : m.factors()) o = std::max(o, f.var.order);
    return o;
}

int DiffPoly::min_order() const {
    int o = 0;
    bool any = false;
    for (const auto& [m, c] : terms_)
        for (const auto& f : m.factors()) {
            o = any ? std::min(o, f.var.order) : f.var.order;
            any = true;
        }
    return o;
}

std::set<JetVar> DiffPoly::variables() const {
    std::set<JetVar> vs;
    for (const auto& [m, c] : terms_)
        for (const auto& f : m.factors()) vs.insert(f.var);
    return vs;
}

DiffPoly pow(const DiffPoly& p, int exponent) {
    if (exponent < 0) throw Error("negative power of a polynomial");
    DiffPoly r(1);
    DiffPoly b = p;
    while (exponent > 0) {
        if (exponent & 1) r = r * b;
        exponent >>= 1;
        if (exponent > 0) b = b * b;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Differential structure
// ---------------------------------------------------------------------------

DiffPoly total_derivative(const DiffPoly& p) {
    DiffPoly r;
    for (const auto& [m, c] : p.terms()) {
        for (const auto& f : m.factors()) {
            JetVar next{f.var.alpha, f.var.order + 1};
            Monomial term = m.divided(f.var) * Monomial::of(next);
            r.add_term(term, c * Rational(f.exp));
        }
    }
    return r;
}

DiffPoly total_derivative(const DiffPoly& p, int times) {
    DiffPoly r = p;
    for (int i = 0; i < times; ++i) r = total_derivative(r);
    return r;
}

DiffPoly partial_derivative(const DiffPoly& p, JetVar v) {
    DiffPoly r;
    for (const auto& [m, c] : p.terms()) {
        int e = m.exponent(v);
        if (e == 0) continue;
        r.add_term(m.divided(v), c * Rational(e));
    }
    return r;
}

DegreeInfo degree(const DiffPoly& p) {
    if (p.is_zero()) throw Error("degree undefined");
    std::set<int> ds;
    for (const auto& [m, c] : p.terms()) ds.insert(m.degree());
    DegreeInfo info;
    info.degrees.assign(ds.begin(), ds.end());
    info.homogeneous = ds.size() == 1;
    info.degree = info.degrees.front();
    return info;
}

DiffPoly homogeneous_part(const DiffPoly& p, int deg) {
    DiffPoly r;
    for (const auto& [m, c] : p.terms())
        if (m.degree() == deg) r.add_term(m, c);
    return r;
}

DiffPoly shift_orders(const DiffPoly& p, int steps) {
    if (steps == 0) return p;
    return substitute(p, [steps](JetVar v) { return DiffPoly::variable(v.alpha, v.order + steps); });
}

DiffPoly truncate_jets(const DiffPoly& p, int max_order) {
    DiffPoly r;
    for (const auto& [m, c] : p.terms()) {
        bool keep = std::all_of(m.factors().begin(), m.factors().end(),
                                [&](const Factor& f) { return f.var.order <= max_order; });
        if (keep) r.add_term(m, c);
    }
    return r;
}

DiffPoly substitute(const DiffPoly& p, const std::function<DiffPoly(JetVar)>& image) {
    std::map<JetVar, std::vector<DiffPoly>> powers;  // powers[v][k] = image(v)^(k+1)
    auto power_of = [&](JetVar v, int e) -> const DiffPoly& {
        auto& list = powers[v];
        if (list.empty()) list.push_back(image(v));
        while (static_cast<int>(list.size()) < e) list.push_back(list.back() * list.front());
        return list[static_cast<std::size_t>(e - 1)];
    };
    DiffPoly r;
    for (const auto& [m, c] : p.terms()) {
        DiffPoly term(c);
        for (const auto& f : m.factors()) {
            term = term * power_of(f.var, f.exp);
            if (term.is_zero()) break;
        }
        r += term;
    }
    return r;
}

JetSubstitution::JetSubstitution(std::vector<DiffPoly> images) {
    images_.reserve(images.size());
    for (auto& g : images) images_.push_back({std::move(g)});
}

const DiffPoly& JetSubstitution::image(JetVar v) {
    if (v.alpha < 1 || v.alpha > static_cast<int>(images_.size()))
        throw Error("jet substitution: component index " + std::to_string(v.alpha) +
                    " outside arity " + std::to_string(images_.size()));
    if (v.order < 0) throw Error("jet substitution: negative jet order");
    auto& list = images_[static_cast<std::size_t>(v.alpha - 1)];
    while (static_cast<int>(list.size()) <= v.order) list.push_back(total_derivative(list.back()));
    return list[static_cast<std::size_t>(v.order)];
}

DiffPoly JetSubstitution::operator()(const DiffPoly& p) {
    return substitute(p, [this](JetVar v) { return image(v); });
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

std::string VariableNames::name(JetVar v) const {
    std::string s = base;
    if (arity > 1) s += std::to_string(v.alpha);
    if (v.order > 0) s += "_" + std::string(static_cast<std::size_t>(v.order), 'x');
    if (v.order < 0) s += "(" + std::to_string(v.order) + ")";
    return s;
}

std::string to_string(const DiffPoly& p, const VariableNames& names) {
    if (p.is_zero()) return "0";
    // Render higher-degree monomials first for readability; ties by canonical order.
    std::vector<std::pair<Monomial, Rational>> ts(p.terms().begin(), p.terms().end());
    std::stable_sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
        return a.first.degree() < b.first.degree();
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : ts) {
        Rational mag = c.sign() < 0 ? -c : c;
        if (first) {
            if (c.sign() < 0) os << "-";
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        first = false;
        bool need_coeff = !mag.is_one() || m.is_one();
        if (need_coeff) os << mag.str();
        bool first_factor = !need_coeff;
        for (const auto& f : m.factors()) {
            if (!first_factor) os << "*";
            first_factor = false;
            os << names.name(f.var);
            if (f.exp > 1) os << "^" << f.exp;
        }
    }
    return os.str();
}

}  // namespace dstau
