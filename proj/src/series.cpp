#include "dstau/series.hpp"

#include <algorithm>
#include <map>
#include <memory>

namespace dstau {

namespace {

void check_order(int k) {
    if (k < 0) throw Error("truncation order must be >= 0");
}

}  // namespace

EpsSeries::EpsSeries(int truncation_order) {
    check_order(truncation_order);
    c_.resize(static_cast<std::size_t>(truncation_order) + 1);
}

EpsSeries::EpsSeries(const DiffPoly& leading, int truncation_order) : EpsSeries(truncation_order) {
    c_[0] = leading;
}

EpsSeries EpsSeries::from_components(std::vector<DiffPoly> components, int truncation_order) {
    check_order(truncation_order);
    if (static_cast<int>(components.size()) > truncation_order + 1) {
        for (std::size_t q = static_cast<std::size_t>(truncation_order) + 1; q < components.size(); ++q)
            if (!components[q].is_zero())
                throw Error("series component eps^" + std::to_string(q) + " exceeds truncation order " +
                            std::to_string(truncation_order));
    }
    components.resize(static_cast<std::size_t>(truncation_order) + 1);
    EpsSeries s;
    s.c_ = std::move(components);
    return s;
}

EpsSeries EpsSeries::graded(std::vector<DiffPoly> components, int truncation_order) {
    EpsSeries s = from_components(std::move(components), truncation_order);
    if (!s.is_graded()) throw Error("series is not graded: component eps^q must have differential degree q");
    return s;
}

const DiffPoly& EpsSeries::operator[](int q) const {
    if (q < 0 || q > order()) throw Error("eps component " + std::to_string(q) + " out of range");
    return c_[static_cast<std::size_t>(q)];
}

void EpsSeries::set(int q, DiffPoly value) {
    if (q < 0 || q > order()) throw Error("eps component " + std::to_string(q) + " out of range");
    c_[static_cast<std::size_t>(q)] = std::move(value);
}

void EpsSeries::add_to(int q, const DiffPoly& value) {
    if (q < 0 || q > order()) return;
    c_[static_cast<std::size_t>(q)] += value;
}

bool EpsSeries::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const DiffPoly& p) { return p.is_zero(); });
}

bool EpsSeries::is_graded() const {
    for (int q = 0; q <= order(); ++q) {
        const DiffPoly& p = c_[static_cast<std::size_t>(q)];
        if (p.is_zero()) continue;
        auto info = degree(p);
        if (!info.homogeneous || info.degree != q) return false;
    }
    return true;
}

int EpsSeries::max_alpha() const {
    int a = 0;
    for (const auto& p : c_) a = std::max(a, p.max_alpha());
    return a;
}

int EpsSeries::max_order() const {
    int o = -1;
    for (const auto& p : c_) o = std::max(o, p.max_order());
    return o;
}

EpsSeries EpsSeries::truncated(int order) const {
    check_order(order);
    EpsSeries s(order);
    for (int q = 0; q <= std::min(order, this->order()); ++q) s.c_[static_cast<std::size_t>(q)] = c_[static_cast<std::size_t>(q)];
    if (order > this->order()) throw Error("cannot extend a series beyond its truncation order");
    return s;
}

EpsSeries& EpsSeries::operator+=(const EpsSeries& o) {
    int k = std::min(order(), o.order());
    c_.resize(static_cast<std::size_t>(k) + 1);
    for (int q = 0; q <= k; ++q) c_[static_cast<std::size_t>(q)] += o.c_[static_cast<std::size_t>(q)];
    return *this;
}

EpsSeries& EpsSeries::operator-=(const EpsSeries& o) {
    int k = std::min(order(), o.order());
    c_.resize(static_cast<std::size_t>(k) + 1);
    for (int q = 0; q <= k; ++q) c_[static_cast<std::size_t>(q)] -= o.c_[static_cast<std::size_t>(q)];
    return *this;
}

EpsSeries& EpsSeries::operator*=(const Rational& c) {
    for (auto& p : c_) p *= c;
    return *this;
}

EpsSeries operator*(const EpsSeries& a, const EpsSeries& b) {
    int k = std::min(a.order(), b.order());
    EpsSeries r(k);
    for (int p = 0; p <= k; ++p) {
        const DiffPoly& ap = a.c_[static_cast<std::size_t>(p)];
        if (ap.is_zero()) continue;
        for (int q = 0; p + q <= k; ++q) r.c_[static_cast<std::size_t>(p + q)].add_product(ap, b.c_[static_cast<std::size_t>(q)]);
    }
    return r;
}

EpsSeries EpsSeries::operator-() const {
    EpsSeries r = *this;
    for (auto& p : r.c_) p = -p;
    return r;
}

bool is_zero(const EpsSeries& p) { return p.is_zero(); }

EpsSeries partial_derivative(const EpsSeries& p, JetVar v) {
    EpsSeries out(p.order());
    for (int q = 0; q <= p.order(); ++q) out.set(q, partial_derivative(p[q], v));
    return out;
}

EpsSeries total_derivative(const EpsSeries& p) {
    EpsSeries r(p.order());
    for (int q = 0; q <= p.order(); ++q) r.set(q, total_derivative(p[q]));
    return r;
}

EpsSeries regrade(const DiffPoly& p, int truncation_order) {
    EpsSeries r(truncation_order);
    std::vector<DiffPoly> parts(static_cast<std::size_t>(truncation_order) + 1);
    for (const auto& [m, c] : p.terms()) {
        int d = m.degree();
        if (d < 0) throw Error("regrade: negative differential degree");
        if (d <= truncation_order) parts[static_cast<std::size_t>(d)].add_term(m, c);
    }
    return EpsSeries::from_components(std::move(parts), truncation_order);
}

DiffPoly flatten(const EpsSeries& p) {
    DiffPoly r;
    for (const auto& c : p.components()) r += c;
    return r;
}

EpsSeries shift_orders(const EpsSeries& p, int steps) {
    EpsSeries r(p.order());
    for (int q = 0; q <= p.order(); ++q) r.set(q, shift_orders(p[q], steps));
    return r;
}

EpsSeries truncate_jets(const EpsSeries& p, int max_order) {
    EpsSeries r(p.order());
    for (int q = 0; q <= p.order(); ++q) r.set(q, truncate_jets(p[q], max_order));
    return r;
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

EpsSubstitution::EpsSubstitution(ImageFn image, int truncation_order)
    : fn_(std::move(image)), order_(truncation_order) {
    check_order(truncation_order);
}

EpsSubstitution EpsSubstitution::differential(std::vector<EpsSeries> images, int truncation_order) {
    for (const auto& g : images)
        if (g.order() < truncation_order) throw Error("substitution image truncated below the requested order");
    auto jets = std::make_shared<std::vector<std::vector<EpsSeries>>>();
    for (auto& g : images) jets->push_back({g.truncated(truncation_order)});
    return EpsSubstitution(
        [jets](JetVar v) {
            if (v.alpha < 1 || v.alpha > static_cast<int>(jets->size()))
                throw Error("substitution: component index " + std::to_string(v.alpha) + " outside arity " +
                            std::to_string(jets->size()));
            if (v.order < 0) throw Error("substitution: negative jet order");
            auto& list = (*jets)[static_cast<std::size_t>(v.alpha - 1)];
            while (static_cast<int>(list.size()) <= v.order) list.push_back(total_derivative(list.back()));
            return list[static_cast<std::size_t>(v.order)];
        },
        truncation_order);
}

EpsSubstitution EpsSubstitution::shift(std::vector<EpsSeries> images, int truncation_order) {
    for (const auto& g : images)
        if (g.order() < truncation_order) throw Error("substitution image truncated below the requested order");
    auto base = std::make_shared<std::vector<EpsSeries>>();
    for (auto& g : images) base->push_back(g.truncated(truncation_order));
    return EpsSubstitution(
        [base](JetVar v) {
            if (v.alpha < 1 || v.alpha > static_cast<int>(base->size()))
                throw Error("substitution: component index " + std::to_string(v.alpha) + " outside arity " +
                            std::to_string(base->size()));
            return shift_orders((*base)[static_cast<std::size_t>(v.alpha - 1)], v.order);
        },
        truncation_order);
}

const EpsSeries& EpsSubstitution::image(JetVar v) {
    auto it = cache_.find(v);
    if (it != cache_.end()) return it->second;
    EpsSeries g = fn_(v);
    if (g.order() < order_) throw Error("substitution image truncated below the requested order");
    return cache_.emplace(v, g.truncated(order_)).first->second;
}

EpsSeries EpsSubstitution::substitute_poly(const DiffPoly& p, int shift) {
    EpsSeries r(order_);
    if (shift > order_) return r;
    int room = order_ - shift;
    std::map<std::pair<JetVar, int>, EpsSeries> cache;
    auto power_of = [&](JetVar v, int e) -> const EpsSeries& {
        auto key = std::make_pair(v, e);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        EpsSeries base = image(v).truncated(room);
        EpsSeries acc = base;
        for (int i = 1; i < e; ++i) acc = acc * base;
        return cache.emplace(key, std::move(acc)).first->second;
    };
    EpsSeries acc(room);
    for (const auto& [m, c] : p.terms()) {
        EpsSeries term(DiffPoly(c), room);
        for (const auto& f : m.factors()) {
            term = term * power_of(f.var, f.exp);
            if (term.is_zero()) break;
        }
        acc += term;
    }
    for (int q = 0; q <= room; ++q) r.set(q + shift, acc[q]);
    return r;
}

EpsSeries EpsSubstitution::operator()(const EpsSeries& p) {
    EpsSeries r(std::min(order_, p.order()));
    for (int q = 0; q <= r.order(); ++q) {
        if (p[q].is_zero()) continue;
        r += substitute_poly(p[q], q).truncated(r.order());
    }
    return r;
}

EpsSeries EpsSubstitution::operator()(const DiffPoly& p) { return substitute_poly(p, 0); }

// ---------------------------------------------------------------------------
// Derivations
// ---------------------------------------------------------------------------

Derivation::Derivation(std::vector<EpsSeries> characteristic) : w_(std::move(characteristic)) {
    if (w_.empty()) throw Error("derivation needs at least one component");
    int k = w_.front().order();
    for (const auto& w : w_)
        if (w.order() != k) throw Error("derivation characteristic has mixed truncation orders");
}

Derivation Derivation::from_polys(const std::vector<DiffPoly>& characteristic, int truncation_order) {
    std::vector<EpsSeries> w;
    w.reserve(characteristic.size());
    for (const auto& p : characteristic) w.emplace_back(p, truncation_order);
    return Derivation(std::move(w));
}

Derivation Derivation::total(int arity, int truncation_order) {
    std::vector<DiffPoly> w;
    for (int a = 1; a <= arity; ++a) w.push_back(DiffPoly::jet(a, 1));
    return from_polys(w, truncation_order);
}

Derivation Derivation::zero(int arity, int truncation_order) {
    return Derivation(std::vector<EpsSeries>(static_cast<std::size_t>(arity), EpsSeries(truncation_order)));
}

int Derivation::order() const { return w_.empty() ? 0 : w_.front().order(); }

bool Derivation::is_zero() const {
    return std::all_of(w_.begin(), w_.end(), [](const EpsSeries& s) { return s.is_zero(); });
}

EpsSeries Derivation::apply(const EpsSeries& p) const {
    if (p.max_alpha() > arity())
        throw Error("arity mismatch: argument uses component " + std::to_string(p.max_alpha()) +
                    " but derivation has arity " + std::to_string(arity()));
    int k = p.order();
    if (order() < k) throw Error("truncation mismatch: derivation order below argument order");
    // d^m(W_alpha), computed on demand.
    std::vector<std::vector<EpsSeries>> jets(w_.size());
    auto jet = [&](JetVar v) -> const EpsSeries& {
        auto& list = jets[static_cast<std::size_t>(v.alpha - 1)];
        if (list.empty()) list.push_back(w_[static_cast<std::size_t>(v.alpha - 1)].truncated(k));
        while (static_cast<int>(list.size()) <= v.order) list.push_back(total_derivative(list.back()));
        return list[static_cast<std::size_t>(v.order)];
    };
    EpsSeries r(k);
    for (int q = 0; q <= k; ++q) {
        const DiffPoly& pq = p[q];
        if (pq.is_zero()) continue;
        for (const JetVar& v : pq.variables()) {
            if (v.order < 0) throw Error("derivation applied to a negative-order variable");
            DiffPoly dp = partial_derivative(pq, v);
            const EpsSeries& w = jet(v);
            for (int s = 0; q + s <= k; ++s) {
                if (w[s].is_zero()) continue;
                DiffPoly t;
                t.add_product(dp, w[s]);
                r.add_to(q + s, t);
            }
        }
    }
    return r;
}

DiffPoly Derivation::apply(const DiffPoly& p) const {
    return flatten(apply(EpsSeries(p, 0)));
}

Derivation& Derivation::operator+=(const Derivation& o) {
    if (arity() != o.arity()) throw Error("arity mismatch in derivation sum");
    for (std::size_t a = 0; a < w_.size(); ++a) w_[a] += o.w_[a];
    return *this;
}

Derivation& Derivation::operator*=(const Rational& c) {
    for (auto& w : w_) w *= c;
    return *this;
}

EpsSeries apply_derivation(const Derivation& d, const EpsSeries& p) { return d.apply(p); }

Derivation commutator(const Derivation& d1, const Derivation& d2) {
    if (d1.arity() != d2.arity()) throw Error("arity mismatch in commutator");
    if (d1.order() != d2.order()) throw Error("truncation mismatch in commutator");
    std::vector<EpsSeries> w;
    for (int a = 1; a <= d1.arity(); ++a) w.push_back(d1.apply(d2[a]) - d2.apply(d1[a]));
    return Derivation(std::move(w));
}

}  // namespace dstau
