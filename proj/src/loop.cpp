#include <algorithm>

#include "dstau/kacmoody.hpp"

namespace dstau {

namespace {

bool vec_is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const DiffPoly& p) { return p.is_zero(); });
}

int floor_mod(int a, int m) { return ((a % m) + m) % m; }

}  // namespace

// ---------------------------------------------------------------------------
// LoopElement
// ---------------------------------------------------------------------------

bool LoopElement::is_zero() const {
    return std::all_of(slices.begin(), slices.end(), [](const auto& s) { return vec_is_zero(s.second); });
}

void LoopElement::prune() {
    for (auto it = slices.begin(); it != slices.end();) {
        if (vec_is_zero(it->second)) it = slices.erase(it);
        else ++it;
    }
}

LoopElement& LoopElement::operator+=(const LoopElement& o) {
    for (const auto& [d, v] : o.slices) {
        Vec& mine = slices[d];
        if (mine.size() < v.size()) mine.resize(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) mine[i] += v[i];
    }
    truncated = truncated || o.truncated;
    return *this;
}

LoopElement& LoopElement::operator-=(const LoopElement& o) {
    for (const auto& [d, v] : o.slices) {
        Vec& mine = slices[d];
        if (mine.size() < v.size()) mine.resize(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) mine[i] -= v[i];
    }
    truncated = truncated || o.truncated;
    return *this;
}

LoopElement& LoopElement::operator*=(const Rational& c) {
    for (auto& [d, v] : slices)
        for (auto& p : v) p *= c;
    return *this;
}

bool operator==(const LoopElement& a, const LoopElement& b) {
    LoopElement diff = a;
    diff -= b;
    return diff.is_zero();
}

// ---------------------------------------------------------------------------
// Slice arithmetic
// ---------------------------------------------------------------------------

int LoopRealization::min_basis_degree() const { return *std::min_element(deg_.begin(), deg_.end()); }
int LoopRealization::max_basis_degree() const { return *std::max_element(deg_.begin(), deg_.end()); }

bool LoopRealization::allowed(int degree, int i) const {
    int diff = degree - basis_degree(i);
    if (floor_mod(diff, s_) != 0) return false;
    int k = diff / s_;
    return floor_mod(k - basis_class(i), N_) == 0;
}

int LoopRealization::lambda_power(int degree, int i) const {
    if (!allowed(degree, i)) throw Error("basis element not present in this principal degree");
    return (degree - basis_degree(i)) / s_;
}

bool LoopRealization::is_exponent(int degree) const {
    int r = floor_mod(degree, period());
    return std::find(exponents_.begin(), exponents_.end(), r) != exponents_.end();
}

int LoopRealization::residue(int degree) const { return floor_mod(degree, period()); }

const SliceSplit& LoopRealization::split_data(int degree) const {
    return splits_[static_cast<std::size_t>(residue(degree))];
}

LoopElement LoopRealization::cyclic() const {
    LoopElement x;
    x.slices[1] = cyclic_;
    return x;
}

LoopElement LoopRealization::heisenberg(int a) const {
    if (a < 1 || a > n_exponents()) throw Error("Heisenberg index out of range");
    return heis_[static_cast<std::size_t>(a - 1)];
}

LoopElement LoopRealization::heisenberg_element(int i) const {
    int r = residue(i);
    auto it = std::find(exponents_.begin(), exponents_.end(), r);
    if (it == exponents_.end()) throw Error(std::to_string(i) + " is not an exponent");
    int a = static_cast<int>(it - exponents_.begin());
    return shift_lambda(heis_[static_cast<std::size_t>(a)], (i - r) / period());
}

const std::vector<LoopElement>& LoopRealization::chevalley(char kind) const {
    switch (kind) {
        case 'e': return chev_e_;
        case 'f': return chev_f_;
        case 'h': return chev_h_;
        default: throw Error("Chevalley kind must be e, f or h");
    }
}

LoopElement LoopRealization::from_terms(const std::vector<LoopTerm>& terms) const {
    LoopElement x;
    for (const auto& t : terms) {
        if (t.index < 0 || t.index >= dim()) throw Error("loop term index out of range");
        if (floor_mod(t.power - basis_class(t.index), N_) != 0)
            throw Error("twist constraint violated: " + g_.names()[static_cast<std::size_t>(t.index)] +
                        " * lambda^" + std::to_string(t.power));
        Vec& v = x.slices[degree_of(t.index, t.power)];
        v.resize(static_cast<std::size_t>(dim()));
        v[static_cast<std::size_t>(t.index)] += DiffPoly(t.coeff);
    }
    x.prune();
    return x;
}

LoopElement LoopRealization::at_lambda0(const Vec& x) const {
    LoopElement out;
    for (int i = 0; i < dim(); ++i) {
        const DiffPoly& c = x[static_cast<std::size_t>(i)];
        if (c.is_zero()) continue;
        if (basis_class(i) != 0) throw Error("twist constraint violated at lambda^0");
        Vec& v = out.slices[basis_degree(i)];
        v.resize(static_cast<std::size_t>(dim()));
        v[static_cast<std::size_t>(i)] += c;
    }
    return out;
}

LoopElement LoopRealization::bracket(const LoopElement& x, const LoopElement& y) const {
    LoopElement out;
    for (const auto& [d1, v1] : x.slices) {
        if (vec_is_zero(v1)) continue;
        for (const auto& [d2, v2] : y.slices) {
            if (vec_is_zero(v2)) continue;
            Vec& dst = out.slices[d1 + d2];
            dst.resize(static_cast<std::size_t>(dim()));
            g_.add_bracket(dst, v1, v2);
        }
    }
    out.truncated = x.truncated || y.truncated;
    out.prune();
    clip(out);
    return out;
}

Laurent LoopRealization::bilinear(const LoopElement& x, const LoopElement& y) const {
    Laurent out;
    const RMatrix& B = g_.form();
    for (const auto& [d1, v1] : x.slices)
        for (const auto& [d2, v2] : y.slices) {
            for (int i = 0; i < dim(); ++i) {
                const DiffPoly& a = v1[static_cast<std::size_t>(i)];
                if (a.is_zero()) continue;
                for (int j = 0; j < dim(); ++j) {
                    const DiffPoly& b = v2[static_cast<std::size_t>(j)];
                    if (b.is_zero() || B.at(i, j).is_zero()) continue;
                    int p = lambda_power(d1, i) + lambda_power(d2, j);
                    out[p].add_product(a, b, B.at(i, j));
                }
            }
        }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.is_zero()) it = out.erase(it);
        else ++it;
    }
    return out;
}

std::pair<DiffPoly, Vec> LoopRealization::split_slice(int degree, const Vec& x) const {
    const SliceSplit& sp = split_data(degree);
    Vec restricted;
    restricted.reserve(sp.indices.size());
    std::size_t next = 0;
    for (int i = 0; i < dim(); ++i) {
        const DiffPoly& c = x[static_cast<std::size_t>(i)];
        if (next < sp.indices.size() && sp.indices[next] == i) {
            restricted.push_back(c);
            ++next;
        } else if (!c.is_zero()) {
            throw Error("slice entry outside principal degree " + std::to_string(degree));
        }
    }
    Vec coords = dstau::apply(sp.solve, restricted);
    DiffPoly h;
    std::size_t off = 0;
    if (sp.has_heisenberg) {
        h = coords[0];
        off = 1;
    }
    Vec y(static_cast<std::size_t>(dim()));
    for (std::size_t j = 0; j < sp.image_basis.size(); ++j) {
        const DiffPoly& c = coords[j + off];
        if (c.is_zero()) continue;
        for (int i = 0; i < dim(); ++i) {
            Rational b = sp.image_basis[j][static_cast<std::size_t>(i)].constant_term();
            if (!b.is_zero()) y[static_cast<std::size_t>(i)].add_scaled(c, b);
        }
    }
    return {h, y};
}

std::pair<LoopElement, LoopElement> LoopRealization::heisenberg_split(const LoopElement& x) const {
    LoopElement kern, image;
    for (const auto& [d, v] : x.slices) {
        if (vec_is_zero(v)) continue;
        auto [h, y] = split_slice(d, v);
        if (!h.is_zero()) {
            const Vec& lam = split_data(d).heisenberg;
            Vec hv(static_cast<std::size_t>(dim()));
            for (int i = 0; i < dim(); ++i) {
                Rational b = lam[static_cast<std::size_t>(i)].constant_term();
                if (!b.is_zero()) hv[static_cast<std::size_t>(i)].add_scaled(h, b);
            }
            kern.slices[d] = hv;
        }
        Vec rest = ad_cyclic(y);
        if (!vec_is_zero(rest)) image.slices[d] = rest;
    }
    kern.truncated = image.truncated = x.truncated;
    return {kern, image};
}

DegreeInfo LoopRealization::principal_degree(const LoopElement& x) const {
    DegreeInfo info;
    for (const auto& [d, v] : x.slices)
        if (!vec_is_zero(v)) info.degrees.push_back(d);
    if (info.degrees.empty()) throw Error("degree undefined");
    info.homogeneous = info.degrees.size() == 1;
    info.degree = info.degrees.front();
    return info;
}

namespace {

template <class Keep>
LoopElement filter_powers(const LoopRealization& R, const LoopElement& x, Keep keep) {
    LoopElement out;
    out.truncated = x.truncated;
    for (const auto& [d, v] : x.slices) {
        Vec w(static_cast<std::size_t>(R.dim()));
        bool any = false;
        for (int i = 0; i < R.dim(); ++i) {
            const DiffPoly& c = v[static_cast<std::size_t>(i)];
            if (c.is_zero() || !keep(R.lambda_power(d, i))) continue;
            w[static_cast<std::size_t>(i)] = c;
            any = true;
        }
        if (any) out.slices[d] = std::move(w);
    }
    return out;
}

}  // namespace

LoopElement LoopRealization::project_plus(const LoopElement& x) const {
    return filter_powers(*this, x, [](int k) { return k >= 0; });
}

LoopElement LoopRealization::project_minus(const LoopElement& x) const {
    return filter_powers(*this, x, [](int k) { return k < 0; });
}

LoopElement LoopRealization::shift_lambda(const LoopElement& x, int k) const {
    LoopElement out;
    out.truncated = x.truncated;
    for (const auto& [d, v] : x.slices) out.slices[d + k * period()] = v;
    clip(out);
    return out;
}

Vec LoopRealization::lambda_coefficient(const LoopElement& x, int power) const {
    Vec out(static_cast<std::size_t>(dim()));
    for (int i = 0; i < dim(); ++i) {
        auto it = x.slices.find(degree_of(i, power));
        if (it != x.slices.end()) out[static_cast<std::size_t>(i)] = it->second[static_cast<std::size_t>(i)];
    }
    return out;
}

void LoopRealization::clip(LoopElement& x) const {
    for (auto& [d, v] : x.slices)
        for (int i = 0; i < dim(); ++i) {
            DiffPoly& c = v[static_cast<std::size_t>(i)];
            if (c.is_zero()) continue;
            int k = lambda_power(d, i);
            if (k < window_.first || k > window_.second) {
                c = DiffPoly();
                x.truncated = true;
            }
        }
    x.prune();
}

bool pi_lambda_keeps(int power, int order) { return power < 0 && floor_mod(power + 1, order) == 0; }

Laurent pi_lambda(const Laurent& f, int order) {
    Laurent out;
    for (const auto& [k, c] : f)
        if (pi_lambda_keeps(k, order) && !c.is_zero()) out[k] = c;
    return out;
}

}  // namespace dstau
