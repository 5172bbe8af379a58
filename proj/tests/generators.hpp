#pragma once

#include <random>

#include "dstau/diffpoly.hpp"
#include "dstau/series.hpp"

namespace gen {

// Small deterministic generators for property tests. Every test seeds its own engine.
using Engine = std::mt19937_64;

inline int uniform(Engine& g, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); }

inline dstau::Rational rational(Engine& g, int bound = 5) {
    int n = uniform(g, -bound, bound);
    int d = uniform(g, 1, bound);
    return dstau::Rational(n, d);
}

struct PolyShape {
    int arity = 2;
    int min_order = 0;
    int max_order = 3;
    int terms = 4;
    int factors = 3;
};

inline dstau::DiffPoly poly(Engine& g, const PolyShape& s = {}) {
    dstau::DiffPoly p;
    int n = uniform(g, 0, s.terms);
    for (int t = 0; t < n; ++t) {
        dstau::DiffPoly m(rational(g));
        int f = uniform(g, 0, s.factors);
        for (int i = 0; i < f; ++i)
            m = m * dstau::DiffPoly::variable(uniform(g, 1, s.arity), uniform(g, s.min_order, s.max_order));
        p += m;
    }
    return p;
}

/// Graded series: component q is a random polynomial homogeneous of degree q.
inline dstau::EpsSeries graded(Engine& g, int K, int arity = 1) {
    dstau::EpsSeries s(K);
    for (int q = 0; q <= K; ++q) s.set(q, dstau::homogeneous_part(poly(g, {arity, 0, q, 6, 3}), q));
    return s;
}

inline dstau::EpsSeries series(Engine& g, int K, int arity = 1) {
    dstau::EpsSeries s(K);
    for (int q = 0; q <= K; ++q) s.set(q, poly(g, {arity, 0, 3, 3, 2}));
    return s;
}

inline dstau::Derivation derivation(Engine& g, int K, int arity = 1) {
    std::vector<dstau::EpsSeries> w;
    for (int a = 0; a < arity; ++a) w.push_back(series(g, K, arity));
    return dstau::Derivation(std::move(w));
}

}  // namespace gen
