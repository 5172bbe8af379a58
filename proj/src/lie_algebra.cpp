#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dstau/kacmoody.hpp"

namespace dstau {

// ---------------------------------------------------------------------------
// SimpleLieAlgebra
// ---------------------------------------------------------------------------

SimpleLieAlgebra::SimpleLieAlgebra(std::vector<std::string> names, int dim)
    : dim_(dim), names_(std::move(names)), form_(dim, dim) {
    sc_.resize(static_cast<std::size_t>(dim * dim));
}

void SimpleLieAlgebra::set_bracket(int i, int j, int k, const Rational& c) {
    if (i == j) throw Error("bracket table: [x,x] must vanish");
    sc_[static_cast<std::size_t>(i * dim_ + j)].push_back({k, c});
    sc_[static_cast<std::size_t>(j * dim_ + i)].push_back({k, -c});
}

void SimpleLieAlgebra::set_form(int i, int j, const Rational& c) {
    form_.at(i, j) = c;
    form_.at(j, i) = c;
}

void SimpleLieAlgebra::add_bracket(Vec& out, const Vec& x, const Vec& y, const Rational& c) const {
    out.resize(static_cast<std::size_t>(dim_));
    for (int i = 0; i < dim_; ++i) {
        const DiffPoly& xi = x[static_cast<std::size_t>(i)];
        if (xi.is_zero()) continue;
        for (int j = 0; j < dim_; ++j) {
            const DiffPoly& yj = y[static_cast<std::size_t>(j)];
            if (yj.is_zero()) continue;
            const auto& terms = bracket_terms(i, j);
            if (terms.empty()) continue;
            DiffPoly prod = xi * yj;
            for (const auto& t : terms) out[static_cast<std::size_t>(t.index)].add_scaled(prod, t.coeff * c);
        }
    }
}

Vec SimpleLieAlgebra::bracket(const Vec& x, const Vec& y) const {
    Vec out(static_cast<std::size_t>(dim_));
    add_bracket(out, x, y);
    return out;
}

DiffPoly SimpleLieAlgebra::pairing(const Vec& x, const Vec& y) const {
    DiffPoly r;
    for (int i = 0; i < dim_; ++i) {
        if (x[static_cast<std::size_t>(i)].is_zero()) continue;
        for (int j = 0; j < dim_; ++j) {
            if (form_.at(i, j).is_zero() || y[static_cast<std::size_t>(j)].is_zero()) continue;
            r.add_product(x[static_cast<std::size_t>(i)], y[static_cast<std::size_t>(j)], form_.at(i, j));
        }
    }
    return r;
}

namespace {

Vec unit_vec(int dim, int i) {
    Vec v(static_cast<std::size_t>(dim));
    v[static_cast<std::size_t>(i)] = DiffPoly(1);
    return v;
}

bool vec_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const DiffPoly& p) { return p.is_zero(); });
}

}  // namespace

void SimpleLieAlgebra::validate() const {
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            for (int k = 0; k < dim_; ++k) {
                Vec xi = unit_vec(dim_, i), xj = unit_vec(dim_, j), xk = unit_vec(dim_, k);
                Vec jac = bracket(bracket(xi, xj), xk);
                add_bracket(jac, bracket(xj, xk), xi);
                add_bracket(jac, bracket(xk, xi), xj);
                if (!vec_zero(jac))
                    throw Error("Jacobi identity fails on basis triple (" + names_[static_cast<std::size_t>(i)] + ", " +
                                names_[static_cast<std::size_t>(j)] + ", " + names_[static_cast<std::size_t>(k)] + ")");
                DiffPoly inv = pairing(bracket(xi, xj), xk) + pairing(xj, bracket(xi, xk));
                if (!inv.is_zero()) throw Error("bilinear form is not invariant");
            }
    if (determinant(form_).is_zero()) throw Error("bilinear form is degenerate");
}

// ---------------------------------------------------------------------------
// Table loading
// ---------------------------------------------------------------------------

namespace {

std::vector<LoopTerm> parse_loop_terms(std::istringstream& in) {
    std::vector<LoopTerm> terms;
    std::string tok;
    while (in >> tok) {
        auto at = tok.find('@');
        auto colon = tok.find(':');
        if (at == std::string::npos || colon == std::string::npos || colon < at)
            throw Error("malformed loop term '" + tok + "'");
        LoopTerm t;
        t.index = std::stoi(tok.substr(0, at));
        t.power = std::stoi(tok.substr(at + 1, colon - at - 1));
        t.coeff = Rational::parse(tok.substr(colon + 1));
        terms.push_back(t);
    }
    return terms;
}

Vec parse_vec(const std::string& text, int dim) {
    Vec v(static_cast<std::size_t>(dim));
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        auto colon = tok.find(':');
        if (colon == std::string::npos) throw Error("malformed vector entry '" + tok + "'");
        int i = std::stoi(tok.substr(0, colon));
        if (i < 0 || i >= dim) throw Error("vector index out of range in '" + tok + "'");
        v[static_cast<std::size_t>(i)] += DiffPoly(Rational::parse(tok.substr(colon + 1)));
    }
    return v;
}

std::string rest_of(std::istringstream& in) {
    std::string rest;
    std::getline(in, rest);
    return rest;
}

template <class T>
std::vector<T> rotate_labels(const std::vector<T>& v, int m) {
    int n = static_cast<int>(v.size());
    std::vector<T> out(v.size());
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(((i - m) % n + n) % n)];
    return out;
}

}  // namespace

std::string LoopRealization::canonical_type(const std::string& type) {
    std::string t;
    for (char c : type)
        if (c != '^' && c != '(' && c != ')' && c != ' ') t += c;
    // "A_11" -> "A1_1"; "A1_1" stays.
    if (t.size() == 4 && t[1] == '_') t = std::string{t[0], t[2], '_', t[3]};
    if (t == "A1_1" || t == "A2_1" || t == "A2_2") return t;
    throw Error("unsupported algebra type '" + type + "' (supported: A_1^(1), A_2^(1), A_2^(2))");
}

std::shared_ptr<const LoopRealization> LoopRealization::build(const std::string& type, int vertex,
                                                              std::pair<int, int> window) {
    std::string t = canonical_type(type);
    std::filesystem::path dir = DSTAU_DATA_DIR;
    if (const char* env = std::getenv("DSTAU_DATA_DIR")) dir = env;
    return from_file((dir / (t + ".txt")).string(), vertex, window);
}

std::shared_ptr<const LoopRealization> LoopRealization::from_file(const std::string& path, int vertex,
                                                                  std::pair<int, int> window) {
    std::ifstream file(path);
    if (!file) throw Error("cannot open algebra table '" + path + "'");
    std::shared_ptr<LoopRealization> R(new LoopRealization());
    R->window_ = window;
    std::vector<std::string> names;
    int dim = -1;
    struct Pending {
        std::vector<std::tuple<int, int, int, Rational>> brackets, forms, sigma;
        std::vector<std::pair<char, std::vector<LoopTerm>>> chev;
        std::vector<std::pair<int, std::vector<LoopTerm>>> heis;
        std::vector<std::pair<std::string, std::string>> gauges;
        std::string e, f, rho, top;
    } pend;
    std::string line;
    while (std::getline(file, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream in(line);
        std::string key;
        if (!(in >> key)) continue;
        if (key == "type") in >> R->type_;
        else if (key == "label") in >> R->label_;
        else if (key == "rank") in >> R->rank_;
        else if (key == "twist") in >> R->r_;
        else if (key == "coxeter") in >> R->h_;
        else if (key == "dual_coxeter") in >> R->hdual_;
        else if (key == "order") in >> R->N_;
        else if (key == "dim") {
            in >> dim;
            names.assign(static_cast<std::size_t>(dim), "");
            R->deg_.assign(static_cast<std::size_t>(dim), 0);
            R->cls_.assign(static_cast<std::size_t>(dim), 0);
        } else if (key == "basis") {
            int i, d, c;
            std::string name;
            in >> i >> name >> d >> c;
            if (i < 0 || i >= dim) throw Error("basis index out of range");
            names[static_cast<std::size_t>(i)] = name;
            R->deg_[static_cast<std::size_t>(i)] = d;
            R->cls_[static_cast<std::size_t>(i)] = c;
        } else if (key == "bracket" || key == "form" || key == "sigma") {
            int i, j, k = 0;
            std::string c;
            in >> i >> j;
            if (key == "bracket") in >> k;
            in >> c;
            auto& dst = key == "bracket" ? pend.brackets : (key == "form" ? pend.forms : pend.sigma);
            dst.emplace_back(i, j, k, Rational::parse(c));
        } else if (key == "cartan") {
            std::vector<int> row;
            int x;
            while (in >> x) row.push_back(x);
            R->cartan_.push_back(row);
        } else if (key == "kac" || key == "dual_kac") {
            auto& dst = key == "kac" ? R->kac_ : R->dual_kac_;
            int x;
            while (in >> x) dst.push_back(x);
        } else if (key == "chevalley") {
            std::string kind;
            int i;
            in >> kind >> i;
            pend.chev.emplace_back(kind.at(0), parse_loop_terms(in));
        } else if (key == "e") pend.e = rest_of(in);
        else if (key == "f") pend.f = rest_of(in);
        else if (key == "rho") pend.rho = rest_of(in);
        else if (key == "cyclic_top") pend.top = rest_of(in);
        else if (key == "exponents") {
            int x;
            while (in >> x) R->exponents_.push_back(x);
        } else if (key == "heisenberg") {
            int m;
            in >> m;
            pend.heis.emplace_back(m, parse_loop_terms(in));
        } else if (key == "gauge") {
            std::string name;
            in >> name;
            pend.gauges.emplace_back(name, rest_of(in));
        } else {
            throw Error("unknown key '" + key + "' in algebra table");
        }
    }
    if (dim <= 0) throw Error("algebra table without dimension");
    if (R->r_ <= 0 || R->h_ <= 0 || R->N_ <= 0) throw Error("algebra table with invalid twist/Coxeter/order data");
    if ((R->r_ * R->h_) % R->N_ != 0) throw Error("r h is not divisible by the twist order");
    R->s_ = R->r_ * R->h_ / R->N_;

    R->g_ = SimpleLieAlgebra(names, dim);
    for (auto& [i, j, k, c] : pend.brackets) R->g_.set_bracket(i, j, k, c);
    for (auto& [i, j, k, c] : pend.forms) R->g_.set_form(i, j, c);
    R->sigma_ = RMatrix(dim, dim);
    for (auto& [i, j, k, c] : pend.sigma) R->sigma_.at(i, j) = c;
    R->e_ = parse_vec(pend.e, dim);
    R->f_ = parse_vec(pend.f, dim);
    R->rho_ = parse_vec(pend.rho, dim);
    R->top_ = parse_vec(pend.top, dim);
    for (auto& [kind, terms] : pend.chev) {
        LoopElement x = R->from_terms(terms);
        if (kind == 'e') R->chev_e_.push_back(x);
        else if (kind == 'f') R->chev_f_.push_back(x);
        else if (kind == 'h') R->chev_h_.push_back(x);
        else throw Error("unknown Chevalley kind");
    }
    for (auto& [m, terms] : pend.heis) {
        if (std::find(R->exponents_.begin(), R->exponents_.end(), m) == R->exponents_.end())
            throw Error("Heisenberg element for a non-exponent");
        R->heis_.push_back(R->from_terms(terms));
    }
    for (auto& [name, text] : pend.gauges) {
        std::vector<Vec> basis;
        std::string chunk;
        std::istringstream in(text);
        while (std::getline(in, chunk, ';')) basis.push_back(parse_vec(chunk, dim));
        R->gauges_[name] = basis;
    }
    int nodes = static_cast<int>(R->cartan_.size());
    if (nodes != R->rank_ + 1) throw Error("Cartan matrix size does not match rank");
    if (vertex < 0 || vertex > R->rank_)
        throw Error("vertex c_" + std::to_string(vertex) + " out of range 0.." + std::to_string(R->rank_));
    R->vertex_ = vertex;
    if (vertex != 0) {
        if (R->r_ != 1)
            throw Error("unsupported vertex c_" + std::to_string(vertex) + " for twisted type " + R->label_ +
                        ": only c_0 is tabulated");
        // Untwisted: the Dynkin diagram is a cycle and rotation is a diagram
        // automorphism, so the c_m realization is the c_0 one with labels rotated.
        R->chev_e_ = rotate_labels(R->chev_e_, vertex);
        R->chev_f_ = rotate_labels(R->chev_f_, vertex);
        R->chev_h_ = rotate_labels(R->chev_h_, vertex);
        R->kac_ = rotate_labels(R->kac_, vertex);
        R->dual_kac_ = rotate_labels(R->dual_kac_, vertex);
        auto rows = rotate_labels(R->cartan_, vertex);
        for (auto& row : rows) row = rotate_labels(row, vertex);
        R->cartan_ = rows;
    }
    R->cyclic_ = R->e_;
    for (int i = 0; i < dim; ++i) R->cyclic_[static_cast<std::size_t>(i)] += R->top_[static_cast<std::size_t>(i)];

    // Splitting data per residue class of the principal degree.
    int period = R->period();
    R->splits_.resize(static_cast<std::size_t>(period));
    for (int d = 0; d < period; ++d) {
        SliceSplit& sp = R->splits_[static_cast<std::size_t>(d)];
        for (int i = 0; i < dim; ++i)
            if (R->allowed(d, i)) sp.indices.push_back(i);
        for (std::size_t a = 0; a < R->exponents_.size(); ++a)
            if (((d - R->exponents_[a]) % period + period) % period == 0 && a < R->heis_.size()) {
                sp.has_heisenberg = true;
                auto it = R->heis_[a].slices.find(R->exponents_[a]);
                sp.heisenberg = it == R->heis_[a].slices.end() ? Vec(static_cast<std::size_t>(dim)) : it->second;
            }
        std::vector<int> lower, mid;
        for (int i = 0; i < dim; ++i) {
            if (R->allowed(d - 2, i)) lower.push_back(i);
            if (R->allowed(d - 1, i)) mid.push_back(i);
        }
        RMatrix adm(static_cast<int>(mid.size()), static_cast<int>(lower.size()));
        std::vector<Vec> images;
        for (std::size_t c = 0; c < lower.size(); ++c) {
            Vec img = R->ad_cyclic(unit_vec(dim, lower[c]));
            for (std::size_t r = 0; r < mid.size(); ++r)
                adm.at(static_cast<int>(r), static_cast<int>(c)) = img[static_cast<std::size_t>(mid[r])].constant_term();
            images.push_back(img);
        }
        for (int c : independent_columns(adm)) sp.image_basis.push_back(images[static_cast<std::size_t>(c)]);
        int cols = static_cast<int>(sp.image_basis.size()) + (sp.has_heisenberg ? 1 : 0);
        int rows = static_cast<int>(sp.indices.size());
        if (cols != rows)
            throw Error("Heisenberg decomposition fails in principal degree " + std::to_string(d) + " (dimension " +
                        std::to_string(rows) + " vs " + std::to_string(cols) + ")");
        RMatrix M(rows, cols);
        int col = 0;
        if (sp.has_heisenberg) {
            for (int r = 0; r < rows; ++r)
                M.at(r, 0) = sp.heisenberg[static_cast<std::size_t>(sp.indices[static_cast<std::size_t>(r)])].constant_term();
            col = 1;
        }
        for (const Vec& y : sp.image_basis) {
            Vec img = R->ad_cyclic(y);
            for (int r = 0; r < rows; ++r)
                M.at(r, col) = img[static_cast<std::size_t>(sp.indices[static_cast<std::size_t>(r)])].constant_term();
            ++col;
        }
        try {
            sp.solve = inverse(M);
        } catch (const Error&) {
            throw Error("Heisenberg decomposition is not direct in principal degree " + std::to_string(d));
        }
    }
    R->validate();
    return R;
}

// ---------------------------------------------------------------------------
// Structural validation
// ---------------------------------------------------------------------------

void LoopRealization::validate() const {
    g_.validate();
    int dim = g_.dim();
    int nodes = rank_ + 1;
    // Twist: sigma^N = 1, automorphism, adapted eigenbasis.
    if (N_ > 2) throw Error("twist orders above 2 need roots of unity outside Q");
    RMatrix p = RMatrix::identity(dim);
    for (int k = 0; k < N_; ++k) p = sigma_ * p;
    if (!(p == RMatrix::identity(dim))) throw Error("twist automorphism does not have the stated order");
    for (int i = 0; i < dim; ++i) {
        Rational ev = cls_[static_cast<std::size_t>(i)] == 0 ? Rational(1) : Rational(-1);
        for (int k = 0; k < dim; ++k)
            if (sigma_.at(k, i) != (k == i ? ev : Rational(0)))
                throw Error("basis vector " + g_.names()[static_cast<std::size_t>(i)] + " is not a twist eigenvector");
    }
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (const auto& t : g_.bracket_terms(i, j)) {
                int want = (cls_[static_cast<std::size_t>(i)] + cls_[static_cast<std::size_t>(j)]) % N_;
                if (cls_[static_cast<std::size_t>(t.index)] % N_ != want) throw Error("twist is not an automorphism");
                if (deg_[static_cast<std::size_t>(t.index)] != deg_[static_cast<std::size_t>(i)] + deg_[static_cast<std::size_t>(j)])
                    throw Error("structure constants do not respect the principal grading");
            }
    // ad rho has the stated integer eigenvalues.
    for (int i = 0; i < dim; ++i) {
        Vec x = unit_vec(dim, i);
        Vec r = g_.bracket(rho_, x);
        for (int k = 0; k < dim; ++k) {
            DiffPoly want = k == i ? DiffPoly(Rational(deg_[static_cast<std::size_t>(i)])) : DiffPoly();
            if (!(r[static_cast<std::size_t>(k)] == want))
                throw Error("ad rho does not act by the principal degree on " + g_.names()[static_cast<std::size_t>(i)]);
        }
    }
    if (!(g_.bracket(e_, f_) == rho_)) throw Error("[e, f] != rho");
    // Chevalley data.
    if (static_cast<int>(chev_e_.size()) != nodes || static_cast<int>(chev_f_.size()) != nodes ||
        static_cast<int>(chev_h_.size()) != nodes)
        throw Error("Chevalley generator count does not match the Cartan matrix");
    for (int i = 0; i < nodes; ++i) {
        auto de = principal_degree(chev_e_[static_cast<std::size_t>(i)]);
        auto df = principal_degree(chev_f_[static_cast<std::size_t>(i)]);
        if (!de.homogeneous || de.degree != 1 || !df.homogeneous || df.degree != -1)
            throw Error("principal degree of e_i / f_i is not +1 / -1");
        for (int j = 0; j < nodes; ++j) {
            LoopElement ef = bracket(chev_e_[static_cast<std::size_t>(i)], chev_f_[static_cast<std::size_t>(j)]);
            LoopElement want = i == j ? chev_h_[static_cast<std::size_t>(i)] : LoopElement{};
            if (!(ef == want)) throw Error("Chevalley relation [e_i, f_j] = delta_ij h_i fails");
            Rational a(cartan_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
            if (!(bracket(chev_h_[static_cast<std::size_t>(i)], chev_e_[static_cast<std::size_t>(j)]) ==
                  chev_e_[static_cast<std::size_t>(j)] * a))
                throw Error("Chevalley relation [h_i, e_j] = a_ij e_j fails");
            if (!(bracket(chev_h_[static_cast<std::size_t>(i)], chev_f_[static_cast<std::size_t>(j)]) ==
                  chev_f_[static_cast<std::size_t>(j)] * (-a)))
                throw Error("Chevalley relation [h_i, f_j] = -a_ij f_j fails");
        }
    }
    int hsum = 0, hdsum = 0;
    for (int i = 0; i < nodes; ++i) {
        int row = 0, col = 0;
        for (int j = 0; j < nodes; ++j) {
            row += cartan_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * kac_[static_cast<std::size_t>(j)];
            col += dual_kac_[static_cast<std::size_t>(j)] * cartan_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        }
        if (row != 0 || col != 0) throw Error("Kac labels are not null vectors of the Cartan matrix");
        hsum += kac_[static_cast<std::size_t>(i)];
        hdsum += dual_kac_[static_cast<std::size_t>(i)];
    }
    if (hsum != h_ || hdsum != hdual_) throw Error("Coxeter numbers disagree with the Kac labels");
    if (r_ * kac_[static_cast<std::size_t>(vertex_)] != N_) throw Error("twist order N_m != r a_m");
    LoopElement center;
    for (int i = 0; i < nodes; ++i) center += chev_h_[static_cast<std::size_t>(i)] * Rational(dual_kac_[static_cast<std::size_t>(i)]);
    center.prune();
    if (!center.is_zero()) throw Error("sum of a_i^vee h_i does not vanish");
    // Lambda = sum of e_i.
    LoopElement sum_e;
    for (const auto& x : chev_e_) sum_e += x;
    sum_e.prune();
    if (!(sum_e == cyclic())) throw Error("cyclic element differs from the sum of the e_i");
    // Exponents and Heisenberg normalization.
    int n = n_exponents();
    int period = this->period();
    if (n == 0 || exponents_.front() != 1 || exponents_.back() != period - 1)
        throw Error("exponents must satisfy 1 = m_1 and m_n = r h - 1");
    for (int a = 0; a < n; ++a) {
        if (exponents_[static_cast<std::size_t>(a)] + exponents_[static_cast<std::size_t>(n - 1 - a)] != period)
            throw Error("exponents violate m_a + m_{n+1-a} = r h");
        if (a > 0 && exponents_[static_cast<std::size_t>(a)] <= exponents_[static_cast<std::size_t>(a - 1)])
            throw Error("repeated exponents are not supported");
    }
    if (static_cast<int>(heis_.size()) != n) throw Error("one Heisenberg element per exponent is required");
    if (!(heis_[0] == cyclic())) throw Error("Lambda_1 must equal the cyclic element");
    LoopElement lam = cyclic();
    for (int a = 0; a < n; ++a) {
        auto deg = principal_degree(heis_[static_cast<std::size_t>(a)]);
        if (!deg.homogeneous || deg.degree != exponents_[static_cast<std::size_t>(a)])
            throw Error("Lambda_{m_a} is not homogeneous of degree m_a");
        for (int b = 0; b < n; ++b) {
            LoopElement c = bracket(heis_[static_cast<std::size_t>(a)], heis_[static_cast<std::size_t>(b)]);
            c.prune();
            if (!c.is_zero()) throw Error("Heisenberg elements do not commute");
            Laurent form = bilinear(heis_[static_cast<std::size_t>(a)], heis_[static_cast<std::size_t>(b)]);
            Laurent want;
            if (a + b == n - 1) want[N_] = DiffPoly(Rational(h_));
            if (form != want) throw Error("Heisenberg normalization (Lambda_a | Lambda_b) = delta h lambda^N fails");
        }
    }
    // Kernel of ad Lambda per slice is exactly the Heisenberg part.
    for (int d = 0; d < period; ++d) {
        std::vector<int> src, dst;
        for (int i = 0; i < dim; ++i) {
            if (allowed(d, i)) src.push_back(i);
            if (allowed(d + 1, i)) dst.push_back(i);
        }
        RMatrix m(static_cast<int>(dst.size()), static_cast<int>(src.size()));
        for (std::size_t c = 0; c < src.size(); ++c) {
            Vec img = ad_cyclic(unit_vec(dim, src[c]));
            for (std::size_t r = 0; r < dst.size(); ++r)
                m.at(static_cast<int>(r), static_cast<int>(c)) = img[static_cast<std::size_t>(dst[r])].constant_term();
        }
        std::size_t ker = kernel(m).size();
        if (ker != (is_exponent(d) ? 1u : 0u))
            throw Error("ker ad Lambda in principal degree " + std::to_string(d) + " has unexpected dimension");
    }
    // Gauges: V inside b, homogeneous, and b = V + [e, n] directly.
    for (const auto& [name, basis] : gauges_) {
        if (static_cast<int>(basis.size()) != rank_) throw Error("gauge '" + name + "' must have dimension l");
        for (const Vec& v : basis) {
            LoopElement x = at_lambda0(v);
            auto deg = principal_degree(x);
            if (!deg.homogeneous || deg.degree > 0) throw Error("gauge '" + name + "' is not homogeneous inside b");
        }
    }
}

}  // namespace dstau
