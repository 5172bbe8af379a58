#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dstau/diffpoly.hpp"
#include "dstau/linalg.hpp"

namespace dstau {

/// Coordinates of an element of the simple Lie algebra g over its adapted basis.
/// Entries are polynomials so that q-dependent elements use the same type.
using Vec = std::vector<DiffPoly>;

/// One summand c * x_index * lambda^power of a loop-algebra element with
/// constant coefficient.
struct LoopTerm {
    int index = 0;
    int power = 0;
    Rational coeff{1};
};

/// Laurent polynomial in one variable with polynomial coefficients.
using Laurent = std::map<int, DiffPoly>;

/// Element of the loop algebra stored by principal-degree slices: slices[d][i]
/// is the coefficient of x_i * lambda^k with k = (d - deg x_i) / s. Entries that
/// violate the twist constraint are always zero.
struct LoopElement {
    std::map<int, Vec> slices;
    /// Set when an operation dropped terms outside the configured window.
    bool truncated = false;

    bool is_zero() const;
    /// Removes zero slices.
    void prune();
    LoopElement& operator+=(const LoopElement& o);
    LoopElement& operator-=(const LoopElement& o);
    LoopElement& operator*=(const Rational& c);
    friend LoopElement operator+(LoopElement a, const LoopElement& b) { return a += b; }
    friend LoopElement operator-(LoopElement a, const LoopElement& b) { return a -= b; }
    friend LoopElement operator*(LoopElement a, const Rational& c) { return a *= c; }
    friend bool operator==(const LoopElement& a, const LoopElement& b);
};

/// Finite-dimensional simple Lie algebra with rational structure constants and
/// its normalized invariant form.
class SimpleLieAlgebra {
public:
    struct Term {
        int index;
        Rational coeff;
    };

    SimpleLieAlgebra() = default;
    SimpleLieAlgebra(std::vector<std::string> names, int dim);

    int dim() const { return dim_; }
    const std::vector<std::string>& names() const { return names_; }
    void set_bracket(int i, int j, int k, const Rational& c);
    void set_form(int i, int j, const Rational& c);

    const std::vector<Term>& bracket_terms(int i, int j) const {
        return sc_[static_cast<std::size_t>(i * dim_ + j)];
    }
    const RMatrix& form() const { return form_; }

    Vec bracket(const Vec& x, const Vec& y) const;
    /// this += c * [x, y]
    void add_bracket(Vec& out, const Vec& x, const Vec& y, const Rational& c = Rational(1)) const;
    DiffPoly pairing(const Vec& x, const Vec& y) const;

    /// Antisymmetry, Jacobi identity, symmetry, invariance and nondegeneracy of the form.
    void validate() const;

private:
    int dim_ = 0;
    std::vector<std::string> names_;
    std::vector<std::vector<Term>> sc_;
    RMatrix form_;
};

/// Heisenberg splitting data for one residue class of principal degrees.
struct SliceSplit {
    std::vector<int> indices;          // basis indices allowed in the slice
    bool has_heisenberg = false;
    Vec heisenberg;                    // Lambda_d in full coordinates (if any)
    std::vector<Vec> image_basis;      // basis of im ad Lambda in the slice d-1
    RMatrix solve;                     // inverse of [Lambda_d | ad Lambda(image_basis)]
};

/// Twisted loop realization L(g, sigma_m) with the principal gradation, the
/// cyclic element and the principal Heisenberg subalgebra.
class LoopRealization {
public:
    /// Loads data/algebras/<type>.txt. Accepted names: "A1_1", "A2_1", "A2_2"
    /// and the spellings "A_1^(1)" etc.
    static std::shared_ptr<const LoopRealization> build(const std::string& type, int vertex = 0,
                                                        std::pair<int, int> window = {-64, 64});
    static std::shared_ptr<const LoopRealization> from_file(const std::string& path, int vertex = 0,
                                                            std::pair<int, int> window = {-64, 64});
    static std::string canonical_type(const std::string& type);

    const std::string& type() const { return type_; }
    const std::string& label() const { return label_; }
    const SimpleLieAlgebra& base() const { return g_; }
    int dim() const { return g_.dim(); }
    int vertex() const { return vertex_; }
    /// Number l + 1 of Chevalley generators minus one.
    int rank() const { return rank_; }
    int twist() const { return r_; }
    int coxeter() const { return h_; }
    int dual_coxeter() const { return hdual_; }
    /// N_m = r * a_m, the order of the twist.
    int order() const { return N_; }
    /// Principal degree of lambda: r h / N_m.
    int lambda_degree() const { return s_; }
    /// r h, the period of the exponents.
    int period() const { return r_ * h_; }
    std::pair<int, int> window() const { return window_; }

    int basis_degree(int i) const { return deg_[static_cast<std::size_t>(i)]; }
    int basis_class(int i) const { return cls_[static_cast<std::size_t>(i)]; }
    int min_basis_degree() const;
    int max_basis_degree() const;
    const RMatrix& sigma() const { return sigma_; }
    const std::vector<std::vector<int>>& cartan() const { return cartan_; }
    const std::vector<int>& kac_labels() const { return kac_; }
    const std::vector<int>& dual_kac_labels() const { return dual_kac_; }

    /// True if x_i * lambda^k with principal degree d exists (integral k, twist class).
    bool allowed(int degree, int i) const;
    int lambda_power(int degree, int i) const;
    int degree_of(int i, int power) const { return basis_degree(i) + s_ * power; }

    /// Exponents m_1 < ... < m_n within one period.
    const std::vector<int>& exponents() const { return exponents_; }
    int n_exponents() const { return static_cast<int>(exponents_.size()); }
    bool is_exponent(int degree) const;

    const Vec& e() const { return e_; }
    const Vec& f() const { return f_; }
    const Vec& rho() const { return rho_; }
    /// The degree-1 slice of Lambda(lambda) = e + e_m(lambda).
    const Vec& cyclic_slice() const { return cyclic_; }
    LoopElement cyclic() const;
    /// Lambda_{m_a}, a = 1..n.
    LoopElement heisenberg(int a) const;
    /// Lambda_i for any exponent i (using Lambda_{m_a + rhk} = Lambda_{m_a} lambda^{kN}).
    LoopElement heisenberg_element(int i) const;
    const std::vector<LoopElement>& chevalley(char kind) const;

    /// Named DS-type gauges: basis of V in finite coordinates.
    const std::map<std::string, std::vector<Vec>>& gauges() const { return gauges_; }

    LoopElement from_terms(const std::vector<LoopTerm>& terms) const;
    /// Finite element placed at lambda^0 (only twist class 0 entries allowed).
    LoopElement at_lambda0(const Vec& x) const;

    Vec bracket_slices(const Vec& x, const Vec& y) const { return g_.bracket(x, y); }
    Vec ad_cyclic(const Vec& x) const { return g_.bracket(cyclic_, x); }

    LoopElement bracket(const LoopElement& x, const LoopElement& y) const;
    Laurent bilinear(const LoopElement& x, const LoopElement& y) const;

    /// x = h + [Lambda, y] on one slice with h in H and y in im ad Lambda (slice d - 1).
    /// Returns the coefficient of Lambda_d (zero if d is not an exponent) and y.
    std::pair<DiffPoly, Vec> split_slice(int degree, const Vec& x) const;
    std::pair<LoopElement, LoopElement> heisenberg_split(const LoopElement& x) const;

    DegreeInfo principal_degree(const LoopElement& x) const;
    LoopElement project_plus(const LoopElement& x) const;
    LoopElement project_minus(const LoopElement& x) const;
    /// Multiplication by lambda^{k N_m}.
    LoopElement shift_lambda(const LoopElement& x, int k) const;
    /// Coefficient of lambda^power as a finite vector.
    Vec lambda_coefficient(const LoopElement& x, int power) const;
    /// Applies the window: drops entries with lambda powers outside it and flags the result.
    void clip(LoopElement& x) const;

    /// Residue checks performed at load time; callable again for reporting.
    void validate() const;

private:
    LoopRealization() = default;
    const SliceSplit& split_data(int degree) const;
    int residue(int degree) const;

    std::string type_, label_;
    SimpleLieAlgebra g_;
    int vertex_ = 0, rank_ = 0, r_ = 1, h_ = 0, hdual_ = 0, N_ = 1, s_ = 1;
    std::pair<int, int> window_{-64, 64};
    std::vector<int> deg_, cls_;
    RMatrix sigma_;
    std::vector<std::vector<int>> cartan_;
    std::vector<int> kac_, dual_kac_;
    std::vector<LoopElement> chev_e_, chev_f_, chev_h_;
    Vec e_, f_, rho_, top_, cyclic_;
    std::vector<int> exponents_;
    std::vector<LoopElement> heis_;
    std::map<std::string, std::vector<Vec>> gauges_;
    std::vector<SliceSplit> splits_;   // indexed by residue of the degree mod r h
};

using Realization = std::shared_ptr<const LoopRealization>;

/// pi_lambda: keeps lambda^k with k < 0 and k = -1 mod N.
Laurent pi_lambda(const Laurent& f, int order);
bool pi_lambda_keeps(int power, int order);

}  // namespace dstau
