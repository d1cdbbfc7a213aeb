#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rhkit/qmatrix.hpp"
#include "rhkit/rational.hpp"

namespace rhkit {
namespace polyalg {

// Exponent vector; negative entries are allowed in Laurent mode.
using Exponents = std::vector<int>;

// Multivariate (optionally Laurent) polynomial over Q in named variables
// x1..xn (or t1..tn). Stored as exponent-vector -> coefficient with no zero
// coefficients kept.
class MultiPoly {
  public:
    MultiPoly() : nvars_(0) {}
    explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

    static MultiPoly constant(std::size_t nvars, const Rational& c);
    static MultiPoly variable(std::size_t nvars, std::size_t i);
    static MultiPoly monomial(std::size_t nvars, Exponents e, const Rational& c);

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_laurent() const;  // any negative exponent
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Exponents, Rational>& terms() const { return terms_; }

    void add_term(const Exponents& e, const Rational& c);

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator*(const Rational& c) const;
    MultiPoly operator-() const { return *this * Rational(-1); }
    MultiPoly pow(unsigned k) const;
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }
    // arbitrary but deterministic total order, for canonical generator lists
    friend bool operator<(const MultiPoly& a, const MultiPoly& b) {
        return a.terms_ < b.terms_;
    }

    int min_total_degree() const;  // throws on zero polynomial
    int max_total_degree() const;

    // Exact value at a rational point. Throws std::domain_error when a zero
    // coordinate meets a negative exponent.
    Rational evaluate(const QVector& point) const;

    // Substitutes x_i -> x_i + 1 and expands. Requires non-Laurent input.
    MultiPoly shift_to_origin() const;

    // Homogeneous component of minimal total degree. Throws on zero input.
    MultiPoly initial_form() const;

    // True iff f(exp(l*x1),...,exp(l*xn)) == 0 identically in l: groups the
    // terms by the rational key <exponents, x> and demands each group's
    // coefficient sum vanish.
    bool exp_direction_vanishes(const QVector& x) const;

    // Exact division by a monomial; throws std::domain_error if not exact.
    MultiPoly divide_by_monomial(const Exponents& m) const;

    // Leading coefficient made 1 (leading = grlex-largest term).
    MultiPoly monic() const;

    std::string str(const std::string& var_prefix = "x") const;

  private:
    std::size_t nvars_;
    std::map<Exponents, Rational> terms_;
};

struct LaurentClearing {
    MultiPoly cleared;   // f * x^shift, an ordinary polynomial
    Exponents shift;     // the minimal clearing monomial's exponents
};

// Multiplies by the minimal monomial making all exponents nonnegative.
LaurentClearing clear_laurent(const MultiPoly& f);

// Matrix over the polynomial ring.
class PolyMatrix {
  public:
    PolyMatrix() : rows_(0), cols_(0), nvars_(0) {}
    PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nvars() const { return nvars_; }

    const MultiPoly& at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }
    MultiPoly& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }

    PolyMatrix operator*(const PolyMatrix& o) const;
    PolyMatrix transpose() const;
    bool is_zero() const;
    QMatrix evaluate(const QVector& point) const;
    PolyMatrix submatrix_deleting(std::size_t row, std::size_t col) const;
    PolyMatrix minor_rows_cols(const std::vector<std::size_t>& rowset,
                               const std::vector<std::size_t>& colset) const;
    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

    std::string str(const std::string& var_prefix = "x") const;

  private:
    std::size_t rows_, cols_, nvars_;
    std::vector<MultiPoly> e_;
};

// Determinant by Laplace expansion with column-subset memoization.
MultiPoly determinant(const PolyMatrix& m);

// All k x k minors, in lexicographic order of (row-set, column-set).
std::vector<MultiPoly> minors(const PolyMatrix& m, std::size_t k);

// Pfaffian of an even skew-symmetric matrix, by recursive expansion along
// the first row; pf([[0,a],[-a,0]]) = a, pf of the 0x0 matrix = 1.
// Throws std::invalid_argument on odd size or non-skew input.
MultiPoly pfaffian(const PolyMatrix& m);

// ---- expression parsing ------------------------------------------------

// Small arithmetic AST shared by the polynomial literal syntax and the CDGA
// element expressions: +, -, *, /, ^, integers, named symbols.
struct Expr {
    enum class Kind { Number, Symbol, Add, Sub, Mul, Div, Neg, Pow };
    Kind kind = Kind::Number;
    Rational number;
    std::string symbol;
    std::shared_ptr<Expr> lhs, rhs;
    int exponent = 0;  // for Pow
};

// Parses the literal grammar; throws std::invalid_argument with a position
// on syntax errors.
Expr parse_expr(const std::string& text);

// Interprets symbols as x<k>/t<k> variables (1-based). If nvars == 0, the
// variable count is the largest index seen. Laurent exponents allowed.
MultiPoly parse_poly(const std::string& text, std::size_t nvars = 0);

}  // namespace polyalg

using polyalg::MultiPoly;
using polyalg::PolyMatrix;

}  // namespace rhkit
