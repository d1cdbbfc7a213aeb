#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rhkit/rational.hpp"

namespace rhkit {
namespace qlinalg {

// Dense matrix over Q, row-major. Immutable use after construction is the
// norm; the mutating accessors exist for building.
class QMatrix {
  public:
    QMatrix() : rows_(0), cols_(0) {}
    QMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}

    static QMatrix identity(std::size_t n);
    static QMatrix from_rows(const std::vector<QVector>& rows, std::size_t cols);
    static QMatrix from_cols(const std::vector<QVector>& cols, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const Rational& at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }
    Rational& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }

    QVector row(std::size_t r) const;
    QVector col(std::size_t c) const;

    QMatrix transpose() const;
    QMatrix operator*(const QMatrix& o) const;
    QVector apply(const QVector& v) const;  // M * v
    bool is_zero() const;

    friend bool operator==(const QMatrix& a, const QMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

    std::string str() const;

  private:
    std::size_t rows_, cols_;
    std::vector<Rational> e_;
};

struct RrefResult {
    QMatrix r;                        // reduced row-echelon form
    std::vector<std::size_t> pivots;  // pivot column indices, ascending
    std::size_t rank = 0;
};

// Gauss-Jordan with first-nonzero pivoting (scan top-to-bottom within each
// column, columns left-to-right); deterministic on all inputs.
RrefResult rref(const QMatrix& m);

std::size_t rank(const QMatrix& m);

// Basis of {v : M v = 0}. One vector per non-pivot column, each normalized
// so its first nonzero coordinate is 1. Deterministic.
std::vector<QVector> kernel_basis(const QMatrix& m);

struct AffineSolution {
    QVector particular;
    std::vector<QVector> kernel;
};

// Solves M x = b exactly. Returns nullopt when inconsistent.
// Throws std::invalid_argument when b has the wrong length.
std::optional<AffineSolution> solve_affine(const QMatrix& m, const QVector& b);

// Row space of `rows` as an rref basis (zero rows dropped).
std::vector<QVector> span_basis(const std::vector<QVector>& rows, std::size_t dim);

// Rank of a list of vectors.
std::size_t span_rank(const std::vector<QVector>& rows, std::size_t dim);

// Incremental span with membership queries; used for closures and for
// picking deterministic complements.
class SpanBuilder {
  public:
    explicit SpanBuilder(std::size_t dim) : dim_(dim) {}

    // Reduces v against the current basis; if a new pivot remains, absorbs
    // it and returns true.
    bool add(const QVector& v);
    bool contains(const QVector& v) const;
    QVector reduce(const QVector& v) const;  // residual after reduction
    std::size_t rank() const { return basis_.size(); }
    std::size_t dim() const { return dim_; }
    const std::vector<QVector>& basis() const { return basis_; }
    const std::vector<std::size_t>& pivot_cols() const { return pivcols_; }
    // Standard basis vectors at non-pivot coordinates.
    std::vector<QVector> complement() const;

  private:
    std::size_t dim_;
    std::vector<QVector> basis_;          // echelonized, pivot entry 1
    std::vector<std::size_t> pivcols_;
};

// Coordinates of v in the given independent spanning set (columns);
// nullopt if v is outside the span.
std::optional<QVector> coordinates_in(const std::vector<QVector>& basis, const QVector& v);

QVector scaled(const QVector& v, const Rational& c);
QVector vec_add(const QVector& a, const QVector& b);
QVector vec_sub(const QVector& a, const QVector& b);
bool vec_is_zero(const QVector& v);
void axpy(QVector& y, const Rational& c, const QVector& x);  // y += c*x

}  // namespace qlinalg

using qlinalg::QMatrix;
using qlinalg::RrefResult;
using qlinalg::SpanBuilder;

}  // namespace rhkit
