#include "rhkit/qmatrix.hpp"

#include <sstream>
#include <stdexcept>

namespace rhkit {
namespace qlinalg {

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = Rational(1);
    return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows, std::size_t cols) {
    QMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw std::invalid_argument("QMatrix::from_rows: ragged input");
        for (std::size_t c = 0; c < cols; ++c)
            m.at(r, c) = rows[r][c];
    }
    return m;
}

QMatrix QMatrix::from_cols(const std::vector<QVector>& cols, std::size_t rows) {
    QMatrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows)
            throw std::invalid_argument("QMatrix::from_cols: ragged input");
        for (std::size_t r = 0; r < rows; ++r)
            m.at(r, c) = cols[c][r];
    }
    return m;
}

QVector QMatrix::row(std::size_t r) const {
    QVector v(cols_);
    for (std::size_t c = 0; c < cols_; ++c)
        v[c] = at(r, c);
    return v;
}

QVector QMatrix::col(std::size_t c) const {
    QVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v[r] = at(r, c);
    return v;
}

QMatrix QMatrix::transpose() const {
    QMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t.at(c, r) = at(r, c);
    return t;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
    if (cols_ != o.rows_)
        throw std::invalid_argument("QMatrix: shape mismatch in product");
    QMatrix p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& aik = at(i, k);
            if (aik.is_zero())
                continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                p.at(i, j) += aik * o.at(k, j);
        }
    return p;
}

QVector QMatrix::apply(const QVector& v) const {
    if (v.size() != cols_)
        throw std::invalid_argument("QMatrix::apply: length mismatch");
    QVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (!at(r, c).is_zero())
                out[r] += at(r, c) * v[c];
    return out;
}

bool QMatrix::is_zero() const {
    for (const auto& x : e_)
        if (!x.is_zero())
            return false;
    return true;
}

std::string QMatrix::str() const {
    std::ostringstream os;
    for (std::size_t r = 0; r < rows_; ++r) {
        os << '[';
        for (std::size_t c = 0; c < cols_; ++c)
            os << (c ? " " : "") << at(r, c).str();
        os << "]\n";
    }
    return os.str();
}

RrefResult rref(const QMatrix& m) {
    RrefResult out;
    out.r = m;
    QMatrix& a = out.r;
    std::size_t pr = 0;  // next pivot row
    for (std::size_t c = 0; c < a.cols() && pr < a.rows(); ++c) {
        std::size_t sel = a.rows();
        for (std::size_t r = pr; r < a.rows(); ++r)
            if (!a.at(r, c).is_zero()) { sel = r; break; }
        if (sel == a.rows())
            continue;
        if (sel != pr)
            for (std::size_t j = 0; j < a.cols(); ++j)
                std::swap(a.at(sel, j), a.at(pr, j));
        Rational inv = a.at(pr, c).inverse();
        for (std::size_t j = c; j < a.cols(); ++j)
            a.at(pr, j) *= inv;
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == pr || a.at(r, c).is_zero())
                continue;
            Rational f = a.at(r, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                a.at(r, j) -= f * a.at(pr, j);
        }
        out.pivots.push_back(c);
        ++pr;
    }
    out.rank = out.pivots.size();
    return out;
}

std::size_t rank(const QMatrix& m) {
    return rref(m).rank;
}

std::vector<QVector> kernel_basis(const QMatrix& m) {
    RrefResult rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : rr.pivots)
        is_pivot[c] = true;
    std::vector<QVector> out;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        QVector v(m.cols());
        v[f] = Rational(1);
        for (std::size_t i = 0; i < rr.pivots.size(); ++i)
            v[rr.pivots[i]] = -rr.r.at(i, f);
        // normalize first nonzero coordinate to 1
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (!v[j].is_zero()) {
                Rational inv = v[j].inverse();
                for (auto& x : v)
                    x *= inv;
                break;
            }
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<AffineSolution> solve_affine(const QMatrix& m, const QVector& b) {
    if (b.size() != m.rows())
        throw std::invalid_argument("solve_affine: rhs length mismatch");
    QMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c)
            aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols()) = b[r];
    }
    RrefResult rr = rref(aug);
    for (std::size_t c : rr.pivots)
        if (c == m.cols())
            return std::nullopt;  // pivot in the rhs column: inconsistent
    AffineSolution sol;
    sol.particular.assign(m.cols(), Rational(0));
    for (std::size_t i = 0; i < rr.pivots.size(); ++i)
        sol.particular[rr.pivots[i]] = rr.r.at(i, m.cols());
    sol.kernel = kernel_basis(m);
    return sol;
}

std::vector<QVector> span_basis(const std::vector<QVector>& rows, std::size_t dim) {
    SpanBuilder sb(dim);
    for (const auto& v : rows)
        sb.add(v);
    return sb.basis();
}

std::size_t span_rank(const std::vector<QVector>& rows, std::size_t dim) {
    SpanBuilder sb(dim);
    for (const auto& v : rows)
        sb.add(v);
    return sb.rank();
}

bool SpanBuilder::add(const QVector& v) {
    QVector r = reduce(v);
    std::size_t p = dim_;
    for (std::size_t j = 0; j < dim_; ++j)
        if (!r[j].is_zero()) { p = j; break; }
    if (p == dim_)
        return false;
    Rational inv = r[p].inverse();
    for (auto& x : r)
        x *= inv;
    // keep existing rows reduced against the new one
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (!basis_[i][p].is_zero())
            axpy(basis_[i], -basis_[i][p], r);
    }
    // insert sorted by pivot column
    std::size_t pos = 0;
    while (pos < pivcols_.size() && pivcols_[pos] < p)
        ++pos;
    basis_.insert(basis_.begin() + pos, std::move(r));
    pivcols_.insert(pivcols_.begin() + pos, p);
    return true;
}

QVector SpanBuilder::reduce(const QVector& v) const {
    if (v.size() != dim_)
        throw std::invalid_argument("SpanBuilder: dimension mismatch");
    QVector r = v;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const Rational& c = r[pivcols_[i]];
        if (!c.is_zero())
            axpy(r, -c, basis_[i]);
    }
    return r;
}

bool SpanBuilder::contains(const QVector& v) const {
    return vec_is_zero(reduce(v));
}

std::vector<QVector> SpanBuilder::complement() const {
    std::vector<bool> is_pivot(dim_, false);
    for (std::size_t c : pivcols_)
        is_pivot[c] = true;
    std::vector<QVector> out;
    for (std::size_t j = 0; j < dim_; ++j) {
        if (is_pivot[j])
            continue;
        QVector e(dim_);
        e[j] = Rational(1);
        out.push_back(std::move(e));
    }
    return out;
}

std::optional<QVector> coordinates_in(const std::vector<QVector>& basis, const QVector& v) {
    if (basis.empty())
        return vec_is_zero(v) ? std::optional<QVector>(QVector{}) : std::nullopt;
    QMatrix m = QMatrix::from_cols(basis, v.size());
    auto sol = solve_affine(m, v);
    if (!sol)
        return std::nullopt;
    return sol->particular;
}

QVector scaled(const QVector& v, const Rational& c) {
    QVector out = v;
    for (auto& x : out)
        x *= c;
    return out;
}

QVector vec_add(const QVector& a, const QVector& b) {
    QVector out = a;
    for (std::size_t i = 0; i < b.size(); ++i)
        out[i] += b[i];
    return out;
}

QVector vec_sub(const QVector& a, const QVector& b) {
    QVector out = a;
    for (std::size_t i = 0; i < b.size(); ++i)
        out[i] -= b[i];
    return out;
}

bool vec_is_zero(const QVector& v) {
    for (const auto& x : v)
        if (!x.is_zero())
            return false;
    return true;
}

void axpy(QVector& y, const Rational& c, const QVector& x) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!x[i].is_zero())
            y[i] += c * x[i];
}

}  // namespace qlinalg
}  // namespace rhkit
