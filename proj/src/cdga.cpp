#include "rhkit/cdga.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rhkit {
namespace cdga {

using qlinalg::axpy;
using qlinalg::coordinates_in;
using qlinalg::kernel_basis;
using qlinalg::solve_affine;
using qlinalg::vec_is_zero;

// ---- Element ---------------------------------------------------------------

const QVector& Element::at(std::size_t deg) const {
    static const QVector empty;
    return deg < comp.size() ? comp[deg] : empty;
}

bool Element::is_zero() const {
    for (const auto& v : comp)
        if (!vec_is_zero(v))
            return false;
    return true;
}

std::optional<std::size_t> Element::homogeneous_degree() const {
    std::optional<std::size_t> deg;
    for (std::size_t i = 0; i < comp.size(); ++i) {
        if (!vec_is_zero(comp[i])) {
            if (deg)
                return std::nullopt;
            deg = i;
        }
    }
    return deg ? deg : std::optional<std::size_t>(0);
}

// ---- FiniteCdga ------------------------------------------------------------

FiniteCdga::FiniteCdga(std::vector<std::vector<std::string>> basis,
                       std::vector<std::vector<MultTable>> mult,
                       std::vector<QMatrix> diff, std::string name)
    : basis_(std::move(basis)), mult_(std::move(mult)), diff_(std::move(diff)),
      name_(std::move(name)) {}

std::size_t FiniteCdga::total_dim() const {
    std::size_t n = 0;
    for (const auto& b : basis_)
        n += b.size();
    return n;
}

const std::vector<std::string>& FiniteCdga::basis_names(std::size_t deg) const {
    static const std::vector<std::string> empty;
    return deg < basis_.size() ? basis_[deg] : empty;
}

QVector FiniteCdga::multiply(std::size_t i, const QVector& a, std::size_t j,
                             const QVector& b) const {
    std::size_t n = i + j;
    if (n > top_degree())
        return QVector();
    QVector out(dim(n));
    const auto& table = mult_[i][j];
    for (std::size_t p = 0; p < a.size(); ++p) {
        if (a[p].is_zero())
            continue;
        for (std::size_t q = 0; q < b.size(); ++q) {
            if (b[q].is_zero())
                continue;
            Rational c = a[p] * b[q];
            axpy(out, c, table[p][q]);
        }
    }
    return out;
}

Element FiniteCdga::multiply(const Element& a, const Element& b) const {
    Element out;
    out.comp.assign(top_degree() + 1, QVector());
    for (std::size_t i = 0; i < a.comp.size(); ++i) {
        if (vec_is_zero(a.comp[i]))
            continue;
        for (std::size_t j = 0; j < b.comp.size(); ++j) {
            if (vec_is_zero(b.comp[j]) || i + j > top_degree())
                continue;
            QVector p = multiply(i, a.comp[i], j, b.comp[j]);
            if (out.comp[i + j].empty())
                out.comp[i + j].assign(dim(i + j), Rational(0));
            for (std::size_t k = 0; k < p.size(); ++k)
                out.comp[i + j][k] += p[k];
        }
    }
    return out;
}

const QMatrix& FiniteCdga::diff(std::size_t i) const {
    static const QMatrix empty;
    return i < diff_.size() ? diff_[i] : empty;
}

QVector FiniteCdga::apply_diff(std::size_t i, const QVector& a) const {
    return diff(i).apply(a);
}

QMatrix FiniteCdga::left_mult_matrix(const QVector& w, std::size_t i) const {
    QMatrix m(dim(i + 1), dim(i));
    if (i + 1 > top_degree())
        return m;
    for (std::size_t b = 0; b < dim(i); ++b) {
        QVector eb(dim(i));
        eb[b] = Rational(1);
        QVector prod = multiply(1, w, i, eb);
        for (std::size_t r = 0; r < prod.size(); ++r)
            m.at(r, b) = prod[r];
    }
    return m;
}

std::optional<std::string> FiniteCdga::check() const {
    std::size_t T = top_degree();
    if (basis_.empty() || basis_[0].size() != 1)
        return "connectedness: A^0 must be one-dimensional (unit span)";
    // unit is a two-sided identity
    QVector one{Rational(1)};
    for (std::size_t j = 0; j <= T; ++j) {
        for (std::size_t b = 0; b < dim(j); ++b) {
            QVector eb(dim(j));
            eb[b] = Rational(1);
            if (multiply(0, one, j, eb) != eb)
                return "non-unital: 1*" + basis_[j][b] + " != " + basis_[j][b];
            if (multiply(j, eb, 0, one) != eb)
                return "non-unital: " + basis_[j][b] + "*1 != " + basis_[j][b];
        }
    }
    // graded commutativity
    for (std::size_t i = 0; i <= T; ++i)
        for (std::size_t j = i; i + j <= T; ++j)
            for (std::size_t a = 0; a < dim(i); ++a)
                for (std::size_t b = 0; b < dim(j); ++b) {
                    QVector ea(dim(i)), eb(dim(j));
                    ea[a] = Rational(1);
                    eb[b] = Rational(1);
                    QVector ab = multiply(i, ea, j, eb);
                    QVector ba = multiply(j, eb, i, ea);
                    Rational sign((i * j) % 2 == 0 ? 1 : -1);
                    if (ab != qlinalg::scaled(ba, sign))
                        return "graded-commutativity: " + basis_[i][a] + "*" +
                               basis_[j][b] + " != (-1)^{" + std::to_string(i * j) +
                               "} " + basis_[j][b] + "*" + basis_[i][a];
                }
    // associativity
    for (std::size_t i = 0; i <= T; ++i)
        for (std::size_t j = 0; i + j <= T; ++j)
            for (std::size_t k = 0; i + j + k <= T; ++k)
                for (std::size_t a = 0; a < dim(i); ++a)
                    for (std::size_t b = 0; b < dim(j); ++b)
                        for (std::size_t c = 0; c < dim(k); ++c) {
                            QVector ea(dim(i)), eb(dim(j)), ec(dim(k));
                            ea[a] = Rational(1);
                            eb[b] = Rational(1);
                            ec[c] = Rational(1);
                            QVector lhs = multiply(i + j, multiply(i, ea, j, eb), k, ec);
                            QVector rhs = multiply(i, ea, j + k, multiply(j, eb, k, ec));
                            if (lhs != rhs)
                                return "non-associative: (" + basis_[i][a] + "*" +
                                       basis_[j][b] + ")*" + basis_[k][c];
                        }
    // d^2 = 0
    for (std::size_t i = 0; i + 1 < diff_.size(); ++i) {
        QMatrix dd = diff_[i + 1] * diff_[i];
        if (!dd.is_zero()) {
            for (std::size_t b = 0; b < dim(i); ++b)
                if (!vec_is_zero(dd.col(b)))
                    return "d^2 != 0 on " + basis_[i][b];
        }
    }
    // graded Leibniz, d(ab) = (da)b + (-1)^{|a|} a(db), for i+j < T
    for (std::size_t i = 0; i <= T; ++i)
        for (std::size_t j = 0; i + j < T; ++j)
            for (std::size_t a = 0; a < dim(i); ++a)
                for (std::size_t b = 0; b < dim(j); ++b) {
                    QVector ea(dim(i)), eb(dim(j));
                    ea[a] = Rational(1);
                    eb[b] = Rational(1);
                    QVector lhs = apply_diff(i + j, multiply(i, ea, j, eb));
                    QVector rhs = multiply(i + 1, apply_diff(i, ea), j, eb);
                    QVector t2 = multiply(i, ea, j + 1, apply_diff(j, eb));
                    Rational sign(i % 2 == 0 ? 1 : -1);
                    axpy(rhs, sign, t2);
                    if (lhs != rhs)
                        return "Leibniz failure on " + basis_[i][a] + "*" + basis_[j][b];
                }
    return std::nullopt;
}

std::string FiniteCdga::element_str(std::size_t deg, const QVector& coords) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t b = 0; b < coords.size(); ++b) {
        if (coords[b].is_zero())
            continue;
        Rational c = coords[b];
        if (first) {
            if (c.sign() < 0) { os << "-"; c = -c; }
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
            if (c.sign() < 0) c = -c;
        }
        first = false;
        if (!c.is_one())
            os << c.str() << "*";
        os << basis_[deg][b];
    }
    if (first)
        return "0";
    return os.str();
}

std::string FiniteCdga::element_str(const Element& e) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t d = 0; d < e.comp.size(); ++d) {
        if (vec_is_zero(e.comp[d]))
            continue;
        std::string part = element_str(d, e.comp[d]);
        if (!first)
            os << " + ";
        os << part;
        first = false;
    }
    return first ? "0" : os.str();
}

const FiniteCdga& checked(const FiniteCdga& a) {
    if (auto bad = a.check())
        throw std::invalid_argument("invalid CDGA" +
                                    (a.name().empty() ? std::string() : " '" + a.name() + "'") +
                                    ": " + *bad);
    return a;
}

// ---- cohomology ------------------------------------------------------------

CohomologyBasis cohomology(const FiniteCdga& a, std::size_t i) {
    if (i > a.top_degree())
        throw std::out_of_range("cohomology: degree above top_degree");
    CohomologyBasis out;
    out.degree = i;
    std::vector<QVector> z = kernel_basis(a.diff(i));
    SpanBuilder b(a.dim(i));
    if (i >= 1) {
        const QMatrix& d = a.diff(i - 1);
        for (std::size_t c = 0; c < d.cols(); ++c)
            b.add(d.col(c));
    }
    out.boundary_basis = b.basis();
    SpanBuilder sb(a.dim(i));
    for (const auto& v : out.boundary_basis)
        sb.add(v);
    for (const auto& zc : z) {
        if (sb.add(zc))
            out.classes.push_back(CohomologyClass{i, zc, &a});
    }
    out.betti = out.classes.size();
    return out;
}

std::size_t betti(const FiniteCdga& a, std::size_t i) {
    if (i > a.top_degree())
        return 0;
    std::size_t zdim = a.dim(i) - qlinalg::rank(a.diff(i));
    std::size_t bdim = i >= 1 ? qlinalg::rank(a.diff(i - 1)) : 0;
    return zdim - bdim;
}

std::optional<QVector> class_coordinates(const FiniteCdga& a, const CohomologyBasis& h,
                                         const QVector& z) {
    if (!vec_is_zero(a.apply_diff(h.degree, z)))
        return std::nullopt;
    std::vector<QVector> cols = h.boundary_basis;
    for (const auto& c : h.classes)
        cols.push_back(c.representative);
    if (cols.empty())
        return QVector();
    auto sol = solve_affine(QMatrix::from_cols(cols, a.dim(h.degree)), z);
    if (!sol)
        throw std::logic_error("class_coordinates: cocycle outside Z (internal)");
    QVector out(h.betti);
    for (std::size_t k = 0; k < h.betti; ++k)
        out[k] = sol->particular[h.boundary_basis.size() + k];
    return out;
}

// ---- truncation ------------------------------------------------------------

namespace {

// naive degree cap: A / A^{> q+1}
FiniteCdga naive_truncation(const FiniteCdga& a, std::size_t q1) {
    std::vector<std::vector<std::string>> basis;
    for (std::size_t d = 0; d <= q1 && d <= a.top_degree(); ++d)
        basis.push_back(a.basis_names(d));
    std::size_t T = basis.size() - 1;
    std::vector<std::vector<MultTable>> mult(T + 1);
    for (std::size_t i = 0; i <= T; ++i) {
        mult[i].resize(T - i + 1);
        for (std::size_t j = 0; i + j <= T; ++j) {
            mult[i][j].assign(basis[i].size(),
                              std::vector<QVector>(basis[j].size(), QVector(basis[i + j].size())));
            for (std::size_t p = 0; p < basis[i].size(); ++p)
                for (std::size_t r = 0; r < basis[j].size(); ++r) {
                    QVector ea(a.dim(i)), eb(a.dim(j));
                    ea[p] = Rational(1);
                    eb[r] = Rational(1);
                    mult[i][j][p][r] = a.multiply(i, ea, j, eb);
                }
        }
    }
    std::vector<QMatrix> diff(T + 1);
    for (std::size_t i = 0; i < T; ++i)
        diff[i] = a.diff(i);
    diff[T] = QMatrix(0, basis[T].size());  // degree T+1 is gone
    return FiniteCdga(std::move(basis), std::move(mult), std::move(diff),
                      a.name() + "[<=" + std::to_string(q1) + "]");
}

}  // namespace

FiniteCdga truncate(const FiniteCdga& a, std::size_t q) {
    if (q >= a.top_degree())
        throw std::invalid_argument("truncate: q must be below top_degree");
    // subspace W = d A^q + sum_{i+j=q+1, i,j<=q} A^i A^j inside A^{q+1}
    SpanBuilder w(a.dim(q + 1));
    const QMatrix& dq = a.diff(q);
    for (std::size_t c = 0; c < dq.cols(); ++c)
        w.add(dq.col(c));
    for (std::size_t i = 1; i <= q; ++i) {
        std::size_t j = q + 1 - i;
        if (j < 1 || j > q)
            continue;
        for (std::size_t p = 0; p < a.dim(i); ++p)
            for (std::size_t r = 0; r < a.dim(j); ++r) {
                QVector ea(a.dim(i)), eb(a.dim(j));
                ea[p] = Rational(1);
                eb[r] = Rational(1);
                w.add(a.multiply(i, ea, j, eb));
            }
    }
    std::vector<QVector> wbasis = w.basis();

    std::vector<std::vector<std::string>> basis;
    for (std::size_t d = 0; d <= q; ++d)
        basis.push_back(a.basis_names(d));
    std::vector<std::string> wnames;
    for (std::size_t k = 0; k < wbasis.size(); ++k)
        wnames.push_back("w" + std::to_string(k + 1));
    basis.push_back(wnames);

    std::size_t T = q + 1;
    auto in_w_coords = [&](const QVector& v) {
        auto c = coordinates_in(wbasis, v);
        if (!c)
            throw std::logic_error("truncate: product escaped the degree-(q+1) span");
        return *c;
    };

    std::vector<std::vector<MultTable>> mult(T + 1);
    for (std::size_t i = 0; i <= T; ++i) {
        mult[i].resize(T - i + 1);
        for (std::size_t j = 0; i + j <= T; ++j) {
            std::size_t di = basis[i].size(), dj = basis[j].size(), dn = basis[i + j].size();
            mult[i][j].assign(di, std::vector<QVector>(dj, QVector(dn)));
            for (std::size_t p = 0; p < di; ++p)
                for (std::size_t r = 0; r < dj; ++r) {
                    // lift to A, multiply there, express in the new basis
                    QVector ea = (i == T) ? wbasis[p]
                                          : [&] { QVector v(a.dim(i)); v[p] = Rational(1); return v; }();
                    QVector eb = (j == T) ? wbasis[r]
                                          : [&] { QVector v(a.dim(j)); v[r] = Rational(1); return v; }();
                    QVector prod = a.multiply(i, ea, j, eb);
                    if (i + j == T)
                        mult[i][j][p][r] = in_w_coords(prod);
                    else
                        mult[i][j][p][r] = prod;
                }
        }
    }
    std::vector<QMatrix> diff(T + 1);
    for (std::size_t i = 0; i + 1 <= q; ++i)
        diff[i] = a.diff(i);
    // d : A^q -> W
    QMatrix dq_w(wbasis.size(), a.dim(q));
    for (std::size_t c = 0; c < a.dim(q); ++c) {
        QVector col = in_w_coords(dq.col(c));
        for (std::size_t r = 0; r < col.size(); ++r)
            dq_w.at(r, c) = col[r];
    }
    diff[q] = dq_w;
    diff[T] = QMatrix(0, wbasis.size());
    FiniteCdga out(std::move(basis), std::move(mult), std::move(diff),
                   a.name() + "[" + std::to_string(q) + "]");

    // inclusion into the naive truncation: isomorphism on H^{<=q}, mono in q+1
    FiniteCdga bar = naive_truncation(a, q + 1);
    for (std::size_t i = 0; i <= q; ++i)
        if (betti(out, i) != betti(bar, i))
            throw std::logic_error("truncate: Betti mismatch below q (internal)");
    CohomologyBasis hq1 = cohomology(out, q + 1);
    CohomologyBasis hq1bar = cohomology(bar, q + 1);
    std::vector<QVector> images;
    for (const auto& c : hq1.classes) {
        QVector amb(a.dim(q + 1));
        for (std::size_t k = 0; k < wbasis.size(); ++k)
            axpy(amb, c.representative[k], wbasis[k]);
        auto coords = class_coordinates(bar, hq1bar, amb);
        if (!coords)
            throw std::logic_error("truncate: image not a cocycle (internal)");
        images.push_back(*coords);
    }
    if (!images.empty()) {
        if (qlinalg::span_rank(images, hq1bar.betti) != images.size())
            throw std::logic_error("truncate: inclusion not injective on H^{q+1} (internal)");
    }
    return out;
}

// ---- tensor product --------------------------------------------------------

namespace {

struct PairIndex {
    // per total degree: list of (p, a, b) with p the A-degree
    std::vector<std::vector<std::array<std::size_t, 3>>> items;
    std::vector<std::map<std::array<std::size_t, 3>, std::size_t>> pos;
};

PairIndex build_pairs(const FiniteCdga& a, const FiniteCdga& b, std::size_t top) {
    PairIndex idx;
    idx.items.resize(top + 1);
    idx.pos.resize(top + 1);
    for (std::size_t n = 0; n <= top; ++n) {
        for (std::size_t p = 0; p <= n; ++p) {
            std::size_t q = n - p;
            for (std::size_t x = 0; x < a.dim(p); ++x)
                for (std::size_t y = 0; y < b.dim(q); ++y) {
                    idx.pos[n][{p, x, y}] = idx.items[n].size();
                    idx.items[n].push_back({p, x, y});
                }
        }
    }
    return idx;
}

}  // namespace

FiniteCdga tensor(const FiniteCdga& a, const FiniteCdga& b) {
    std::size_t top = a.top_degree() + b.top_degree();
    PairIndex idx = build_pairs(a, b, top);

    std::vector<std::vector<std::string>> basis(top + 1);
    for (std::size_t n = 0; n <= top; ++n)
        for (const auto& [p, x, y] : idx.items[n])
            basis[n].push_back(a.basis_names(p)[x] + "." + b.basis_names(n - p)[y]);

    std::vector<std::vector<MultTable>> mult(top + 1);
    for (std::size_t i = 0; i <= top; ++i) {
        mult[i].resize(top - i + 1);
        for (std::size_t j = 0; i + j <= top; ++j) {
            std::size_t n = i + j;
            mult[i][j].assign(idx.items[i].size(),
                              std::vector<QVector>(idx.items[j].size(),
                                                   QVector(idx.items[n].size())));
            for (std::size_t u = 0; u < idx.items[i].size(); ++u) {
                auto [p, x, y] = idx.items[i][u];
                std::size_t q = i - p;
                for (std::size_t v = 0; v < idx.items[j].size(); ++v) {
                    auto [pp, xx, yy] = idx.items[j][v];
                    std::size_t qq = j - pp;
                    if (p + pp > a.top_degree() || q + qq > b.top_degree())
                        continue;
                    QVector ea(a.dim(p)), eaa(a.dim(pp));
                    ea[x] = Rational(1);
                    eaa[xx] = Rational(1);
                    QVector pa = a.multiply(p, ea, pp, eaa);
                    QVector eb(b.dim(q)), ebb(b.dim(qq));
                    eb[y] = Rational(1);
                    ebb[yy] = Rational(1);
                    QVector pb = b.multiply(q, eb, qq, ebb);
                    Rational sign((q * pp) % 2 == 0 ? 1 : -1);
                    QVector& out = mult[i][j][u][v];
                    for (std::size_t r = 0; r < pa.size(); ++r) {
                        if (pa[r].is_zero())
                            continue;
                        for (std::size_t s = 0; s < pb.size(); ++s) {
                            if (pb[s].is_zero())
                                continue;
                            std::size_t target = idx.pos[n].at({p + pp, r, s});
                            out[target] += sign * pa[r] * pb[s];
                        }
                    }
                }
            }
        }
    }

    std::vector<QMatrix> diff(top + 1);
    for (std::size_t n = 0; n <= top; ++n) {
        std::size_t rows = n + 1 <= top ? idx.items[n + 1].size() : 0;
        QMatrix d(rows, idx.items[n].size());
        if (rows) {
            for (std::size_t u = 0; u < idx.items[n].size(); ++u) {
                auto [p, x, y] = idx.items[n][u];
                std::size_t q = n - p;
                QVector ea(a.dim(p));
                ea[x] = Rational(1);
                QVector da = a.apply_diff(p, ea);
                for (std::size_t r = 0; r < da.size(); ++r)
                    if (!da[r].is_zero())
                        d.at(idx.pos[n + 1].at({p + 1, r, y}), u) += da[r];
                QVector eb(b.dim(q));
                eb[y] = Rational(1);
                QVector db = b.apply_diff(q, eb);
                Rational sign(p % 2 == 0 ? 1 : -1);
                for (std::size_t s = 0; s < db.size(); ++s)
                    if (!db[s].is_zero())
                        d.at(idx.pos[n + 1].at({p, x, s}), u) += sign * db[s];
            }
        }
        diff[n] = d;
    }
    return FiniteCdga(std::move(basis), std::move(mult), std::move(diff),
                      a.name() + "(x)" + b.name());
}

// ---- Hirsch extensions -----------------------------------------------------

namespace {

int subset_merge_sign(unsigned s, unsigned r) {
    // sign of sorting the concatenation (s-elements ascending, then
    // r-elements ascending); all generators odd, so each crossing is -1
    int inv = 0;
    for (unsigned i = 0; i < 32; ++i) {
        if (!(s & (1u << i)))
            continue;
        for (unsigned j = 0; j < i; ++j)
            if (r & (1u << j))
                ++inv;
    }
    return inv % 2 == 0 ? 1 : -1;
}

}  // namespace

FiniteCdga hirsch_extension(const FiniteCdga& a, const std::vector<HirschGenerator>& gens) {
    std::size_t r = gens.size();
    if (r > 20)
        throw std::invalid_argument("hirsch_extension: too many generators");
    std::size_t vdeg_total = 0;
    bool same_degree = true;
    for (std::size_t k = 0; k < r; ++k) {
        const auto& g = gens[k];
        if (g.degree % 2 == 0)
            throw std::invalid_argument("hirsch_extension: generator '" + g.name +
                                        "' has even degree");
        if (g.tau.size() != a.dim(g.degree + 1))
            throw std::invalid_argument("hirsch_extension: tau for '" + g.name +
                                        "' has the wrong degree");
        if (!vec_is_zero(a.apply_diff(g.degree + 1, g.tau)))
            throw std::invalid_argument("hirsch_extension: tau for '" + g.name +
                                        "' is not a cocycle");
        vdeg_total += g.degree;
        if (g.degree != gens[0].degree)
            same_degree = false;
    }
    std::size_t top = a.top_degree() + vdeg_total;

    auto subset_degree = [&](unsigned s) {
        std::size_t d = 0;
        for (std::size_t k = 0; k < r; ++k)
            if (s & (1u << k))
                d += gens[k].degree;
        return d;
    };
    auto subset_name = [&](unsigned s) {
        std::string n;
        for (std::size_t k = 0; k < r; ++k)
            if (s & (1u << k))
                n += (n.empty() ? "" : "*") + gens[k].name;
        return n;
    };

    // basis of degree n: (mask ascending, A-basis index ascending)
    struct Item { unsigned mask; std::size_t adeg, aidx; };
    std::vector<std::vector<Item>> items(top + 1);
    std::vector<std::map<std::pair<unsigned, std::size_t>, std::size_t>> pos(top + 1);
    for (unsigned s = 0; s < (1u << r); ++s) {
        std::size_t sd = subset_degree(s);
        for (std::size_t p = 0; p + sd <= top && p <= a.top_degree(); ++p)
            for (std::size_t x = 0; x < a.dim(p); ++x) {
                std::size_t n = p + sd;
                pos[n][{s, x}] = items[n].size();
                items[n].push_back({s, p, x});
            }
    }
    std::vector<std::vector<std::string>> basis(top + 1);
    for (std::size_t n = 0; n <= top; ++n)
        for (const auto& it : items[n]) {
            std::string an = a.basis_names(it.adeg)[it.aidx];
            std::string sn = subset_name(it.mask);
            basis[n].push_back(sn.empty() ? an : (an == "1" ? sn : an + "*" + sn));
        }

    std::vector<std::vector<MultTable>> mult(top + 1);
    for (std::size_t i = 0; i <= top; ++i) {
        mult[i].resize(top - i + 1);
        for (std::size_t j = 0; i + j <= top; ++j) {
            std::size_t n = i + j;
            mult[i][j].assign(items[i].size(),
                              std::vector<QVector>(items[j].size(), QVector(items[n].size())));
            for (std::size_t u = 0; u < items[i].size(); ++u) {
                const Item& iu = items[i][u];
                for (std::size_t v = 0; v < items[j].size(); ++v) {
                    const Item& iv = items[j][v];
                    if (iu.mask & iv.mask)
                        continue;
                    if (iu.adeg + iv.adeg > a.top_degree())
                        continue;
                    // (a (x) t_S)(b (x) t_R) = (-1)^{|t_S||b|} sgn(S,R) ab (x) t_{S u R}
                    QVector ea(a.dim(iu.adeg)), eb(a.dim(iv.adeg));
                    ea[iu.aidx] = Rational(1);
                    eb[iv.aidx] = Rational(1);
                    QVector ab = a.multiply(iu.adeg, ea, iv.adeg, eb);
                    int sign = subset_merge_sign(iu.mask, iv.mask);
                    if ((subset_degree(iu.mask) * iv.adeg) % 2 != 0)
                        sign = -sign;
                    unsigned m = iu.mask | iv.mask;
                    QVector& out = mult[i][j][u][v];
                    for (std::size_t w = 0; w < ab.size(); ++w)
                        if (!ab[w].is_zero())
                            out[pos[n].at({m, w})] += Rational(sign) * ab[w];
                }
            }
        }
    }

    std::vector<QMatrix> diff(top + 1);
    for (std::size_t n = 0; n <= top; ++n) {
        std::size_t rows = n + 1 <= top ? items[n + 1].size() : 0;
        QMatrix d(rows, items[n].size());
        if (rows) {
            for (std::size_t u = 0; u < items[n].size(); ++u) {
                const Item& it = items[n][u];
                // da (x) t_S
                QVector ea(a.dim(it.adeg));
                ea[it.aidx] = Rational(1);
                QVector da = a.apply_diff(it.adeg, ea);
                for (std::size_t w = 0; w < da.size(); ++w)
                    if (!da[w].is_zero())
                        d.at(pos[n + 1].at({it.mask, w}), u) += da[w];
                // (-1)^{|a|} sum_j +- (a tau_kj) (x) t_{S \ kj}
                Rational abar(it.adeg % 2 == 0 ? 1 : -1);
                int run = 1;  // (-1)^{sum of earlier odd degrees} = alternating
                for (std::size_t k = 0; k < r; ++k) {
                    if (!(it.mask & (1u << k))) {
                        continue;
                    }
                    QVector at = a.multiply(it.adeg, ea, gens[k].degree + 1, gens[k].tau);
                    if (!at.empty()) {
                        unsigned m = it.mask & ~(1u << k);
                        Rational c = abar * Rational(run);
                        for (std::size_t w = 0; w < at.size(); ++w)
                            if (!at[w].is_zero())
                                d.at(pos[n + 1].at({m, w}), u) += c * at[w];
                    }
                    run = -run;
                }
            }
        }
        diff[n] = d;
    }
    FiniteCdga out(std::move(basis), std::move(mult), std::move(diff),
                   a.name() + "(x)/\\V");

    if (same_degree && r > 0) {
        // Hirsch extension in degree n+1: the inclusion is an n-quasi-iso
        std::size_t ndeg = gens[0].degree - 1;
        for (std::size_t i = 0; i <= ndeg && i <= a.top_degree(); ++i)
            if (betti(a, i) != betti(out, i))
                throw std::logic_error("hirsch_extension: Betti changed below the extension degree");
        if (ndeg + 1 <= a.top_degree()) {
            CohomologyBasis ha = cohomology(a, ndeg + 1);
            CohomologyBasis he = cohomology(out, ndeg + 1);
            std::vector<QVector> images;
            for (const auto& c : ha.classes) {
                QVector amb(items[ndeg + 1].size());
                for (std::size_t w = 0; w < c.representative.size(); ++w)
                    if (!c.representative[w].is_zero())
                        amb[pos[ndeg + 1].at({0u, w})] = c.representative[w];
                auto coords = class_coordinates(out, he, amb);
                if (!coords)
                    throw std::logic_error("hirsch_extension: inclusion image not closed");
                images.push_back(*coords);
            }
            if (!images.empty() &&
                qlinalg::span_rank(images, he.betti) != images.size())
                throw std::logic_error("hirsch_extension: H^{n+1} map not injective");
        }
    }
    return out;
}

// ---- twisted differential ---------------------------------------------------

TwistedDifferential twist(const FiniteCdga& a, const QVector& omega) {
    if (omega.size() != a.dim(1))
        throw std::invalid_argument("twist: omega must live in A^1");
    if (!vec_is_zero(a.apply_diff(1, omega)))
        throw std::invalid_argument("twist: omega is not a 1-cocycle");
    TwistedDifferential t;
    t.mats.resize(a.top_degree() + 1);
    for (std::size_t i = 0; i <= a.top_degree(); ++i) {
        QMatrix m = a.left_mult_matrix(omega, i);
        const QMatrix& d = a.diff(i);
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                m.at(r, c) += d.rows() ? d.at(r, c) : Rational(0);
        t.mats[i] = m;
    }
    for (std::size_t i = 0; i + 1 < t.mats.size(); ++i)
        if (!(t.mats[i + 1] * t.mats[i]).is_zero())
            throw std::logic_error("twist: (d_omega)^2 != 0 (internal)");
    return t;
}

std::size_t twisted_betti(const FiniteCdga& a, const TwistedDifferential& t, std::size_t i) {
    if (i > a.top_degree())
        return 0;
    std::size_t zdim = a.dim(i) - qlinalg::rank(t.mats[i]);
    std::size_t bdim = i >= 1 ? qlinalg::rank(t.mats[i - 1]) : 0;
    return zdim - bdim;
}

// ---- Poincare duality --------------------------------------------------------

PdVerdict pd_check(const FiniteCdga& a, std::size_t n) {
    PdVerdict v;
    for (std::size_t i = n + 1; i <= a.top_degree(); ++i)
        if (a.dim(i) != 0) {
            v.reason = "A^" + std::to_string(i) + " nonzero above n";
            return v;
        }
    if (a.dim(n) != 1) {
        v.reason = "dim A^n != 1";
        return v;
    }
    for (std::size_t i = 0; 2 * i <= n; ++i) {
        std::size_t j = n - i;
        if (a.dim(i) != a.dim(j)) {
            v.reason = "dim A^" + std::to_string(i) + " != dim A^" + std::to_string(j);
            return v;
        }
        QMatrix pairing(a.dim(i), a.dim(j));
        for (std::size_t p = 0; p < a.dim(i); ++p)
            for (std::size_t q = 0; q < a.dim(j); ++q) {
                QVector ea(a.dim(i)), eb(a.dim(j));
                ea[p] = Rational(1);
                eb[q] = Rational(1);
                QVector prod = a.multiply(i, ea, j, eb);
                pairing.at(p, q) = prod.empty() ? Rational(0) : prod[0];
            }
        if (qlinalg::rank(pairing) != a.dim(i)) {
            v.reason = "pairing A^" + std::to_string(i) + " x A^" + std::to_string(j) +
                       " degenerate";
            return v;
        }
    }
    if (n >= 1 && !a.diff(n - 1).is_zero()) {
        v.reason = "d A^{n-1} != 0";
        return v;
    }
    v.ok = true;
    v.fundamental = QVector{Rational(1)};
    return v;
}

// ---- Lie structures ----------------------------------------------------------

QVector LieStructure::apply(const QVector& u, const QVector& v) const {
    QVector out(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        if (u[i].is_zero())
            continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (v[j].is_zero())
                continue;
            axpy(out, u[i] * v[j], bracket[i][j]);
        }
    }
    return out;
}

std::optional<std::string> LieStructure::check() const {
    std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            QVector s = bracket[i][j];
            for (std::size_t k = 0; k < n; ++k)
                s[k] += bracket[j][i][k];
            if (!vec_is_zero(s))
                return "antisymmetry fails on [" + names[i] + "," + names[j] + "]";
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                QVector ei(n), ej(n), ek(n);
                ei[i] = Rational(1);
                ej[j] = Rational(1);
                ek[k] = Rational(1);
                QVector s = apply(apply(ei, ej), ek);
                QVector t = apply(apply(ej, ek), ei);
                QVector u = apply(apply(ek, ei), ej);
                for (std::size_t w = 0; w < n; ++w)
                    s[w] += t[w] + u[w];
                if (!vec_is_zero(s))
                    return "Jacobi fails on (" + names[i] + "," + names[j] + "," +
                           names[k] + ")";
            }
    return std::nullopt;
}

LieStructure LieStructure::abelian(std::size_t n) {
    LieStructure g;
    for (std::size_t i = 0; i < n; ++i)
        g.names.push_back("e" + std::to_string(i + 1));
    g.bracket.assign(n, std::vector<QVector>(n, QVector(n)));
    return g;
}

// ---- Chevalley-Eilenberg ------------------------------------------------------

FiniteCdga chevalley_eilenberg(const LieStructure& g, std::size_t cap, bool check_jacobi) {
    if (check_jacobi) {
        if (auto bad = g.check())
            throw std::invalid_argument("chevalley_eilenberg: " + *bad);
    }
    std::size_t n = g.dim();
    std::size_t top = std::min(cap, n);
    std::vector<SemifreeGenerator> gens(n);
    for (std::size_t i = 0; i < n; ++i)
        gens[i] = SemifreeGenerator{g.names[i], 1, ""};
    // d a_k = sum_{i<j} c_ij^k a_i a_j, dual to the bracket through
    // <[x_i,x_j], a_k> = <x_i ^ x_j, d a_k>. The degree-2 monomials of the
    // builder are exactly (a_i a_j) with i < j, in that order.
    std::size_t d2 = 0;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (top >= 2) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                pairs.push_back({i, j});
        d2 = pairs.size();
    }
    std::vector<QVector> images(n, QVector(d2));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t t = 0; t < pairs.size(); ++t) {
            auto [i, j] = pairs[t];
            images[k][t] = g.bracket[i][j][k];
        }
    FiniteCdga ce = semifree_cdga_with_images(gens, top, images, "CE");
    if (check_jacobi) {
        for (std::size_t i = 0; i + 1 <= ce.top_degree(); ++i)
            if (!(ce.diff(i + 1) * ce.diff(i)).is_zero())
                throw std::logic_error("chevalley_eilenberg: d^2 != 0 despite Jacobi");
    }
    return ce;
}

FiniteCdga chevalley_eilenberg(const LieStructure& g) {
    return chevalley_eilenberg(g, g.dim());
}

// ---- Maurer-Cartan -------------------------------------------------------------

bool maurer_cartan_check(const FiniteCdga& a, const LieStructure& g, const QMatrix& omega) {
    if (omega.rows() != a.dim(1) || omega.cols() != g.dim())
        throw std::invalid_argument("maurer_cartan_check: omega shape mismatch");
    std::size_t d2 = a.dim(2);
    std::size_t n = a.dim(1);
    std::size_t m = g.dim();
    // result[w][k] over A^2 (x) g
    std::vector<QVector> res(d2, QVector(m));
    const QMatrix& d1 = a.diff(1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            if (omega.at(i, k).is_zero())
                continue;
            for (std::size_t w = 0; w < d2; ++w)
                if (d1.rows() && !d1.at(w, i).is_zero())
                    res[w][k] += d1.at(w, i) * omega.at(i, k);
        }
    Rational half(1, 2);
    for (std::size_t i = 0; i < n; ++i) {
        QVector gi = omega.row(i);
        for (std::size_t j = 0; j < n; ++j) {
            QVector gj = omega.row(j);
            QVector br = g.apply(gi, gj);
            if (vec_is_zero(br))
                continue;
            QVector ea(n), eb(n);
            ea[i] = Rational(1);
            eb[j] = Rational(1);
            QVector prod = a.multiply(1, ea, 1, eb);
            if (prod.empty())
                continue;
            for (std::size_t w = 0; w < d2; ++w)
                if (!prod[w].is_zero())
                    for (std::size_t k = 0; k < m; ++k)
                        res[w][k] += half * prod[w] * br[k];
        }
    }
    for (const auto& v : res)
        if (!vec_is_zero(v))
            return false;
    return true;
}

// ---- graded regularity ----------------------------------------------------------

bool regular_sequence_check(const FiniteCdga& h, const std::vector<GradedElementRef>& elems,
                            std::size_t q) {
    for (std::size_t i = 0; i <= h.top_degree(); ++i)
        if (!h.diff(i).is_zero())
            throw std::invalid_argument("regular_sequence_check: differential must vanish");
    for (const auto& e : elems) {
        if (e.degree == 0 || e.degree % 2 != 0)
            throw std::invalid_argument("regular_sequence_check: elements must have positive even degree");
        if (e.coords.size() != h.dim(e.degree))
            throw std::invalid_argument("regular_sequence_check: element coordinate mismatch");
    }
    std::size_t T = h.top_degree();
    std::vector<SpanBuilder> ideal;
    for (std::size_t i = 0; i <= T; ++i)
        ideal.emplace_back(h.dim(i));
    bool ok = true;
    for (const auto& e : elems) {
        long limit = static_cast<long>(q) - static_cast<long>(e.degree) + 2;
        for (long i = 0; i <= limit; ++i) {
            std::size_t src = static_cast<std::size_t>(i);
            if (src > T)
                break;
            std::size_t dst = src + e.degree;
            // {v in H^src : e.v in ideal_dst} must equal ideal_src
            std::size_t dstdim = dst <= T ? h.dim(dst) : 0;
            QMatrix L(dstdim, h.dim(src));
            for (std::size_t b = 0; b < h.dim(src); ++b) {
                QVector eb(h.dim(src));
                eb[b] = Rational(1);
                QVector prod = h.multiply(e.degree, e.coords, src, eb);
                for (std::size_t w = 0; w < prod.size(); ++w)
                    L.at(w, b) = prod[w];
            }
            std::size_t s = dst <= T ? ideal[dst].rank() : 0;
            QMatrix C(dstdim, h.dim(src) + s);
            for (std::size_t r0 = 0; r0 < dstdim; ++r0)
                for (std::size_t c0 = 0; c0 < h.dim(src); ++c0)
                    C.at(r0, c0) = L.at(r0, c0);
            if (dst <= T)
                for (std::size_t k = 0; k < s; ++k)
                    for (std::size_t r0 = 0; r0 < dstdim; ++r0)
                        C.at(r0, h.dim(src) + k) = ideal[dst].basis()[k][r0];
            // ker C projects isomorphically onto {v : e.v in ideal_dst},
            // which always contains ideal_src; injectivity on the quotient
            // is exact equality of dimensions
            std::size_t kerdim = C.cols() - qlinalg::rank(C);
            if (kerdim != ideal[src].rank())
                ok = false;
        }
        // absorb e*H into the ideal
        for (std::size_t i = 0; i + e.degree <= T; ++i)
            for (std::size_t b = 0; b < h.dim(i); ++b) {
                QVector eb(h.dim(i));
                eb[b] = Rational(1);
                ideal[i + e.degree].add(h.multiply(e.degree, e.coords, i, eb));
            }
        if (!ok)
            return false;
    }
    return ok;
}

}  // namespace cdga
}  // namespace rhkit

namespace rhkit {
namespace cdga {

// ---- semifree builder -------------------------------------------------------

namespace {

// Free CGA on named generators (exterior on odd degrees, polynomial on even),
// truncated at total degree <= cap.
struct FreeCga {
    std::vector<std::string> gnames;
    std::vector<std::size_t> gdeg;
    std::size_t cap = 0;
    // monomials per degree as generator exponent vectors, descending lex
    std::vector<std::vector<std::vector<int>>> monos;
    std::map<std::vector<int>, std::pair<std::size_t, std::size_t>> index;

    std::size_t dim(std::size_t d) const { return d <= cap ? monos[d].size() : 0; }

    std::string mono_name(const std::vector<int>& e) const {
        std::string n;
        for (std::size_t g = 0; g < e.size(); ++g) {
            if (e[g] == 0)
                continue;
            if (!n.empty())
                n += "*";
            n += gnames[g];
            if (e[g] > 1)
                n += "^" + std::to_string(e[g]);
        }
        return n.empty() ? "1" : n;
    }

    // product of two monomials: (sign, exponents); zero when a shared odd
    // generator or the cap is exceeded
    std::optional<std::pair<int, std::vector<int>>> mono_product(
        const std::vector<int>& u, const std::vector<int>& v) const {
        std::vector<int> w(u.size());
        std::size_t total = 0;
        for (std::size_t g = 0; g < u.size(); ++g) {
            if (gdeg[g] % 2 != 0 && u[g] && v[g])
                return std::nullopt;
            w[g] = u[g] + v[g];
            total += static_cast<std::size_t>(w[g]) * gdeg[g];
        }
        if (total > cap)
            return std::nullopt;
        // odd-odd crossings: v's odd letter at g2 passes u's odd letters at g1 > g2
        int inv = 0;
        for (std::size_t g2 = 0; g2 < v.size(); ++g2) {
            if (!v[g2] || gdeg[g2] % 2 == 0)
                continue;
            for (std::size_t g1 = g2 + 1; g1 < u.size(); ++g1)
                if (u[g1] && gdeg[g1] % 2 != 0)
                    ++inv;
        }
        return std::make_pair(inv % 2 == 0 ? 1 : -1, w);
    }
};

void enumerate_monos(const FreeCga& f, std::vector<int>& cur, std::size_t g,
                     std::size_t used, std::vector<std::vector<std::vector<int>>>& out) {
    if (g == f.gnames.size()) {
        out[used].push_back(cur);
        return;
    }
    std::size_t maxe = f.gdeg[g] % 2 != 0 ? 1 : (f.cap - used) / f.gdeg[g];
    for (long e = static_cast<long>(maxe); e >= 0; --e) {
        std::size_t add = static_cast<std::size_t>(e) * f.gdeg[g];
        if (used + add > f.cap)
            continue;
        cur[g] = static_cast<int>(e);
        enumerate_monos(f, cur, g + 1, used + add, out);
    }
    cur[g] = 0;
}

FreeCga build_free_cga(const std::vector<SemifreeGenerator>& gens, std::size_t cap) {
    FreeCga f;
    f.cap = cap;
    for (const auto& g : gens) {
        if (g.degree == 0)
            throw std::invalid_argument("semifree_cdga: generator degree must be positive");
        f.gnames.push_back(g.name);
        f.gdeg.push_back(g.degree);
    }
    f.monos.assign(cap + 1, {});
    std::vector<int> cur(gens.size(), 0);
    enumerate_monos(f, cur, 0, 0, f.monos);
    for (std::size_t d = 0; d <= cap; ++d)
        for (std::size_t i = 0; i < f.monos[d].size(); ++i)
            f.index[f.monos[d][i]] = {d, i};
    return f;
}

}  // namespace

FiniteCdga semifree_cdga_with_images(const std::vector<SemifreeGenerator>& gens,
                                     std::size_t cap, const std::vector<QVector>& images,
                                     const std::string& name) {
    FreeCga f = build_free_cga(gens, cap);
    std::size_t T = cap;
    std::vector<std::vector<std::string>> basis(T + 1);
    for (std::size_t d = 0; d <= T; ++d)
        for (const auto& m : f.monos[d])
            basis[d].push_back(f.mono_name(m));

    std::vector<std::vector<MultTable>> mult(T + 1);
    for (std::size_t i = 0; i <= T; ++i) {
        mult[i].resize(T - i + 1);
        for (std::size_t j = 0; i + j <= T; ++j) {
            mult[i][j].assign(f.dim(i),
                              std::vector<QVector>(f.dim(j), QVector(f.dim(i + j))));
            for (std::size_t p = 0; p < f.dim(i); ++p)
                for (std::size_t r = 0; r < f.dim(j); ++r) {
                    auto pr = f.mono_product(f.monos[i][p], f.monos[j][r]);
                    if (!pr)
                        continue;
                    auto [deg, idx] = f.index.at(pr->second);
                    mult[i][j][p][r][idx] = Rational(pr->first);
                }
        }
    }

    // differentials: d(gen_g) = images[g] in degree gdeg[g]+1, extended by
    // the graded Leibniz rule to monomials, recursively on the first factor
    std::map<std::vector<int>, QVector> dmemo;
    // multiply a monomial by an arbitrary vector of degree dv
    auto mono_times_vec = [&](const std::vector<int>& m, std::size_t dm, const QVector& v,
                              std::size_t dv) {
        QVector out(f.dim(dm + dv));
        if (dm + dv > T)
            return QVector();
        for (std::size_t b = 0; b < v.size(); ++b) {
            if (v[b].is_zero())
                continue;
            auto pr = f.mono_product(m, f.monos[dv][b]);
            if (!pr)
                continue;
            auto [deg, idx] = f.index.at(pr->second);
            out[idx] += Rational(pr->first) * v[b];
        }
        return out;
    };
    std::function<QVector(const std::vector<int>&, std::size_t)> dmono =
        [&](const std::vector<int>& m, std::size_t dm) -> QVector {
        auto it = dmemo.find(m);
        if (it != dmemo.end())
            return it->second;
        QVector out(dm + 1 <= T ? f.dim(dm + 1) : 0);
        std::size_t first = m.size();
        for (std::size_t g = 0; g < m.size(); ++g)
            if (m[g] > 0) { first = g; break; }
        if (first == m.size()) {
            dmemo[m] = out;  // unit
            return out;
        }
        int e = m[first];
        std::size_t dg = f.gdeg[first];
        std::vector<int> rest = m;
        rest[first] = 0;
        std::size_t drest = dm - static_cast<std::size_t>(e) * dg;
        // d(g^e) = e g^{e-1} dg (no sign: for odd g, e = 1)
        const QVector& img = images[first];
        if (!img.empty() && dm + 1 <= T) {
            std::vector<int> gpow(m.size(), 0);
            gpow[first] = e - 1;
            // (e * g^{e-1} * dg) * rest, with dg of even parity handled by
            // multiplying into the monomial from the left
            QVector head = mono_times_vec(gpow, static_cast<std::size_t>(e - 1) * dg, img,
                                          dg + 1);
            if (!head.empty()) {
                QVector scaledh = qlinalg::scaled(head, Rational(e));
                // (head) * rest
                for (std::size_t b = 0; b < scaledh.size(); ++b) {
                    if (scaledh[b].is_zero())
                        continue;
                    std::size_t dh = static_cast<std::size_t>(e - 1) * dg + dg + 1;
                    auto pr = f.mono_product(f.monos[dh][b], rest);
                    if (!pr)
                        continue;
                    auto [deg2, idx2] = f.index.at(pr->second);
                    out[idx2] += Rational(pr->first) * scaledh[b];
                }
            }
        }
        // (-1)^{e*dg} g^e * d(rest)
        QVector drest_v = dmono(rest, drest);
        if (!drest_v.empty() && dm + 1 <= T) {
            Rational sign((static_cast<std::size_t>(e) * dg) % 2 == 0 ? 1 : -1);
            std::vector<int> gpow(m.size(), 0);
            gpow[first] = e;
            QVector tail = mono_times_vec(gpow, static_cast<std::size_t>(e) * dg, drest_v,
                                          drest + 1);
            for (std::size_t k = 0; k < tail.size(); ++k)
                out[k] += sign * tail[k];
        }
        dmemo[m] = out;
        return out;
    };

    std::vector<QMatrix> diff(T + 1);
    for (std::size_t d = 0; d <= T; ++d) {
        std::size_t rows = d + 1 <= T ? f.dim(d + 1) : 0;
        QMatrix dd(rows, f.dim(d));
        for (std::size_t p = 0; p < f.dim(d); ++p) {
            QVector col = dmono(f.monos[d][p], d);
            for (std::size_t r = 0; r < col.size(); ++r)
                dd.at(r, p) = col[r];
        }
        diff[d] = dd;
    }
    return FiniteCdga(std::move(basis), std::move(mult), std::move(diff), name);
}

FiniteCdga semifree_cdga(const std::vector<SemifreeGenerator>& gens, std::size_t cap,
                         const std::string& name) {
    // two-phase: build with d = 0, evaluate image expressions there, rebuild
    std::vector<QVector> zero_images(gens.size());
    FiniteCdga free0 = semifree_cdga_with_images(gens, cap, zero_images, name);
    std::vector<QVector> images(gens.size());
    for (std::size_t g = 0; g < gens.size(); ++g) {
        const std::string& ex = gens[g].d_expr;
        if (ex.empty() || ex == "0") {
            images[g] = QVector(free0.dim(gens[g].degree + 1));
            continue;
        }
        Element el = eval_element(free0, ex);
        auto hd = el.homogeneous_degree();
        if (!hd || (!el.is_zero() && *hd != gens[g].degree + 1))
            throw std::invalid_argument("semifree_cdga: d-degree error: d(" + gens[g].name +
                                        ") must be homogeneous of degree " +
                                        std::to_string(gens[g].degree + 1));
        images[g] = el.is_zero() ? QVector(free0.dim(gens[g].degree + 1))
                                 : el.at(gens[g].degree + 1);
    }
    return semifree_cdga_with_images(gens, cap, images, name);
}

// ---- element expressions ------------------------------------------------------

namespace {

Element element_constant(const FiniteCdga& a, const Rational& c) {
    Element e;
    e.comp.assign(a.top_degree() + 1, QVector());
    e.comp[0] = QVector{c};
    return e;
}

Element element_add(const FiniteCdga& a, const Element& x, const Element& y, int sign) {
    Element out;
    out.comp.assign(a.top_degree() + 1, QVector());
    for (std::size_t d = 0; d <= a.top_degree(); ++d) {
        const QVector& xa = x.at(d);
        const QVector& ya = y.at(d);
        if (xa.empty() && ya.empty())
            continue;
        QVector v(a.dim(d));
        for (std::size_t i = 0; i < xa.size(); ++i)
            v[i] += xa[i];
        for (std::size_t i = 0; i < ya.size(); ++i)
            v[i] += Rational(sign) * ya[i];
        out.comp[d] = v;
    }
    return out;
}

Element eval_element_rec(const FiniteCdga& a, const polyalg::Expr& e,
                         const std::map<std::string, std::pair<std::size_t, std::size_t>>& syms) {
    using K = polyalg::Expr::Kind;
    switch (e.kind) {
        case K::Number:
            return element_constant(a, e.number);
        case K::Symbol: {
            auto it = syms.find(e.symbol);
            if (it == syms.end())
                throw std::invalid_argument("unknown element '" + e.symbol + "'");
            Element el;
            el.comp.assign(a.top_degree() + 1, QVector());
            QVector v(a.dim(it->second.first));
            v[it->second.second] = Rational(1);
            el.comp[it->second.first] = v;
            return el;
        }
        case K::Add:
            return element_add(a, eval_element_rec(a, *e.lhs, syms),
                               eval_element_rec(a, *e.rhs, syms), 1);
        case K::Sub:
            return element_add(a, eval_element_rec(a, *e.lhs, syms),
                               eval_element_rec(a, *e.rhs, syms), -1);
        case K::Mul:
            return a.multiply(eval_element_rec(a, *e.lhs, syms),
                              eval_element_rec(a, *e.rhs, syms));
        case K::Div: {
            Element den = eval_element_rec(a, *e.rhs, syms);
            auto hd = den.homogeneous_degree();
            if (!hd || *hd != 0 || den.is_zero())
                throw std::invalid_argument("element division only by nonzero constants");
            Rational c = den.at(0)[0].inverse();
            Element num = eval_element_rec(a, *e.lhs, syms);
            for (auto& v : num.comp)
                for (auto& x : v)
                    x *= c;
            return num;
        }
        case K::Neg: {
            Element el = eval_element_rec(a, *e.lhs, syms);
            for (auto& v : el.comp)
                for (auto& x : v)
                    x = -x;
            return el;
        }
        case K::Pow: {
            if (e.exponent < 0)
                throw std::invalid_argument("negative power of an algebra element");
            Element base = eval_element_rec(a, *e.lhs, syms);
            Element out = element_constant(a, Rational(1));
            for (int i = 0; i < e.exponent; ++i)
                out = a.multiply(out, base);
            return out;
        }
    }
    throw std::logic_error("eval_element: unreachable");
}

}  // namespace

Element eval_element(const FiniteCdga& a, const std::string& expr) {
    std::map<std::string, std::pair<std::size_t, std::size_t>> syms;
    for (std::size_t d = 0; d <= a.top_degree(); ++d)
        for (std::size_t i = 0; i < a.dim(d); ++i)
            syms.emplace(a.basis_names(d)[i], std::make_pair(d, i));
    polyalg::Expr e = polyalg::parse_expr(expr);
    return eval_element_rec(a, e, syms);
}

// ---- stock fixtures -------------------------------------------------------------

FiniteCdga exterior_algebra(std::size_t n) {
    std::vector<SemifreeGenerator> gens;
    for (std::size_t i = 0; i < n; ++i)
        gens.push_back({"a" + std::to_string(i + 1), 1, ""});
    return semifree_cdga(gens, n, "Ext(" + std::to_string(n) + ")");
}

FiniteCdga torus_model(std::size_t n) {
    FiniteCdga a = exterior_algebra(n);
    a.set_name("T" + std::to_string(n));
    return a;
}

FiniteCdga heisenberg_model() {
    std::vector<SemifreeGenerator> gens = {
        {"a1", 1, ""}, {"a2", 1, ""}, {"b", 1, "a1*a2"}};
    return semifree_cdga(gens, 3, "heisenberg");
}

FiniteCdga generalized_heisenberg(std::size_t q) {
    std::vector<SemifreeGenerator> gens;
    std::string db;
    for (std::size_t i = 1; i <= 2 * q; ++i)
        gens.push_back({"a" + std::to_string(i), 1, ""});
    for (std::size_t i = 1; i <= q; ++i) {
        if (!db.empty())
            db += " + ";
        db += "a" + std::to_string(2 * i - 1) + "*a" + std::to_string(2 * i);
    }
    gens.push_back({"b", 1, db});
    return semifree_cdga(gens, 2 * q + 1, "genheis" + std::to_string(q));
}

FiniteCdga nonhomog_example() {
    std::vector<SemifreeGenerator> gens = {{"a", 1, ""}, {"b", 1, "b*a"}};
    return semifree_cdga(gens, 2, "ex-nonhomog");
}

FiniteCdga sphere_model(std::size_t n) {
    if (n == 0)
        throw std::invalid_argument("sphere_model: n must be positive");
    std::vector<SemifreeGenerator> gens = {{"a", n, ""}};
    return semifree_cdga(gens, n, "S" + std::to_string(n));
}

FiniteCdga wedge_of_circles(std::size_t n) {
    std::vector<SemifreeGenerator> gens;
    for (std::size_t i = 0; i < n; ++i)
        gens.push_back({"a" + std::to_string(i + 1), 1, ""});
    return semifree_cdga(gens, 1, "Wedge(" + std::to_string(n) + ")");
}

FiniteCdga punctured_elliptic_model() {
    // /\(a,b,e)/(ae, be) with de = ab: basis 1; a,b,e; ab
    std::vector<std::vector<std::string>> basis = {{"1"}, {"a", "b", "e"}, {"ab"}};
    std::vector<std::vector<MultTable>> mult(3);
    mult[0].resize(3);
    mult[1].resize(2);
    mult[2].resize(1);
    mult[0][0] = {{QVector{Rational(1)}}};
    mult[0][1] = {{QVector{Rational(1), Rational(0), Rational(0)},
                   QVector{Rational(0), Rational(1), Rational(0)},
                   QVector{Rational(0), Rational(0), Rational(1)}}};
    mult[1][0].assign(3, std::vector<QVector>(1));
    for (std::size_t i = 0; i < 3; ++i) {
        QVector v(3);
        v[i] = Rational(1);
        mult[1][0][i][0] = v;
    }
    mult[0][2] = {{QVector{Rational(1)}}};
    mult[2][0].assign(1, std::vector<QVector>(1, QVector{Rational(1)}));
    mult[1][1].assign(3, std::vector<QVector>(3, QVector(1)));
    mult[1][1][0][1][0] = Rational(1);   // a*b = ab
    mult[1][1][1][0][0] = Rational(-1);  // b*a = -ab
    // a*e = e*a = b*e = e*b = 0, squares 0
    std::vector<QMatrix> diff(3);
    diff[0] = QMatrix(3, 1);
    QMatrix d1(1, 3);
    d1.at(0, 2) = Rational(1);  // de = ab
    diff[1] = d1;
    diff[2] = QMatrix(0, 1);
    return FiniteCdga(std::move(basis), std::move(mult), std::move(diff),
                      "punctured-elliptic");
}

}  // namespace cdga
}  // namespace rhkit
