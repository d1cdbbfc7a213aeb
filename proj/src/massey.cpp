#include "rhkit/massey.hpp"

#include <stdexcept>

namespace rhkit {
namespace massey {

using cdga::CohomologyBasis;
using cdga::CohomologyClass;
using cdga::FiniteCdga;
using qlinalg::axpy;
using qlinalg::solve_affine;
using qlinalg::vec_is_zero;

namespace {

// Lift: solve d x = rhs in degree `deg` (x in A^deg). Returns nullopt when
// rhs is not a coboundary. A nonzero seed moves x inside its solution space.
std::optional<QVector> lift_coboundary(const FiniteCdga& a, std::size_t deg,
                                       const QVector& rhs, RationalSampler* sampler) {
    if (rhs.empty() || vec_is_zero(rhs)) {
        QVector x(a.dim(deg));
        return x;
    }
    auto sol = solve_affine(a.diff(deg), rhs);
    if (!sol)
        return std::nullopt;
    QVector x = sol->particular;
    if (sampler)
        for (const auto& k : sol->kernel)
            axpy(x, sampler->next(), k);
    return x;
}

Rational parity_sign(std::size_t deg) {
    return Rational(deg % 2 == 0 ? 1 : -1);
}

}  // namespace

MasseyResult triple_massey(const FiniteCdga& a, const CohomologyClass& u1,
                           const CohomologyClass& u2, const CohomologyClass& u3,
                           std::uint64_t seed) {
    MasseyResult out;
    std::size_t p1 = u1.degree, p2 = u2.degree, p3 = u3.degree;
    const QVector& a01 = u1.representative;
    const QVector& a12 = u2.representative;
    const QVector& a23 = u3.representative;
    RationalSampler sampler(seed);
    RationalSampler* sp = seed ? &sampler : nullptr;

    // d a02 = abar01 a12, d a13 = abar12 a23
    QVector rhs02 = a.multiply(p1, a01, p2, a12);
    if (!rhs02.empty())
        rhs02 = qlinalg::scaled(rhs02, parity_sign(p1));
    auto a02 = lift_coboundary(a, p1 + p2 - 1, rhs02, sp);
    QVector rhs13 = a.multiply(p2, a12, p3, a23);
    if (!rhs13.empty())
        rhs13 = qlinalg::scaled(rhs13, parity_sign(p2));
    auto a13 = lift_coboundary(a, p2 + p3 - 1, rhs13, sp);
    if (!a02 || !a13) {
        out.defined = false;  // u1 u2 != 0 or u2 u3 != 0 in cohomology
        return out;
    }
    out.defined = true;

    std::size_t n = p1 + p2 + p3 - 1;
    if (n > a.top_degree()) {
        // the target degree vanishes in this finite model
        out.vanishes = true;
        out.representative = CohomologyClass{n, QVector(), &a};
        return out;
    }
    // alpha = abar01 a13 + abar02 a23
    QVector alpha(a.dim(n));
    QVector t1 = a.multiply(p1, a01, p2 + p3 - 1, *a13);
    if (!t1.empty())
        axpy(alpha, parity_sign(p1), t1);
    QVector t2 = a.multiply(p1 + p2 - 1, *a02, p3, a23);
    if (!t2.empty())
        axpy(alpha, parity_sign(p1 + p2 - 1), t2);

    CohomologyBasis h = cohomology(a, n);
    auto coords = class_coordinates(a, h, alpha);
    if (!coords)
        throw std::logic_error("triple_massey: alpha is not a cocycle (internal)");
    out.representative = CohomologyClass{n, alpha, &a};
    out.class_coords = *coords;

    // indeterminacy u1.H^{p2+p3-1} + H^{p1+p2-1}.u3, in H^n coordinates
    SpanBuilder ind(h.betti);
    auto absorb = [&](std::size_t dl, const QVector& left, std::size_t dr,
                      const QVector& right) {
        QVector prod = a.multiply(dl, left, dr, right);
        if (prod.empty())
            return;
        auto c = class_coordinates(a, h, prod);
        if (!c)
            throw std::logic_error("triple_massey: indeterminacy product not closed");
        ind.add(*c);
    };
    if (p2 + p3 >= 1 && p2 + p3 - 1 <= a.top_degree()) {
        CohomologyBasis hr = cohomology(a, p2 + p3 - 1);
        for (const auto& c : hr.classes)
            absorb(p1, a01, p2 + p3 - 1, c.representative);
    }
    if (p1 + p2 >= 1 && p1 + p2 - 1 <= a.top_degree()) {
        CohomologyBasis hl = cohomology(a, p1 + p2 - 1);
        for (const auto& c : hl.classes)
            absorb(p1 + p2 - 1, c.representative, p3, a23);
    }
    out.indeterminacy = ind.basis();
    out.vanishes = ind.contains(out.class_coords);
    return out;
}

std::vector<ScanEntry> massey_obstruction_scan(const FiniteCdga& a, std::size_t max_degree,
                                               std::uint64_t seed) {
    std::vector<ScanEntry> found;
    std::size_t T = a.top_degree();
    std::vector<CohomologyBasis> bases(T + 1);
    for (std::size_t d = 1; d <= T; ++d)
        bases[d] = cohomology(a, d);
    for (std::size_t p1 = 1; p1 <= T; ++p1)
        for (std::size_t p2 = 1; p2 <= T; ++p2)
            for (std::size_t p3 = 1; p3 <= T; ++p3) {
                std::size_t n = p1 + p2 + p3 - 1;
                if (n > max_degree || n > T)
                    continue;
                for (std::size_t i1 = 0; i1 < bases[p1].betti; ++i1)
                    for (std::size_t i2 = 0; i2 < bases[p2].betti; ++i2)
                        for (std::size_t i3 = 0; i3 < bases[p3].betti; ++i3) {
                            MasseyResult r = triple_massey(a, bases[p1].classes[i1],
                                                           bases[p2].classes[i2],
                                                           bases[p3].classes[i3], seed);
                            if (r.defined && !r.vanishes)
                                found.push_back(
                                    ScanEntry{p1, p2, p3, i1, i2, i3, std::move(r)});
                        }
            }
    return found;
}

}  // namespace massey
}  // namespace rhkit
