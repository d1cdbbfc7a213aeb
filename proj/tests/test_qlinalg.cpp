#include "doctest.h"

#include <functional>

#include "rhkit/qmatrix.hpp"

using namespace rhkit;
using namespace rhkit::qlinalg;

namespace {

QMatrix mat(const std::vector<std::vector<long>>& rows) {
    std::vector<QVector> qr;
    for (const auto& r : rows) {
        QVector v;
        for (long x : r)
            v.push_back(Rational(x));
        qr.push_back(v);
    }
    return QMatrix::from_rows(qr, rows.empty() ? 0 : rows[0].size());
}

// brute-force rank: max size of a nonvanishing minor
std::size_t minor_rank(const QMatrix& m) {
    std::size_t n = std::min(m.rows(), m.cols());
    for (std::size_t k = n; k >= 1; --k) {
        // all k-subsets of rows and cols
        std::vector<std::size_t> rs(k), cs(k);
        std::function<bool(std::size_t, std::size_t)> pick_cols =
            [&](std::size_t pos, std::size_t start) -> bool {
            if (pos == k) {
                // determinant by cofactor expansion
                std::function<Rational(std::vector<std::size_t>, std::vector<std::size_t>)>
                    det = [&](std::vector<std::size_t> rr, std::vector<std::size_t> cc) {
                        if (rr.empty())
                            return Rational(1);
                        Rational acc(0);
                        for (std::size_t j = 0; j < cc.size(); ++j) {
                            Rational piv = m.at(rr[0], cc[j]);
                            if (piv.is_zero())
                                continue;
                            std::vector<std::size_t> rr2(rr.begin() + 1, rr.end());
                            std::vector<std::size_t> cc2;
                            for (std::size_t t = 0; t < cc.size(); ++t)
                                if (t != j)
                                    cc2.push_back(cc[t]);
                            Rational sub = det(rr2, cc2);
                            acc += Rational(j % 2 == 0 ? 1 : -1) * piv * sub;
                        }
                        return acc;
                    };
                return !det(rs, cs).is_zero();
            }
            for (std::size_t c = start; c < m.cols(); ++c) {
                cs[pos] = c;
                if (pick_cols(pos + 1, c + 1))
                    return true;
            }
            return false;
        };
        std::function<bool(std::size_t, std::size_t)> pick_rows =
            [&](std::size_t pos, std::size_t start) -> bool {
            if (pos == k)
                return pick_cols(0, 0);
            for (std::size_t r = start; r < m.rows(); ++r) {
                rs[pos] = r;
                if (pick_rows(pos + 1, r + 1))
                    return true;
            }
            return false;
        };
        if (pick_rows(0, 0))
            return k;
    }
    return 0;
}

}  // namespace

TEST_CASE("rational arithmetic and parsing") {
    Rational a(2, 4);
    CHECK(a == Rational(1, 2));
    CHECK(a.numerator_str() == "1");
    CHECK(a.denominator_str() == "2");
    CHECK(Rational(-3, 6).str() == "-1/2");
    CHECK(Rational::parse("-7/21") == Rational(-1, 3));
    CHECK(Rational::parse("5") == Rational(5));
    CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
    CHECK((Rational(2, 3) * Rational(9, 4)) == Rational(3, 2));
    CHECK_THROWS(Rational(1, 0));
    CHECK_THROWS(Rational(1).operator/=(Rational(0)));
}

TEST_CASE("rref on proportional rows") {
    auto rr = rref(mat({{1, 2}, {2, 4}}));
    CHECK(rr.rank == 1);
    REQUIRE(rr.pivots.size() == 1);
    CHECK(rr.pivots[0] == 0);
}

TEST_CASE("rref identity") {
    auto rr = rref(QMatrix::identity(3));
    CHECK(rr.rank == 3);
    CHECK(rr.r == QMatrix::identity(3));
}

TEST_CASE("rref idempotent and rank equals transpose rank") {
    RationalSampler s(42);
    for (int trial = 0; trial < 10; ++trial) {
        QMatrix m(4, 6);
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 6; ++c)
                m.at(r, c) = s.next();
        auto rr = rref(m);
        CHECK(rref(rr.r).r == rr.r);
        CHECK(rr.rank == rank(m.transpose()));
        CHECK(rr.rank == minor_rank(m));  // brute-force minor oracle
        CHECK(m.cols() == rr.rank + kernel_basis(m).size());
    }
}

TEST_CASE("kernel basis") {
    CHECK(kernel_basis(QMatrix::identity(2)).empty());
    CHECK(kernel_basis(QMatrix(2, 3)).size() == 3);
    auto kb = kernel_basis(mat({{1, 1, 0}}));
    REQUIRE(kb.size() == 2);
    RationalSampler s(7);
    QMatrix m = mat({{1, 1, 0}});
    for (const auto& v : kb) {
        CHECK(vec_is_zero(m.apply(v)));
        // first nonzero coordinate is 1
        for (const auto& x : v) {
            if (!x.is_zero()) {
                CHECK(x == Rational(1));
                break;
            }
        }
    }
    // random combinations stay in the kernel
    for (int t = 0; t < 5; ++t) {
        QVector v(3);
        for (const auto& k : kb)
            axpy(v, s.next(), k);
        CHECK(vec_is_zero(m.apply(v)));
    }
}

TEST_CASE("solve_affine") {
    auto sol = solve_affine(QMatrix::identity(3), {Rational(1), Rational(2), Rational(3)});
    REQUIRE(sol.has_value());
    CHECK(sol->particular == QVector{Rational(1), Rational(2), Rational(3)});
    CHECK(sol->kernel.empty());

    auto sol2 = solve_affine(mat({{1, 1}}), {Rational(2)});
    REQUIRE(sol2.has_value());
    CHECK(sol2->kernel.size() == 1);
    CHECK(sol2->particular[0] + sol2->particular[1] == Rational(2));

    auto sol3 = solve_affine(mat({{1}, {1}}), {Rational(0), Rational(1)});
    CHECK(!sol3.has_value());

    CHECK_THROWS(solve_affine(mat({{1, 1}}), {Rational(1), Rational(2)}));
}

TEST_CASE("solvability iff rank of augmented matrix does not grow") {
    RationalSampler s(99);
    for (int trial = 0; trial < 20; ++trial) {
        QMatrix m(3, 4);
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 4; ++c)
                m.at(r, c) = s.next();
        QVector b = s.next_vector(3);
        QMatrix aug(3, 5);
        for (std::size_t r = 0; r < 3; ++r) {
            for (std::size_t c = 0; c < 4; ++c)
                aug.at(r, c) = m.at(r, c);
            aug.at(r, 4) = b[r];
        }
        bool solvable = solve_affine(m, b).has_value();
        CHECK(solvable == (rank(aug) == rank(m)));
        if (solvable) {
            auto sol = solve_affine(m, b);
            CHECK(m.apply(sol->particular) == b);
        }
    }
}
