#include "rhkit/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace rhkit {
namespace polyalg {

MultiPoly MultiPoly::constant(std::size_t nvars, const Rational& c) {
    MultiPoly p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t i) {
    if (i >= nvars)
        throw std::invalid_argument("MultiPoly::variable: index out of range");
    Exponents e(nvars, 0);
    e[i] = 1;
    return monomial(nvars, e, Rational(1));
}

MultiPoly MultiPoly::monomial(std::size_t nvars, Exponents e, const Rational& c) {
    if (e.size() != nvars)
        throw std::invalid_argument("MultiPoly::monomial: exponent length mismatch");
    MultiPoly p(nvars);
    p.add_term(e, c);
    return p;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty())
        return true;
    if (terms_.size() > 1)
        return false;
    const Exponents& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

bool MultiPoly::is_laurent() const {
    for (const auto& [e, c] : terms_)
        for (int x : e)
            if (x < 0)
                return true;
    return false;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
    if (e.size() != nvars_)
        throw std::invalid_argument("MultiPoly::add_term: exponent length mismatch");
    if (c.is_zero())
        return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    if (nvars_ != o.nvars_)
        throw std::invalid_argument("MultiPoly: variable count mismatch");
    for (const auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    if (nvars_ != o.nvars_)
        throw std::invalid_argument("MultiPoly: variable count mismatch");
    for (const auto& [e, c] : o.terms_)
        add_term(e, -c);
    return *this;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    if (nvars_ != o.nvars_)
        throw std::invalid_argument("MultiPoly: variable count mismatch");
    MultiPoly p(nvars_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            Exponents e(nvars_);
            for (std::size_t i = 0; i < nvars_; ++i)
                e[i] = ea[i] + eb[i];
            p.add_term(e, ca * cb);
        }
    return p;
}

MultiPoly MultiPoly::operator*(const Rational& c) const {
    MultiPoly p(nvars_);
    if (c.is_zero())
        return p;
    for (const auto& [e, k] : terms_)
        p.terms_.emplace(e, k * c);
    return p;
}

MultiPoly MultiPoly::pow(unsigned k) const {
    MultiPoly r = constant(nvars_, Rational(1));
    for (unsigned i = 0; i < k; ++i)
        r = r * *this;
    return r;
}

static int total_degree(const Exponents& e) {
    return std::accumulate(e.begin(), e.end(), 0);
}

int MultiPoly::min_total_degree() const {
    if (terms_.empty())
        throw std::domain_error("MultiPoly: degree of zero polynomial");
    int best = total_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
        best = std::min(best, total_degree(e));
    return best;
}

int MultiPoly::max_total_degree() const {
    if (terms_.empty())
        throw std::domain_error("MultiPoly: degree of zero polynomial");
    int best = total_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
        best = std::max(best, total_degree(e));
    return best;
}

Rational MultiPoly::evaluate(const QVector& point) const {
    if (point.size() != nvars_)
        throw std::invalid_argument("MultiPoly::evaluate: point length mismatch");
    Rational sum(0);
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (std::size_t i = 0; i < nvars_; ++i) {
            int k = e[i];
            if (k == 0)
                continue;
            if (point[i].is_zero()) {
                if (k < 0)
                    throw std::domain_error(
                        "MultiPoly::evaluate: zero coordinate with negative exponent");
                term = Rational(0);
                break;
            }
            Rational base = k > 0 ? point[i] : point[i].inverse();
            for (int j = 0; j < std::abs(k); ++j)
                term *= base;
        }
        sum += term;
    }
    return sum;
}

MultiPoly MultiPoly::shift_to_origin() const {
    if (is_laurent())
        throw std::domain_error("MultiPoly::shift_to_origin: clear Laurent exponents first");
    MultiPoly out(nvars_);
    for (const auto& [e, c] : terms_) {
        // expand c * prod_i (x_i + 1)^{e_i}
        MultiPoly term = constant(nvars_, c);
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0)
                continue;
            MultiPoly xi1 = variable(nvars_, i) + constant(nvars_, Rational(1));
            term = term * xi1.pow(static_cast<unsigned>(e[i]));
        }
        out += term;
    }
    return out;
}

MultiPoly MultiPoly::initial_form() const {
    if (terms_.empty())
        throw std::domain_error("MultiPoly::initial_form: zero polynomial");
    int d = min_total_degree();
    MultiPoly out(nvars_);
    for (const auto& [e, c] : terms_)
        if (total_degree(e) == d)
            out.terms_.emplace(e, c);
    return out;
}

bool MultiPoly::exp_direction_vanishes(const QVector& x) const {
    if (x.size() != nvars_)
        throw std::invalid_argument("exp_direction_vanishes: direction length mismatch");
    std::map<Rational, Rational> groups;  // key <e,x> -> coefficient sum
    for (const auto& [e, c] : terms_) {
        Rational key(0);
        for (std::size_t i = 0; i < nvars_; ++i)
            if (e[i] != 0)
                key += Rational(e[i]) * x[i];
        groups[key] += c;
    }
    for (const auto& [k, s] : groups)
        if (!s.is_zero())
            return false;
    return true;
}

MultiPoly MultiPoly::divide_by_monomial(const Exponents& m) const {
    if (m.size() != nvars_)
        throw std::invalid_argument("divide_by_monomial: exponent length mismatch");
    MultiPoly out(nvars_);
    for (const auto& [e, c] : terms_) {
        Exponents q(nvars_);
        for (std::size_t i = 0; i < nvars_; ++i) {
            q[i] = e[i] - m[i];
            if (q[i] < 0)
                throw std::domain_error("divide_by_monomial: division not exact");
        }
        out.terms_.emplace(q, c);
    }
    return out;
}

// grlex: higher total degree wins, ties broken lexicographically.
static bool grlex_less(const Exponents& a, const Exponents& b) {
    int da = total_degree(a), db = total_degree(b);
    if (da != db)
        return da < db;
    return a < b;
}

MultiPoly MultiPoly::monic() const {
    if (terms_.empty())
        return *this;
    const Exponents* lead = &terms_.begin()->first;
    for (const auto& [e, c] : terms_)
        if (grlex_less(*lead, e))
            lead = &e;
    return *this * terms_.at(*lead).inverse();
}

std::string MultiPoly::str(const std::string& var_prefix) const {
    if (terms_.empty())
        return "0";
    // ascending total degree; within a degree, lexicographically descending
    std::vector<const std::pair<const Exponents, Rational>*> seq;
    for (const auto& t : terms_)
        seq.push_back(&t);
    std::sort(seq.begin(), seq.end(), [](const auto* a, const auto* b) {
        int da = total_degree(a->first), db = total_degree(b->first);
        if (da != db)
            return da < db;
        return a->first > b->first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto* t : seq) {
        const auto& [e, c] = *t;
        Rational a = c;
        if (first) {
            if (a.sign() < 0) { os << "-"; a = -a; }
        } else {
            os << (a.sign() < 0 ? " - " : " + ");
            if (a.sign() < 0) a = -a;
        }
        first = false;
        bool any_var = std::any_of(e.begin(), e.end(), [](int k) { return k != 0; });
        bool coef_shown = !a.is_one() || !any_var;
        if (coef_shown)
            os << a.str();
        bool need_star = coef_shown;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0)
                continue;
            if (need_star)
                os << "*";
            os << var_prefix << (i + 1);
            if (e[i] != 1)
                os << "^" << e[i];
            need_star = true;
        }
    }
    return os.str();
}

LaurentClearing clear_laurent(const MultiPoly& f) {
    LaurentClearing out;
    Exponents shift(f.nvars(), 0);
    for (const auto& [e, c] : f.terms())
        for (std::size_t i = 0; i < f.nvars(); ++i)
            shift[i] = std::max(shift[i], -e[i]);
    MultiPoly cleared(f.nvars());
    for (const auto& [e, c] : f.terms()) {
        Exponents ne(f.nvars());
        for (std::size_t i = 0; i < f.nvars(); ++i)
            ne[i] = e[i] + shift[i];
        cleared.add_term(ne, c);
    }
    out.cleared = cleared;
    out.shift = shift;
    return out;
}

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
    : rows_(rows), cols_(cols), nvars_(nvars), e_(rows * cols, MultiPoly(nvars)) {}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
    if (cols_ != o.rows_ || nvars_ != o.nvars_)
        throw std::invalid_argument("PolyMatrix: shape mismatch in product");
    PolyMatrix p(rows_, o.cols_, nvars_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (at(i, k).is_zero())
                continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                p.at(i, j) += at(i, k) * o.at(k, j);
        }
    return p;
}

PolyMatrix PolyMatrix::transpose() const {
    PolyMatrix t(cols_, rows_, nvars_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t.at(c, r) = at(r, c);
    return t;
}

bool PolyMatrix::is_zero() const {
    for (const auto& p : e_)
        if (!p.is_zero())
            return false;
    return true;
}

QMatrix PolyMatrix::evaluate(const QVector& point) const {
    QMatrix m(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            m.at(r, c) = at(r, c).evaluate(point);
    return m;
}

PolyMatrix PolyMatrix::submatrix_deleting(std::size_t row, std::size_t col) const {
    PolyMatrix s(rows_ - 1, cols_ - 1, nvars_);
    for (std::size_t r = 0, rr = 0; r < rows_; ++r) {
        if (r == row)
            continue;
        for (std::size_t c = 0, cc = 0; c < cols_; ++c) {
            if (c == col)
                continue;
            s.at(rr, cc) = at(r, c);
            ++cc;
        }
        ++rr;
    }
    return s;
}

PolyMatrix PolyMatrix::minor_rows_cols(const std::vector<std::size_t>& rowset,
                                       const std::vector<std::size_t>& colset) const {
    PolyMatrix s(rowset.size(), colset.size(), nvars_);
    for (std::size_t r = 0; r < rowset.size(); ++r)
        for (std::size_t c = 0; c < colset.size(); ++c)
            s.at(r, c) = at(rowset[r], colset[c]);
    return s;
}

std::string PolyMatrix::str(const std::string& var_prefix) const {
    std::ostringstream os;
    for (std::size_t r = 0; r < rows_; ++r) {
        os << '[';
        for (std::size_t c = 0; c < cols_; ++c)
            os << (c ? ", " : "") << at(r, c).str(var_prefix);
        os << "]\n";
    }
    return os.str();
}

// determinant over column bitmask, rows taken in order
static MultiPoly det_rec(const PolyMatrix& m, unsigned colmask,
                         std::unordered_map<unsigned, MultiPoly>& memo) {
    std::size_t row = m.rows() - static_cast<std::size_t>(__builtin_popcount(colmask));
    if (colmask == 0)
        return MultiPoly::constant(m.nvars(), Rational(1));
    auto it = memo.find(colmask);
    if (it != memo.end())
        return it->second;
    MultiPoly det(m.nvars());
    int sign = 1;
    for (std::size_t c = 0, seen = 0; c < m.cols(); ++c) {
        if (!(colmask & (1u << c)))
            continue;
        ++seen;
        if (!m.at(row, c).is_zero()) {
            MultiPoly sub = det_rec(m, colmask & ~(1u << c), memo);
            MultiPoly contrib = m.at(row, c) * sub;
            det += (sign > 0) ? contrib : -contrib;
        }
        sign = -sign;
    }
    memo.emplace(colmask, det);
    return det;
}

MultiPoly determinant(const PolyMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant: matrix not square");
    if (m.rows() == 0)
        return MultiPoly::constant(m.nvars(), Rational(1));
    if (m.rows() > 20)
        throw std::invalid_argument("determinant: size too large for expansion");
    std::unordered_map<unsigned, MultiPoly> memo;
    return det_rec(m, (1u << m.rows()) - 1, memo);
}

static void k_subsets(std::size_t n, std::size_t k,
                      std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> cur(k);
    // lexicographic enumeration
    for (std::size_t i = 0; i < k; ++i)
        cur[i] = i;
    if (k > n)
        return;
    for (;;) {
        out.push_back(cur);
        std::size_t i = k;
        while (i > 0 && cur[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            break;
        ++cur[i - 1];
        for (std::size_t j = i; j < k; ++j)
            cur[j] = cur[j - 1] + 1;
    }
}

std::vector<MultiPoly> minors(const PolyMatrix& m, std::size_t k) {
    if (k > std::min(m.rows(), m.cols()))
        throw std::invalid_argument("minors: k out of range");
    std::vector<std::vector<std::size_t>> rowsets, colsets;
    k_subsets(m.rows(), k, rowsets);
    k_subsets(m.cols(), k, colsets);
    std::vector<MultiPoly> out;
    for (const auto& rs : rowsets)
        for (const auto& cs : colsets)
            out.push_back(determinant(m.minor_rows_cols(rs, cs)));
    return out;
}

static MultiPoly pf_rec(const PolyMatrix& m, unsigned mask,
                        std::unordered_map<unsigned, MultiPoly>& memo) {
    if (mask == 0)
        return MultiPoly::constant(m.nvars(), Rational(1));
    auto it = memo.find(mask);
    if (it != memo.end())
        return it->second;
    // expand along the first remaining row
    std::size_t i = 0;
    while (!(mask & (1u << i)))
        ++i;
    MultiPoly pf(m.nvars());
    int sign = 1;
    for (std::size_t j = i + 1; j < m.rows(); ++j) {
        if (!(mask & (1u << j)))
            continue;
        if (!m.at(i, j).is_zero()) {
            MultiPoly sub = pf_rec(m, mask & ~(1u << i) & ~(1u << j), memo);
            MultiPoly contrib = m.at(i, j) * sub;
            pf += (sign > 0) ? contrib : -contrib;
        }
        sign = -sign;
    }
    memo.emplace(mask, pf);
    return pf;
}

MultiPoly pfaffian(const PolyMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("pfaffian: matrix not square");
    if (m.rows() % 2 != 0)
        throw std::invalid_argument("pfaffian: odd size");
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            if (!(m.at(i, j) + m.at(j, i)).is_zero())
                throw std::invalid_argument("pfaffian: matrix not skew-symmetric");
    if (m.rows() == 0)
        return MultiPoly::constant(m.nvars(), Rational(1));
    if (m.rows() > 20)
        throw std::invalid_argument("pfaffian: size too large for expansion");
    std::unordered_map<unsigned, MultiPoly> memo;
    return pf_rec(m, (1u << m.rows()) - 1, memo);
}

// ---- expression parser ---------------------------------------------------

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("expression error at position " +
                                    std::to_string(pos) + ": " + what);
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    std::shared_ptr<Expr> make(Expr::Kind k, std::shared_ptr<Expr> a,
                               std::shared_ptr<Expr> b) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->lhs = std::move(a);
        e->rhs = std::move(b);
        return e;
    }

    std::shared_ptr<Expr> parse_sum() {
        auto acc = parse_term();
        for (;;) {
            if (eat('+'))
                acc = make(Expr::Kind::Add, acc, parse_term());
            else if (eat('-'))
                acc = make(Expr::Kind::Sub, acc, parse_term());
            else
                return acc;
        }
    }

    std::shared_ptr<Expr> parse_term() {
        auto acc = parse_unary();
        for (;;) {
            if (eat('*'))
                acc = make(Expr::Kind::Mul, acc, parse_unary());
            else if (eat('/'))
                acc = make(Expr::Kind::Div, acc, parse_unary());
            else
                return acc;
        }
    }

    std::shared_ptr<Expr> parse_unary() {
        if (eat('-')) {
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Neg;
            e->lhs = parse_unary();
            return e;
        }
        return parse_power();
    }

    std::shared_ptr<Expr> parse_power() {
        auto base = parse_primary();
        if (eat('^')) {
            bool neg = eat('-');
            skip_ws();
            if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
                fail("expected integer exponent after '^'");
            long k = 0;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                k = k * 10 + (s[pos++] - '0');
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Pow;
            e->lhs = base;
            e->exponent = static_cast<int>(neg ? -k : k);
            return e;
        }
        return base;
    }

    std::shared_ptr<Expr> parse_primary() {
        skip_ws();
        if (pos >= s.size())
            fail("unexpected end of input");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            auto e = parse_sum();
            if (!eat(')'))
                fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                num += s[pos++];
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Number;
            e->number = Rational::parse(num);
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' ||
                    s[pos] == '\''))
                id += s[pos++];
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Symbol;
            e->symbol = id;
            return e;
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

}  // namespace

Expr parse_expr(const std::string& text) {
    Parser p(text);
    auto e = p.parse_sum();
    p.skip_ws();
    if (p.pos != text.size())
        p.fail("trailing input");
    return *e;
}

namespace {

// variable index of "x<k>"/"t<k>", or npos
std::size_t var_index(const std::string& sym) {
    if (sym.size() < 2 || (sym[0] != 'x' && sym[0] != 't'))
        return std::string::npos;
    for (std::size_t i = 1; i < sym.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(sym[i])))
            return std::string::npos;
    long k = std::stol(sym.substr(1));
    if (k < 1)
        return std::string::npos;
    return static_cast<std::size_t>(k - 1);
}

void scan_max_var(const Expr& e, std::size_t& maxv) {
    if (e.kind == Expr::Kind::Symbol) {
        std::size_t i = var_index(e.symbol);
        if (i == std::string::npos)
            throw std::invalid_argument("unknown variable '" + e.symbol + "'");
        maxv = std::max(maxv, i + 1);
    }
    if (e.lhs)
        scan_max_var(*e.lhs, maxv);
    if (e.rhs)
        scan_max_var(*e.rhs, maxv);
}

MultiPoly eval_poly(const Expr& e, std::size_t nvars) {
    switch (e.kind) {
        case Expr::Kind::Number:
            return MultiPoly::constant(nvars, e.number);
        case Expr::Kind::Symbol: {
            std::size_t i = var_index(e.symbol);
            if (i == std::string::npos || i >= nvars)
                throw std::invalid_argument("unknown variable '" + e.symbol + "'");
            return MultiPoly::variable(nvars, i);
        }
        case Expr::Kind::Add:
            return eval_poly(*e.lhs, nvars) + eval_poly(*e.rhs, nvars);
        case Expr::Kind::Sub:
            return eval_poly(*e.lhs, nvars) - eval_poly(*e.rhs, nvars);
        case Expr::Kind::Mul:
            return eval_poly(*e.lhs, nvars) * eval_poly(*e.rhs, nvars);
        case Expr::Kind::Div: {
            MultiPoly den = eval_poly(*e.rhs, nvars);
            if (!den.is_constant() || den.is_zero())
                throw std::invalid_argument("division only by nonzero constants");
            return eval_poly(*e.lhs, nvars) * den.terms().begin()->second.inverse();
        }
        case Expr::Kind::Neg:
            return -eval_poly(*e.lhs, nvars);
        case Expr::Kind::Pow: {
            MultiPoly base = eval_poly(*e.lhs, nvars);
            if (e.exponent >= 0)
                return base.pow(static_cast<unsigned>(e.exponent));
            // negative powers: only single monomials make Laurent sense
            if (base.term_count() != 1)
                throw std::invalid_argument("negative power of a non-monomial");
            const auto& [expv, coef] = *base.terms().begin();
            Exponents ne(expv.size());
            Rational c(1);
            for (int i = 0; i < -e.exponent; ++i)
                c *= coef;
            for (std::size_t i = 0; i < expv.size(); ++i)
                ne[i] = expv[i] * e.exponent;
            return MultiPoly::monomial(nvars, ne, c.inverse());
        }
    }
    throw std::logic_error("eval_poly: unreachable");
}

}  // namespace

MultiPoly parse_poly(const std::string& text, std::size_t nvars) {
    Expr e = parse_expr(text);
    std::size_t n = nvars;
    if (n == 0) {
        std::size_t maxv = 0;
        scan_max_var(e, maxv);
        n = maxv;
    }
    return eval_poly(e, n);
}

}  // namespace polyalg
}  // namespace rhkit
