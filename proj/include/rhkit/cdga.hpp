#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rhkit/multipoly.hpp"
#include "rhkit/qmatrix.hpp"
#include "rhkit/rational.hpp"

namespace rhkit {
namespace cdga {

// Element of a finite CDGA, possibly inhomogeneous: one coordinate vector
// per degree (empty vector = zero in that degree).
struct Element {
    std::vector<QVector> comp;

    const QVector& at(std::size_t deg) const;
    bool is_zero() const;
    // Degree if homogeneous (all other components zero); nullopt otherwise.
    // The zero element reports degree 0.
    std::optional<std::size_t> homogeneous_degree() const;
};

// multiplication table for one degree pair: table[a][b] = coords of a*b
using MultTable = std::vector<std::vector<QVector>>;

// Finite-dimensional graded-commutative algebra with a degree-1
// differential, stored by graded bases, multiplication tables and
// differential matrices. A^i = 0 above top_degree; every axiom is
// interpreted within that range (the meaning of a finite model).
class FiniteCdga {
  public:
    FiniteCdga() = default;

    // raw constructor; run check() (or use checked()) before trusting it
    FiniteCdga(std::vector<std::vector<std::string>> basis,
               std::vector<std::vector<MultTable>> mult,
               std::vector<QMatrix> diff,
               std::string name = "");

    std::size_t top_degree() const { return basis_.empty() ? 0 : basis_.size() - 1; }
    std::size_t dim(std::size_t deg) const {
        return deg < basis_.size() ? basis_[deg].size() : 0;
    }
    std::size_t total_dim() const;
    const std::vector<std::string>& basis_names(std::size_t deg) const;
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    // coords of a*b in degree i+j (empty vector when i+j > top_degree)
    QVector multiply(std::size_t i, const QVector& a, std::size_t j,
                     const QVector& b) const;
    Element multiply(const Element& a, const Element& b) const;

    // matrix of d : A^i -> A^{i+1}; zero-shaped above top_degree
    const QMatrix& diff(std::size_t i) const;
    QVector apply_diff(std::size_t i, const QVector& a) const;

    // matrix of left multiplication by the degree-1 element w: A^i -> A^{i+1}
    QMatrix left_mult_matrix(const QVector& w, std::size_t i) const;

    // First violated axiom ("axiom: witness"), or nullopt when valid.
    std::optional<std::string> check() const;

    std::string element_str(std::size_t deg, const QVector& coords) const;
    std::string element_str(const Element& e) const;

    // raw table access (serialization)
    const std::vector<std::vector<MultTable>>& tables() const { return mult_; }

  private:
    std::vector<std::vector<std::string>> basis_;  // per degree
    std::vector<std::vector<MultTable>> mult_;      // [i][j][a][b] -> coords
    std::vector<QMatrix> diff_;                     // [i] : A^i -> A^{i+1}
    std::string name_;
};

// Throws std::invalid_argument with the diagnostic when invalid.
const FiniteCdga& checked(const FiniteCdga& a);

// A cohomology class, kept as a cocycle representative.
struct CohomologyClass {
    std::size_t degree = 0;
    QVector representative;           // coords in A^degree, d(rep) = 0
    const FiniteCdga* ambient = nullptr;
};

struct CohomologyBasis {
    std::size_t degree = 0;
    std::size_t betti = 0;
    std::vector<CohomologyClass> classes;  // representatives, deterministic
    std::vector<QVector> boundary_basis;   // basis of B^degree
};

// H^i(A) = Z^i/B^i with deterministic representatives (kernel_basis order,
// coboundary span skipped).
CohomologyBasis cohomology(const FiniteCdga& a, std::size_t i);

std::size_t betti(const FiniteCdga& a, std::size_t i);

// Coordinates of the class of cocycle z in the basis from cohomology();
// nullopt if z is not a cocycle.
std::optional<QVector> class_coordinates(const FiniteCdga& a, const CohomologyBasis& h,
                                         const QVector& z);

// Finite q-truncation A[q]: degrees <= q unchanged, degree q+1 replaced by
// d(A^q) + sum_{i+j=q+1} A^i A^j, nothing above. The inclusion into the
// naive degree-(q+1) truncation is checked to be an isomorphism on H^{<=q}
// and injective on H^{q+1}.
FiniteCdga truncate(const FiniteCdga& a, std::size_t q);

// Tensor product with Koszul signs; Kunneth is verified by callers/tests.
FiniteCdga tensor(const FiniteCdga& a, const FiniteCdga& b);

struct HirschGenerator {
    std::string name;
    std::size_t degree = 1;   // must be odd
    QVector tau;              // cocycle coords in A^{degree+1}
};

// A -> (A (x) /\V, d), d t_i = tau_i. All new generators must have odd
// degree and cocycle images of the right degree. When every generator sits
// in one degree n+1, the inclusion is verified to be an n-quasi-isomorphism.
FiniteCdga hirsch_extension(const FiniteCdga& a, const std::vector<HirschGenerator>& gens);

// d_omega = d + omega. ; omega must be a degree-1 cocycle. Matrices per
// degree; (d_omega)^2 = 0 re-verified.
struct TwistedDifferential {
    std::vector<QMatrix> mats;  // [i] : A^i -> A^{i+1}
};
TwistedDifferential twist(const FiniteCdga& a, const QVector& omega);

std::size_t twisted_betti(const FiniteCdga& a, const TwistedDifferential& t,
                          std::size_t i);

struct PdVerdict {
    bool ok = false;
    std::string reason;        // set when not ok
    QVector fundamental;       // coords of the chosen generator of A^n
};

// n-pd-cdga test: A^{>n} = 0, dim A^n = 1, all product pairings
// A^i (x) A^{n-i} -> A^n nondegenerate, and d A^{n-1} = 0.
PdVerdict pd_check(const FiniteCdga& a, std::size_t n);

// Lie algebra by structure constants on a finite basis.
struct LieStructure {
    std::vector<std::string> names;
    // bracket[i][j] = coords of [e_i, e_j]; full matrix, antisymmetry checked
    std::vector<std::vector<QVector>> bracket;
    std::vector<int> weights;  // optional LCS weights (empty = unset)

    std::size_t dim() const { return names.size(); }
    QVector apply(const QVector& u, const QVector& v) const;
    // First violated identity (antisymmetry/Jacobi), or nullopt.
    std::optional<std::string> check() const;
    static LieStructure abelian(std::size_t n);
};

// Chevalley-Eilenberg CDGA /\(g dual): generators in degree 1 dual to the
// basis of g, differential dual to the bracket via
// <[u',v'], w> = <u' ^ v', dw>, so d a_k = sum_{i<j} c_ij^k a_i a_j.
// Construction is capped at top degree `cap` (a finite model of the full
// complex; pass g.dim() for everything). d^2 = 0 holds iff Jacobi does and
// is re-verified; set check_jacobi = false to build from broken constants.
FiniteCdga chevalley_eilenberg(const LieStructure& g, std::size_t cap,
                               bool check_jacobi = true);
FiniteCdga chevalley_eilenberg(const LieStructure& g);

// dw + 1/2 [w,w] = 0 for w in A^1 (x) g, w given as dim A^1 x dim g matrix.
bool maurer_cartan_check(const FiniteCdga& a, const LieStructure& g,
                         const QMatrix& omega);

struct GradedElementRef {
    std::size_t degree = 0;
    QVector coords;
};

// q-regularity of e_1..e_r in a CGA (zero differential): each e_a must be a
// non-zero divisor up to degree q - deg(e_a) + 2 in H / sum_{b<a} e_b H.
// Elements must be homogeneous of positive even degree.
bool regular_sequence_check(const FiniteCdga& h, const std::vector<GradedElementRef>& elems,
                            std::size_t q);

// ---- builders ------------------------------------------------------------

struct SemifreeGenerator {
    std::string name;
    std::size_t degree = 1;
    std::string d_expr;  // element expression; "0" or empty for closed
};

// Free CGA on the generators (exterior on odd, polynomial on even),
// truncated at top degree `cap`, with the differential extended from the
// generator images by the graded Leibniz rule. Even generators require a
// finite cap to make sense; callers enforce that policy.
FiniteCdga semifree_cdga(const std::vector<SemifreeGenerator>& gens, std::size_t cap,
                         const std::string& name = "");

// Same, with the generator differentials given as coordinate vectors in the
// degree deg+1 monomial basis of the free algebra (d_expr fields ignored).
FiniteCdga semifree_cdga_with_images(const std::vector<SemifreeGenerator>& gens,
                                     std::size_t cap, const std::vector<QVector>& images,
                                     const std::string& name = "");

// Evaluates an element expression (symbols = basis element names of degree
// 1 generators or any named basis monomial) inside a.
Element eval_element(const FiniteCdga& a, const std::string& expr);

// stock fixtures used across tests and the CLI gallery
FiniteCdga exterior_algebra(std::size_t n);                  // /\(a1..an), d = 0
FiniteCdga heisenberg_model();                               // /\(a1,a2,b), db = a1 a2
FiniteCdga generalized_heisenberg(std::size_t q);            // /\(a1..a2q, b)
FiniteCdga nonhomog_example();                               // /\(a,b), db = b a
FiniteCdga torus_model(std::size_t n);                       // H*(T^n)
FiniteCdga sphere_model(std::size_t n);                      // H*(S^n)
FiniteCdga wedge_of_circles(std::size_t n);                  // k + k^n in degree 1
FiniteCdga punctured_elliptic_model();                       // /\(a,b,e)/(ae,be), de = ab

}  // namespace cdga

using cdga::CohomologyClass;
using cdga::Element;
using cdga::FiniteCdga;
using cdga::LieStructure;

}  // namespace rhkit
