#pragma once

#include <cstdint>
#include <vector>

#include "rhkit/cdga.hpp"

namespace rhkit {
namespace massey {

struct MasseyResult {
    bool defined = false;
    cdga::CohomologyClass representative;   // class of the defining-system cocycle
    QVector class_coords;                   // coords in the H basis of its degree
    std::vector<QVector> indeterminacy;     // basis of u1.H + H.u3 in H coords
    bool vanishes = false;                  // representative lies in the indeterminacy
};

// Triple Massey product <u1,u2,u3> with exact indeterminacy. Requires
// u1 u2 = u2 u3 = 0 in cohomology; otherwise the product is not defined and
// `defined` is false. The defining-system lifts are solved exactly; `seed`
// perturbs the lift choices inside their solution spaces (the representative
// then moves only within the indeterminacy; `vanishes` is choice-free).
MasseyResult triple_massey(const cdga::FiniteCdga& a, const cdga::CohomologyClass& u1,
                           const cdga::CohomologyClass& u2, const cdga::CohomologyClass& u3,
                           std::uint64_t seed = 0);

struct ScanEntry {
    std::size_t deg1 = 0, deg2 = 0, deg3 = 0;  // degrees of the basis classes
    std::size_t idx1 = 0, idx2 = 0, idx3 = 0;  // indices in the cohomology bases
    MasseyResult result;
};

// Scans basis triples of cohomology classes with total output degree
// <= max_degree and reports every defined, non-vanishing triple. An empty
// report in degrees <= q+1 is necessary for q-formality, never sufficient.
std::vector<ScanEntry> massey_obstruction_scan(const cdga::FiniteCdga& a,
                                               std::size_t max_degree,
                                               std::uint64_t seed = 0);

}  // namespace massey
}  // namespace rhkit
