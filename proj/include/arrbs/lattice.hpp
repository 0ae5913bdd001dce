#ifndef ARRBS_LATTICE_HPP
#define ARRBS_LATTICE_HPP

#include <string>
#include <vector>

#include "arrbs/arrangement.hpp"

namespace arrbs {

// One flat of the intersection lattice. The canonical key is the RREF of
// the span of the normals containing the flat.
struct Flat {
    int id = 0;
    QMatrix basis;           // rank x n, RREF rows spanning the normal space
    int rank = 0;
    std::vector<int> jset;   // distinct form indices t with X <= V(l_t)
    std::vector<int> covers; // ids of flats covering this one
    std::vector<int> covered_by;
    std::string key;         // serialized basis, dedupe/canonical sort key
};

// All intersections of hyperplanes, rank 0 (ambient) included; sorted by
// (rank, key). Built by breadth-first closure of the frontier.
std::vector<Flat> build_lattice(const Arrangement& a);

struct EdgeRecord {
    int flat_id = 0;
    int rank = 0;
    int d_x = 0;                // slots through X, with multiplicity
    int d_x_red = 0;            // distinct forms through X
    std::vector<int> d_x_k;     // per block k
    int d_x_prime = 0;          // f' slots through X
    int d_x_second = 0;         // g slots through X
    bool indecomposable = false;
};

// One record per proper flat (rank >= 1), in lattice order.
std::vector<EdgeRecord> edge_records(const Arrangement& a, const std::vector<Flat>& lattice,
                                     const FactorizationSpec& spec);

// Connectivity of the vector matroid on {normal_t : t in J(X)}, repetition
// included. Fundamental circuits of one greedy basis are merged by
// union-find; parallel slots of one form land in the same class.
bool is_indecomposable(const Arrangement& a, const Flat& flat);

// chi(A, t) over the reduced arrangement, by Mobius recursion.
Poly characteristic_polynomial(const Arrangement& a, const std::vector<Flat>& lattice);

// Mobius values mu(ambient, X) indexed like `lattice`.
std::vector<BigInt> moebius_values(const std::vector<Flat>& lattice);

} // namespace arrbs

#endif
