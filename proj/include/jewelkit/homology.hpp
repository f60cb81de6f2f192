#ifndef JEWELKIT_HOMOLOGY_HPP
#define JEWELKIT_HOMOLOGY_HPP

#include <string>
#include <vector>

#include "jewelkit/rational.hpp"

namespace jewelkit {

struct IntMatrix {
    int rows = 0, cols = 0;
    std::vector<std::vector<Int>> a;  // row-major

    static IntMatrix zero(int r, int c);
    static IntMatrix identity(int n);
    IntMatrix mul(const IntMatrix& o) const;
    bool is_zero() const;
    bool operator==(const IntMatrix&) const = default;
};

/// Smith normal form U*A*V = D with d_i | d_{i+1}. Pivoting picks the entry of
/// least absolute value to control growth; the transform identity is
/// re-multiplied and checked on matrices up to the verification threshold.
struct SmithResult {
    IntMatrix d;
    IntMatrix u, v;
    int rank = 0;
    std::vector<Int> invariant_factors;  // the nonzero diagonal, positive
    bool verified = false;
};

SmithResult smith_normal_form(const IntMatrix& m);

struct HomologyGroup {
    int degree = 0;
    long betti = 0;
    std::vector<Int> torsion;  // invariant factors > 1
};

struct HomologyResult {
    std::vector<HomologyGroup> groups;  // degrees 0..dim
    long euler_characteristic = 0;      // alternating generator count
};

/// Reduced integral homology of the abstract simplicial complex generated by
/// the given maximal faces (vertex lists).
HomologyResult simplicial_homology(const std::vector<std::vector<int>>& maximal_faces);

/// Boundary matrices of a chain complex, degree k mapping C_k -> C_{k-1};
/// boundaries[0] is ignored. Generator labels are carried for reporting.
struct ChainComplex {
    std::vector<int> dims;
    std::vector<IntMatrix> boundaries;
    std::vector<std::vector<std::string>> labels;

    int top_degree() const { return static_cast<int>(dims.size()) - 1; }
    void verify_dsquared() const;  // throws when some composite is nonzero
};

/// Rational homology (torsion-free part) of an integer chain complex, with
/// the Euler-characteristic consistency check.
HomologyResult rational_homology(const ChainComplex& c);

/// The rational chain complex of the quotient of the subcomplex spanned by
/// incomplete core systems of rank n: degree-k generators are classes with
/// k+1 spheres and no orientation-reversing symmetry (no automorphism inducing
/// an odd edge permutation); the boundary removes one sphere at a time.
/// The output is exploratory: it computes the quotient object's homology, not
/// the homology of the complex itself.
ChainComplex quotient_chain_complex(int n, int jobs = 1);

}  // namespace jewelkit

#endif
