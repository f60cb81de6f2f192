#ifndef JEWELKIT_RATIONAL_HPP
#define JEWELKIT_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

namespace jewelkit {

using Int = mpz_class;
using Rat = mpq_class;

/// Serialize as "p/q" in lowest terms, q > 0, both decimal ("0/1", "3/14", "-5/1").
std::string rat_to_string(const Rat& r);

/// Parse "p/q" or a bare integer "p". Throws std::invalid_argument on malformed input.
Rat rat_from_string(const std::string& s);

Int int_pow(const Int& base, unsigned exp);

/// Exact rank of a rational matrix (Gaussian elimination, destructive copy).
int rational_rank(std::vector<std::vector<Rat>> m);

/// Exact determinant of a square rational matrix.
Rat rational_det(std::vector<std::vector<Rat>> m);

struct RatVectorLess {
    bool operator()(const std::vector<Rat>& a, const std::vector<Rat>& b) const;
};

}  // namespace jewelkit

#endif
