#pragma once

#include "maxapprox/linalg.hpp"

namespace maxapprox {

/// Largest count of subsets an enumeration path is willing to visit.
inline constexpr unsigned long kEnumerationCap = 1'000'000;

struct SubsetIndex {
    unsigned long j;  // 1-based rank in lexicographic order
    int r;            // subset size
    int d;            // ground-set size
};

/// The j-th size-r subset of {1..d} in lexicographic order, strictly
/// increasing. Throws std::invalid_argument when the rank is out of range.
std::vector<int> combination_unrank(const SubsetIndex& idx);

/// Inverse of combination_unrank: the 1-based lexicographic rank of a
/// strictly increasing subset of {1..d}.
unsigned long combination_rank(const std::vector<int>& subset, int d);

/// max{x_j : j in R}; R is 1-based and must be a nonempty subset of {1..d}.
Rational subpool_max(const Vector& x, const std::vector<int>& indices);

/// Average of every order-r subpool max by explicit enumeration of all
/// C(d,r) subsets. Enumeration is capped at kEnumerationCap subsets.
Rational avg_subpool_max_direct(const Vector& x, int r);

/// Same value through the order-statistics identity
/// S(x;r,d) = (1/C(d,r)) sum_j C(d-j, r-1) x_(j), x sorted descending.
Rational avg_subpool_max_orderstat(const Vector& x, int r);

/// (d-1) x d matrix with entry (r,c) = C(d-c, r-1)/C(d,r) for r+c <= d+1,
/// zero otherwise; maps descending order statistics to (S(x;1,d), ...,
/// S(x;d-1,d)). Rows are 1-based r = 1..d-1.
Matrix b_matrix(int d);

/// d x (d+1) matrix with entry (i,c) = 1 for c > i; parameterizes the
/// sorted cone {1 >= x_(1) >= ... >= x_(d) >= 0} as V(d) * lambda over the
/// standard simplex.
Matrix v_matrix(int d);

/// K(d) = B(d) V(d), the subpool-max averages at the simplex vertices.
Matrix k_matrix(int d);

/// Descending copy of x.
Vector sorted_descending(const Vector& x);

}  // namespace maxapprox
