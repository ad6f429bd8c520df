#include "maxapprox/subpool.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace maxapprox {

namespace {

void check_order(int r, int d) {
    if (d < 1) throw std::invalid_argument("pool dimension must be >= 1");
    if (r < 1 || r > d) throw std::invalid_argument("subpool order out of range");
}

}  // namespace

std::vector<int> combination_unrank(const SubsetIndex& idx) {
    check_order(idx.r, idx.d);
    const Integer total = binomial(idx.d, idx.r);
    if (idx.j < 1 || cmp(total, idx.j) < 0)
        throw std::invalid_argument("combination rank out of range");

    std::vector<int> subset;
    subset.reserve(static_cast<std::size_t>(idx.r));
    Integer rank(static_cast<unsigned long>(idx.j - 1));  // 0-based remainder
    int next = 1;
    for (int k = idx.r; k >= 1; --k) {
        int a = next;
        for (;;) {
            const Integer block = binomial(idx.d - a, k - 1);
            if (cmp(rank, block) < 0) break;
            rank -= block;
            ++a;
        }
        subset.push_back(a);
        next = a + 1;
    }
    return subset;
}

unsigned long combination_rank(const std::vector<int>& subset, int d) {
    const int r = static_cast<int>(subset.size());
    check_order(r, d);
    Integer rank = 0;
    int prev = 0;
    for (int k = 0; k < r; ++k) {
        const int a = subset[static_cast<std::size_t>(k)];
        if (a <= prev || a > d) throw std::invalid_argument("subset must be increasing in {1..d}");
        for (int b = prev + 1; b < a; ++b) rank += binomial(d - b, r - k - 1);
        prev = a;
    }
    rank += 1;
    if (!rank.fits_ulong_p()) throw std::invalid_argument("combination rank exceeds ulong");
    return rank.get_ui();
}

Rational subpool_max(const Vector& x, const std::vector<int>& indices) {
    if (indices.empty()) throw std::invalid_argument("subpool index set is empty");
    const Rational* best = nullptr;
    for (int i : indices) {
        if (i < 1 || static_cast<std::size_t>(i) > x.size())
            throw std::invalid_argument("subpool index out of range");
        const Rational& v = x[static_cast<std::size_t>(i - 1)];
        if (best == nullptr || v > *best) best = &v;
    }
    return *best;
}

Rational avg_subpool_max_direct(const Vector& x, int r) {
    const int d = static_cast<int>(x.size());
    check_order(r, d);
    const Integer count = binomial(d, r);
    if (cmp(count, kEnumerationCap) > 0)
        throw std::invalid_argument("too large: subset enumeration exceeds cap");

    Rational sum = 0;
    std::vector<int> subset(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) subset[static_cast<std::size_t>(i)] = i + 1;
    for (;;) {
        sum += subpool_max(x, subset);
        int pos = r - 1;
        while (pos >= 0 && subset[static_cast<std::size_t>(pos)] == d - (r - 1 - pos)) --pos;
        if (pos < 0) break;
        ++subset[static_cast<std::size_t>(pos)];
        for (int q = pos + 1; q < r; ++q)
            subset[static_cast<std::size_t>(q)] = subset[static_cast<std::size_t>(q - 1)] + 1;
    }
    return sum / rat(count, 1);
}

Rational avg_subpool_max_orderstat(const Vector& x, int r) {
    const int d = static_cast<int>(x.size());
    check_order(r, d);
    const Vector sorted = sorted_descending(x);
    Rational sum = 0;
    for (int j = 1; j <= d - r + 1; ++j)
        sum += rat(binomial(d - j, r - 1), 1) * sorted[static_cast<std::size_t>(j - 1)];
    return sum / rat(binomial(d, r), 1);
}

Matrix b_matrix(int d) {
    if (d < 2) throw std::invalid_argument("b_matrix requires d >= 2");
    Matrix b(static_cast<std::size_t>(d - 1), static_cast<std::size_t>(d));
    for (int r = 1; r <= d - 1; ++r) {
        const Rational denom = rat(binomial(d, r), 1);
        for (int c = 1; c + r <= d + 1; ++c)
            b(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(c - 1)) =
                rat(binomial(d - c, r - 1), 1) / denom;
    }
    return b;
}

Matrix v_matrix(int d) {
    if (d < 1) throw std::invalid_argument("v_matrix requires d >= 1");
    Matrix v(static_cast<std::size_t>(d), static_cast<std::size_t>(d + 1));
    for (int i = 1; i <= d; ++i)
        for (int c = i + 1; c <= d + 1; ++c)
            v(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(c - 1)) = 1;
    return v;
}

Matrix k_matrix(int d) {
    return b_matrix(d) * v_matrix(d);
}

Vector sorted_descending(const Vector& x) {
    Vector out = x;
    std::sort(out.begin(), out.end(), std::greater<Rational>());
    return out;
}

}  // namespace maxapprox
