#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace cvnn {

/// Multi-index in N_0^s: exponents of monomials, orders of partial
/// derivatives, stencil depths.  Immutable after construction.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> entries);

    static MultiIndex zeros(std::size_t length);
    static MultiIndex unit(std::size_t length, std::size_t axis);

    std::size_t length() const { return entries_.size(); }
    int operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<int>& entries() const { return entries_; }

    /// |p| = sum of entries.
    int order() const;
    int max_entry() const;

    /// Componentwise comparison; lengths must match.
    bool leq(const MultiIndex& other) const;

    MultiIndex plus(const MultiIndex& other) const;
    MultiIndex concat(const MultiIndex& other) const;

    /// Splits a 2n-index p into (p', p'').
    std::pair<MultiIndex, MultiIndex> split_half() const;

    std::string to_string() const;

    bool operator==(const MultiIndex&) const = default;
    auto operator<=>(const MultiIndex&) const = default;

private:
    std::vector<int> entries_;
};

/// Exact binomial coefficient; rejects n > 64 (overflow guard).
std::int64_t binomial(int n, int k);

/// prod_j binom(p_j, r_j); requires r <= p componentwise and |p| <= 64.
std::int64_t multiindex_binomial(const MultiIndex& p, const MultiIndex& r);

/// Invokes f(r) for every multi-index 0 <= r <= p in lexicographic order.
template <class F>
void for_each_below(const MultiIndex& p, F&& f) {
    std::vector<int> r(p.length(), 0);
    while (true) {
        f(MultiIndex(r));
        std::size_t axis = p.length();
        while (axis > 0) {
            --axis;
            if (r[axis] < p[axis]) {
                ++r[axis];
                break;
            }
            r[axis] = 0;
            if (axis == 0) return;
        }
        if (p.length() == 0) return;
    }
}

/// Invokes f(k) for every multi-index of the given length with entries in
/// [0, bound], lexicographic order.
template <class F>
void for_each_box(std::size_t length, int bound, F&& f) {
    std::vector<int> top(length, bound);
    for_each_below(MultiIndex(top), std::forward<F>(f));
}

} // namespace cvnn
