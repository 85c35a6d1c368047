#include "cvnn/multi_index.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cvnn {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
    for (int e : entries_) {
        if (e < 0) throw std::invalid_argument("multi-index entries must be non-negative");
    }
}

MultiIndex MultiIndex::zeros(std::size_t length) {
    return MultiIndex(std::vector<int>(length, 0));
}

MultiIndex MultiIndex::unit(std::size_t length, std::size_t axis) {
    if (axis >= length) throw std::invalid_argument("unit axis out of range");
    std::vector<int> e(length, 0);
    e[axis] = 1;
    return MultiIndex(std::move(e));
}

int MultiIndex::order() const {
    return std::accumulate(entries_.begin(), entries_.end(), 0);
}

int MultiIndex::max_entry() const {
    if (entries_.empty()) return 0;
    return *std::max_element(entries_.begin(), entries_.end());
}

bool MultiIndex::leq(const MultiIndex& other) const {
    if (length() != other.length())
        throw std::invalid_argument("multi-index length mismatch in comparison");
    for (std::size_t i = 0; i < length(); ++i) {
        if (entries_[i] > other.entries_[i]) return false;
    }
    return true;
}

MultiIndex MultiIndex::plus(const MultiIndex& other) const {
    if (length() != other.length())
        throw std::invalid_argument("multi-index length mismatch in addition");
    std::vector<int> e(length());
    for (std::size_t i = 0; i < length(); ++i) e[i] = entries_[i] + other.entries_[i];
    return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::concat(const MultiIndex& other) const {
    std::vector<int> e = entries_;
    e.insert(e.end(), other.entries_.begin(), other.entries_.end());
    return MultiIndex(std::move(e));
}

std::pair<MultiIndex, MultiIndex> MultiIndex::split_half() const {
    if (length() % 2 != 0)
        throw std::invalid_argument("split_half needs an even-length multi-index");
    std::size_t n = length() / 2;
    std::vector<int> a(entries_.begin(), entries_.begin() + static_cast<long>(n));
    std::vector<int> b(entries_.begin() + static_cast<long>(n), entries_.end());
    return {MultiIndex(std::move(a)), MultiIndex(std::move(b))};
}

std::string MultiIndex::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) os << ',';
        os << entries_[i];
    }
    os << ')';
    return os.str();
}

std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) throw std::domain_error("binomial requires 0 <= k <= n");
    if (n > 64) throw std::domain_error("binomial order above 64 rejected (overflow guard)");
    k = std::min(k, n - k);
    unsigned __int128 res = 1;
    for (int i = 1; i <= k; ++i) {
        res = res * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    }
    return static_cast<std::int64_t>(res);
}

std::int64_t multiindex_binomial(const MultiIndex& p, const MultiIndex& r) {
    if (!r.leq(p)) throw std::domain_error("multiindex_binomial requires r <= p componentwise");
    if (p.order() > 64)
        throw std::domain_error("multi-index order above 64 rejected (overflow guard)");
    std::int64_t res = 1;
    for (std::size_t j = 0; j < p.length(); ++j) res *= binomial(p[j], r[j]);
    return res;
}

} // namespace cvnn
