#pragma once

#include <bit>
#include <stdexcept>
#include <vector>

#include "monoplus/extint.hpp"

namespace monoplus {

// Min-tag segment tree supporting range-chmin updates and point queries.
// Each node holds a pending chmin tag; a point query reads the minimum
// tag along the leaf-to-root path, so no push-down is needed. Size is
// padded internally to a power of two.
//
// Indices are 0-based; intervals are inclusive.
class ChminSegTree {
public:
    explicit ChminSegTree(int size) : size_(size) {
        if (size < 1) throw std::invalid_argument("ChminSegTree: size must be >= 1");
        n_ = std::bit_ceil(static_cast<unsigned>(size));
        tag_.assign(2 * n_, kInf);
    }

    int size() const { return size_; }

    void range_chmin(int i, int j, ExtInt u) {
        if (i < 0 || j >= size_ || i > j)
            throw std::out_of_range("ChminSegTree::range_chmin: bad interval");
        last_visits_ = 0;
        unsigned l = static_cast<unsigned>(i) + n_;
        unsigned r = static_cast<unsigned>(j) + n_ + 1;
        while (l < r) {
            if (l & 1) apply(l++, u);
            if (r & 1) apply(--r, u);
            l >>= 1;
            r >>= 1;
        }
    }

    ExtInt query(int l) const {
        if (l < 0 || l >= size_)
            throw std::out_of_range("ChminSegTree::query: index out of range");
        last_visits_ = 0;
        ExtInt res = kInf;
        for (unsigned x = static_cast<unsigned>(l) + n_; x >= 1; x >>= 1) {
            ++last_visits_;
            res = ext_min(res, tag_[x]);
        }
        return res;
    }

    // Tree-node visits of the most recent operation (test instrumentation).
    int last_op_visits() const { return last_visits_; }

private:
    void apply(unsigned node, ExtInt u) {
        ++last_visits_;
        tag_[node] = ext_min(tag_[node], u);
    }

    int size_;
    unsigned n_;
    std::vector<ExtInt> tag_;
    mutable int last_visits_ = 0;
};

}  // namespace monoplus
