#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace hyperperc {

// Union-find with path halving and union by size.
class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];  // path halving
            x = parent_[x];
        }
        return x;
    }

    // Returns true when the two components were merged (were distinct).
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

    bool same(int a, int b) { return find(a) == find(b); }
    int component_size(int x) { return size_[find(x)]; }
    int n() const { return static_cast<int>(parent_.size()); }

private:
    std::vector<int> parent_;
    std::vector<int> size_;
};

}  // namespace hyperperc
