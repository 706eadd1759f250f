#ifndef EPSCHAIN_ORACLE_HPP
#define EPSCHAIN_ORACLE_HPP

// Brute-force reference for chain homotopy on small clouds: enumerate every
// valid chain between two endpoints up to a length bound, join chains one
// raw elementary move apart, and take connected components. Classes at a
// length bound refine the true homotopy classes.
//
// Deliberately shares nothing with the homotopy engine beyond the metric.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "epschain/space.hpp"
#include "epschain/union_find.hpp"

namespace epschain {

struct OracleClasses {
    std::vector<std::vector<VertexId>> chains;  // lexicographic order
    std::vector<std::size_t> class_of;          // per chain, dense class ids
    std::size_t class_count = 0;

    std::optional<std::size_t> index_of(std::span<const VertexId> chain) const {
        const std::vector<VertexId> key(chain.begin(), chain.end());
        auto it = std::lower_bound(chains.begin(), chains.end(), key);
        if (it == chains.end() || *it != key)
            return std::nullopt;
        return static_cast<std::size_t>(it - chains.begin());
    }

    std::optional<std::size_t> class_of_chain(std::span<const VertexId> chain) const {
        auto i = index_of(chain);
        if (!i)
            return std::nullopt;
        return class_of[*i];
    }
};

inline constexpr std::size_t oracle_max_points = 12;
inline constexpr std::size_t oracle_max_chains = 2'000'000;

inline OracleClasses oracle_classes(const PointCloud& cloud, VertexId from, VertexId to, Scale s,
                                    std::size_t max_len) {
    if (cloud.size() > oracle_max_points)
        throw std::invalid_argument("oracle is limited to clouds of at most 12 points");
    cloud.check(from);
    cloud.check(to);
    if (max_len < 1)
        throw std::invalid_argument("oracle length bound must be at least 1");
    const std::size_t n = cloud.size();
    auto close = [&](VertexId a, VertexId b) { return s.admits(cloud.distance_unchecked(a, b)); };

    OracleClasses out;
    std::vector<VertexId> cur{from};
    // depth-first in lexicographic order, so `chains` comes out sorted
    auto dfs = [&](auto&& self) -> void {
        if (cur.back() == to)
            out.chains.push_back(cur);
        if (out.chains.size() > oracle_max_chains)
            throw std::length_error("oracle enumeration overflow");
        if (cur.size() == max_len)
            return;
        for (VertexId v = 0; v < n; ++v)
            if (close(cur.back(), v)) {
                cur.push_back(v);
                self(self);
                cur.pop_back();
            }
    };
    dfs(dfs);
    std::sort(out.chains.begin(), out.chains.end());

    UnionFind uf(out.chains.size());
    std::vector<VertexId> next;
    for (std::size_t c = 0; c < out.chains.size(); ++c) {
        const auto& ch = out.chains[c];
        const std::size_t len = ch.size();
        for (std::size_t pos = 1; pos + 1 < len; ++pos)
            if (close(ch[pos - 1], ch[pos + 1])) {
                next = ch;
                next.erase(next.begin() + static_cast<std::ptrdiff_t>(pos));
                if (auto j = out.index_of(next))
                    uf.unite(c, *j);
            }
        if (len < max_len)
            for (std::size_t pos = 1; pos < len; ++pos)
                for (VertexId v = 0; v < n; ++v)
                    if (close(ch[pos - 1], v) && close(v, ch[pos])) {
                        next = ch;
                        next.insert(next.begin() + static_cast<std::ptrdiff_t>(pos), v);
                        if (auto j = out.index_of(next))
                            uf.unite(c, *j);
                    }
    }
    // the one-vertex chain [x] is identified with [x, x]
    if (from == to && max_len >= 2) {
        auto a = out.index_of(std::vector<VertexId>{from});
        auto b = out.index_of(std::vector<VertexId>{from, from});
        if (a && b)
            uf.unite(*a, *b);
    }
    out.class_of.assign(out.chains.size(), 0);
    std::map<std::size_t, std::size_t> dense;
    for (std::size_t c = 0; c < out.chains.size(); ++c) {
        auto [it, inserted] = dense.emplace(uf.find(c), dense.size());
        out.class_of[c] = it->second;
    }
    out.class_count = dense.size();
    return out;
}

}  // namespace epschain

#endif
