#ifndef EPSCHAIN_CHAIN_HPP
#define EPSCHAIN_CHAIN_HPP

// Chains at a scale, elementary moves (interior insertion and deletion of a
// point), chain connectivity and shortest chains.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "epschain/space.hpp"
#include "epschain/union_find.hpp"

namespace epschain {

/// An ordered sequence of point indices of one cloud, asserted valid at a
/// scale. Construction checks the indices only; `valid()` checks the hops.
class Chain {
public:
    Chain(const PointCloud& cloud, std::vector<VertexId> vertices, Scale scale)
        : cloud_(&cloud), vertices_(std::move(vertices)), scale_(scale) {
        if (vertices_.empty())
            throw std::invalid_argument("a chain needs at least one vertex");
        for (VertexId v : vertices_)
            cloud.check(v);
    }

    const PointCloud& cloud() const noexcept { return *cloud_; }
    std::span<const VertexId> vertices() const noexcept { return vertices_; }
    const std::vector<VertexId>& vertex_list() const noexcept { return vertices_; }
    Scale scale() const noexcept { return scale_; }
    std::size_t size() const noexcept { return vertices_.size(); }
    VertexId front() const noexcept { return vertices_.front(); }
    VertexId back() const noexcept { return vertices_.back(); }
    VertexId operator[](std::size_t i) const { return vertices_.at(i); }
    bool closed() const noexcept { return front() == back(); }

    bool valid() const {
        for (std::size_t i = 0; i + 1 < vertices_.size(); ++i)
            if (!scale_.admits(cloud_->distance_unchecked(vertices_[i], vertices_[i + 1])))
                return false;
        return true;
    }

    /// Same vertices asserted at another scale.
    Chain at_scale(Scale s) const { return Chain(*cloud_, vertices_, s); }

    /// Largest hop length (0 for a single vertex).
    double mesh() const {
        double m = 0.0;
        for (std::size_t i = 0; i + 1 < vertices_.size(); ++i)
            m = std::max(m, cloud_->distance_unchecked(vertices_[i], vertices_[i + 1]));
        return m;
    }

    friend bool operator==(const Chain& a, const Chain& b) {
        return a.cloud_ == b.cloud_ && a.scale_ == b.scale_ && a.vertices_ == b.vertices_;
    }

private:
    const PointCloud* cloud_;
    std::vector<VertexId> vertices_;
    Scale scale_;
};

inline bool validate(const Chain& c) { return c.valid(); }

inline Chain inverse(const Chain& a) {
    std::vector<VertexId> v(a.vertices().rbegin(), a.vertices().rend());
    return Chain(a.cloud(), std::move(v), a.scale());
}

/// a * b, with the shared junction vertex kept once.
inline Chain concatenate(const Chain& a, const Chain& b) {
    if (&a.cloud() != &b.cloud())
        throw std::invalid_argument("chains belong to different clouds");
    if (a.scale() != b.scale())
        throw std::invalid_argument("cannot concatenate chains asserted at different scales");
    if (a.back() != b.front())
        throw std::invalid_argument("concatenation junction mismatch");
    std::vector<VertexId> v = a.vertex_list();
    v.insert(v.end(), b.vertices().begin() + 1, b.vertices().end());
    return Chain(a.cloud(), std::move(v), a.scale());
}

/// Consecutive repeats collapsed.
inline std::vector<VertexId> collapse_repeats(std::span<const VertexId> v) {
    std::vector<VertexId> out;
    out.reserve(v.size());
    for (VertexId x : v)
        if (out.empty() || out.back() != x)
            out.push_back(x);
    return out;
}

/// Insert(position, point) places `point` between the vertices at
/// position-1 and position; Remove(position) deletes an interior vertex.
struct ElementaryMove {
    enum class Kind { insert, remove };

    Kind kind = Kind::insert;
    std::size_t position = 0;
    VertexId point = 0;  // meaningful for inserts only

    static ElementaryMove insert(std::size_t position, VertexId point) {
        return {Kind::insert, position, point};
    }
    static ElementaryMove remove(std::size_t position) { return {Kind::remove, position, 0}; }

    friend bool operator==(const ElementaryMove&, const ElementaryMove&) = default;
};

namespace detail {

inline bool move_is_legal(const PointCloud& cloud, std::span<const VertexId> v, Scale s,
                          const ElementaryMove& m) {
    const std::size_t n = v.size();
    if (m.kind == ElementaryMove::Kind::insert) {
        if (m.position < 1 || m.position >= n || m.point >= cloud.size())
            return false;
        return s.admits(cloud.distance_unchecked(v[m.position - 1], m.point)) &&
               s.admits(cloud.distance_unchecked(m.point, v[m.position]));
    }
    if (m.position < 1 || m.position + 1 >= n)
        return false;
    return s.admits(cloud.distance_unchecked(v[m.position - 1], v[m.position + 1]));
}

inline void apply_unchecked(std::vector<VertexId>& v, const ElementaryMove& m) {
    if (m.kind == ElementaryMove::Kind::insert)
        v.insert(v.begin() + static_cast<std::ptrdiff_t>(m.position), m.point);
    else
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(m.position));
}

}  // namespace detail

inline bool is_legal(const Chain& c, const ElementaryMove& m) {
    return detail::move_is_legal(c.cloud(), c.vertices(), c.scale(), m);
}

/// Every legal move, ordered by (position, insert before remove, point).
/// `candidates` restricts the inserted points (default: the whole cloud).
inline std::vector<ElementaryMove> legal_moves(const Chain& c,
                                               std::optional<std::span<const VertexId>> candidates = {}) {
    std::vector<VertexId> pool;
    if (candidates) {
        pool.assign(candidates->begin(), candidates->end());
        std::sort(pool.begin(), pool.end());
        pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    } else {
        pool.resize(c.cloud().size());
        for (std::size_t i = 0; i < pool.size(); ++i)
            pool[i] = static_cast<VertexId>(i);
    }
    std::vector<ElementaryMove> out;
    const std::size_t n = c.size();
    for (std::size_t pos = 1; pos < n; ++pos) {
        for (VertexId p : pool) {
            auto m = ElementaryMove::insert(pos, p);
            if (is_legal(c, m))
                out.push_back(m);
        }
        if (pos + 1 < n) {
            auto m = ElementaryMove::remove(pos);
            if (is_legal(c, m))
                out.push_back(m);
        }
    }
    return out;
}

inline Chain apply(const Chain& c, const ElementaryMove& m) {
    if (!is_legal(c, m))
        throw std::invalid_argument(std::string("illegal ") +
                                    (m.kind == ElementaryMove::Kind::insert ? "insertion" : "deletion") +
                                    " at position " + std::to_string(m.position));
    std::vector<VertexId> v = c.vertex_list();
    detail::apply_unchecked(v, m);
    return Chain(c.cloud(), std::move(v), c.scale());
}

/// Connected components of the entourage graph, each ascending, ordered by
/// smallest member.
inline std::vector<std::vector<VertexId>> components(const NeighborhoodGraph& g) {
    UnionFind uf(g.vertex_count());
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        for (VertexId j : g.neighbors(i))
            if (j > i)
                uf.unite(i, j);
    std::vector<std::vector<VertexId>> out;
    for (auto& block : uf.blocks())
        out.emplace_back(block.begin(), block.end());
    return out;
}

inline std::vector<std::vector<VertexId>> components(const PointCloud& cloud, Scale s) {
    return components(NeighborhoodGraph(cloud, s));
}

/// Shortest chain from i to j in `g` avoiding vertices with blocked[v] set
/// (the endpoints themselves are never blocked). Among shortest chains the
/// lexicographically smallest vertex sequence is returned.
inline std::optional<Chain> find_chain(const NeighborhoodGraph& g, VertexId i, VertexId j,
                                       std::span<const char> blocked = {}) {
    const PointCloud& cloud = g.cloud();
    cloud.check(i);
    cloud.check(j);
    if (i == j)
        return Chain(cloud, {i}, g.scale());
    auto is_blocked = [&](VertexId v) {
        return v != i && v != j && !blocked.empty() && blocked[v];
    };
    constexpr auto unseen = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dist(g.vertex_count(), unseen);
    std::deque<VertexId> queue{j};
    dist[j] = 0;
    while (!queue.empty() && dist[i] == unseen) {
        const VertexId u = queue.front();
        queue.pop_front();
        for (VertexId w : g.neighbors(u))
            if (dist[w] == unseen && !is_blocked(w)) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
    }
    if (dist[i] == unseen)
        return std::nullopt;
    std::vector<VertexId> path{i};
    VertexId cur = i;
    while (cur != j) {
        for (VertexId w : g.neighbors(cur))  // ascending, so the first hit is the smallest
            if (dist[w] != unseen && dist[w] + 1 == dist[cur]) {
                cur = w;
                break;
            }
        path.push_back(cur);
    }
    return Chain(cloud, std::move(path), g.scale());
}

inline std::optional<Chain> find_chain(const PointCloud& cloud, VertexId i, VertexId j, Scale s) {
    return find_chain(NeighborhoodGraph(cloud, s), i, j);
}

}  // namespace epschain

#endif
