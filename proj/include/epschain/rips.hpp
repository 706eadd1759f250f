#ifndef EPSCHAIN_RIPS_HPP
#define EPSCHAIN_RIPS_HPP

// The Rips complex of a cloud at one scale, truncated to dimension 2, and
// its first homology over GF(2). A nonzero class of a closed chain certifies
// that the chain is not null-homotopic in the complex.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "epschain/chain.hpp"
#include "epschain/space.hpp"

namespace epschain {

using EdgeId = std::uint32_t;

struct Edge {
    VertexId a;
    VertexId b;  // a < b
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Triangle {
    VertexId a, b, c;  // a < b < c
    friend bool operator==(const Triangle&, const Triangle&) = default;
    friend auto operator<=>(const Triangle&, const Triangle&) = default;
};

/// Homology class of a 1-cycle: the cycle's edge vector fully reduced
/// against the echelon basis of im(boundary2). Two cycles are homologous iff
/// their residues are equal.
struct CycleClass {
    std::vector<EdgeId> residue;  // ascending edge ids

    bool is_zero() const noexcept { return residue.empty(); }
    friend bool operator==(const CycleClass&, const CycleClass&) = default;
};

namespace detail {

// a ^= b for ascending sparse GF(2) vectors
inline void xor_into(std::vector<EdgeId>& a, std::span<const EdgeId> b, std::vector<EdgeId>& scratch) {
    scratch.clear();
    scratch.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(scratch));
    a.swap(scratch);
}

struct EchelonBasis {
    std::once_flag once;
    std::vector<std::vector<EdgeId>> columns;        // reduced, nonzero, distinct lows
    std::vector<std::int64_t> column_with_low;       // per edge, -1 if no pivot
};

}  // namespace detail

class RipsSkeleton {
public:
    RipsSkeleton(const PointCloud& cloud, Scale scale)
        : cloud_(&cloud), scale_(scale), basis_(std::make_unique<detail::EchelonBasis>()) {
        NeighborhoodGraph g(cloud, scale);
        vertex_count_ = cloud.size();
        // upper neighbor lists and edge numbering in lexicographic (a, b) order
        upper_offsets_.push_back(0);
        for (std::size_t i = 0; i < vertex_count_; ++i) {
            for (VertexId j : g.neighbors(i))
                if (j > i)
                    edges_.push_back({static_cast<VertexId>(i), j});
            upper_offsets_.push_back(edges_.size());
        }
        for (std::size_t i = 0; i < vertex_count_; ++i) {
            auto ui = upper(static_cast<VertexId>(i));
            for (std::size_t p = 0; p < ui.size(); ++p) {
                const VertexId j = ui[p].b;
                auto uj = upper(j);
                // common upper neighbors k > j of i and j
                auto it_i = ui.begin() + static_cast<std::ptrdiff_t>(p) + 1;
                auto it_j = uj.begin();
                while (it_i != ui.end() && it_j != uj.end()) {
                    if (it_i->b < it_j->b)
                        ++it_i;
                    else if (it_j->b < it_i->b)
                        ++it_j;
                    else {
                        triangles_.push_back({static_cast<VertexId>(i), j, it_i->b});
                        ++it_i;
                        ++it_j;
                    }
                }
            }
        }
    }

    const PointCloud& cloud() const noexcept { return *cloud_; }
    Scale scale() const noexcept { return scale_; }
    std::size_t vertex_count() const noexcept { return vertex_count_; }
    std::span<const Edge> edges() const noexcept { return edges_; }
    std::span<const Triangle> triangles() const noexcept { return triangles_; }

    std::optional<EdgeId> edge_index(VertexId a, VertexId b) const {
        if (a == b || a >= vertex_count_ || b >= vertex_count_)
            return std::nullopt;
        if (a > b)
            std::swap(a, b);
        auto ua = upper(a);
        auto it = std::lower_bound(ua.begin(), ua.end(), Edge{a, b});
        if (it == ua.end() || it->b != b)
            return std::nullopt;
        return static_cast<EdgeId>(upper_offsets_[a] + static_cast<std::size_t>(it - ua.begin()));
    }

    /// The two vertices of an edge (edge-by-vertex incidence row).
    std::array<VertexId, 2> boundary1(EdgeId e) const { return {edges_.at(e).a, edges_.at(e).b}; }

    /// The three edges of a triangle, ascending (triangle-by-edge row).
    std::array<EdgeId, 3> boundary2(std::size_t t) const {
        const Triangle& tri = triangles_.at(t);
        std::array<EdgeId, 3> out{*edge_index(tri.a, tri.b), *edge_index(tri.a, tri.c),
                                  *edge_index(tri.b, tri.c)};
        std::sort(out.begin(), out.end());
        return out;
    }

    /// boundary1 . boundary2 evaluated over GF(2): every vertex must meet
    /// each triangle boundary an even number of times.
    bool boundaries_compose_to_zero() const {
        for (std::size_t t = 0; t < triangles_.size(); ++t) {
            std::vector<VertexId> touched;
            for (EdgeId e : boundary2(t))
                for (VertexId v : boundary1(e))
                    touched.push_back(v);
            std::sort(touched.begin(), touched.end());
            for (std::size_t i = 0; i < touched.size(); i += 2)
                if (i + 1 >= touched.size() || touched[i] != touched[i + 1])
                    return false;
        }
        return true;
    }

    bool is_bounded(std::span<const VertexId> subset) const;

    /// GF(2) edge vector of a closed or open chain; repeated hops cancel and
    /// zero-length hops (a, a) contribute nothing.
    std::vector<EdgeId> edge_vector(const Chain& c) const {
        std::vector<EdgeId> v;
        for (std::size_t i = 0; i + 1 < c.size(); ++i) {
            if (c[i] == c[i + 1])
                continue;
            auto e = edge_index(c[i], c[i + 1]);
            if (!e)
                throw std::invalid_argument("chain hop is not an edge of the skeleton");
            v.push_back(*e);
        }
        std::sort(v.begin(), v.end());
        std::vector<EdgeId> out;
        for (std::size_t i = 0; i < v.size();) {
            std::size_t j = i;
            while (j < v.size() && v[j] == v[i])
                ++j;
            if ((j - i) % 2 == 1)
                out.push_back(v[i]);
            i = j;
        }
        return out;
    }

    bool is_cycle(std::span<const EdgeId> vec) const {
        std::vector<VertexId> ends;
        for (EdgeId e : vec) {
            ends.push_back(edges_.at(e).a);
            ends.push_back(edges_.at(e).b);
        }
        std::sort(ends.begin(), ends.end());
        for (std::size_t i = 0; i < ends.size(); i += 2)
            if (i + 1 >= ends.size() || ends[i] != ends[i + 1])
                return false;
        return true;
    }

    /// Fully reduced residue of a cycle vector.
    CycleClass cycle_class(std::vector<EdgeId> vec) const {
        const auto& basis = echelon();
        std::vector<EdgeId> kept, scratch;
        while (!vec.empty()) {
            const EdgeId low = vec.back();
            const std::int64_t col = basis.column_with_low[low];
            if (col < 0) {
                kept.push_back(low);
                vec.pop_back();
            } else {
                detail::xor_into(vec, basis.columns[static_cast<std::size_t>(col)], scratch);
            }
        }
        std::reverse(kept.begin(), kept.end());
        return CycleClass{std::move(kept)};
    }

    CycleClass loop_class(const Chain& loop) const {
        if (!loop.closed())
            throw std::invalid_argument("loop_class needs a closed chain");
        if (&loop.cloud() != cloud_)
            throw std::invalid_argument("loop belongs to a different cloud");
        if (loop.scale() != scale_)
            throw std::invalid_argument("loop scale does not match the skeleton scale");
        if (!loop.valid())
            throw std::invalid_argument("loop is not a valid chain at the skeleton scale");
        return cycle_class(edge_vector(loop));
    }

    std::size_t boundary2_rank() const { return echelon().columns.size(); }

    /// dim ker(boundary1) - rank(boundary2). rank(boundary1) over GF(2) is
    /// the vertex count minus the number of components.
    std::size_t betti1() const {
        std::size_t comps = 0;
        {
            UnionFind uf(vertex_count_);
            comps = vertex_count_;
            for (const Edge& e : edges_)
                if (uf.unite(e.a, e.b))
                    --comps;
        }
        const std::size_t rank1 = vertex_count_ - comps;
        return edges_.size() - rank1 - boundary2_rank();
    }

    /// Forces the cached reduction of boundary2 (otherwise built on first use).
    void prepare() const { (void)echelon(); }

private:
    std::span<const Edge> upper(VertexId i) const {
        return {edges_.data() + upper_offsets_[i], edges_.data() + upper_offsets_[i + 1]};
    }

    const detail::EchelonBasis& echelon() const {
        std::call_once(basis_->once, [this] {
            auto& b = *basis_;
            b.column_with_low.assign(edges_.size(), -1);
            std::vector<EdgeId> col, scratch;
            for (std::size_t t = 0; t < triangles_.size(); ++t) {
                auto bd = boundary2(t);
                col.assign(bd.begin(), bd.end());
                while (!col.empty()) {
                    const std::int64_t other = b.column_with_low[col.back()];
                    if (other < 0)
                        break;
                    detail::xor_into(col, b.columns[static_cast<std::size_t>(other)], scratch);
                }
                if (!col.empty()) {
                    b.column_with_low[col.back()] = static_cast<std::int64_t>(b.columns.size());
                    b.columns.push_back(col);
                }
            }
        });
        return *basis_;
    }

    const PointCloud* cloud_;
    Scale scale_;
    std::size_t vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> upper_offsets_;
    std::vector<Triangle> triangles_;
    std::unique_ptr<detail::EchelonBasis> basis_;
};

/// True iff every pair of the subset lies in the entourage.
inline bool is_bounded(const PointCloud& cloud, std::span<const VertexId> subset, Scale s) {
    if (subset.empty())
        throw std::invalid_argument("is_bounded needs a nonempty subset");
    for (VertexId v : subset)
        cloud.check(v);
    for (std::size_t i = 0; i < subset.size(); ++i)
        for (std::size_t j = i + 1; j < subset.size(); ++j)
            if (!s.admits(cloud.distance_unchecked(subset[i], subset[j])))
                return false;
    return true;
}

inline bool RipsSkeleton::is_bounded(std::span<const VertexId> subset) const {
    return epschain::is_bounded(*cloud_, subset, scale_);
}

inline RipsSkeleton build_rips(const PointCloud& cloud, Scale s) { return RipsSkeleton(cloud, s); }

}  // namespace epschain

#endif
