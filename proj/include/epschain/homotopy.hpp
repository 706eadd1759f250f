#ifndef EPSCHAIN_HOMOTOPY_HPP
#define EPSCHAIN_HOMOTOPY_HPP

// Budgeted three-valued decision of chain homotopy at a fixed scale.
//
// Two chains with common endpoints are homotopic when one can be turned into
// the other by interior insertions and deletions that keep every hop inside
// the entourage. The engine answers
//   homotopic      with a replayable list of elementary moves,
//   not_homotopic  with a nonzero GF(2) class of c1 * inverse(c2),
//   unknown        when neither was reached within the budget.
//
// Search runs over canonical chains (consecutive repeats collapsed; the
// one-vertex chain [x] stands for [x, x]). On canonical chains the raw moves
// induce four symmetric move kinds: insert, remove, insert a backtrack
// (v -> v p v) and remove a backtrack. Every canonical move expands to one
// or two raw moves, so witnesses are emitted in raw form.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "epschain/chain.hpp"
#include "epschain/rips.hpp"
#include "epschain/space.hpp"
#include "epschain/union_find.hpp"

namespace epschain {

struct SearchBudget {
    std::size_t max_chain_length = 64;
    std::size_t max_states = 1'000'000;

    void validate() const {
        if (max_chain_length < 1 || max_states < 1)
            throw std::invalid_argument("search budget limits must be at least 1");
    }
    friend bool operator==(const SearchBudget&, const SearchBudget&) = default;
};

inline SearchBudget default_budget(const Chain& c1, const Chain& c2) {
    return {4 * std::max(c1.size(), c2.size()), 1'000'000};
}

enum class Outcome { homotopic, not_homotopic, unknown };

inline const char* outcome_name(Outcome o) {
    switch (o) {
    case Outcome::homotopic: return "Homotopic";
    case Outcome::not_homotopic: return "NotHomotopic";
    case Outcome::unknown: return "Unknown";
    }
    return "Unknown";
}

struct HomotopyVerdict {
    Outcome outcome = Outcome::unknown;
    std::vector<ElementaryMove> witness;    // homotopic: raw moves taking c1 to c2
    std::optional<CycleClass> certificate;  // not_homotopic: class of c1 * inverse(c2)
    SearchBudget budget;
    std::size_t states_explored = 0;
    bool exhausted = false;  // unknown: every canonical chain within the length bound was reached
    std::string method;      // identical | gf2 | reduction | ladder | search | composed | budget

    bool homotopic() const noexcept { return outcome == Outcome::homotopic; }
    bool not_homotopic() const noexcept { return outcome == Outcome::not_homotopic; }
    bool decided() const noexcept { return outcome != Outcome::unknown; }
};

/// Applies raw moves to a chain. A one-vertex chain [x] is read as [x, x]
/// before an insertion at position 1; this is the only identification.
inline Chain replay(const Chain& from, std::span<const ElementaryMove> moves) {
    std::vector<VertexId> raw = from.vertex_list();
    for (const ElementaryMove& m : moves) {
        if (raw.size() == 1 && m.kind == ElementaryMove::Kind::insert && m.position == 1)
            raw.push_back(raw.front());
        if (!detail::move_is_legal(from.cloud(), raw, from.scale(), m))
            throw std::invalid_argument("witness contains an illegal move");
        detail::apply_unchecked(raw, m);
    }
    return Chain(from.cloud(), std::move(raw), from.scale());
}

/// True iff the moves replay legally from c1 and end at c2 up to repeat
/// collapse.
inline bool witness_replays(const Chain& c1, const Chain& c2, std::span<const ElementaryMove> moves) {
    try {
        const Chain end = replay(c1, moves);
        return collapse_repeats(end.vertices()) == collapse_repeats(c2.vertices());
    } catch (const std::invalid_argument&) {
        return false;
    }
}

namespace detail {

enum class CanonKind : std::uint8_t { insert, remove, insert_backtrack, remove_backtrack };

struct CanonMove {
    CanonKind kind;
    std::uint32_t pos;
    VertexId point;
};

using State = std::vector<VertexId>;

inline State apply_canon(const State& s, const CanonMove& m) {
    State t;
    t.reserve(s.size() + 2);
    switch (m.kind) {
    case CanonKind::insert:
        t.assign(s.begin(), s.begin() + m.pos);
        t.push_back(m.point);
        t.insert(t.end(), s.begin() + m.pos, s.end());
        break;
    case CanonKind::remove:
        t.assign(s.begin(), s.begin() + m.pos);
        t.insert(t.end(), s.begin() + m.pos + 1, s.end());
        break;
    case CanonKind::insert_backtrack:
        t.assign(s.begin(), s.begin() + m.pos + 1);
        t.push_back(m.point);
        t.push_back(s[m.pos]);
        t.insert(t.end(), s.begin() + m.pos + 1, s.end());
        break;
    case CanonKind::remove_backtrack:
        t.assign(s.begin(), s.begin() + m.pos);
        t.insert(t.end(), s.begin() + m.pos + 2, s.end());
        break;
    }
    return t;
}

// The move taking apply_canon(s, m) back to s.
inline CanonMove inverse_canon(const State& s, const CanonMove& m) {
    switch (m.kind) {
    case CanonKind::insert: return {CanonKind::remove, m.pos, 0};
    case CanonKind::remove: return {CanonKind::insert, m.pos, s[m.pos]};
    case CanonKind::insert_backtrack: return {CanonKind::remove_backtrack, m.pos + 1, 0};
    case CanonKind::remove_backtrack: return {CanonKind::insert_backtrack, m.pos - 1, s[m.pos]};
    }
    return m;
}

struct StateHash {
    std::size_t operator()(const State& s) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (VertexId v : s) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

// A canonical path: start state plus moves.
struct CanonPath {
    State start;
    std::vector<CanonMove> moves;
};

inline std::vector<CanonMove> reversed_path(const State& start, std::span<const CanonMove> moves) {
    std::vector<State> states{start};
    for (const CanonMove& m : moves)
        states.push_back(apply_canon(states.back(), m));
    std::vector<CanonMove> out;
    for (std::size_t t = moves.size(); t-- > 0;)
        out.push_back(inverse_canon(states[t], moves[t]));
    return out;
}

// Single canonical move from s to t, found by trying every position.
inline std::optional<CanonMove> connecting_move(const State& s, const State& t) {
    const std::size_t n = s.size();
    auto try_move = [&](CanonMove m) -> std::optional<CanonMove> {
        if (apply_canon(s, m) == t)
            return m;
        return std::nullopt;
    };
    if (t.size() == n + 1) {
        for (std::uint32_t p = 1; p < n; ++p)
            if (auto m = try_move({CanonKind::insert, p, t[p]}))
                return m;
    } else if (t.size() + 1 == n) {
        for (std::uint32_t p = 1; p + 1 < n; ++p)
            if (auto m = try_move({CanonKind::remove, p, 0}))
                return m;
    } else if (t.size() == n + 2) {
        for (std::uint32_t p = 0; p < n; ++p)
            if (auto m = try_move({CanonKind::insert_backtrack, p, t[p + 1]}))
                return m;
    } else if (t.size() + 2 == n) {
        for (std::uint32_t p = 1; p + 1 < n; ++p)
            if (s[p - 1] == s[p + 1])
                if (auto m = try_move({CanonKind::remove_backtrack, p, 0}))
                    return m;
    }
    return std::nullopt;
}

class MoveContext {
public:
    MoveContext(const PointCloud& cloud, const NeighborhoodGraph& graph)
        : cloud_(cloud), graph_(graph), scale_(graph.scale()) {}

    bool close(VertexId a, VertexId b) const {
        return scale_.admits(cloud_.distance_unchecked(a, b));
    }

    // Canonical successors of s in deterministic order, limited to length `bound`.
    template <class Visit>
    void for_each_move(const State& s, std::size_t bound, Visit&& visit) const {
        const std::size_t n = s.size();
        if (n >= 2) {
            for (std::uint32_t p = 1; p + 1 < n; ++p) {
                if (s[p - 1] == s[p + 1])
                    visit(CanonMove{CanonKind::remove_backtrack, p, 0});
                else if (close(s[p - 1], s[p + 1]))
                    visit(CanonMove{CanonKind::remove, p, 0});
            }
            if (n + 1 <= bound)
                for (std::uint32_t p = 1; p < n; ++p) {
                    auto na = graph_.neighbors(s[p - 1]);
                    auto nb = graph_.neighbors(s[p]);
                    auto ia = na.begin();
                    auto ib = nb.begin();
                    while (ia != na.end() && ib != nb.end()) {
                        if (*ia < *ib)
                            ++ia;
                        else if (*ib < *ia)
                            ++ib;
                        else {
                            if (*ia != s[p - 1] && *ia != s[p])
                                visit(CanonMove{CanonKind::insert, p, *ia});
                            ++ia;
                            ++ib;
                        }
                    }
                }
        }
        if (n + 2 <= bound)
            for (std::uint32_t p = 0; p < n; ++p)
                for (VertexId q : graph_.neighbors(s[p]))
                    visit(CanonMove{CanonKind::insert_backtrack, p, q});
    }

    // Deletes greedily (left to right, restarting one step back) until no
    // interior vertex can be dropped.
    CanonPath greedy_reduce(const State& start, State& end) const {
        CanonPath path{start, {}};
        end = start;
        std::uint32_t p = 1;
        while (end.size() >= 3 && p + 1 < end.size()) {
            std::optional<CanonMove> m;
            if (end[p - 1] == end[p + 1])
                m = CanonMove{CanonKind::remove_backtrack, p, 0};
            else if (close(end[p - 1], end[p + 1]))
                m = CanonMove{CanonKind::remove, p, 0};
            if (m) {
                end = apply_canon(end, *m);
                path.moves.push_back(*m);
                p = p > 1 ? p - 1 : 1;
            } else {
                ++p;
            }
        }
        return path;
    }

    // Monotone sweep of b across a: states b[0..j] ++ a[i..] with b[j] close
    // to a[i]. Succeeds when the two chains are close in the discrete Frechet
    // sense.
    std::optional<std::vector<CanonMove>> ladder(const State& a, const State& b, std::size_t bound,
                                                 std::size_t& visited) const {
        const std::size_t n = a.size(), m = b.size();
        if (n < 2 || m < 2)
            return std::nullopt;
        auto id = [m](std::size_t i, std::size_t j) { return i * m + j; };
        constexpr std::size_t none = static_cast<std::size_t>(-1);
        std::vector<std::size_t> parent(n * m, none);
        std::vector<char> seen(n * m, 0);
        std::vector<std::pair<std::size_t, std::size_t>> queue{{1, 0}};
        seen[id(1, 0)] = 1;
        const std::size_t goal = id(n - 1, m - 1);
        for (std::size_t qi = 0; qi < queue.size() && !seen[goal]; ++qi) {
            auto [i, j] = queue[qi];
            ++visited;
            auto push = [&](std::size_t ni, std::size_t nj) {
                const std::size_t k = id(ni, nj);
                if (seen[k] || (nj + 1) + (n - ni) > bound || !close(b[nj], a[ni]))
                    return;
                seen[k] = 1;
                parent[k] = id(i, j);
                queue.emplace_back(ni, nj);
            };
            if (i + 1 < n)
                push(i + 1, j);
            if (j + 1 < m)
                push(i, j + 1);
        }
        if (!seen[goal])
            return std::nullopt;
        std::vector<std::size_t> cells;
        for (std::size_t k = goal; k != none; k = parent[k])
            cells.push_back(k);
        std::reverse(cells.begin(), cells.end());
        std::vector<CanonMove> moves;
        State cur = a;
        for (std::size_t k : cells) {
            const std::size_t i = k / m, j = k % m;
            State raw(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(j + 1));
            raw.insert(raw.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
            State next = collapse_repeats(raw);
            if (next == cur)
                continue;
            auto mv = connecting_move(cur, next);
            if (!mv)
                return std::nullopt;  // not expected; fall back to search
            moves.push_back(*mv);
            cur = std::move(next);
        }
        if (cur != b)
            return std::nullopt;
        return moves;
    }

    struct SearchResult {
        std::optional<std::vector<CanonMove>> path;
        std::size_t states = 0;
        bool exhausted = false;
    };

    // Bidirectional breadth-first search, expanding the smaller frontier one
    // full layer at a time.
    SearchResult search(const State& from, const State& to, const SearchBudget& budget) const {
        struct Side {
            std::vector<State> states;
            std::vector<std::uint32_t> parent;
            std::vector<CanonMove> via;
            std::unordered_map<State, std::uint32_t, StateHash> index;
            std::size_t layer_begin = 0;

            std::uint32_t add(State s, std::uint32_t par, CanonMove mv) {
                const auto id = static_cast<std::uint32_t>(states.size());
                index.emplace(s, id);
                states.push_back(std::move(s));
                parent.push_back(par);
                via.push_back(mv);
                return id;
            }
            std::vector<CanonMove> moves_to(std::uint32_t id) const {
                std::vector<CanonMove> out;
                while (id != 0) {
                    out.push_back(via[id]);
                    id = parent[id];
                }
                std::reverse(out.begin(), out.end());
                return out;
            }
        };
        SearchResult result;
        const std::size_t bound = std::max({budget.max_chain_length, from.size(), to.size()});
        Side sides[2];
        sides[0].add(from, 0, {});
        sides[1].add(to, 0, {});
        if (from == to) {
            result.path = std::vector<CanonMove>{};
            result.states = 1;
            return result;
        }
        auto finish = [&](int side, std::uint32_t mine, std::uint32_t theirs) {
            const Side& f = sides[0];
            const Side& g = sides[1];
            const std::uint32_t fid = side == 0 ? mine : theirs;
            const std::uint32_t gid = side == 0 ? theirs : mine;
            std::vector<CanonMove> path = f.moves_to(fid);
            auto back = g.moves_to(gid);
            auto rev = reversed_path(g.states[0], back);
            path.insert(path.end(), rev.begin(), rev.end());
            result.path = std::move(path);
        };
        while (true) {
            const std::size_t w0 = sides[0].states.size() - sides[0].layer_begin;
            const std::size_t w1 = sides[1].states.size() - sides[1].layer_begin;
            if (w0 == 0 || w1 == 0) {
                result.exhausted = true;
                break;
            }
            const int side = w0 <= w1 ? 0 : 1;
            Side& me = sides[side];
            const Side& other = sides[1 - side];
            const std::size_t begin = me.layer_begin, end = me.states.size();
            me.layer_begin = end;
            bool stop = false;
            for (std::size_t k = begin; k < end && !stop; ++k) {
                const State cur = me.states[k];
                for_each_move(cur, bound, [&](const CanonMove& mv) {
                    if (stop)
                        return;
                    State next = apply_canon(cur, mv);
                    if (me.index.contains(next))
                        return;
                    auto hit = other.index.find(next);
                    const std::uint32_t id = me.add(std::move(next), static_cast<std::uint32_t>(k), mv);
                    if (hit != other.index.end()) {
                        finish(side, id, hit->second);
                        stop = true;
                        return;
                    }
                    if (sides[0].states.size() + sides[1].states.size() >= budget.max_states)
                        stop = true;
                });
            }
            if (result.path || stop)
                break;
        }
        result.states = sides[0].states.size() + sides[1].states.size();
        return result;
    }

private:
    const PointCloud& cloud_;
    const NeighborhoodGraph& graph_;
    Scale scale_;
};

// Raw moves that collapse the repeats of `raw` (stopping at [x, x]).
inline void emit_collapse(std::vector<VertexId>& raw, std::vector<ElementaryMove>& out) {
    for (std::size_t i = 0; i + 1 < raw.size();) {
        if (raw[i] != raw[i + 1]) {
            ++i;
            continue;
        }
        ElementaryMove m;
        if (i + 2 < raw.size())
            m = ElementaryMove::remove(i + 1);
        else if (i >= 1)
            m = ElementaryMove::remove(i);
        else
            break;  // [x, x]
        apply_unchecked(raw, m);
        out.push_back(m);
        if (i > 0)
            --i;
    }
}

// Raw moves realizing one canonical move; `raw` is the canonical state, or
// [x] / [x, x] for the state [x].
inline void emit_canon(std::vector<VertexId>& raw, const CanonMove& m, std::vector<ElementaryMove>& out) {
    auto push = [&](ElementaryMove e) {
        if (raw.size() == 1 && e.kind == ElementaryMove::Kind::insert && e.position == 1)
            raw.push_back(raw.front());
        apply_unchecked(raw, e);
        out.push_back(e);
    };
    switch (m.kind) {
    case CanonKind::insert: push(ElementaryMove::insert(m.pos, m.point)); break;
    case CanonKind::remove: push(ElementaryMove::remove(m.pos)); break;
    case CanonKind::remove_backtrack: {
        const std::size_t n = raw.size();
        push(ElementaryMove::remove(m.pos));
        if (m.pos + 3 <= n)
            push(ElementaryMove::remove(m.pos));
        else if (m.pos >= 2)
            push(ElementaryMove::remove(m.pos - 1));
        break;
    }
    case CanonKind::insert_backtrack: {
        const std::size_t n = raw.size();
        if (n == 1 || (n == 2 && raw[0] == raw[1])) {
            push(ElementaryMove::insert(1, m.point));
        } else if (m.pos + 1 < n) {
            push(ElementaryMove::insert(m.pos + 1, raw[m.pos]));
            push(ElementaryMove::insert(m.pos + 1, m.point));
        } else {
            push(ElementaryMove::insert(n - 1, raw[n - 1]));
            push(ElementaryMove::insert(n, m.point));
        }
        break;
    }
    }
}

// Raw insertions of repeats taking `raw` to `target` (same collapse).
inline void emit_inflate(std::vector<VertexId>& raw, const std::vector<VertexId>& target,
                         std::vector<ElementaryMove>& out) {
    while (raw != target && raw.size() > 1 && raw.size() < target.size()) {
        std::size_t d = 0;
        while (d < raw.size() && raw[d] == target[d])
            ++d;
        ElementaryMove m = d < raw.size() ? ElementaryMove::insert(d, target[d])
                                          : ElementaryMove::insert(raw.size() - 1, target.back());
        apply_unchecked(raw, m);
        out.push_back(m);
    }
}

}  // namespace detail

/// Partition of a chain list by pairwise verdicts.
struct Classification {
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::pair<std::size_t, std::size_t>> unknown_pairs;  // undecided, in different blocks
    std::vector<std::pair<std::size_t, std::size_t>> refuted_pairs;  // certified different
};

/// Homotopy queries against one cloud. Skeletons and neighborhood graphs
/// are built once per scale and shared; queries are const and thread-safe.
class HomotopyEngine {
public:
    explicit HomotopyEngine(const PointCloud& cloud) : cloud_(&cloud) {}

    const PointCloud& cloud() const noexcept { return *cloud_; }

    const RipsSkeleton& skeleton(Scale s) const {
        std::shared_ptr<const RipsSkeleton> sk;
        {
            std::lock_guard lock(mutex_);
            auto& slot = skeletons_[s.epsilon()];
            if (!slot)
                slot = std::make_shared<const RipsSkeleton>(*cloud_, s);
            sk = slot;
        }
        sk->prepare();
        return *sk;
    }

    const NeighborhoodGraph& graph(Scale s) const {
        std::lock_guard lock(mutex_);
        auto& slot = graphs_[s.epsilon()];
        if (!slot)
            slot = std::make_shared<const NeighborhoodGraph>(*cloud_, s);
        return *slot;
    }

    HomotopyVerdict are_homotopic(const Chain& c1, const Chain& c2, SearchBudget budget) const {
        budget.validate();
        check_pair(c1, c2);
        HomotopyVerdict v;
        v.budget = budget;
        const Scale s = c1.scale();
        const detail::State s1 = collapse_repeats(c1.vertices());
        const detail::State s2 = collapse_repeats(c2.vertices());

        if (s1 == s2) {
            v.outcome = Outcome::homotopic;
            v.method = "identical";
            v.states_explored = 1;
            v.witness = assemble(c1, c2, {});
            return v;
        }

        CycleClass cls = skeleton(s).loop_class(concatenate(c1, inverse(c2)));
        if (!cls.is_zero()) {
            v.outcome = Outcome::not_homotopic;
            v.method = "gf2";
            v.certificate = std::move(cls);
            return v;
        }

        detail::MoveContext ctx(*cloud_, graph(s));
        detail::State r1, r2;
        detail::CanonPath p1 = ctx.greedy_reduce(s1, r1);
        detail::CanonPath p2 = ctx.greedy_reduce(s2, r2);
        v.states_explored = p1.moves.size() + p2.moves.size() + 2;

        std::optional<std::vector<detail::CanonMove>> middle;
        if (r1 == r2) {
            middle = std::vector<detail::CanonMove>{};
            v.method = "reduction";
        } else {
            std::size_t visited = 0;
            middle = ctx.ladder(r1, r2, std::max({budget.max_chain_length, r1.size(), r2.size()}), visited);
            v.states_explored += visited;
            if (middle) {
                v.method = "ladder";
            } else {
                auto res = ctx.search(r1, r2, budget);
                v.states_explored += res.states;
                middle = std::move(res.path);
                v.exhausted = res.exhausted;
                v.method = middle ? "search" : "budget";
            }
        }
        if (!middle) {
            v.outcome = Outcome::unknown;
            return v;
        }
        std::vector<detail::CanonMove> path = p1.moves;
        path.insert(path.end(), middle->begin(), middle->end());
        auto back = detail::reversed_path(s2, p2.moves);
        path.insert(path.end(), back.begin(), back.end());
        v.outcome = Outcome::homotopic;
        v.exhausted = false;
        v.witness = assemble(c1, c2, path);
        if (!witness_replays(c1, c2, v.witness))
            throw std::logic_error("internal error: homotopy witness does not replay");
        return v;
    }

    /// Compares a closed chain with the constant chain [x, x].
    HomotopyVerdict is_null(const Chain& loop, SearchBudget budget) const {
        if (!loop.closed())
            throw std::invalid_argument("is_null needs a closed chain");
        return are_homotopic(loop, Chain(*cloud_, {loop.front(), loop.front()}, loop.scale()), budget);
    }

    /// Compares a chain with the two-point chain of its endpoints.
    HomotopyVerdict is_short(const Chain& c, SearchBudget budget) const {
        if (!c.scale().admits(cloud_->distance(c.front(), c.back())))
            throw std::invalid_argument("chain endpoints are farther apart than the chain scale");
        return are_homotopic(c, Chain(*cloud_, {c.front(), c.back()}, c.scale()), budget);
    }

    /// Greedy partition: each chain is compared with the first member of
    /// every existing block and joins the first block it is homotopic to.
    Classification classify(std::span<const Chain> chains, SearchBudget budget) const {
        Classification out;
        for (std::size_t i = 1; i < chains.size(); ++i)
            check_pair(chains[0], chains[i]);
        for (std::size_t i = 0; i < chains.size(); ++i) {
            bool placed = false;
            std::vector<std::pair<std::size_t, std::size_t>> pending_unknown;
            for (auto& block : out.blocks) {
                const std::size_t rep = block.front();
                const HomotopyVerdict v = are_homotopic(chains[rep], chains[i], budget);
                if (v.homotopic()) {
                    block.push_back(i);
                    placed = true;
                    break;
                }
                if (v.not_homotopic())
                    out.refuted_pairs.emplace_back(rep, i);
                else
                    pending_unknown.emplace_back(rep, i);
            }
            if (!placed)
                out.blocks.push_back({i});
            out.unknown_pairs.insert(out.unknown_pairs.end(), pending_unknown.begin(), pending_unknown.end());
        }
        return out;
    }

private:
    void check_pair(const Chain& c1, const Chain& c2) const {
        if (&c1.cloud() != cloud_ || &c2.cloud() != cloud_)
            throw std::invalid_argument("chains belong to a different cloud");
        if (c1.scale() != c2.scale())
            throw std::invalid_argument("chains are asserted at different scales");
        if (c1.front() != c2.front() || c1.back() != c2.back())
            throw std::invalid_argument("chains do not share endpoints");
        if (!c1.valid() || !c2.valid())
            throw std::invalid_argument("chain is not valid at its scale");
    }

    static std::vector<ElementaryMove> assemble(const Chain& c1, const Chain& c2, 
                                                std::span<const detail::CanonMove> path) {
        std::vector<ElementaryMove> w;
        std::vector<VertexId> raw = c1.vertex_list();
        detail::emit_collapse(raw, w);
        for (const auto& m : path)
            detail::emit_canon(raw, m, w);
        detail::emit_inflate(raw, c2.vertex_list(), w);
        return w;
    }

    const PointCloud* cloud_;
    mutable std::mutex mutex_;
    mutable std::map<double, std::shared_ptr<const RipsSkeleton>> skeletons_;
    mutable std::map<double, std::shared_ptr<const NeighborhoodGraph>> graphs_;
};

}  // namespace epschain

#endif
