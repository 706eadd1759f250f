#ifndef EPSCHAIN_JOINABILITY_HPP
#define EPSCHAIN_JOINABILITY_HPP

// Multi-scale constructions: short-chain search between close points, hop
// refinement, finite generalized-path approximations, local joinability and
// weak-chainability scans, and the Texas-circle experiments.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "epschain/chain.hpp"
#include "epschain/homotopy.hpp"
#include "epschain/space.hpp"

namespace epschain {

/// Strictly decreasing positive scales eps_1 > eps_2 > ... > eps_k, k >= 2.
class ScaleFiltration {
public:
    explicit ScaleFiltration(std::vector<double> scales) : scales_(std::move(scales)) {
        if (scales_.size() < 2)
            throw std::invalid_argument("a filtration needs at least two scales");
        for (std::size_t i = 0; i < scales_.size(); ++i) {
            if (!(scales_[i] > 0.0) || !std::isfinite(scales_[i]))
                throw std::invalid_argument("filtration scales must be positive");
            if (i > 0 && !(scales_[i] < scales_[i - 1]))
                throw std::invalid_argument("filtration scales must strictly decrease");
        }
    }

    /// eps_i = eps_1 / 2^(i-1)
    static ScaleFiltration halving(double first, std::size_t levels) {
        std::vector<double> s;
        for (std::size_t i = 0; i < levels; ++i)
            s.push_back(first / std::ldexp(1.0, static_cast<int>(i)));
        return ScaleFiltration(std::move(s));
    }

    std::size_t size() const noexcept { return scales_.size(); }
    Scale operator[](std::size_t i) const { return Scale(scales_.at(i)); }
    const std::vector<double>& values() const noexcept { return scales_; }

private:
    std::vector<double> scales_;
};

enum class PairOutcome { short_chain_found, refuted, unknown };

inline const char* pair_outcome_name(PairOutcome o) {
    switch (o) {
    case PairOutcome::short_chain_found: return "short_chain_found";
    case PairOutcome::refuted: return "refuted";
    case PairOutcome::unknown: return "unknown";
    }
    return "unknown";
}

struct CandidateVerdict {
    Chain chain;  // at the fine scale
    HomotopyVerdict verdict;
};

/// Result of looking for a fine chain between a and b that is short at a
/// coarser scale.
struct ShortChainSearch {
    VertexId from = 0;
    VertexId to = 0;
    PairOutcome outcome = PairOutcome::unknown;
    std::optional<std::size_t> found;  // index into candidates
    std::vector<CandidateVerdict> candidates;
    std::size_t distinct_classes = 0;  // GF(2) classes among the candidates, a lower bound
    std::string detail;

    const CandidateVerdict* winner() const { return found ? &candidates[*found] : nullptr; }
};

inline constexpr std::size_t default_max_candidates = 8;

/// Candidates are the shortest fine chain, then the shortest chain avoiding
/// the interior of every earlier candidate, and so on. The first candidate
/// whose shortness verdict is Homotopic wins. Otherwise the outcome is
/// refuted when every candidate was certified non-short (or no fine chain
/// exists), and unknown when some verdict stayed undecided.
inline ShortChainSearch find_short_chain(const HomotopyEngine& engine, VertexId a, VertexId b, Scale target,
                                         Scale fine, SearchBudget budget,
                                         std::size_t max_candidates = default_max_candidates) {
    const PointCloud& cloud = engine.cloud();
    ShortChainSearch out;
    out.from = a;
    out.to = b;
    if (!target.admits(cloud.distance(a, b)))
        throw std::invalid_argument("pair is farther apart than the target scale");
    const NeighborhoodGraph& g = engine.graph(fine);
    std::vector<char> blocked(cloud.size(), 0);
    for (std::size_t k = 0; k < max_candidates; ++k) {
        auto c = find_chain(g, a, b, blocked);
        if (!c)
            break;
        for (std::size_t i = 1; i + 1 < c->size(); ++i)
            blocked[(*c)[i]] = 1;
        HomotopyVerdict v = engine.is_short(c->at_scale(target), budget);
        const bool ok = v.homotopic();
        out.candidates.push_back({std::move(*c), std::move(v)});
        if (ok) {
            out.found = out.candidates.size() - 1;
            out.outcome = PairOutcome::short_chain_found;
            out.distinct_classes = 1;
            return out;
        }
        if (out.candidates.back().chain.size() <= 2)
            break;  // direct hop; nothing left to avoid
    }
    if (out.candidates.empty()) {
        out.outcome = PairOutcome::refuted;
        out.distinct_classes = 0;
        out.detail = "no chain at the fine scale";
        return out;
    }
    const bool all_refuted = std::all_of(out.candidates.begin(), out.candidates.end(),
                                         [](const CandidateVerdict& c) { return c.verdict.not_homotopic(); });
    out.outcome = all_refuted ? PairOutcome::refuted : PairOutcome::unknown;
    std::vector<CycleClass> seen;
    const RipsSkeleton& sk = engine.skeleton(target);
    const Chain base = out.candidates.front().chain.at_scale(target);
    for (const auto& c : out.candidates) {
        CycleClass cls = sk.loop_class(concatenate(c.chain.at_scale(target), inverse(base)));
        if (std::find(seen.begin(), seen.end(), cls) == seen.end())
            seen.push_back(std::move(cls));
    }
    out.distinct_classes = seen.size();
    out.detail = all_refuted ? "every candidate certified non-short" : "some candidate verdicts undecided";
    return out;
}

struct RefinementResult {
    bool ok = false;
    std::optional<Chain> chain;           // at the fine scale
    std::vector<ShortChainSearch> hops;   // one per hop of the input, up to the failure
    std::optional<std::size_t> failed_hop;
    std::optional<HomotopyVerdict> composed;  // output vs input at the short scale
};

/// Replaces every hop (x_i, x_{i+1}) by a fine chain that is short at
/// `short_scale`. On success the per-hop witnesses compose into a
/// homotopy from the output to the input at `short_scale`.
inline RefinementResult refine_chain(const HomotopyEngine& engine, const Chain& c, Scale short_scale,
                                     Scale fine_scale, SearchBudget budget,
                                     std::size_t max_candidates = default_max_candidates) {
    if (!(fine_scale < short_scale))
        throw std::invalid_argument("refinement needs fine_scale < short_scale");
    if (!short_scale.admits(c.mesh()))
        throw std::invalid_argument("chain has hops longer than the short scale");
    RefinementResult out;
    std::vector<Chain> pieces;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        const VertexId a = c[i], b = c[i + 1];
        if (a == b) {
            ShortChainSearch same;
            same.from = a;
            same.to = b;
            same.outcome = PairOutcome::short_chain_found;
            HomotopyVerdict v;
            v.outcome = Outcome::homotopic;
            v.method = "identical";
            v.budget = budget;
            same.candidates.push_back({Chain(c.cloud(), {a, a}, fine_scale), std::move(v)});
            same.found = 0;
            same.distinct_classes = 1;
            out.hops.push_back(std::move(same));
        } else {
            out.hops.push_back(find_short_chain(engine, a, b, short_scale, fine_scale, budget, max_candidates));
        }
        const ShortChainSearch& h = out.hops.back();
        if (!h.winner()) {
            out.failed_hop = i;
            return out;
        }
        pieces.push_back(h.winner()->chain);
    }
    std::vector<VertexId> joined{c.front()};
    for (const Chain& p : pieces)
        joined.insert(joined.end(), p.vertices().begin() + 1, p.vertices().end());
    Chain refined(c.cloud(), std::move(joined), fine_scale);

    // compose per-piece witnesses, last piece first so earlier offsets stay put
    std::vector<std::size_t> offsets;
    std::size_t off = 0;
    for (const Chain& p : pieces) {
        offsets.push_back(off);
        off += p.size() - 1;
    }
    HomotopyVerdict composed;
    composed.outcome = Outcome::homotopic;
    composed.method = "composed";
    composed.budget = budget;
    for (std::size_t k = pieces.size(); k-- > 0;) {
        const HomotopyVerdict& v = out.hops[k].winner()->verdict;
        composed.states_explored += v.states_explored;
        for (ElementaryMove m : v.witness) {
            m.position += offsets[k];
            composed.witness.push_back(m);
        }
    }
    const Chain coarse_out = refined.at_scale(short_scale);
    const Chain coarse_in = c.at_scale(short_scale);
    if (!witness_replays(coarse_out, coarse_in, composed.witness))
        throw std::logic_error("internal error: composed refinement witness does not replay");
    out.ok = true;
    out.chain = std::move(refined);
    out.composed = std::move(composed);
    return out;
}

struct GeneralizedPathFailure {
    std::size_t level = 0;  // 1-based level that could not be built
    std::optional<std::size_t> hop;
    PairOutcome kind = PairOutcome::unknown;
    std::string reason;
};

/// Level i (1-based) is a chain valid at eps_i; compatibility[i-1] compares
/// level i+1 with level i at eps_i.
struct GeneralizedPathApprox {
    ScaleFiltration filtration;
    VertexId from = 0;
    VertexId to = 0;
    std::vector<Chain> levels;
    std::vector<HomotopyVerdict> compatibility;
    std::optional<HomotopyVerdict> shortness;  // level 1 vs [x, y] at eps_1, when x, y are eps_1-close
    std::vector<RefinementResult> refinements;
    bool accepted = false;
    std::optional<GeneralizedPathFailure> failure;
};

/// Level 1 is the shortest chain at eps_2, certified short at eps_1 when the
/// endpoints are eps_1-close. Level i+1 refines level i with pieces that are
/// eps_i-short and hops at eps_{min(i+2, k)}.
inline GeneralizedPathApprox build_generalized_path(const HomotopyEngine& engine, VertexId x, VertexId y,
                                                    const ScaleFiltration& filtration, SearchBudget budget,
                                                    std::size_t max_candidates = default_max_candidates) {
    const PointCloud& cloud = engine.cloud();
    cloud.check(x);
    cloud.check(y);
    if (!find_chain(engine.graph(filtration[0]), x, y))
        throw std::invalid_argument("endpoints are not chain connected at the coarsest scale");
    GeneralizedPathApprox gp{filtration, x, y, {}, {}, {}, {}, false, {}};
    const std::size_t k = filtration.size();

    auto first = find_chain(engine.graph(filtration[1]), x, y);
    if (!first) {
        gp.failure = GeneralizedPathFailure{1, std::nullopt, PairOutcome::refuted,
                                            "endpoints are not chain connected at the second scale"};
        return gp;
    }
    gp.levels.push_back(*first);
    if (filtration[0].admits(cloud.distance(x, y))) {
        gp.shortness = engine.is_short(first->at_scale(filtration[0]), budget);
        if (!gp.shortness->homotopic()) {
            gp.failure = GeneralizedPathFailure{
                1, std::nullopt, gp.shortness->not_homotopic() ? PairOutcome::refuted : PairOutcome::unknown,
                "level 1 chain is not short at the coarsest scale"};
            return gp;
        }
    }
    for (std::size_t i = 0; i + 1 < k; ++i) {  // builds level i+2 from level i+1 (1-based)
        const Scale short_scale = filtration[i];
        const Scale fine_scale = filtration[std::min(i + 2, k - 1)];
        RefinementResult r = refine_chain(engine, gp.levels.back(), short_scale, fine_scale, budget, max_candidates);
        if (!r.ok) {
            const ShortChainSearch& h = r.hops.back();
            gp.failure = GeneralizedPathFailure{i + 2, r.failed_hop, h.outcome,
                                                h.detail.empty() ? std::string("refinement failed") : h.detail};
            gp.refinements.push_back(std::move(r));
            return gp;
        }
        gp.levels.push_back(*r.chain);
        gp.compatibility.push_back(*r.composed);
        gp.refinements.push_back(std::move(r));
    }
    gp.accepted = std::all_of(gp.compatibility.begin(), gp.compatibility.end(),
                              [](const HomotopyVerdict& v) { return v.homotopic(); });
    return gp;
}

/// Replays every compatibility witness of an approximation.
inline bool approximation_replays(const GeneralizedPathApprox& gp) {
    for (std::size_t i = 0; i < gp.compatibility.size(); ++i) {
        const Scale s = gp.filtration[i];
        if (!witness_replays(gp.levels[i + 1].at_scale(s), gp.levels[i].at_scale(s), gp.compatibility[i].witness))
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// scans

struct ScanParameters {
    double epsilon = 0.5;  // target scale
    double delta = 0.2;    // candidate pair scale
    double sigma = 0.05;   // fine chain scale
    std::vector<double> sigmas;  // weak-chainability probe only
    SearchBudget budget{};
    std::uint64_t seed = 0;
    std::size_t max_candidates = default_max_candidates;
    std::size_t full_scan_limit = 2000;  // clouds up to this size scan every delta-pair
    std::size_t sample_size = 500;
    std::size_t threads = 1;
    std::vector<std::pair<VertexId, VertexId>> pairs;  // explicit pairs override enumeration
};

struct PairEntry {
    VertexId from = 0;
    VertexId to = 0;
    double distance = 0.0;
    Scale sigma;
    ShortChainSearch search;
};

struct JoinabilityReport {
    std::string space;
    ScanParameters parameters;
    bool sampled = false;
    std::vector<PairEntry> entries;
    std::size_t passed = 0, refuted = 0, unknown = 0;
    bool pass = false;  // every tested pair found a short chain (vacuous when no pairs)
};

namespace detail {

// Fisher-Yates over raw mt19937_64 output so the sample does not depend on the
// standard library's distribution implementations.
inline std::vector<std::size_t> seeded_sample(std::size_t population, std::size_t k, std::uint64_t seed) {
    std::vector<std::size_t> idx(population);
    for (std::size_t i = 0; i < population; ++i)
        idx[i] = i;
    std::mt19937_64 rng(seed);
    k = std::min(k, population);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng() % (population - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

inline std::vector<std::pair<VertexId, VertexId>> scan_pairs(const HomotopyEngine& engine, const ScanParameters& p,
                                                             bool& sampled) {
    const PointCloud& cloud = engine.cloud();
    sampled = false;
    if (!p.pairs.empty()) {
        std::vector<std::pair<VertexId, VertexId>> out;
        for (auto [a, b] : p.pairs) {
            if (cloud.distance(a, b) <= p.delta)
                out.emplace_back(a, b);
        }
        return out;
    }
    auto all = engine.graph(Scale(p.delta)).edge_list();
    if (cloud.size() <= p.full_scan_limit)
        return all;
    sampled = true;
    std::vector<std::pair<VertexId, VertexId>> out;
    for (std::size_t i : seeded_sample(all.size(), p.sample_size, p.seed))
        out.push_back(all[i]);
    return out;
}

template <class Work>
void parallel_for(std::size_t count, std::size_t threads, Work&& work) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (std::size_t t = 0; t < std::min(threads, count); ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    work(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            }
        });
    for (auto& th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

inline void tally(JoinabilityReport& r) {
    r.passed = r.refuted = r.unknown = 0;
    for (const auto& e : r.entries) {
        switch (e.search.outcome) {
        case PairOutcome::short_chain_found: ++r.passed; break;
        case PairOutcome::refuted: ++r.refuted; break;
        case PairOutcome::unknown: ++r.unknown; break;
        }
    }
    r.pass = r.refuted == 0 && r.unknown == 0;
}

inline void prepare_scales(const HomotopyEngine& engine, double eps, std::span<const double> fine) {
    engine.skeleton(Scale(eps));
    engine.graph(Scale(eps));
    for (double s : fine)
        engine.graph(Scale(s));
}

}  // namespace detail

/// Every sampled delta-close pair must admit a sigma-chain that is short at
/// epsilon.
inline JoinabilityReport local_joinability_scan(const HomotopyEngine& engine, const ScanParameters& p) {
    if (!(p.sigma < p.delta) || !(p.delta <= p.epsilon) || !(p.sigma > 0.0))
        throw std::invalid_argument("scan needs 0 < sigma < delta <= epsilon");
    JoinabilityReport r;
    r.space = engine.cloud().name();
    r.parameters = p;
    const auto pairs = detail::scan_pairs(engine, p, r.sampled);
    const double fine[] = {p.sigma};
    detail::prepare_scales(engine, p.epsilon, fine);
    r.entries.resize(pairs.size());
    detail::parallel_for(pairs.size(), p.threads, [&](std::size_t i) {
        auto [a, b] = pairs[i];
        PairEntry& e = r.entries[i];
        e.from = a;
        e.to = b;
        e.distance = engine.cloud().distance(a, b);
        e.sigma = Scale(p.sigma);
        e.search = find_short_chain(engine, a, b, Scale(p.epsilon), Scale(p.sigma), p.budget, p.max_candidates);
    });
    detail::tally(r);
    return r;
}

/// For every delta-pair and every listed sigma, look for a sigma-chain that
/// is epsilon-short. Entries are ordered by pair, then by sigma.
inline JoinabilityReport weakly_chained_probe(const HomotopyEngine& engine, const ScanParameters& p) {
    if (p.sigmas.empty())
        throw std::invalid_argument("probe needs at least one fine scale");
    for (std::size_t i = 0; i < p.sigmas.size(); ++i) {
        if (!(p.sigmas[i] > 0.0))
            throw std::invalid_argument("fine scales must be positive");
        if (i > 0 && !(p.sigmas[i] < p.sigmas[i - 1]))
            throw std::invalid_argument("fine scales must strictly decrease");
    }
    if (!(p.sigmas.front() < p.delta) || !(p.delta <= p.epsilon))
        throw std::invalid_argument("probe needs sigma_1 < delta <= epsilon");
    JoinabilityReport r;
    r.space = engine.cloud().name();
    r.parameters = p;
    const auto pairs = detail::scan_pairs(engine, p, r.sampled);
    detail::prepare_scales(engine, p.epsilon, p.sigmas);
    const std::size_t m = p.sigmas.size();
    r.entries.resize(pairs.size() * m);
    detail::parallel_for(r.entries.size(), p.threads, [&](std::size_t i) {
        auto [a, b] = pairs[i / m];
        const Scale sigma(p.sigmas[i % m]);
        PairEntry& e = r.entries[i];
        e.from = a;
        e.to = b;
        e.distance = engine.cloud().distance(a, b);
        e.sigma = sigma;
        e.search = find_short_chain(engine, a, b, Scale(p.epsilon), sigma, p.budget, p.max_candidates);
    });
    detail::tally(r);
    return r;
}

// ---------------------------------------------------------------------------
// Texas circle

struct TexasPair {
    VertexId upper;  // (n pi, 1/(n pi)) on the graph
    VertexId lower;  // (n pi, 0) on the axis
};

inline Point2 texas_upper_point(int n) {
    const double x = static_cast<double>(n) * std::numbers::pi;
    return {x, 1.0 / x};
}
inline Point2 texas_lower_point(int n) { return {static_cast<double>(n) * std::numbers::pi, 0.0}; }

/// Texas sample with the two points over n pi forced in.
inline PointCloud texas_sample(int n, double step = 0.05, double domain_multiple = 8.0,
                               double segment_step = 0.05) {
    SpaceSpec spec;
    spec.family = Family::texas_circle;
    spec.step = step;
    spec.segment_step = segment_step;
    spec.domain_multiple = domain_multiple;
    spec.must_include = {texas_upper_point(n), texas_lower_point(n)};
    return generate(spec);
}

inline TexasPair texas_pair(const PointCloud& cloud, int n) {
    if (n < 1)
        throw std::invalid_argument("texas index n must be at least 1");
    auto up = cloud.find_point(texas_upper_point(n));
    auto lo = cloud.find_point(texas_lower_point(n));
    if (!up || !lo)
        throw std::invalid_argument("sample does not contain the points (n pi, 1/(n pi)) and (n pi, 0)");
    return {*up, *lo};
}

namespace detail {

inline void require_texas_labels(const PointCloud& cloud) {
    const auto& parts = cloud.parts();
    for (const char* p : {"graph", "axis", "segment"})
        if (std::find(parts.begin(), parts.end(), p) == parts.end())
            throw std::invalid_argument("cloud is not a labelled Texas circle sample");
}

// Indices of a part with x in [lo, hi], ordered by (x, y) ascending.
inline std::vector<VertexId> part_points(const PointCloud& cloud, std::string_view part, double lo, double hi) {
    std::vector<VertexId> out;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const Point2& p = cloud.points()[i];
        if (cloud.label(i) == part && p.x >= lo && p.x <= hi)
            out.push_back(static_cast<VertexId>(i));
    }
    std::sort(out.begin(), out.end(), [&](VertexId a, VertexId b) {
        const Point2 &pa = cloud.points()[a], &pb = cloud.points()[b];
        return pa.x < pb.x || (pa.x == pb.x && pa.y < pb.y);
    });
    return out;
}

}  // namespace detail

/// From (n pi, 1/(n pi)) left along the graph, down the segment, and right
/// along the axis to (n pi, 0).
inline Chain texas_detour_chain(const PointCloud& cloud, int n, Scale s) {
    detail::require_texas_labels(cloud);
    const TexasPair tp = texas_pair(cloud, n);
    const double xn = cloud.points()[tp.upper].x;
    auto graph = detail::part_points(cloud, "graph", std::numbers::pi, xn);
    auto axis = detail::part_points(cloud, "axis", std::numbers::pi, xn);
    auto segment = detail::part_points(cloud, "segment", std::numbers::pi, std::numbers::pi);
    std::vector<VertexId> v(graph.rbegin(), graph.rend());
    v.insert(v.end(), segment.rbegin(), segment.rend());
    v.insert(v.end(), axis.begin(), axis.end());
    if (v.front() != tp.upper || v.back() != tp.lower)
        throw std::logic_error("detour chain endpoints do not match the Texas pair");
    return Chain(cloud, std::move(v), s);
}

/// Closed chain around the first crest: up the graph from (pi, 1/pi) to
/// (n pi, 1/(n pi)), the hop down to (n pi, 0), back along the axis and up
/// the segment.
inline Chain texas_crest_loop(const PointCloud& cloud, int n, Scale s) {
    const Chain detour = texas_detour_chain(cloud, n, s);
    // rotate the detour loop [upper ... lower, upper] to start at (pi, 1/pi)
    std::vector<VertexId> loop = detour.vertex_list();
    loop.push_back(loop.front());
    const auto start = cloud.find_point({std::numbers::pi, 1.0 / std::numbers::pi});
    if (!start)
        throw std::invalid_argument("sample does not contain (pi, 1/pi)");
    auto it = std::find(loop.begin(), loop.end(), *start);
    std::vector<VertexId> rotated(it, loop.end() - 1);
    rotated.insert(rotated.end(), loop.begin(), it + 1);
    std::reverse(rotated.begin(), rotated.end());  // graph first, then the hop down
    return Chain(cloud, std::move(rotated), s);
}

/// True iff no edge at `eps` joins a graph point and an axis point whose
/// x-coordinates both lie in [1.2 pi, 1.8 pi].
inline bool crest_gap_check(const PointCloud& cloud, double eps) {
    detail::require_texas_labels(cloud);
    const Scale s(eps);
    const double lo = 1.2 * std::numbers::pi, hi = 1.8 * std::numbers::pi;
    auto graph = detail::part_points(cloud, "graph", lo, hi);
    auto axis = detail::part_points(cloud, "axis", lo, hi);
    for (VertexId g : graph)
        for (VertexId a : axis)
            if (s.admits(cloud.distance_unchecked(g, a)))
                return false;
    return true;
}

struct DichotomyResult {
    bool disconnected = false;  // the return value of texas_dichotomy
    double sigma = 0.0;
    double cutoff = 0.0;  // vertices with x >= cutoff are deleted
    std::size_t deleted = 0;
    TexasPair pair{};
    std::optional<Chain> surviving_chain;  // witness when connected
};

/// In the sigma = 1/(m' pi) neighborhood graph, delete every segment vertex
/// (unless `delete_segment` is false) and every vertex with
/// x >= (m' - 1) pi, keeping the two query points. Reports whether the
/// query points became disconnected.
inline DichotomyResult texas_dichotomy(const PointCloud& cloud, int n, int mprime, bool delete_segment = true) {
    detail::require_texas_labels(cloud);
    if (n < 1 || mprime < n)
        throw std::invalid_argument("texas dichotomy needs 1 <= n <= m'");
    double max_x = -std::numeric_limits<double>::infinity();
    for (const Point2& p : cloud.points())
        max_x = std::max(max_x, p.x);
    const double pi = std::numbers::pi;
    if (!(static_cast<double>(mprime) * pi < max_x - pi))
        throw std::invalid_argument("sample does not extend past (m' + 1) pi");
    DichotomyResult r;
    r.pair = texas_pair(cloud, n);
    r.sigma = 1.0 / (static_cast<double>(mprime) * pi);
    r.cutoff = static_cast<double>(mprime - 1) * pi;
    std::vector<char> blocked(cloud.size(), 0);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        if (i == r.pair.upper || i == r.pair.lower)
            continue;
        if ((delete_segment && cloud.label(i) == "segment") || cloud.points()[i].x >= r.cutoff) {
            blocked[i] = 1;
            ++r.deleted;
        }
    }
    NeighborhoodGraph g(cloud, Scale(r.sigma));
    r.surviving_chain = find_chain(g, r.pair.upper, r.pair.lower, blocked);
    r.disconnected = !r.surviving_chain.has_value();
    return r;
}

}  // namespace epschain

#endif
