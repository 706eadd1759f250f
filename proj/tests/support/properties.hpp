#ifndef EPSCHAIN_TESTS_PROPERTIES_HPP
#define EPSCHAIN_TESTS_PROPERTIES_HPP

// Seeded invariant checks shared by the unit suite and the acceptance run.
// Each returns the number of cases run and the first failure, if any.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "epschain/chain.hpp"
#include "epschain/homotopy.hpp"
#include "epschain/oracle.hpp"
#include "epschain/rips.hpp"
#include "epschain/union_find.hpp"
#include "generators.hpp"

namespace testprop {

using namespace epschain;

struct PropertyResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;

    bool ok() const { return failures == 0; }
    void fail(std::size_t k, const std::string& what) {
        if (failures++ == 0)
            first_failure = "case " + std::to_string(k) + ": " + what;
    }
};

inline PropertyResult moves_preserve_validity(std::uint64_t seed, std::size_t cases) {
    PropertyResult r{"elementary moves preserve validity and endpoints", 0, 0, {}};
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < cases; ++k, ++r.cases) {
        const PointCloud cloud = testgen::random_cloud(rng, 3 + testgen::below(rng, 10));
        const NeighborhoodGraph g(cloud, Scale(testgen::uniform(rng, 0.15, 0.7)));
        const Chain c = testgen::random_chain(rng, cloud, g, 8);
        for (const ElementaryMove& m : legal_moves(c)) {
            const Chain d = apply(c, m);
            if (!d.valid() || d.front() != c.front() || d.back() != c.back())
                r.fail(k, "move broke validity or moved an endpoint");
            if (d.size() != c.size() + (m.kind == ElementaryMove::Kind::insert ? 1 : 0) -
                                (m.kind == ElementaryMove::Kind::remove ? 1 : 0))
                r.fail(k, "move changed the length incorrectly");
        }
        // moves outside the legal list must be rejected
        const ElementaryMove bad = ElementaryMove::remove(0);
        if (is_legal(c, bad))
            r.fail(k, "endpoint deletion accepted");
    }
    return r;
}

inline PropertyResult loop_class_invariant(std::uint64_t seed, std::size_t cases) {
    PropertyResult r{"loop_class is invariant under elementary moves", 0, 0, {}};
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < cases; ++k, ++r.cases) {
        const PointCloud cloud = testgen::random_cloud(rng, 6 + testgen::below(rng, 20));
        const Scale s(testgen::uniform(rng, 0.2, 0.6));
        const NeighborhoodGraph g(cloud, s);
        const RipsSkeleton sk(cloud, s);
        auto loop = testgen::random_loop(rng, cloud, g, 2 + testgen::below(rng, 10));
        if (!loop)
            continue;
        const CycleClass before = sk.loop_class(*loop);
        auto moves = legal_moves(*loop);
        if (moves.empty())
            continue;
        std::vector<ElementaryMove> picked;
        for (int t = 0; t < 3; ++t)
            picked.push_back(moves[testgen::below(rng, moves.size())]);
        for (const auto& m : picked) {
            if (sk.loop_class(apply(*loop, m)) != before)
                r.fail(k, "class changed under a legal move");
        }
        if (!sk.is_cycle(sk.edge_vector(*loop)))
            r.fail(k, "closed chain edge vector is not a cycle");
    }
    return r;
}

// c2 is c1 moved by random legal moves, so a refutation would be unsound.
inline PropertyResult witnesses_replay(std::uint64_t seed, std::size_t cases) {
    PropertyResult r{"Homotopic witnesses replay; NotHomotopic never has a replaying witness", 0, 0, {}};
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < cases; ++k, ++r.cases) {
        const PointCloud cloud = testgen::random_cloud(rng, 4 + testgen::below(rng, 12));
        const Scale s(testgen::uniform(rng, 0.2, 0.6));
        const HomotopyEngine engine(cloud);
        const NeighborhoodGraph& g = engine.graph(s);
        const Chain c1 = testgen::random_chain(rng, cloud, g, 8);
        Chain c2 = c1;
        const auto known = testgen::random_moves(rng, c2, 1 + testgen::below(rng, 8), 12);
        const HomotopyVerdict v = engine.are_homotopic(c1, c2, {16, 200'000});
        if (v.not_homotopic())
            r.fail(k, "refuted a pair joined by a known move sequence");
        if (v.homotopic() && !witness_replays(c1, c2, v.witness))
            r.fail(k, "witness does not replay");
        if (!witness_replays(c1, c2, known))
            r.fail(k, "generator moves do not replay");

        // an unrelated second chain with the same endpoints
        const NeighborhoodGraph& g2 = engine.graph(s);
        auto other = find_chain(g2, c1.front(), c1.back());
        std::vector<VertexId> walk = testgen::random_walk(rng, g2, c1.front(), 1 + testgen::below(rng, 6));
        auto tail = find_chain(g2, walk.back(), c1.back());
        if (!other || !tail)
            continue;
        walk.insert(walk.end(), tail->vertices().begin() + 1, tail->vertices().end());
        const Chain c3(cloud, walk, s);
        const HomotopyVerdict w = engine.are_homotopic(c1, c3, {16, 200'000});
        if (w.homotopic() && !witness_replays(c1, c3, w.witness))
            r.fail(k, "witness does not replay");
        if (w.not_homotopic()) {
            if (!w.witness.empty() || !w.certificate || w.certificate->is_zero())
                r.fail(k, "refutation without a nonzero certificate");
            const CycleClass cls = engine.skeleton(s).loop_class(concatenate(c1, inverse(c3)));
            if (cls != *w.certificate)
                r.fail(k, "certificate is not the class of c1 * inverse(c2)");
        }
    }
    return r;
}

inline PropertyResult scale_monotonicity(std::uint64_t seed, std::size_t cases) {
    PropertyResult r{"chain validity and Homotopic verdicts are monotone in scale", 0, 0, {}};
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < cases; ++k, ++r.cases) {
        const PointCloud cloud = testgen::random_cloud(rng, 4 + testgen::below(rng, 10));
        const double eps = testgen::uniform(rng, 0.15, 0.5);
        const double bigger = eps + testgen::uniform(rng, 0.0, 0.5);
        const HomotopyEngine engine(cloud);
        const Chain c1 = testgen::random_chain(rng, cloud, engine.graph(Scale(eps)), 7);
        if (!c1.at_scale(Scale(bigger)).valid())
            r.fail(k, "valid chain became invalid at a larger scale");
        Chain c2 = c1;
        testgen::random_moves(rng, c2, 1 + testgen::below(rng, 6), 10);
        const HomotopyVerdict v = engine.are_homotopic(c1, c2, {14, 100'000});
        if (!v.homotopic())
            continue;
        const Chain b1 = c1.at_scale(Scale(bigger)), b2 = c2.at_scale(Scale(bigger));
        if (!witness_replays(b1, b2, v.witness))
            r.fail(k, "witness is illegal at a larger scale");
        const HomotopyVerdict w = engine.are_homotopic(b1, b2, {14, 100'000});
        if (w.not_homotopic())
            r.fail(k, "homotopic pair refuted at a larger scale");
    }
    return r;
}

inline PropertyResult components_match_brute_force(std::uint64_t seed, std::size_t cases) {
    PropertyResult r{"components equal connectivity over all entourage pairs", 0, 0, {}};
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < cases; ++k, ++r.cases) {
        const PointCloud cloud = testgen::random_cloud(rng, 1 + testgen::below(rng, 40));
        const Scale s(testgen::uniform(rng, 0.0, 0.4));
        const std::size_t n = cloud.size();
        // label propagation over the all-pairs relation
        std::vector<std::size_t> label(n);
        for (std::size_t i = 0; i < n; ++i)
            label[i] = i;
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (cloud.in_entourage(i, j, s) && label[j] < label[i]) {
                        label[i] = label[j];
                        changed = true;
                    }
        }
        const auto blocks = components(cloud, s);
        std::vector<std::size_t> got(n);
        for (const auto& b : blocks)
            for (VertexId v : b)
                got[v] = b.front();
        if (got != label)
            r.fail(k, "partition differs from brute-force connectivity");
        const NeighborhoodGraph g(cloud, s);
        for (std::size_t i = 0; i < n; ++i) {
            auto nb = g.neighbors(i);
            if (std::vector<VertexId>(nb.begin(), nb.end()) != cloud.neighbors(i, s))
                r.fail(k, "graph neighbors differ from brute force");
        }
    }
    return r;
}

inline PropertyResult boundaries_vanish(std::uint64_t seed, std::size_t cases) {
    PropertyResult r{"boundary1 . boundary2 = 0 over GF(2)", 0, 0, {}};
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < cases; ++k, ++r.cases) {
        const PointCloud cloud = testgen::random_cloud(rng, 3 + testgen::below(rng, 25));
        const RipsSkeleton sk(cloud, Scale(testgen::uniform(rng, 0.1, 0.8)));
        if (!sk.boundaries_compose_to_zero())
            r.fail(k, "composition reported nonzero");
        // independent check: each triangle boundary vector is a cycle
        for (std::size_t t = 0; t < sk.triangles().size(); ++t) {
            auto b = sk.boundary2(t);
            if (!sk.is_cycle(b))
                r.fail(k, "triangle boundary is not a cycle");
            if (!sk.cycle_class({b.begin(), b.end()}).is_zero())
                r.fail(k, "triangle boundary is not a boundary");
        }
        // every triangle is an eps-bounded triple and every bounded triple is listed
        std::size_t bounded = 0;
        for (std::size_t a = 0; a < cloud.size(); ++a)
            for (std::size_t b = a + 1; b < cloud.size(); ++b)
                for (std::size_t c = b + 1; c < cloud.size(); ++c) {
                    const VertexId tri[] = {VertexId(a), VertexId(b), VertexId(c)};
                    bounded += sk.is_bounded(tri) ? 1 : 0;
                }
        if (bounded != sk.triangles().size())
            r.fail(k, "triangle list differs from bounded triples");
    }
    return r;
}

inline std::vector<PropertyResult> run_all(std::uint64_t seed, std::size_t cases) {
    return {moves_preserve_validity(seed + 1, cases),   loop_class_invariant(seed + 2, cases),
            witnesses_replay(seed + 3, cases),          scale_monotonicity(seed + 4, cases),
            components_match_brute_force(seed + 5, cases), boundaries_vanish(seed + 6, cases)};
}

// ---------------------------------------------------------------------------
// engine vs brute-force oracle

struct OracleComparison {
    std::size_t clouds = 0;
    std::size_t queries = 0;
    std::size_t agreements = 0;
    std::size_t undecided = 0;
    std::size_t disagreements = 0;
    std::size_t homotopic = 0, refuted = 0, exhausted = 0;
    std::string first_disagreement;
};

/// Random clouds of at most 10 points. The engine runs with length bound L
/// and an ample state budget; the oracle enumerates raw chains up to L. A
/// Homotopic verdict must land in one oracle class; NotHomotopic and an
/// exhausted Unknown must land in different classes.
inline OracleComparison compare_with_oracle(std::uint64_t seed, std::size_t clouds, std::size_t queries_per_cloud) {
    OracleComparison out;
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < clouds; ++k) {
        // alternate uniform clouds with jittered polygons, which have holes
        const bool ring = k % 2 == 1;
        const std::size_t n = ring ? 4 + testgen::below(rng, 7) : 3 + testgen::below(rng, 8);
        std::optional<PointCloud> made;
        double eps = 0.0;
        if (ring) {
            std::vector<Point2> pts;
            for (std::size_t i = 0; i < n; ++i) {
                const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
                const double rad = testgen::uniform(rng, 0.9, 1.1);
                pts.push_back({rad * std::cos(t), rad * std::sin(t)});
            }
            made = PointCloud::from_points("ring", std::move(pts));
            const double chord = 2.0 * std::sin(std::numbers::pi / static_cast<double>(n));
            eps = chord * testgen::uniform(rng, 1.1, 2.2);
        } else {
            made = testgen::random_cloud(rng, n);
            eps = testgen::uniform(rng, 0.25, 0.75);
        }
        const PointCloud& cloud = *made;
        const Scale s(eps);
        const HomotopyEngine engine(cloud);
        const NeighborhoodGraph& g = engine.graph(s);
        double avg_degree = 0;
        for (std::size_t i = 0; i < n; ++i)
            avg_degree += static_cast<double>(g.neighbors(i).size() + 1);
        avg_degree /= static_cast<double>(n);
        // largest raw length bound whose enumeration stays small
        std::size_t L = 3;
        while (L < 7 && static_cast<double>(n) * std::pow(avg_degree, static_cast<double>(L)) < 4e5)
            ++L;
        ++out.clouds;
        const auto from = static_cast<VertexId>(testgen::below(rng, n));
        const auto to = testgen::below(rng, 3) == 0 ? from : static_cast<VertexId>(testgen::below(rng, n));
        if (!find_chain(g, from, to) || find_chain(g, from, to)->size() > L)
            continue;
        const OracleClasses oracle = oracle_classes(cloud, from, to, s, L);
        for (std::size_t q = 0; q < queries_per_cloud; ++q) {
            const auto& a = oracle.chains[testgen::below(rng, oracle.chains.size())];
            const auto& b = oracle.chains[testgen::below(rng, oracle.chains.size())];
            const Chain c1(cloud, a, s), c2(cloud, b, s);
            const HomotopyVerdict v = engine.are_homotopic(c1, c2, {L, 5'000'000});
            const bool same = *oracle.class_of_chain(a) == *oracle.class_of_chain(b);
            ++out.queries;
            bool agree = true;
            if (v.homotopic()) {
                ++out.homotopic;
                agree = same && witness_replays(c1, c2, v.witness);
            } else if (v.not_homotopic()) {
                ++out.refuted;
                agree = !same;
            } else if (v.exhausted) {
                ++out.exhausted;
                agree = !same;
            } else {
                ++out.undecided;
                continue;
            }
            if (agree) {
                ++out.agreements;
            } else if (out.disagreements++ == 0) {
                out.first_disagreement = "cloud " + std::to_string(k) + " eps " + std::to_string(s.epsilon()) +
                                         " verdict " + outcome_name(v.outcome) + " oracle " +
                                         (same ? "same" : "different");
            }
        }
    }
    return out;
}

}  // namespace testprop

#endif
