#ifndef EPSCHAIN_CLI_HPP
#define EPSCHAIN_CLI_HPP

// Command-line front end. Exit codes: 0 success, 1 negative result,
// 2 usage or I/O error, 3 undecided verdict.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "epschain/chain.hpp"
#include "epschain/homotopy.hpp"
#include "epschain/io.hpp"
#include "epschain/joinability.hpp"
#include "epschain/rips.hpp"
#include "epschain/space.hpp"
#include "epschain/svg.hpp"

namespace epschain::cli {

enum ExitCode : int { ok = 0, negative = 1, usage = 2, undecided = 3 };

namespace detail {

using io::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SpaceOptions {
    std::string path;
    std::string family;
    std::string name;
    std::size_t count = 6;
    double step = 0.05;
    double segment_step = 0.05;
    double domain_multiple = 8.0;
    double gap = 1.0;
    double length = 2.0;
    double warsaw_min = 0.05;
    std::vector<std::string> include;

    void attach(CLI::App* app) {
        app->add_option("--space", path, "cloud document (JSON)");
        app->add_option("--family", family,
                        "generate the space instead: texas_circle, warsaw_circle, circle, parallel_lines, interval");
        app->add_option("--name", name, "name of a generated space");
        app->add_option("--n", count, "circle point count");
        app->add_option("--h", step, "sampling step along curves and lines");
        app->add_option("--segment-step", segment_step, "texas: step along the vertical segment");
        app->add_option("--M", domain_multiple, "texas: the graph and axis run over [pi, M pi]");
        app->add_option("--gap", gap, "parallel lines: separation");
        app->add_option("--length", length, "parallel lines, interval: extent");
        app->add_option("--warsaw-min", warsaw_min, "warsaw: cut-off of the oscillating curve");
        app->add_option("--include", include, "force a point \"x,y\" into a generated sample")->take_all();
    }

    SpaceSpec spec() const {
        SpaceSpec s;
        s.family = parse_family(family);
        s.name = name;
        s.count = count;
        s.step = step;
        s.segment_step = segment_step;
        s.domain_multiple = domain_multiple;
        s.gap = gap;
        s.length = length;
        s.warsaw_x_min = warsaw_min;
        for (const auto& txt : include) {
            const auto comma = txt.find(',');
            if (comma == std::string::npos)
                throw UsageError("--include expects \"x,y\"");
            try {
                s.must_include.push_back({std::stod(txt.substr(0, comma)), std::stod(txt.substr(comma + 1))});
            } catch (const std::logic_error&) {
                throw UsageError("--include expects \"x,y\"");
            }
        }
        return s;
    }

    void validate() const {
        if (path.empty() == family.empty())
            throw UsageError("give exactly one of --space or --family");
        if (!family.empty()) {
            try {
                (void)spec();
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
        }
    }

    PointCloud load() const {
        if (!path.empty())
            return io::cloud_from_json(io::read_file(path));
        try {
            return generate(spec());
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }

    json describe() const {
        json j;
        if (!path.empty()) {
            j["space"] = path;
            return j;
        }
        const SpaceSpec s = spec();
        j["family"] = family_name(s.family);
        j["spec"] = {{"n", s.count},           {"h", s.step},       {"segment_step", s.segment_step},
                     {"M", s.domain_multiple}, {"gap", s.gap},      {"length", s.length},
                     {"warsaw_min", s.warsaw_x_min}};
        if (!s.must_include.empty()) {
            json inc = json::array();
            for (const Point2& p : s.must_include)
                inc.push_back({p.x, p.y});
            j["spec"]["include"] = std::move(inc);
        }
        return j;
    }
};

struct BudgetOptions {
    std::size_t states = SearchBudget{}.max_states;
    std::size_t length = SearchBudget{}.max_chain_length;

    void attach(CLI::App* app) {
        app->add_option("--budget-states", states, "search state limit")->check(CLI::PositiveNumber);
        app->add_option("--budget-len", length, "canonical chain length limit")->check(CLI::PositiveNumber);
    }
    SearchBudget budget() const { return {length, states}; }
};

inline void require_scale(double v, const char* flag) {
    if (!std::isfinite(v) || v < 0.0)
        throw UsageError(std::string(flag) + " must be a finite nonnegative number");
}

struct Output {
    std::string path;
    std::ostream* out = nullptr;

    void emit(const std::string& text) const {
        if (path.empty() || path == "-")
            *out << text;
        else
            io::write_file(path, text);
    }
};

inline int verdict_code(const HomotopyVerdict& v) {
    return v.homotopic() ? ok : v.not_homotopic() ? negative : undecided;
}

inline int report_code(const JoinabilityReport& r) {
    return r.pass ? ok : r.refuted > 0 ? negative : undecided;
}

inline std::vector<double> parse_list(const std::string& s, const char* flag) {
    std::vector<double> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw UsageError(std::string(flag) + ": cannot parse '" + item + "'");
        }
    }
    return out;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    using detail::json;
    CLI::App app{"Discrete chain homotopy at a scale on finite planar samples.", "epschain"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "show help");
    app.set_help_all_flag("--help-all", "show help for every subcommand");

    detail::Output output{"", &out};
    std::function<int()> action;

    // generate
    detail::SpaceOptions gen_space;
    auto* gen = app.add_subcommand("generate", "write a sampled cloud document");
    gen_space.attach(gen);
    gen->add_option("--out", output.path, "output path (default stdout)");
    gen->callback([&] {
        action = [&] {
            if (!gen_space.path.empty())
                throw detail::UsageError("generate takes --family, not --space");
            gen_space.validate();
            output.emit(io::dump(io::to_json(gen_space.load())));
            return int(ok);
        };
    });

    // components
    detail::SpaceOptions comp_space;
    double comp_eps = -1.0;
    std::string comp_edges;
    bool comp_rips = false;
    auto* comp = app.add_subcommand("components", "connected components of the neighborhood graph");
    comp_space.attach(comp);
    comp->add_option("--eps", comp_eps, "scale")->required();
    comp->add_option("--edges", comp_edges, "also write the neighborhood graph as an edge list");
    comp->add_flag("--rips", comp_rips, "add Rips 2-skeleton statistics");
    comp->add_option("--out", output.path, "report path (default stdout)");
    comp->callback([&] {
        action = [&] {
            comp_space.validate();
            detail::require_scale(comp_eps, "--eps");
            const PointCloud cloud = comp_space.load();
            const Scale s(comp_eps);
            NeighborhoodGraph g(cloud, s);
            auto blocks = components(g);
            json j = io::header("components_report");
            j["space"] = cloud.name();
            j["source"] = comp_space.describe();
            j["epsilon"] = comp_eps;
            j["points"] = cloud.size();
            j["edges"] = g.edge_count();
            j["count"] = blocks.size();
            json sizes = json::array();
            for (const auto& b : blocks)
                sizes.push_back(b.size());
            j["sizes"] = std::move(sizes);
            j["components"] = blocks;
            if (comp_rips) {
                RipsSkeleton sk(cloud, s);
                j["rips"] = {{"edges", sk.edges().size()},
                             {"triangles", sk.triangles().size()},
                             {"betti1_gf2", sk.betti1()}};
            }
            if (!comp_edges.empty()) {
                std::ostringstream os;
                io::write_edge_list(os, g);
                io::write_file(comp_edges, os.str());
            }
            output.emit(io::dump(j));
            return int(ok);
        };
    });

    // chain
    detail::SpaceOptions chain_space;
    double chain_eps = -1.0;
    VertexId chain_from = 0, chain_to = 0;
    std::string chain_save;
    auto* chn = app.add_subcommand("chain", "shortest chain between two points");
    chain_space.attach(chn);
    chn->add_option("--eps", chain_eps, "scale")->required();
    chn->add_option("--from", chain_from, "start point index")->required();
    chn->add_option("--to", chain_to, "end point index")->required();
    chn->add_option("--save", chain_save, "also write the chain as a chain document");
    chn->add_option("--out", output.path, "report path (default stdout)");
    chn->callback([&] {
        action = [&] {
            chain_space.validate();
            detail::require_scale(chain_eps, "--eps");
            const PointCloud cloud = chain_space.load();
            if (chain_from >= cloud.size() || chain_to >= cloud.size())
                throw detail::UsageError("--from/--to out of range");
            auto c = find_chain(cloud, chain_from, chain_to, Scale(chain_eps));
            json j = io::header("chain_report");
            j["space"] = cloud.name();
            j["source"] = chain_space.describe();
            j["epsilon"] = chain_eps;
            j["from"] = chain_from;
            j["to"] = chain_to;
            j["found"] = c.has_value();
            if (c) {
                j["hops"] = c->size() - 1;
                j["chain"] = io::to_json(*c);
                if (!chain_save.empty())
                    io::write_file(chain_save, io::dump(io::to_json(*c)));
            }
            output.emit(io::dump(j));
            return c ? int(ok) : int(negative);
        };
    });

    // homotopy
    detail::SpaceOptions hom_space;
    detail::BudgetOptions hom_budget;
    std::string hom_c1, hom_c2;
    auto* hom = app.add_subcommand("homotopy", "decide whether two chains are homotopic at their scale");
    hom_space.attach(hom);
    hom_budget.attach(hom);
    hom->add_option("--c1", hom_c1, "first chain document")->required();
    hom->add_option("--c2", hom_c2, "second chain document (omit to test a closed chain against a constant)");
    hom->add_option("--out", output.path, "report path (default stdout)");
    hom->callback([&] {
        action = [&] {
            hom_space.validate();
            const PointCloud cloud = hom_space.load();
            const HomotopyEngine engine(cloud);
            const Chain c1 = io::chain_from_json(io::read_file(hom_c1), cloud);
            std::optional<Chain> c2;
            if (!hom_c2.empty())
                c2 = io::chain_from_json(io::read_file(hom_c2), cloud);
            HomotopyVerdict v;
            try {
                v = c2 ? engine.are_homotopic(c1, *c2, hom_budget.budget()) : engine.is_null(c1, hom_budget.budget());
            } catch (const std::invalid_argument& e) {
                throw detail::UsageError(e.what());
            }
            json j = io::header("homotopy_report");
            j["space"] = cloud.name();
            j["source"] = hom_space.describe();
            j["epsilon"] = c1.scale().epsilon();
            j["c1"] = io::chain_body(c1);
            j["c2"] = c2 ? io::chain_body(*c2) : io::chain_body(Chain(cloud, {c1.front(), c1.front()}, c1.scale()));
            j["verdict"] = io::to_json(v, v.certificate ? &engine.skeleton(c1.scale()) : nullptr);
            output.emit(io::dump(j));
            return detail::verdict_code(v);
        };
    });

    // short
    detail::SpaceOptions short_space;
    detail::BudgetOptions short_budget;
    std::string short_chain;
    double short_eps = -1.0;
    auto* sht = app.add_subcommand("short", "decide whether a chain is homotopic to the hop between its endpoints");
    short_space.attach(sht);
    short_budget.attach(sht);
    sht->add_option("--chain", short_chain, "chain document")->required();
    sht->add_option("--eps", short_eps, "test at this scale instead of the chain's own");
    sht->add_option("--out", output.path, "report path (default stdout)");
    sht->callback([&] {
        action = [&] {
            short_space.validate();
            const PointCloud cloud = short_space.load();
            const HomotopyEngine engine(cloud);
            Chain c = io::chain_from_json(io::read_file(short_chain), cloud);
            if (short_eps >= 0.0)
                c = c.at_scale(Scale(short_eps));
            HomotopyVerdict v;
            try {
                v = engine.is_short(c, short_budget.budget());
            } catch (const std::invalid_argument& e) {
                throw detail::UsageError(e.what());
            }
            json j = io::header("short_report");
            j["space"] = cloud.name();
            j["source"] = short_space.describe();
            j["epsilon"] = c.scale().epsilon();
            j["chain"] = io::chain_body(c);
            j["verdict"] = io::to_json(v, v.certificate ? &engine.skeleton(c.scale()) : nullptr);
            output.emit(io::dump(j));
            return detail::verdict_code(v);
        };
    });

    // scan
    detail::SpaceOptions scan_space;
    detail::BudgetOptions scan_budget;
    ScanParameters scan_params;
    std::string scan_sigmas;
    std::vector<std::string> scan_pairs;
    auto* scn = app.add_subcommand("scan", "local joinability scan, or a weak-chainability probe with --sigmas");
    scan_space.attach(scn);
    scan_budget.attach(scn);
    scn->add_option("--eps", scan_params.epsilon, "target scale")->required();
    scn->add_option("--delta", scan_params.delta, "pair scale")->required();
    scn->add_option("--sigma", scan_params.sigma, "fine chain scale");
    scn->add_option("--sigmas", scan_sigmas, "comma-separated decreasing fine scales (probe mode)");
    scn->add_option("--seed", scan_params.seed, "pair sampling seed");
    scn->add_option("--sample-size", scan_params.sample_size, "pairs sampled on large clouds");
    scn->add_option("--full-limit", scan_params.full_scan_limit, "clouds up to this size test every pair");
    scn->add_option("--max-candidates", scan_params.max_candidates, "fine chains tried per pair")
        ->check(CLI::PositiveNumber);
    scn->add_option("--threads", scan_params.threads, "worker threads (does not change the report)");
    scn->add_option("--pair", scan_pairs, "test only this pair \"i,j\"")->take_all();
    scn->add_option("--out", output.path, "report path (default stdout)");
    scn->callback([&] {
        action = [&] {
            scan_space.validate();
            for (double v : {scan_params.epsilon, scan_params.delta, scan_params.sigma})
                detail::require_scale(v, "scan scales");
            if (!scan_sigmas.empty())
                scan_params.sigmas = detail::parse_list(scan_sigmas, "--sigmas");
            scan_params.budget = scan_budget.budget();
            for (const auto& p : scan_pairs) {
                auto v = detail::parse_list(p, "--pair");
                if (v.size() != 2 || v[0] < 0 || v[1] < 0 || v[0] != std::floor(v[0]) || v[1] != std::floor(v[1]))
                    throw detail::UsageError("--pair expects \"i,j\"");
                scan_params.pairs.emplace_back(static_cast<VertexId>(v[0]), static_cast<VertexId>(v[1]));
            }
            const PointCloud cloud = scan_space.load();
            for (auto [a, b] : scan_params.pairs)
                if (a >= cloud.size() || b >= cloud.size())
                    throw detail::UsageError("--pair index out of range");
            const HomotopyEngine engine(cloud);
            JoinabilityReport r;
            try {
                r = scan_params.sigmas.empty() ? local_joinability_scan(engine, scan_params)
                                               : weakly_chained_probe(engine, scan_params);
            } catch (const std::invalid_argument& e) {
                throw detail::UsageError(e.what());
            }
            json j = io::to_json(r, scan_params.sigmas.empty() ? "joinability_report" : "weak_chain_report");
            j["source"] = scan_space.describe();
            output.emit(io::dump(j));
            return detail::report_code(r);
        };
    });

    // gp
    detail::SpaceOptions gp_space;
    detail::BudgetOptions gp_budget;
    std::string gp_scales;
    double gp_eps = -1.0;
    std::size_t gp_levels = 3;
    VertexId gp_from = 0, gp_to = 0;
    auto* gpc = app.add_subcommand("gp", "finite generalized-path approximation between two points");
    gp_space.attach(gpc);
    gp_budget.attach(gpc);
    gpc->add_option("--from", gp_from, "start point index")->required();
    gpc->add_option("--to", gp_to, "end point index")->required();
    gpc->add_option("--scales", gp_scales, "comma-separated strictly decreasing filtration");
    gpc->add_option("--eps", gp_eps, "first scale of a halving filtration");
    gpc->add_option("--levels", gp_levels, "levels of the halving filtration");
    gpc->add_option("--out", output.path, "report path (default stdout)");
    gpc->callback([&] {
        action = [&] {
            gp_space.validate();
            if (gp_scales.empty() == (gp_eps < 0.0))
                throw detail::UsageError("give exactly one of --scales or --eps");
            std::optional<ScaleFiltration> filt;
            try {
                filt = gp_scales.empty() ? ScaleFiltration::halving(gp_eps, gp_levels)
                                         : ScaleFiltration(detail::parse_list(gp_scales, "--scales"));
            } catch (const std::invalid_argument& e) {
                throw detail::UsageError(e.what());
            }
            const PointCloud cloud = gp_space.load();
            if (gp_from >= cloud.size() || gp_to >= cloud.size())
                throw detail::UsageError("--from/--to out of range");
            const HomotopyEngine engine(cloud);
            std::optional<GeneralizedPathApprox> gp;
            try {
                gp = build_generalized_path(engine, gp_from, gp_to, *filt, gp_budget.budget());
            } catch (const std::invalid_argument& e) {
                json j = io::header("generalized_path");
                j["space"] = cloud.name();
                j["status"] = "FAILED";
                j["failure"] = {{"level", 0}, {"kind", "refuted"}, {"reason", e.what()}};
                output.emit(io::dump(j));
                return int(negative);
            }
            json j = io::to_json(*gp);
            j["space"] = cloud.name();
            j["source"] = gp_space.describe();
            j["budget"] = io::to_json(gp_budget.budget());
            output.emit(io::dump(j));
            if (gp->accepted)
                return int(ok);
            return gp->failure && gp->failure->kind == PairOutcome::unknown ? int(undecided) : int(negative);
        };
    });

    // texas
    int tx_n = 2, tx_mprime = 5;
    double tx_h = 0.02, tx_segment = 0.05, tx_M = 8.0, tx_eps = 0.5;
    detail::BudgetOptions tx_budget;
    auto* tx = app.add_subcommand("texas", "crest gap, crest loop, dichotomy and the failing refinement");
    tx->add_option("--n", tx_n, "the pair sits over n pi")->check(CLI::PositiveNumber);
    tx->add_option("--mprime", tx_mprime, "fine scale 1/(m' pi)")->check(CLI::PositiveNumber);
    tx->add_option("--h", tx_h, "sampling step along the graph and axis");
    tx->add_option("--segment-step", tx_segment, "sampling step along the segment");
    tx->add_option("--M", tx_M, "domain end M pi");
    tx->add_option("--eps", tx_eps, "coarse scale");
    tx_budget.attach(tx);
    tx->add_option("--out", output.path, "report path (default stdout)");
    tx->callback([&] {
        action = [&] {
            if (!(tx_h > 0.0) || !(tx_segment > 0.0))
                throw detail::UsageError("--h and --segment-step must be positive");
            detail::require_scale(tx_eps, "--eps");
            if (tx_mprime < tx_n)
                throw detail::UsageError("--mprime must be at least --n");
            if (!(tx_mprime + 2 < tx_M))
                throw detail::UsageError("--M must exceed m' + 2");
            const double pi = std::numbers::pi;
            const double short_scale = 1.0 / (tx_n * pi), fine_scale = 1.0 / (tx_mprime * pi);
            if (!(tx_eps > short_scale) || !(short_scale > fine_scale))
                throw detail::UsageError("need eps > 1/(n pi) > 1/(m' pi)");
            const PointCloud cloud = texas_sample(tx_n, tx_h, tx_M, tx_segment);
            const HomotopyEngine engine(cloud);
            const SearchBudget budget = tx_budget.budget();

            json j = io::header("texas_report");
            j["space"] = cloud.name();
            j["parameters"] = {{"n", tx_n},         {"mprime", tx_mprime}, {"h", tx_h},
                               {"segment_step", tx_segment}, {"M", tx_M}, {"eps", tx_eps},
                               {"budget", io::to_json(budget)}};
            j["points"] = cloud.size();

            const bool gap = crest_gap_check(cloud, tx_eps);
            j["crest_gap"] = gap;

            const Chain loop = texas_crest_loop(cloud, tx_n, Scale(tx_eps));
            const HomotopyVerdict null = engine.is_null(loop, budget);
            j["crest_loop"] = {{"length", loop.size()},
                               {"verdict", io::to_json(null, &engine.skeleton(Scale(tx_eps)))}};

            const DichotomyResult dich = texas_dichotomy(cloud, tx_n, tx_mprime, true);
            const DichotomyResult control = texas_dichotomy(cloud, tx_n, tx_mprime, false);
            j["dichotomy"] = dich.disconnected;
            j["dichotomy_detail"] = io::to_json(dich);
            j["control"] = io::to_json(control);

            const TexasPair tp = texas_pair(cloud, tx_n);
            const ScaleFiltration filt({tx_eps, short_scale, fine_scale});
            const GeneralizedPathApprox gp = build_generalized_path(engine, tp.upper, tp.lower, filt, budget);
            j["refinement"] = gp.accepted ? "accepted" : "failure";
            j["generalized_path"] = io::to_json(gp);

            output.emit(io::dump(j));
            const bool reproduced = gap && null.not_homotopic() && dich.disconnected && !control.disconnected &&
                                    !gp.accepted;
            return reproduced ? int(ok) : int(negative);
        };
    });

    // plot
    detail::SpaceOptions plot_space;
    std::vector<std::string> plot_chains;
    svg::PlotOptions plot_opt;
    auto* plt = app.add_subcommand("plot", "SVG figure of a cloud with chain overlays");
    plot_space.attach(plt);
    plt->add_option("--chain", plot_chains, "chain document to overlay")->take_all();
    plt->add_option("--width", plot_opt.width, "figure width in pixels")->check(CLI::PositiveNumber);
    plt->add_option("--title", plot_opt.title, "figure title");
    plt->add_option("--out", output.path, "SVG path (default stdout)");
    plt->callback([&] {
        action = [&] {
            plot_space.validate();
            const PointCloud cloud = plot_space.load();
            std::vector<svg::Overlay> overlays;
            for (const auto& path : plot_chains) {
                const Chain c = io::chain_from_json(io::read_file(path), cloud);
                overlays.push_back({c.vertex_list(), "", path});
            }
            try {
                output.emit(svg::render(cloud, overlays, plot_opt));
            } catch (const std::invalid_argument& e) {
                throw detail::UsageError(e.what());
            }
            return int(ok);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? int(ok) : int(usage);
    }
    try {
        return action ? action() : int(usage);
    } catch (const detail::UsageError& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const io::DocumentError& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }
}

}  // namespace epschain::cli

#endif
