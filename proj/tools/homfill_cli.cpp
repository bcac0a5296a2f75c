#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "homfill/io.hpp"

namespace hf = homfill;

namespace {

// Exit codes: 0 success, 1 usage, 2 contract/config errors, 3 budget
// exhaustion, 4 certification failure.
constexpr int kExitUsage = 1;
constexpr int kExitContract = 2;
constexpr int kExitBudget = 3;
constexpr int kExitCertification = 4;

struct Report {
    std::vector<std::pair<std::string, std::string>> items;
    void add(const std::string& key, const std::string& value) { items.push_back({key, value}); }
    void print(std::ostream& os) const {
        for (const auto& [k, v] : items) os << k << ": " << v << "\n";
    }
};

std::uint64_t default_node_budget() {
    if (const char* env = std::getenv("HOMFILL_BUDGET_NODES")) return std::stoull(env);
    return 50'000'000ULL;
}

std::vector<hf::VertexId> parse_vertex_list(const std::string& s) {
    std::vector<hf::VertexId> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

std::vector<hf::Rational> parse_radii(const std::string& s) {
    std::vector<hf::Rational> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(hf::Rational(hf::Int(tok)));
    return out;
}

hf::BuiltSpace load_space(const std::string& path) {
    return hf::load_complex_file(path);
}

int run(int argc, char** argv) {
    CLI::App app{"homfill: homological filling norms and isoperimetric profiles"};
    app.require_subcommand(1);

    hf::FillOptions fill_opts;
    fill_opts.node_budget = default_node_budget();

    // ---- build ----
    auto* build = app.add_subcommand("build", "build a preset complex or one from a presentation");
    std::string build_preset_name, build_presentation, build_out;
    int build_radius = 0;
    build->add_option("--preset", build_preset_name,
                      "f2 | free:N | z2 | z2:words | genus2 | grid:WxH | tree:V,D");
    build->add_option("--presentation", build_presentation, "presentation file");
    build->add_option("--radius", build_radius, "ball radius for group presets");
    build->add_option("--out", build_out, "output complex file")->required();

    // ---- rips ----
    auto* rips = app.add_subcommand("rips", "Rips complex of a complex's vertex metric");
    std::string rips_in, rips_out, rips_d;
    int rips_maxdim = 2;
    rips->add_option("--complex", rips_in, "input complex file (metric source)")->required();
    rips->add_option("--d", rips_d, "Rips distance (rational)")->required();
    rips->add_option("--max-dim", rips_maxdim, "truncation dimension");
    rips->add_option("--out", rips_out, "output complex file")->required();

    // ---- delta ----
    auto* delta = app.add_subcommand("delta", "four-point hyperbolicity constant");
    std::string delta_in, delta_mode = "exact";
    long delta_samples = 100000;
    std::uint64_t delta_seed = 1;
    int delta_cap = 300;
    delta->add_option("--complex", delta_in)->required();
    delta->add_option("--mode", delta_mode, "exact | sampled");
    delta->add_option("--samples", delta_samples);
    delta->add_option("--seed", delta_seed);
    delta->add_option("--exact-cap", delta_cap);

    // ---- fill ----
    auto* fill = app.add_subcommand("fill", "minimal filling of a cycle");
    std::string fill_complex, fill_cycle, fill_ring = "Z:disc", fill_out, fill_search = "full";
    std::int64_t fill_ms = -1;
    std::uint64_t fill_nodes = 0;
    fill->add_option("--complex", fill_complex)->required();
    fill->add_option("--cycle", fill_cycle)->required();
    fill->add_option("--ring", fill_ring);
    fill->add_option("--budget-nodes", fill_nodes);
    fill->add_option("--budget-ms", fill_ms);
    fill->add_option("--search", fill_search, "full | adaptive");
    fill->add_option("--out", fill_out, "output chain file");

    // ---- area ----
    auto* area_cmd = app.add_subcommand("area", "filling area of a closed edge path");
    std::string area_complex, area_loop, area_ring = "Z:disc";
    area_cmd->add_option("--complex", area_complex)->required();
    area_cmd->add_option("--loop", area_loop, "comma-separated closed vertex path")->required();
    area_cmd->add_option("--ring", area_ring);

    // ---- hypfill ----
    auto* hyp = app.add_subcommand("hypfill", "constructive linear filling in a Rips complex");
    std::string hyp_complex, hyp_cycle, hyp_delta = "0", hyp_eps = "1", hyp_trace, hyp_out,
                hyp_margin;
    int hyp_base = 0;
    hyp->add_option("--complex", hyp_complex)->required();
    hyp->add_option("--cycle", hyp_cycle)->required();
    hyp->add_option("--delta", hyp_delta)->required();
    hyp->add_option("--epsilon", hyp_eps);
    hyp->add_option("--basepoint", hyp_base);
    hyp->add_option("--margin", hyp_margin, "safety margin (default 2d+4delta)");
    hyp->add_option("--trace", hyp_trace, "trace output file");
    hyp->add_option("--out", hyp_out, "output chain file");

    // ---- profile ----
    auto* prof = app.add_subcommand("profile", "isoperimetric profile");
    std::string prof_complex, prof_ring = "Z:disc", prof_out, prof_family;
    int prof_dim = 1, prof_window = 1, prof_maxlen = 12, prof_rect_side = 3;
    std::string prof_lmax = "6", prof_exh = "0";
    long prof_samples = 0;
    std::uint64_t prof_seed = 1;
    prof->add_option("--complex", prof_complex)->required();
    prof->add_option("--dim", prof_dim);
    prof->add_option("--lmax", prof_lmax)->required();
    prof->add_option("--ring", prof_ring);
    prof->add_option("--exhaustive-to", prof_exh);
    prof->add_option("--window", prof_window, "coefficient window for exhaustion");
    prof->add_option("--samples", prof_samples);
    prof->add_option("--sample-maxlen", prof_maxlen);
    prof->add_option("--seed", prof_seed);
    prof->add_option("--family", prof_family, "rect: use the rectangle-loop family");
    prof->add_option("--rect-side", prof_rect_side, "max rectangle side for --family rect");
    prof->add_option("--out", prof_out, "output profile file")->required();

    // ---- classify ----
    auto* cls = app.add_subcommand("classify", "growth classification of a profile");
    std::string cls_profile, cls_plot;
    cls->add_option("--profile", cls_profile)->required();
    cls->add_option("--plot-out", cls_plot, "emit plot data (l, f_hat, fit)");

    // ---- coning ----
    auto* cone = app.add_subcommand("coning", "coning-inequality constant estimates");
    std::string cone_complex, cone_radii, cone_ring = "Z:disc";
    int cone_base = 0, cone_dim = 1;
    long cone_blobs = 12;
    std::uint64_t cone_seed = 1;
    cone->add_option("--complex", cone_complex)->required();
    cone->add_option("--base", cone_base)->required();
    cone->add_option("--radii", cone_radii)->required();
    cone->add_option("--dim", cone_dim);
    cone->add_option("--ring", cone_ring);
    cone->add_option("--blobs", cone_blobs);
    cone->add_option("--seed", cone_seed);

    // ---- axioms ----
    auto* ax = app.add_subcommand("axioms", "theta and rectangle inequality spot checks");
    std::string ax_complex, ax_ring = "Z:disc";
    long ax_triples = 50;
    std::uint64_t ax_seed = 1;
    int ax_rect_side = 3;
    ax->add_option("--complex", ax_complex)->required();
    ax->add_option("--ring", ax_ring);
    ax->add_option("--triples", ax_triples);
    ax->add_option("--seed", ax_seed);
    ax->add_option("--rect-side", ax_rect_side);

    CLI11_PARSE(app, argc, argv);

    const auto t0 = std::chrono::steady_clock::now();
    Report report;
    {
        std::ostringstream cmd;
        for (int i = 0; i < argc; ++i) cmd << (i ? " " : "") << argv[i];
        report.add("command", cmd.str());
        report.add("version", hf::kVersion);
    }

    if (build->parsed()) {
        hf::BuiltSpace space;
        if (!build_preset_name.empty()) {
            space = hf::build_preset(build_preset_name, build_radius);
        } else if (!build_presentation.empty()) {
            const hf::Presentation p = hf::load_presentation_file(build_presentation);
            space = hf::cayley_ball(p, build_radius);
        } else {
            throw hf::ConfigError("build needs --preset or --presentation");
        }
        hf::save_complex_file(build_out, *space.complex);
        report.add("vertices", std::to_string(space.complex->vertex_count()));
        for (int k = 1; k <= space.complex->dim(); ++k)
            report.add("cells-" + std::to_string(k), std::to_string(space.complex->cell_count(k)));
        if (!space.complex->identification_certified)
            report.add("warning", "identification heuristic; result non-certified");
        report.add("out", build_out);
    } else if (rips->parsed()) {
        const hf::BuiltSpace in = load_space(rips_in);
        if (!in.metric) throw hf::ContractError("input complex carries no metric");
        const auto cx = hf::rips_complex(in.metric, hf::Rational(hf::Int(rips_d)), rips_maxdim);
        hf::save_complex_file(rips_out, *cx);
        report.add("vertices", std::to_string(cx->vertex_count()));
        for (int k = 1; k <= cx->dim(); ++k)
            report.add("cells-" + std::to_string(k), std::to_string(cx->cell_count(k)));
        report.add("out", rips_out);
    } else if (delta->parsed()) {
        const hf::BuiltSpace in = load_space(delta_in);
        if (!in.metric) throw hf::ContractError("input complex carries no metric");
        hf::DeltaOptions opts;
        opts.exact = delta_mode == "exact";
        opts.sample_count = delta_samples;
        opts.seed = delta_seed;
        opts.exact_cap = delta_cap;
        const hf::HyperbolicityEstimate est = hf::estimate_delta(*in.metric, opts);
        report.add("delta", hf::rational_to_string(est.delta));
        report.add("mode", est.exact ? "exact" : "sampled");
        report.add("quadruples", std::to_string(est.quadruples));
        if (!est.exact) report.add("seed", std::to_string(est.seed));
    } else if (fill->parsed()) {
        const hf::BuiltSpace in = load_space(fill_complex);
        const hf::NormedRing ring = hf::NormedRing::parse(fill_ring);
        const hf::Chain z = hf::load_chain_file(fill_cycle, in.complex);
        if (ring != z.ring()) throw hf::ContractError("--ring disagrees with the cycle file ring");
        if (fill_nodes > 0) fill_opts.node_budget = fill_nodes;
        fill_opts.time_budget_ms = fill_ms;
        fill_opts.search = fill_search == "adaptive" ? hf::FillOptions::Search::adaptive
                                                     : hf::FillOptions::Search::certify;
        const hf::FillingResult res = hf::exact_filling(z, fill_opts);
        std::ostringstream summary;
        hf::save_fill_summary(summary, res, ring);
        std::cout << summary.str();
        if (!fill_out.empty() && res.filling) hf::save_chain_file(fill_out, *res.filling);
        report.add("status", hf::to_string(res.status));
        if (res.status == hf::FillStatus::infeasible_within_budget && !res.proven_no_filling)
            return kExitBudget;
    } else if (area_cmd->parsed()) {
        const hf::BuiltSpace in = load_space(area_complex);
        const hf::NormedRing ring = hf::NormedRing::parse(area_ring);
        const auto loop = parse_vertex_list(area_loop);
        const hf::FillingResult res = hf::area(in.complex, loop, ring, fill_opts);
        report.add("area", hf::rational_to_string(res.norm));
        report.add("status", hf::to_string(res.status));
        if (res.status == hf::FillStatus::infeasible_within_budget && !res.proven_no_filling)
            return kExitBudget;
    } else if (hyp->parsed()) {
        const hf::BuiltSpace in = load_space(hyp_complex);
        const hf::Chain z = hf::load_chain_file(hyp_cycle, in.complex);
        std::optional<hf::Rational> margin;
        if (!hyp_margin.empty()) margin = hf::Rational(hf::Int(hyp_margin));
        const auto ctx = hf::HyperbolicContext::create(in.complex, hf::Rational(hf::Int(hyp_delta)),
                                                       hf::Rational(hf::Int(hyp_eps)), hyp_base,
                                                       margin);
        const auto [res, trace] = hf::linear_fill(ctx, z);
        report.add("norm", hf::rational_to_string(res.norm));
        report.add("steps", std::to_string(trace.steps.size()));
        report.add("cells-used", std::to_string(trace.cells_used));
        report.add("bound-n", ctx.bound_n.str());
        report.add("max-degree", std::to_string(ctx.max_degree));
        if (!hyp_trace.empty()) hf::save_trace_file(hyp_trace, trace);
        if (!hyp_out.empty() && res.filling) hf::save_chain_file(hyp_out, *res.filling);
    } else if (prof->parsed()) {
        const hf::BuiltSpace in = load_space(prof_complex);
        const hf::NormedRing ring = hf::NormedRing::parse(prof_ring);
        hf::IsoProfile p;
        if (prof_family == "rect") {
            std::vector<hf::Chain> cycles;
            for (const auto& loop : hf::rectangle_loops(in.complex, prof_rect_side))
                cycles.push_back(hf::path_to_chain(in.complex, ring, loop));
            p = hf::profile_from_cycles(in.complex, prof_dim,
                                        hf::Rational(hf::Int(prof_lmax)), cycles, ring, fill_opts);
        } else {
            hf::SamplerConfig cfg;
            cfg.l_exhaustive = hf::Rational(hf::Int(prof_exh));
            cfg.coeff_window = prof_window;
            cfg.samples = prof_samples;
            cfg.sample_maxlen = prof_maxlen;
            cfg.seed = prof_seed;
            p = hf::profile(in.complex, prof_dim, hf::Rational(hf::Int(prof_lmax)), cfg, ring,
                            fill_opts);
        }
        hf::save_profile_file(prof_out, p);
        report.add("entries", std::to_string(p.entries.size()));
        report.add("out", prof_out);
        bool flagged = false;
        for (const auto& e : p.entries) flagged |= e.flagged;
        if (flagged) report.add("warning", "entries with budget-truncated fillings are flagged");
    } else if (cls->parsed()) {
        const hf::IsoProfile p = hf::load_profile_file(cls_profile);
        const hf::GrowthClass g = hf::classify_growth(p);
        report.add("label", g.label);
        {
            std::ostringstream e;
            e << g.exponent << " [" << g.exponent_low << ", " << g.exponent_high << "]";
            report.add("exponent", e.str());
        }
        report.add("sub-euclidean", g.sub_euclidean ? "yes" : "no");
        report.add("points-used", std::to_string(g.points_used));
        if (!cls_plot.empty()) {
            std::ofstream os(cls_plot, std::ios::binary);
            if (!os) throw hf::IoError("cannot open '" + cls_plot + "'");
            hf::emit_plotdata(os, p, g);
            report.add("plot-out", cls_plot);
        }
    } else if (cone->parsed()) {
        const hf::BuiltSpace in = load_space(cone_complex);
        const hf::NormedRing ring = hf::NormedRing::parse(cone_ring);
        const auto rep = hf::check_coning(in.complex, cone_base, parse_radii(cone_radii), cone_dim,
                                          ring, cone_blobs, cone_seed, fill_opts);
        for (const auto& e : rep.entries) {
            report.add("c_hat(r=" + hf::rational_to_string(e.radius) + ")",
                       hf::rational_to_string(e.c_hat) + " over " + std::to_string(e.cycles) +
                           " cycles" + (e.flagged ? " [flagged]" : ""));
        }
        report.add("c_overall", hf::rational_to_string(rep.c_overall));
        report.add("seed", std::to_string(rep.seed));
    } else if (ax->parsed()) {
        const hf::BuiltSpace in = load_space(ax_complex);
        const hf::NormedRing ring = hf::NormedRing::parse(ax_ring);
        if (!in.metric) throw hf::ContractError("axiom checks need a vertex metric");
        // Theta triples from seeded random path pairs between random vertices.
        hf::Rng rng(ax_seed);
        const int verts = in.complex->cell_count(0);
        auto random_path = [&](hf::VertexId from, hf::VertexId to) {
            // biased random walk ending at `to`, capped length
            std::vector<hf::VertexId> path{from};
            for (int step = 0; step < 40 && path.back() != to; ++step) {
                const auto& edges = in.complex->cofaces_of(0, path.back());
                hf::VertexId best = -1;
                hf::Rational best_d = -1;
                const std::size_t pick = rng.below(edges.size());
                for (std::size_t i = 0; i < edges.size(); ++i) {
                    const auto& e = in.complex->cell(1, edges[(i + pick) % edges.size()]);
                    const hf::VertexId nxt =
                        e.verts[0] == path.back() ? e.verts[1] : e.verts[0];
                    const hf::Rational d = in.metric->dist(nxt, to);
                    if (best < 0 || d < best_d) {
                        best = nxt;
                        best_d = d;
                    }
                }
                path.push_back(best);
            }
            return path.back() == to ? std::optional(path) : std::nullopt;
        };
        long done = 0, holds = 0, inconclusive = 0;
        while (done < ax_triples) {
            const hf::VertexId a = static_cast<hf::VertexId>(rng.below(verts));
            const hf::VertexId b = static_cast<hf::VertexId>(rng.below(verts));
            if (a == b) continue;
            const auto p1 = random_path(a, b), p2 = random_path(a, b), p3 = random_path(a, b);
            if (!p1 || !p2 || !p3) continue;
            const auto rep = hf::check_theta(in.complex, *p1, *p2, *p3, ring, fill_opts);
            ++done;
            if (!rep.certified)
                ++inconclusive;
            else if (rep.holds)
                ++holds;
            else {
                report.add("theta-violation", "triple " + std::to_string(done));
                report.print(std::cout);
                return kExitCertification;
            }
        }
        report.add("theta-triples", std::to_string(done));
        report.add("theta-holds", std::to_string(holds));
        report.add("theta-inconclusive", std::to_string(inconclusive));
        // Rectangle inequality over the lattice rectangle family.
        long rect_checked = 0, rect_holds = 0;
        for (const auto& loop : hf::rectangle_loops(in.complex, ax_rect_side)) {
            // split the loop into its four sides
            std::vector<std::vector<hf::VertexId>> sides;
            std::size_t at = 0;
            const std::size_t total = loop.size() - 1;
            for (int s = 0; s < 4; ++s) {
                const std::size_t len = total / 4 + (s < static_cast<int>(total % 4) ? 1 : 0);
                std::vector<hf::VertexId> side(loop.begin() + at, loop.begin() + at + len + 1);
                sides.push_back(std::move(side));
                at += len;
            }
            const auto rep = hf::check_rectangle(in.complex, sides[0], sides[1], sides[2],
                                                 sides[3], ring, fill_opts);
            ++rect_checked;
            if (rep.certified && rep.holds) ++rect_holds;
            if (rep.certified && !rep.holds) {
                report.add("rectangle-violation", "rectangle " + std::to_string(rect_checked));
                report.print(std::cout);
                return kExitCertification;
            }
        }
        report.add("rectangles", std::to_string(rect_checked));
        report.add("rectangle-holds", std::to_string(rect_holds));
        report.add("seed", std::to_string(ax_seed));
    }

    const auto t1 = std::chrono::steady_clock::now();
    report.add("wall-ms", std::to_string(
                              std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()));
    report.print(std::cout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const hf::BudgetError& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kExitBudget;
    } catch (const hf::CertificationError& e) {
        std::cerr << "certification failure: " << e.what() << "\n";
        return kExitCertification;
    } catch (const hf::ContractError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitContract;
    } catch (const hf::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitContract;
    } catch (const hf::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitContract;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
