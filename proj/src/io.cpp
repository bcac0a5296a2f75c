#include "homfill/io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace homfill {

namespace {

std::string next_line(std::istream& is) {
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) return line;
    }
    return {};
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream iss(s);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

Rational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Int(s));
    return Rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

template <typename F>
void with_output_file(const std::string& path, F&& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    f(os);
    if (!os) throw IoError("write to '" + path + "' failed");
}

template <typename T, typename F>
T with_input_file(const std::string& path, F&& f) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open '" + path + "' for reading");
    return f(is);
}

}  // namespace

void save_complex(std::ostream& os, const Complex& cx) {
    os << "homfill-complex v1\n";
    if (!cx.preset_name.empty()) os << "preset " << cx.preset_name << "\n";
    os << "certified " << (cx.identification_certified ? 1 : 0) << "\n";
    if (cx.attaching_polygon_edges > 0) os << "attach " << cx.attaching_polygon_edges << "\n";
    if (cx.rips_distance) os << "rips " << rational_to_string(*cx.rips_distance) << "\n";
    os << "dim " << cx.dim() << "\n";
    os << "vertices " << cx.vertex_count() << "\n";
    for (int k = 1; k <= cx.dim(); ++k) {
        os << "cells " << k << " " << cx.cell_count(k) << "\n";
        for (const Cell& c : cx.cells(k)) {
            for (std::size_t i = 0; i < c.verts.size(); ++i)
                os << (i ? " " : "") << c.verts[i];
            os << "\n";
        }
    }
    if (cx.metric && cx.metric->is_graph()) {
        std::vector<std::pair<int, int>> edges;
        const auto& adj = cx.metric->adjacency();
        for (int u = 0; u < static_cast<int>(adj.size()); ++u)
            for (int v : adj[u])
                if (u < v) edges.push_back({u, v});
        os << "metric graph " << cx.metric->points() << " " << edges.size() << "\n";
        for (const auto& [u, v] : edges) os << u << " " << v << "\n";
    } else if (cx.metric) {
        const int n = cx.metric->points();
        os << "metric matrix " << n << "\n";
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j)
                os << (j ? " " : "") << rational_to_string(cx.metric->dist(i, j));
            os << "\n";
        }
    }
    if (cx.metric && cx.metric->truncation) {
        os << "truncation " << cx.metric->truncation->first << " "
           << rational_to_string(cx.metric->truncation->second) << "\n";
    }
    if (!cx.lattice.empty()) {
        os << "lattice " << cx.lattice.size() << "\n";
        for (const auto& [x, y] : cx.lattice) os << x << " " << y << "\n";
    }
}

BuiltSpace load_complex(std::istream& is) {
    std::string line = next_line(is);
    if (line != "homfill-complex v1") throw IoError("not a homfill complex file");
    ComplexBuilder builder;
    std::string preset;
    bool certified = true;
    int attach = 0;
    std::optional<Rational> rips_d;
    int dim = -1, vertices = -1;
    std::shared_ptr<FiniteMetric> metric;
    std::optional<std::pair<int, Rational>> truncation;
    std::vector<std::pair<int, int>> lattice;

    while (!(line = next_line(is)).empty()) {
        const auto tok = split_ws(line);
        if (tok[0] == "preset") {
            preset = tok[1];
        } else if (tok[0] == "certified") {
            certified = tok[1] == "1";
        } else if (tok[0] == "attach") {
            attach = std::stoi(tok[1]);
        } else if (tok[0] == "rips") {
            rips_d = parse_rational(tok[1]);
        } else if (tok[0] == "dim") {
            dim = std::stoi(tok[1]);
        } else if (tok[0] == "vertices") {
            vertices = std::stoi(tok[1]);
            for (int v = 0; v < vertices; ++v) builder.add_vertex(v);
        } else if (tok[0] == "cells") {
            const int k = std::stoi(tok[1]);
            const int count = std::stoi(tok[2]);
            for (int i = 0; i < count; ++i) {
                const auto verts = split_ws(next_line(is));
                if (static_cast<int>(verts.size()) != k + 1)
                    throw IoError("cell tuple has wrong arity");
                std::vector<VertexId> vs;
                for (const auto& v : verts) vs.push_back(std::stoi(v));
                builder.add_simplex(vs);
            }
        } else if (tok[0] == "metric" && tok[1] == "graph") {
            const int pts = std::stoi(tok[2]);
            const int ecount = std::stoi(tok[3]);
            std::vector<std::pair<int, int>> edges;
            for (int i = 0; i < ecount; ++i) {
                const auto uv = split_ws(next_line(is));
                edges.push_back({std::stoi(uv[0]), std::stoi(uv[1])});
            }
            metric = std::make_shared<FiniteMetric>(FiniteMetric::from_graph(pts, edges));
        } else if (tok[0] == "metric" && tok[1] == "matrix") {
            const int pts = std::stoi(tok[2]);
            std::vector<std::vector<Rational>> d(pts, std::vector<Rational>(pts));
            for (int i = 0; i < pts; ++i) {
                const auto row = split_ws(next_line(is));
                for (int j = 0; j < pts; ++j) d[i][j] = parse_rational(row[j]);
            }
            metric = std::make_shared<FiniteMetric>(FiniteMetric::from_matrix(std::move(d)));
        } else if (tok[0] == "truncation") {
            truncation = {std::stoi(tok[1]), parse_rational(tok[2])};
        } else if (tok[0] == "lattice") {
            const int count = std::stoi(tok[1]);
            for (int i = 0; i < count; ++i) {
                const auto xy = split_ws(next_line(is));
                lattice.push_back({std::stoi(xy[0]), std::stoi(xy[1])});
            }
        } else {
            throw IoError("unknown complex-file directive '" + tok[0] + "'");
        }
    }
    if (vertices < 0) throw IoError("complex file missing vertex count");
    if (metric && truncation) metric->truncation = truncation;
    auto cx = builder.build();
    if (cx->dim() != dim && dim >= 0 && cx->cell_count(0) > 0 && cx->dim() < dim)
        throw IoError("complex file dimension mismatch");
    auto mutable_cx = std::const_pointer_cast<Complex>(cx);
    mutable_cx->preset_name = preset;
    mutable_cx->identification_certified = certified;
    mutable_cx->attaching_polygon_edges = attach;
    mutable_cx->rips_distance = rips_d;
    mutable_cx->metric = metric;
    mutable_cx->lattice = std::move(lattice);
    return BuiltSpace{cx, metric};
}

void save_chain(std::ostream& os, const Chain& c) {
    os << "homfill-chain v1\n";
    os << "ring " << c.ring().spec_string() << "\n";
    os << "dim " << c.dim() << "\n";
    os << "cells " << c.coeffs().size() << "\n";
    for (const auto& [id, v] : c.coeffs())
        os << id << " " << c.ring().format_coeff(v) << "\n";
}

Chain load_chain(std::istream& is, const ComplexPtr& cx) {
    std::string line = next_line(is);
    if (line != "homfill-chain v1") throw IoError("not a homfill chain file");
    const auto ring_tok = split_ws(next_line(is));
    if (ring_tok.size() != 2 || ring_tok[0] != "ring") throw IoError("chain file: missing ring");
    const NormedRing ring = NormedRing::parse(ring_tok[1]);
    const auto dim_tok = split_ws(next_line(is));
    if (dim_tok.size() != 2 || dim_tok[0] != "dim") throw IoError("chain file: missing dim");
    const int dim = std::stoi(dim_tok[1]);
    const auto count_tok = split_ws(next_line(is));
    if (count_tok.size() != 2 || count_tok[0] != "cells")
        throw IoError("chain file: missing cell count");
    Chain c(cx, dim, ring);
    const int count = std::stoi(count_tok[1]);
    for (int i = 0; i < count; ++i) {
        const auto entry = split_ws(next_line(is));
        if (entry.size() != 2) throw IoError("chain file: bad entry");
        c.set(std::stoi(entry[0]), ring.parse_coeff(entry[1]));
    }
    return c;
}

void save_profile(std::ostream& os, const IsoProfile& p) {
    os << "homfill-profile v1\n";
    os << "complex " << (p.complex_id.empty() ? "complex" : p.complex_id) << "\n";
    os << "dim " << p.dim << "\n";
    os << "ring " << p.ring_spec << "\n";
    os << "mode " << p.mode << "\n";
    os << "exhaustive-to " << rational_to_string(p.l_exhaustive) << "\n";
    os << "window " << p.coeff_window << "\n";
    os << "samples " << p.sample_count << "\n";
    os << "seed " << p.seed << "\n";
    os << "entries " << p.entries.size() << "\n";
    os << "l,f_hat,mode,samples,worst-status\n";
    for (const auto& e : p.entries) {
        os << rational_to_string(e.l) << "," << rational_to_string(e.f_hat) << ","
           << (e.exhaustive ? "exhaustive" : "sampled") << "," << e.samples << ","
           << to_string(e.worst_status) << (e.flagged ? "!" : "") << "\n";
    }
}

IsoProfile load_profile(std::istream& is) {
    std::string line = next_line(is);
    if (line != "homfill-profile v1") throw IoError("not a homfill profile file");
    IsoProfile p;
    long entries = 0;
    while (!(line = next_line(is)).empty()) {
        const auto tok = split_ws(line);
        if (tok[0] == "complex")
            p.complex_id = tok[1];
        else if (tok[0] == "dim")
            p.dim = std::stoi(tok[1]);
        else if (tok[0] == "ring")
            p.ring_spec = tok[1];
        else if (tok[0] == "mode")
            p.mode = tok[1];
        else if (tok[0] == "exhaustive-to")
            p.l_exhaustive = parse_rational(tok[1]);
        else if (tok[0] == "window")
            p.coeff_window = std::stoi(tok[1]);
        else if (tok[0] == "samples")
            p.sample_count = std::stol(tok[1]);
        else if (tok[0] == "seed")
            p.seed = std::stoull(tok[1]);
        else if (tok[0] == "entries") {
            entries = std::stol(tok[1]);
            next_line(is);  // column header
            for (long i = 0; i < entries; ++i) {
                const std::string row = next_line(is);
                std::vector<std::string> cols;
                std::string cur;
                for (char ch : row) {
                    if (ch == ',') {
                        cols.push_back(cur);
                        cur.clear();
                    } else {
                        cur += ch;
                    }
                }
                cols.push_back(cur);
                if (cols.size() != 5) throw IoError("profile file: bad entry row");
                ProfileEntry e;
                e.l = parse_rational(cols[0]);
                e.f_hat = parse_rational(cols[1]);
                e.exhaustive = cols[2] == "exhaustive";
                e.samples = std::stol(cols[3]);
                std::string st = cols[4];
                if (!st.empty() && st.back() == '!') {
                    e.flagged = true;
                    st.pop_back();
                }
                if (st == "optimal")
                    e.worst_status = FillStatus::optimal;
                else if (st == "upper_bound")
                    e.worst_status = FillStatus::upper_bound;
                else
                    e.worst_status = FillStatus::infeasible_within_budget;
                p.entries.push_back(e);
            }
        } else {
            throw IoError("unknown profile-file directive '" + tok[0] + "'");
        }
    }
    return p;
}

Presentation load_presentation(std::istream& is) {
    std::string line = next_line(is);
    if (line != "homfill-presentation v1") throw IoError("not a homfill presentation file");
    Presentation p;
    while (!(line = next_line(is)).empty()) {
        const auto tok = split_ws(line);
        if (tok[0] == "generators") {
            for (std::size_t i = 1; i < tok.size(); ++i) p.generators.push_back(tok[i]);
        } else if (tok[0] == "relators") {
            for (std::size_t i = 1; i < tok.size(); ++i) p.relators.push_back(tok[i]);
        } else if (tok[0] == "normal-form") {
            if (tok[1] == "free")
                p.normal_form = Presentation::NormalForm::free_reduction;
            else if (tok[1] == "abelian")
                p.normal_form = Presentation::NormalForm::abelian;
            else if (tok[1] == "dehn")
                p.normal_form = Presentation::NormalForm::dehn;
            else if (tok[1] == "auto")
                p.normal_form = Presentation::NormalForm::automatic;
            else
                throw IoError("unknown normal-form '" + tok[1] + "'");
        } else {
            throw IoError("unknown presentation directive '" + tok[0] + "'");
        }
    }
    p.validate();
    return p;
}

void save_trace(std::ostream& os, const ReductionTrace& trace) {
    os << "homfill-trace v1\n";
    os << "steps " << trace.steps.size() << "\n";
    os << "cells-used " << trace.cells_used << "\n";
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const ReductionStep& s = trace.steps[i];
        os << "step " << i << " case " << s.case_id << " v " << s.v << " before "
           << rational_to_string(s.norm_before) << " after " << rational_to_string(s.norm_after)
           << "\n";
        os << "involved";
        for (VertexId u : s.involved) os << " " << u;
        os << "\n";
        const auto& applied = *s.applied;
        os << "applied " << applied.coeffs().size() << "\n";
        for (const auto& [id, v] : applied.coeffs())
            os << id << " " << applied.ring().format_coeff(v) << "\n";
    }
}

void save_fill_summary(std::ostream& os, const FillingResult& result, const NormedRing& ring) {
    os << "homfill-fill-summary v1\n";
    os << "ring " << ring.spec_string() << "\n";
    os << "found " << (result.filling ? 1 : 0) << "\n";
    os << "norm " << rational_to_string(result.norm) << "\n";
    os << "status " << to_string(result.status) << "\n";
    os << "region-depth " << result.region_depth << "\n";
    os << "region-full " << (result.region_full ? 1 : 0) << "\n";
    os << "proven-no-filling " << (result.proven_no_filling ? 1 : 0) << "\n";
    os << "nodes " << result.nodes << "\n";
}

void emit_plotdata(std::ostream& os, const IsoProfile& p, const GrowthClass& g) {
    os << "# " << kVersion << " plot data\n";
    os << "# complex " << p.complex_id << " dim " << p.dim << " ring " << p.ring_spec << "\n";
    os << "# fitted exponent " << g.exponent << " label " << g.label << "\n";
    os << "# l f_hat fit\n";
    for (const auto& e : p.entries) {
        if (e.l <= 0) continue;
        const double fit =
            std::exp(g.log_intercept + g.exponent * std::log(rational_to_double(e.l)));
        os << rational_to_string(e.l) << " " << rational_to_string(e.f_hat) << " " << fit << "\n";
    }
}

void save_complex_file(const std::string& path, const Complex& cx) {
    with_output_file(path, [&](std::ostream& os) { save_complex(os, cx); });
}
BuiltSpace load_complex_file(const std::string& path) {
    return with_input_file<BuiltSpace>(path, [](std::istream& is) { return load_complex(is); });
}
void save_chain_file(const std::string& path, const Chain& c) {
    with_output_file(path, [&](std::ostream& os) { save_chain(os, c); });
}
Chain load_chain_file(const std::string& path, const ComplexPtr& cx) {
    return with_input_file<Chain>(path, [&](std::istream& is) { return load_chain(is, cx); });
}
void save_profile_file(const std::string& path, const IsoProfile& p) {
    with_output_file(path, [&](std::ostream& os) { save_profile(os, p); });
}
IsoProfile load_profile_file(const std::string& path) {
    return with_input_file<IsoProfile>(path, [](std::istream& is) { return load_profile(is); });
}
Presentation load_presentation_file(const std::string& path) {
    return with_input_file<Presentation>(path,
                                         [](std::istream& is) { return load_presentation(is); });
}
void save_trace_file(const std::string& path, const ReductionTrace& trace) {
    with_output_file(path, [&](std::ostream& os) { save_trace(os, trace); });
}

}  // namespace homfill
