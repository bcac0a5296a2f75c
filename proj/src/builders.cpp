#include "homfill/builders.hpp"

#include <algorithm>
#include <deque>
#include <iostream>
#include <map>
#include <memory>
#include <set>

#include "homfill/lattice.hpp"
#include "homfill/words.hpp"

namespace homfill {

namespace {

// Identification strategy used by the ball enumerator: reduce a word, then
// map it to a canonical hashable key.
struct Identifier {
    virtual ~Identifier() = default;
    virtual Word reduce(const Word& w) const = 0;
    virtual std::string key(const Word& reduced) const = 0;
    virtual int max_radius() const { return 1 << 20; }
    // Plane coordinates for rank-2 free abelian identification, if any.
    virtual std::optional<std::pair<int, int>> lattice_point(const Word&) const {
        return std::nullopt;
    }
};

struct FreeIdentifier : Identifier {
    Word reduce(const Word& w) const override { return free_reduce(w); }
    std::string key(const Word& reduced) const override { return format_word(reduced); }
};

struct AbelianIdentifier : Identifier {
    AbelianIdentifier(int gens, const IntMat& relator_columns) : coker(gens, relator_columns) {}

    Word reduce(const Word& w) const override { return free_reduce(w); }
    std::string key(const Word& reduced) const override {
        std::vector<Int> x(coker.gens(), 0);
        for (int l : reduced) {
            if (l > 0)
                x[l - 1] += 1;
            else
                x[-l - 1] -= 1;
        }
        const auto w = coker.canon_of_exponent(x);
        std::string s;
        for (const Int& v : w) {
            s += v.str();
            s += '.';
        }
        return s;
    }

    std::optional<std::pair<int, int>> lattice_point(const Word& reduced) const override {
        std::vector<int> free_rows;
        for (int i = 0; i < coker.gens(); ++i)
            if (coker.moduli()[i] == 0) free_rows.push_back(i);
        if (free_rows.size() != 2) return std::nullopt;
        std::vector<Int> x(coker.gens(), 0);
        for (int l : reduced) {
            if (l > 0)
                x[l - 1] += 1;
            else
                x[-l - 1] -= 1;
        }
        const auto w = coker.canon_of_exponent(x);
        return std::pair<int, int>{static_cast<int>(w[free_rows[0]]),
                                   static_cast<int>(w[free_rows[1]])};
    }

    AbelianCoker coker;
};

// Small-cancellation identification. Up to radius min|r|/2, Dehn-reduced
// words are geodesic and an element has at most the half-relator partner
// spellings, so the lexicographically least spelling is an exact key.
struct DehnIdentifier : Identifier {
    explicit DehnIdentifier(const std::vector<Word>& relators) : dehn(relators) {}

    Word reduce(const Word& w) const override { return dehn.reduce(w); }
    std::string key(const Word& reduced) const override {
        Word best = reduced;
        for (const Word& p : dehn.half_partners(reduced))
            if (p < best) best = p;
        return format_word(best);
    }
    int max_radius() const override { return dehn.min_relator_length() / 2; }

    DehnReducer dehn;
};

bool recognize_abelian(const Presentation& p, IntMat& relator_columns) {
    // Syntactic check that the presented group is abelian: every generator
    // pair must commute via an explicit commutator relator. Further relators
    // are allowed; they only shrink the cokernel.
    const int n = static_cast<int>(p.generators.size());
    std::set<std::pair<int, int>> commuting;
    std::vector<Word> parsed;
    for (const auto& r : p.relators) parsed.push_back(free_reduce(parse_word(r, n)));
    for (const Word& w : parsed) {
        if (w.size() == 4 && w[2] == -w[0] && w[3] == -w[1] && std::abs(w[0]) != std::abs(w[1])) {
            const int i = std::abs(w[0]) - 1, j = std::abs(w[1]) - 1;
            commuting.insert({std::min(i, j), std::max(i, j)});
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!commuting.count({i, j})) return false;
    relator_columns.clear();
    for (const Word& w : parsed) {
        std::vector<Int> col(n, 0);
        for (int l : w) {
            if (l > 0)
                col[l - 1] += 1;
            else
                col[-l - 1] -= 1;
        }
        relator_columns.push_back(std::move(col));
    }
    return true;
}

std::unique_ptr<Identifier> pick_identifier(const Presentation& p, bool& certified) {
    const int n = static_cast<int>(p.generators.size());
    certified = true;
    std::vector<Word> relators;
    for (const auto& r : p.relators) relators.push_back(parse_word(r, n));

    switch (p.normal_form) {
        case Presentation::NormalForm::free_reduction:
            if (!p.relators.empty()) certified = false;
            return std::make_unique<FreeIdentifier>();
        case Presentation::NormalForm::abelian: {
            IntMat cols;
            if (!recognize_abelian(p, cols))
                throw ConfigError(
                    "abelian normal form requires commutator relators for every generator pair");
            return std::make_unique<AbelianIdentifier>(n, cols);
        }
        case Presentation::NormalForm::dehn:
            return std::make_unique<DehnIdentifier>(relators);
        case Presentation::NormalForm::automatic:
            break;
    }
    if (p.relators.empty()) return std::make_unique<FreeIdentifier>();
    IntMat cols;
    if (recognize_abelian(p, cols)) return std::make_unique<AbelianIdentifier>(n, cols);
    certified = false;
    std::cerr << "warning: vertex identification is heuristic beyond free reductions for this "
                 "presentation; result flagged non-certified\n";
    return std::make_unique<FreeIdentifier>();
}

}  // namespace

void Presentation::validate() const {
    if (generators.empty()) throw ContractError("presentation needs at least one generator");
    if (generators.size() > 26) throw ContractError("at most 26 single-letter generators");
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (generators[i].size() != 1 || generators[i][0] != static_cast<char>('a' + i))
            throw ContractError("generators must be consecutive letters starting at 'a'");
    }
    const int n = static_cast<int>(generators.size());
    for (const auto& r : relators) {
        if (r.empty()) throw ContractError("relators must be nonempty");
        const Word w = parse_word(r, n);
        if (free_reduce(w) != w) throw ContractError("relator '" + r + "' is not freely reduced");
    }
}

Presentation preset_presentation(const std::string& name) {
    Presentation p;
    auto letters = [](int n) {
        std::vector<std::string> out;
        for (int i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
        return out;
    };
    if (name == "f2") {
        p.generators = letters(2);
        p.normal_form = Presentation::NormalForm::free_reduction;
        return p;
    }
    if (name.rfind("free:", 0) == 0) {
        const int n = std::stoi(name.substr(5));
        if (n < 1 || n > 26) throw ConfigError("free:N needs 1 <= N <= 26");
        p.generators = letters(n);
        p.normal_form = Presentation::NormalForm::free_reduction;
        return p;
    }
    if (name == "z2" || name.rfind("z2:", 0) == 0) {
        // Generators of Z^2 given as words in the standard basis a, b.
        std::vector<std::string> words = {"a", "b"};
        if (name.size() > 3) {
            words.clear();
            std::string cur;
            for (char c : name.substr(3)) {
                if (c == ',') {
                    words.push_back(cur);
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            words.push_back(cur);
        }
        if (words.size() < 2 || words[0] != "a" || words[1] != "b")
            throw ConfigError("z2 generator list must start with a,b");
        const int n = static_cast<int>(words.size());
        p.generators = letters(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                std::string rel;
                rel += static_cast<char>('a' + i);
                rel += static_cast<char>('a' + j);
                rel += static_cast<char>('A' + i);
                rel += static_cast<char>('A' + j);
                p.relators.push_back(rel);
            }
        for (int k = 2; k < n; ++k) {
            // definition relator: g_k followed by the inverse of its word
            std::string rel(1, static_cast<char>('a' + k));
            const std::string& w = words[k];
            for (auto it = w.rbegin(); it != w.rend(); ++it) {
                const char c = *it;
                if (c == 'a' || c == 'b')
                    rel += static_cast<char>(c - 'a' + 'A');
                else if (c == 'A' || c == 'B')
                    rel += static_cast<char>(c - 'A' + 'a');
                else
                    throw ConfigError("z2 generator words use letters a,b only");
            }
            p.relators.push_back(rel);
        }
        p.normal_form = Presentation::NormalForm::abelian;
        return p;
    }
    if (name == "genus2") {
        p.generators = letters(4);
        p.relators = {"abABcdCD"};
        p.normal_form = Presentation::NormalForm::dehn;
        return p;
    }
    throw ConfigError("unknown preset '" + name + "'");
}

BuiltSpace cayley_ball(const Presentation& p, int radius) {
    p.validate();
    if (radius < 0) throw ContractError("radius must be >= 0");
    const int n = static_cast<int>(p.generators.size());
    bool certified = true;
    const auto ident = pick_identifier(p, certified);
    if (radius > ident->max_radius())
        throw ConfigError("identification for this presentation is certified up to radius " +
                          std::to_string(ident->max_radius()) + " only");

    // Breadth-first enumeration; vertex ids in discovery order, identity = 0.
    std::vector<Word> rep;
    std::vector<int> level;
    std::map<std::string, int> by_key;

    auto lookup = [&](const Word& reduced) -> int {
        const auto it = by_key.find(ident->key(reduced));
        return it == by_key.end() ? -1 : it->second;
    };
    auto insert = [&](const Word& reduced, int lvl) {
        const int id = static_cast<int>(rep.size());
        rep.push_back(reduced);
        level.push_back(lvl);
        by_key[ident->key(reduced)] = id;
    };

    insert(Word{}, 0);
    std::deque<int> queue{0};
    while (!queue.empty()) {
        const int g = queue.front();
        queue.pop_front();
        if (level[g] == radius) continue;
        for (int s = 1; s <= n; ++s) {
            for (int dir : {s, -s}) {
                Word w = rep[g];
                w.push_back(dir);
                const Word red = ident->reduce(w);
                if (lookup(red) >= 0) continue;
                insert(red, level[g] + 1);
                queue.push_back(static_cast<int>(rep.size()) - 1);
            }
        }
    }
    const int vcount = static_cast<int>(rep.size());

    auto step = [&](int g, int letter) -> int {
        Word w = rep[g];
        w.push_back(letter);
        return lookup(ident->reduce(w));
    };

    std::set<std::pair<int, int>> gen_edges;
    for (int g = 0; g < vcount; ++g)
        for (int s = 1; s <= n; ++s)
            for (int dir : {s, -s}) {
                const int h = step(g, dir);
                if (h >= 0 && h != g) gen_edges.insert({std::min(g, h), std::max(g, h)});
            }

    ComplexBuilder builder;
    for (int v = 0; v < vcount; ++v) builder.add_vertex(v);
    for (const auto& [u, v] : gen_edges) builder.add_simplex({u, v});

    // Relator disks: one per embedded relator polygon fully inside the ball.
    int attach_n = 0;
    std::set<std::vector<std::pair<int, int>>> polygons;
    std::vector<Word> relator_words;
    for (const auto& r : p.relators) relator_words.push_back(parse_word(r, n));
    for (int g = 0; g < vcount; ++g) {
        for (const Word& r : relator_words) {
            std::vector<int> seq{g};
            bool inside = true;
            for (int letter : r) {
                const int h = step(seq.back(), letter);
                if (h < 0) {
                    inside = false;
                    break;
                }
                seq.push_back(h);
            }
            if (!inside) continue;
            if (seq.back() != g) {
                if (certified)
                    throw ContractError("relator does not close up; identification inconsistent");
                continue;  // heuristic identification cannot see this disk
            }
            seq.pop_back();
            std::set<int> distinct(seq.begin(), seq.end());
            if (distinct.size() != seq.size()) {
                std::cerr << "warning: skipping non-embedded relator instance at vertex " << g
                          << "\n";
                continue;
            }
            std::vector<std::pair<int, int>> edge_key;
            for (std::size_t i = 0; i < seq.size(); ++i) {
                const int u = seq[i], v = seq[(i + 1) % seq.size()];
                edge_key.emplace_back(std::min(u, v), std::max(u, v));
            }
            std::sort(edge_key.begin(), edge_key.end());
            if (!polygons.insert(edge_key).second) continue;
            attach_n = std::max(attach_n, static_cast<int>(seq.size()));
            // Fan-triangulate from the least vertex.
            const auto least = std::min_element(seq.begin(), seq.end());
            std::rotate(seq.begin(), least, seq.end());
            for (std::size_t i = 1; i + 1 < seq.size(); ++i)
                builder.add_simplex({seq[0], seq[i], seq[i + 1]});
        }
    }

    BuiltSpace out;
    std::vector<std::pair<int, int>> edges_vec(gen_edges.begin(), gen_edges.end());
    auto metric = std::make_shared<FiniteMetric>(FiniteMetric::from_graph(vcount, edges_vec));
    metric->truncation = {{0, Rational(radius)}};
    auto cx = builder.build();
    auto mutable_cx = std::const_pointer_cast<Complex>(cx);
    mutable_cx->metric = metric;
    mutable_cx->attaching_polygon_edges = attach_n;
    mutable_cx->identification_certified = certified;
    if (vcount > 0 && ident->lattice_point(rep[0])) {
        mutable_cx->lattice.reserve(vcount);
        for (int v = 0; v < vcount; ++v) mutable_cx->lattice.push_back(*ident->lattice_point(rep[v]));
    }
    out.complex = cx;
    out.metric = metric;
    return out;
}

ComplexPtr rips_complex(std::shared_ptr<const FiniteMetric> m, const Rational& d, int max_dim) {
    if (max_dim < 1) throw ContractError("rips_complex needs max_dim >= 1");
    if (d <= 0) throw ContractError("rips_complex needs d > 0");
    const int npts = m->points();
    ComplexBuilder builder;
    for (int v = 0; v < npts; ++v) builder.add_vertex(v);
    std::vector<std::vector<int>> nbrs(npts);  // strictly larger neighbors
    for (int u = 0; u < npts; ++u)
        for (int v = u + 1; v < npts; ++v)
            if (m->dist(u, v) <= d) {
                builder.add_simplex({u, v});
                nbrs[u].push_back(v);
            }
    // Flag expansion: grow cliques by ascending vertices.
    std::vector<std::vector<int>> frontier;
    for (int u = 0; u < npts; ++u)
        for (int v : nbrs[u]) frontier.push_back({u, v});
    for (int k = 2; k <= max_dim && !frontier.empty(); ++k) {
        std::vector<std::vector<int>> next;
        for (const auto& clique : frontier) {
            std::vector<int> common = nbrs[clique[0]];
            for (std::size_t i = 1; i < clique.size(); ++i) {
                std::vector<int> merged;
                std::set_intersection(common.begin(), common.end(), nbrs[clique[i]].begin(),
                                      nbrs[clique[i]].end(), std::back_inserter(merged));
                common = std::move(merged);
            }
            for (int w : common) {
                std::vector<int> bigger = clique;
                bigger.push_back(w);
                builder.add_simplex(bigger);
                if (k < max_dim) next.push_back(std::move(bigger));
            }
        }
        frontier = std::move(next);
    }
    auto cx = builder.build();
    auto mutable_cx = std::const_pointer_cast<Complex>(cx);
    mutable_cx->metric = m;
    mutable_cx->rips_distance = d;
    return cx;
}

BuiltSpace grid_complex(int w, int h) {
    if (w < 1 || h < 1) throw ContractError("grid dimensions must be >= 1");
    ComplexBuilder builder;
    auto vid = [w](int x, int y) { return y * (w + 1) + x; };
    for (int y = 0; y <= h; ++y)
        for (int x = 0; x <= w; ++x) builder.add_vertex(vid(x, y));
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            builder.add_simplex({vid(x, y), vid(x + 1, y), vid(x + 1, y + 1)});
            builder.add_simplex({vid(x, y), vid(x, y + 1), vid(x + 1, y + 1)});
        }
    auto cx = builder.build();
    std::vector<std::pair<int, int>> skeleton_edges;
    for (const Cell& e : cx->cells(1)) skeleton_edges.emplace_back(e.verts[0], e.verts[1]);
    auto metric = std::make_shared<FiniteMetric>(
        FiniteMetric::from_graph((w + 1) * (h + 1), skeleton_edges));
    auto mutable_cx = std::const_pointer_cast<Complex>(cx);
    mutable_cx->metric = metric;
    mutable_cx->preset_name = "grid:" + std::to_string(w) + "x" + std::to_string(h);
    mutable_cx->lattice.reserve((w + 1) * (h + 1));
    for (int y = 0; y <= h; ++y)
        for (int x = 0; x <= w; ++x) mutable_cx->lattice.emplace_back(x, y);
    return BuiltSpace{cx, metric};
}

BuiltSpace tree_complex(int valence, int depth) {
    if (valence < 1 || depth < 0) throw ContractError("tree needs valence >= 1, depth >= 0");
    ComplexBuilder builder;
    builder.add_vertex(0);
    std::vector<std::pair<int, int>> edges;
    std::vector<int> frontier{0};
    int next_id = 1;
    for (int lvl = 0; lvl < depth; ++lvl) {
        std::vector<int> nf;
        for (int v : frontier) {
            const int kids = (v == 0) ? valence : valence - 1;
            for (int c = 0; c < kids; ++c) {
                builder.add_vertex(next_id);
                builder.add_simplex({v, next_id});
                edges.emplace_back(v, next_id);
                nf.push_back(next_id);
                ++next_id;
            }
        }
        frontier = std::move(nf);
    }
    auto cx = builder.build();
    auto metric = std::make_shared<FiniteMetric>(FiniteMetric::from_graph(next_id, edges));
    metric->truncation = {{0, Rational(depth)}};
    auto mutable_cx = std::const_pointer_cast<Complex>(cx);
    mutable_cx->metric = metric;
    mutable_cx->preset_name = "tree:" + std::to_string(valence) + "," + std::to_string(depth);
    return BuiltSpace{cx, metric};
}

BuiltSpace build_preset(const std::string& preset, int radius) {
    if (preset.rfind("grid:", 0) == 0) {
        const auto spec = preset.substr(5);
        const auto x = spec.find('x');
        if (x == std::string::npos) throw ConfigError("grid preset must look like grid:WxH");
        return grid_complex(std::stoi(spec.substr(0, x)), std::stoi(spec.substr(x + 1)));
    }
    if (preset.rfind("tree:", 0) == 0) {
        const auto spec = preset.substr(5);
        const auto comma = spec.find(',');
        if (comma == std::string::npos)
            throw ConfigError("tree preset must look like tree:valence,depth");
        return tree_complex(std::stoi(spec.substr(0, comma)), std::stoi(spec.substr(comma + 1)));
    }
    Presentation p = preset_presentation(preset);
    BuiltSpace out = cayley_ball(p, radius);
    std::const_pointer_cast<Complex>(out.complex)->preset_name = preset;
    return out;
}

}  // namespace homfill
