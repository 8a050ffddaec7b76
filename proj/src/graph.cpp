#include "netview/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

namespace netview {

Edge make_edge(NodeId a, NodeId b) {
    return a < b ? Edge{a, b} : Edge{b, a};
}

Graph::Graph(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges) : adj_(n) {
    for (auto [a, b] : edges) {
        if (a >= n || b >= n) throw std::out_of_range("edge endpoint out of range");
        if (a == b) continue;
        adj_[a].push_back(b);
        adj_[b].push_back(a);
    }
    for (auto& row : adj_) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        m_ += row.size();
    }
    m_ /= 2;
}

bool Graph::has_edge(NodeId a, NodeId b) const {
    if (a >= adj_.size() || b >= adj_.size()) return false;
    return std::binary_search(adj_[a].begin(), adj_[a].end(), b);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (NodeId u = 0; u < adj_.size(); ++u)
        for (NodeId v : adj_[u])
            if (u < v) out.push_back({u, v});
    return out;
}

bool Graph::is_connected() const {
    if (adj_.empty()) return false;
    auto d = bfs_distances(*this, 0);
    return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

FileNotFound::FileNotFound(const std::filesystem::path& p)
    : std::runtime_error("cannot open file: " + p.string()), path_(p) {}

GenerationError::GenerationError(int attempts, const std::string& what)
    : std::runtime_error(what + " after " + std::to_string(attempts) + " attempts"), attempts_(attempts) {}

namespace {

bool parse_int(std::string_view tok, std::int64_t& out) {
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && p == tok.data() + tok.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) toks.push_back(line.substr(i, j - i));
        i = j;
    }
    return toks;
}

}  // namespace

LoadedGraph load_edge_list(std::string_view text) {
    std::unordered_map<std::int64_t, NodeId> remap;
    LoadedGraph out;
    std::vector<std::pair<NodeId, NodeId>> edges;
    auto id_of = [&](std::int64_t raw) {
        auto [it, fresh] = remap.try_emplace(raw, static_cast<NodeId>(out.original_ids.size()));
        if (fresh) out.original_ids.push_back(raw);
        return it->second;
    };

    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++lineno;

        auto toks = split_ws(line);
        if (toks.empty() || toks[0].front() == '#') continue;
        std::int64_t a = 0, b = 0;
        if (toks.size() < 2 || !parse_int(toks[0], a) || !parse_int(toks[1], b))
            throw ParseError(lineno, "expected two integer tokens, got '" + std::string(line) + "'");
        if (a < 0 || b < 0) throw ParseError(lineno, "negative node id");
        NodeId ia = id_of(a);
        NodeId ib = id_of(b);
        edges.emplace_back(ia, ib);
    }
    if (out.original_ids.empty()) throw ParseError(lineno, "empty graph");
    out.graph = Graph(out.original_ids.size(), edges);
    return out;
}

LoadedGraph load_edge_list_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FileNotFound(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_edge_list(ss.str());
}

std::string save_edge_list(const Graph& g) {
    std::string out;
    for (auto e : g.edges()) {
        out += std::to_string(e.u);
        out += ' ';
        out += std::to_string(e.v);
        out += '\n';
    }
    return out;
}

Component largest_component(const Graph& g) {
    std::vector<int> comp(g.size(), -1);
    std::vector<std::size_t> sizes;
    for (NodeId s = 0; s < g.size(); ++s) {
        if (comp[s] >= 0) continue;
        int c = static_cast<int>(sizes.size());
        sizes.push_back(0);
        std::deque<NodeId> q{s};
        comp[s] = c;
        while (!q.empty()) {
            NodeId u = q.front();
            q.pop_front();
            ++sizes[c];
            for (NodeId v : g.neighbours(u))
                if (comp[v] < 0) {
                    comp[v] = c;
                    q.push_back(v);
                }
        }
    }
    Component out;
    if (sizes.empty()) return out;
    int best = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    std::vector<NodeId> renum(g.size(), 0);
    for (NodeId i = 0; i < g.size(); ++i)
        if (comp[i] == best) {
            renum[i] = static_cast<NodeId>(out.members.size());
            out.members.push_back(i);
        }
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (auto e : g.edges())
        if (comp[e.u] == best) edges.emplace_back(renum[e.u], renum[e.v]);
    out.graph = Graph(out.members.size(), edges);
    return out;
}

std::vector<int> bfs_distances(const Graph& g, NodeId s) {
    if (s >= g.size()) throw std::out_of_range("bfs source out of range");
    std::vector<int> dist(g.size(), -1);
    std::vector<NodeId> frontier{s};
    dist[s] = 0;
    for (int level = 1; !frontier.empty(); ++level) {
        std::vector<NodeId> next;
        for (NodeId u : frontier)
            for (NodeId v : g.neighbours(u))
                if (dist[v] < 0) {
                    dist[v] = level;
                    next.push_back(v);
                }
        frontier.swap(next);
    }
    return dist;
}

Fraction closeness_exact(const Graph& g, NodeId i) {
    if (g.size() < 2) throw std::domain_error("closeness undefined for n < 2");
    auto d = bfs_distances(g, i);
    std::int64_t sum = 0;
    for (int x : d) {
        if (x < 0) throw std::domain_error("graph is not connected");
        sum += x;
    }
    return Fraction(static_cast<std::int64_t>(g.size()) - 1, sum);
}

std::vector<Fraction> closeness_all(const Graph& g) {
    std::vector<Fraction> out;
    out.reserve(g.size());
    for (NodeId i = 0; i < g.size(); ++i) out.push_back(closeness_exact(g, i));
    return out;
}

int eccentricity_exact(const Graph& g, NodeId i) {
    auto d = bfs_distances(g, i);
    if (std::any_of(d.begin(), d.end(), [](int x) { return x < 0; }))
        throw std::domain_error("graph is not connected");
    return *std::max_element(d.begin(), d.end());
}

std::vector<int> eccentricities(const Graph& g) {
    std::vector<int> out(g.size());
    for (NodeId i = 0; i < g.size(); ++i) out[i] = eccentricity_exact(g, i);
    return out;
}

int diameter(const Graph& g) {
    auto e = eccentricities(g);
    return e.empty() ? 0 : *std::max_element(e.begin(), e.end());
}

int radius(const Graph& g) {
    auto e = eccentricities(g);
    return e.empty() ? 0 : *std::min_element(e.begin(), e.end());
}

Graph golden_graph() {
    // v1-v2, v1-v3, v2-v3, v2-v4, v4-v5, v4-v6, v3-v7, v7-v8, v8-v9, v8-v10
    return Graph(10, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {3, 4}, {3, 5}, {2, 6}, {6, 7}, {7, 8}, {7, 9}});
}

std::string golden_label(NodeId i) {
    return "v" + std::to_string(i + 1);
}

// ---- geometric generator ----

namespace {

struct Lattice {
    int side;
    std::vector<std::pair<int, int>> offsets;  // all (dx,dy) with 0 < dx²+dy² < r²
    std::vector<int> occ;                      // point index per cell, -1 if free

    Lattice(int grid, int r) : side(grid), occ(static_cast<std::size_t>(grid) * grid, -1) {
        for (int dx = -r; dx <= r; ++dx)
            for (int dy = -r; dy <= r; ++dy) {
                int d2 = dx * dx + dy * dy;
                if (d2 > 0 && d2 < r * r) offsets.emplace_back(dx, dy);
            }
    }
    bool inside(int x, int y) const { return x >= 0 && y >= 0 && x < side && y < side; }
    int& at(int x, int y) { return occ[static_cast<std::size_t>(x) * side + y]; }
};

Graph geometric_edges(const std::vector<std::pair<int, int>>& pts, int r) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId i = 0; i < pts.size(); ++i)
        for (NodeId j = i + 1; j < pts.size(); ++j) {
            long dx = pts[i].first - pts[j].first;
            long dy = pts[i].second - pts[j].second;
            if (dx * dx + dy * dy < static_cast<long>(r) * r) edges.emplace_back(i, j);
        }
    return Graph(pts.size(), edges);
}

GeometricGraph chain_sample(const GeometricParams& p) {
    std::mt19937_64 rng(p.seed);
    auto uniform = [&rng](std::size_t bound) {
        return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
    };
    Lattice lat(p.grid, p.comm_range);
    const std::size_t n = p.n;

    // Eden growth seeds a connected configuration.
    std::vector<std::pair<int, int>> pts;
    std::vector<std::pair<int, int>> cand;
    std::vector<int> cand_pos(lat.occ.size(), -1);
    auto cell = [&](int x, int y) { return static_cast<std::size_t>(x) * lat.side + y; };
    auto add_candidates = [&](int x, int y) {
        for (auto [dx, dy] : lat.offsets) {
            int qx = x + dx, qy = y + dy;
            if (!lat.inside(qx, qy) || lat.at(qx, qy) >= 0 || cand_pos[cell(qx, qy)] >= 0) continue;
            cand_pos[cell(qx, qy)] = static_cast<int>(cand.size());
            cand.emplace_back(qx, qy);
        }
    };
    auto remove_candidate = [&](int x, int y) {
        int k = cand_pos[cell(x, y)];
        if (k < 0) return;
        auto last = cand.back();
        cand[k] = last;
        cand_pos[cell(last.first, last.second)] = k;
        cand.pop_back();
        cand_pos[cell(x, y)] = -1;
    };
    auto place = [&](int x, int y) {
        lat.at(x, y) = static_cast<int>(pts.size());
        pts.emplace_back(x, y);
        remove_candidate(x, y);
        add_candidates(x, y);
    };
    place(static_cast<int>(uniform(lat.side)), static_cast<int>(uniform(lat.side)));
    while (pts.size() < n) {
        if (cand.empty()) throw GenerationError(1, "lattice too small for a connected placement");
        auto q = cand[uniform(cand.size())];
        place(q.first, q.second);
    }

    // Metropolis moves preserving connectivity.
    std::vector<std::vector<NodeId>> adj(n);
    auto neighbours_of = [&](int x, int y, int skip) {
        std::vector<NodeId> out;
        for (auto [dx, dy] : lat.offsets) {
            int qx = x + dx, qy = y + dy;
            if (!lat.inside(qx, qy)) continue;
            int k = lat.at(qx, qy);
            if (k >= 0 && k != skip) out.push_back(static_cast<NodeId>(k));
        }
        return out;
    };
    for (NodeId i = 0; i < n; ++i) adj[i] = neighbours_of(pts[i].first, pts[i].second, static_cast<int>(i));

    std::vector<int> mark(n, 0);
    int stamp = 0;
    std::vector<NodeId> stack;
    auto connected_without = [&](NodeId skip) {
        if (n <= 2) return true;
        ++stamp;
        NodeId start = skip == 0 ? 1 : 0;
        stack.assign(1, start);
        mark[start] = stamp;
        std::size_t seen = 1;
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            for (NodeId v : adj[u])
                if (v != skip && mark[v] != stamp) {
                    mark[v] = stamp;
                    ++seen;
                    stack.push_back(v);
                }
        }
        return seen == n - 1;
    };

    const std::size_t moves = static_cast<std::size_t>(p.sweeps) * n;
    for (std::size_t it = 0; it < moves && n >= 2; ++it) {
        NodeId i = static_cast<NodeId>(uniform(n));
        int qx = static_cast<int>(uniform(lat.side));
        int qy = static_cast<int>(uniform(lat.side));
        if (lat.at(qx, qy) >= 0) continue;
        auto nb = neighbours_of(qx, qy, static_cast<int>(i));
        if (nb.empty()) continue;
        if (!connected_without(i)) continue;
        for (NodeId j : adj[i]) std::erase(adj[j], i);
        lat.at(pts[i].first, pts[i].second) = -1;
        pts[i] = {qx, qy};
        lat.at(qx, qy) = static_cast<int>(i);
        for (NodeId j : nb) adj[j].push_back(i);
        adj[i] = std::move(nb);
    }

    GeometricGraph out;
    out.points = pts;
    out.graph = geometric_edges(pts, p.comm_range);
    out.attempts = 1;
    return out;
}

GeometricGraph rejection_sample(const GeometricParams& p) {
    const std::size_t cells = static_cast<std::size_t>(p.grid) * p.grid;
    for (int attempt = 1; attempt <= p.max_attempts; ++attempt) {
        std::seed_seq seq{static_cast<std::uint32_t>(p.seed), static_cast<std::uint32_t>(p.seed >> 32),
                          static_cast<std::uint32_t>(attempt)};
        std::mt19937_64 rng(seq);
        std::vector<std::size_t> picks;
        std::vector<char> used(cells, 0);
        while (picks.size() < p.n) {
            std::size_t c = std::uniform_int_distribution<std::size_t>(0, cells - 1)(rng);
            if (used[c]) continue;
            used[c] = 1;
            picks.push_back(c);
        }
        std::vector<std::pair<int, int>> pts;
        for (auto c : picks) pts.emplace_back(static_cast<int>(c / p.grid), static_cast<int>(c % p.grid));
        Graph g = geometric_edges(pts, p.comm_range);
        if (g.is_connected()) return {std::move(g), std::move(pts), attempt};
    }
    throw GenerationError(p.max_attempts, "no connected geometric sample");
}

}  // namespace

GeometricGraph random_geometric(const GeometricParams& params) {
    if (params.n == 0) throw std::invalid_argument("n must be positive");
    if (params.n > static_cast<std::size_t>(params.grid) * params.grid)
        throw std::invalid_argument("n exceeds grid capacity");
    if (params.sampler == GeometricSampler::rejection) return rejection_sample(params);
    return chain_sample(params);
}

}  // namespace netview
