#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "numring.hpp"  // for error types

namespace coxpander {

/// Finite simple undirected graph; adjacency lists sorted ascending.
struct Graph {
    std::vector<std::vector<uint32_t>> adj;
    std::vector<int64_t> annotation;  // optional: coset id / basepoint distance

    uint32_t size() const { return uint32_t(adj.size()); }
    size_t edge_count() const {
        size_t e = 0;
        for (const auto& a : adj) e += a.size();
        return e / 2;
    }
    bool has_edge(uint32_t u, uint32_t v) const {
        return std::binary_search(adj[u].begin(), adj[u].end(), v);
    }
    void add_vertex() { adj.emplace_back(); }
    // bulk edge insertion followed by finish()
    void add_edge_raw(uint32_t u, uint32_t v) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    void finish() {
        for (auto& a : adj) {
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
        }
    }
    static Graph empty(uint32_t n) {
        Graph g;
        g.adj.resize(n);
        return g;
    }
    static Graph complete(uint32_t n) {
        Graph g = empty(n);
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t j = i + 1; j < n; ++j) g.add_edge_raw(i, j);
        g.finish();
        return g;
    }
    static Graph cycle(uint32_t n) {
        Graph g = empty(n);
        for (uint32_t i = 0; i < n; ++i) g.add_edge_raw(i, (i + 1) % n);
        g.finish();
        return g;
    }
};

inline bool is_connected(const Graph& g) {
    if (g.size() == 0) return true;
    std::vector<bool> seen(g.size(), false);
    std::vector<uint32_t> stack = {0};
    seen[0] = true;
    size_t cnt = 1;
    while (!stack.empty()) {
        uint32_t v = stack.back();
        stack.pop_back();
        for (uint32_t u : g.adj[v])
            if (!seen[u]) {
                seen[u] = true;
                ++cnt;
                stack.push_back(u);
            }
    }
    return cnt == g.size();
}

inline std::vector<std::vector<uint32_t>> connected_components(const Graph& g) {
    std::vector<std::vector<uint32_t>> comps;
    std::vector<bool> seen(g.size(), false);
    for (uint32_t s = 0; s < g.size(); ++s) {
        if (seen[s]) continue;
        std::vector<uint32_t> comp = {s};
        seen[s] = true;
        for (size_t i = 0; i < comp.size(); ++i)
            for (uint32_t u : g.adj[comp[i]])
                if (!seen[u]) {
                    seen[u] = true;
                    comp.push_back(u);
                }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

/// true if bipartite (equivalently: no odd cycle).
inline bool is_bipartite(const Graph& g) {
    std::vector<int> color(g.size(), -1);
    for (uint32_t s = 0; s < g.size(); ++s) {
        if (color[s] != -1) continue;
        color[s] = 0;
        std::vector<uint32_t> stack = {s};
        while (!stack.empty()) {
            uint32_t v = stack.back();
            stack.pop_back();
            for (uint32_t u : g.adj[v]) {
                if (color[u] == -1) {
                    color[u] = color[v] ^ 1;
                    stack.push_back(u);
                } else if (color[u] == color[v])
                    return false;
            }
        }
    }
    return true;
}

/// Vertices adjacent to every vertex of the clique (the sphere around it).
inline std::vector<uint32_t> sphere_around(const Graph& g, const std::vector<uint32_t>& clique) {
    if (clique.empty()) {
        std::vector<uint32_t> all(g.size());
        for (uint32_t i = 0; i < g.size(); ++i) all[i] = i;
        return all;
    }
    std::vector<uint32_t> acc = g.adj[clique[0]];
    for (size_t i = 1; i < clique.size(); ++i) {
        std::vector<uint32_t> next;
        std::set_intersection(acc.begin(), acc.end(), g.adj[clique[i]].begin(),
                              g.adj[clique[i]].end(), std::back_inserter(next));
        acc = std::move(next);
    }
    std::vector<uint32_t> out;
    for (uint32_t v : acc)
        if (!std::binary_search(clique.begin(), clique.end(), v)) out.push_back(v);
    return out;
}

inline Graph induced_subgraph(const Graph& g, const std::vector<uint32_t>& verts) {
    std::map<uint32_t, uint32_t> idx;
    for (uint32_t i = 0; i < verts.size(); ++i) idx[verts[i]] = i;
    Graph out = Graph::empty(uint32_t(verts.size()));
    for (uint32_t i = 0; i < verts.size(); ++i)
        for (uint32_t u : g.adj[verts[i]]) {
            auto it = idx.find(u);
            if (it != idx.end() && it->second > i) out.add_edge_raw(i, it->second);
        }
    out.finish();
    return out;
}

inline std::vector<int> bfs_distances(const Graph& g, uint32_t src) {
    std::vector<int> dist(g.size(), -1);
    dist[src] = 0;
    std::vector<uint32_t> q = {src};
    for (size_t i = 0; i < q.size(); ++i)
        for (uint32_t u : g.adj[q[i]])
            if (dist[u] < 0) {
                dist[u] = dist[q[i]] + 1;
                q.push_back(u);
            }
    return dist;
}

inline size_t ball_size(const Graph& g, uint32_t src, int radius) {
    auto d = bfs_distances(g, src);
    size_t cnt = 0;
    for (int x : d)
        if (x >= 0 && x <= radius) ++cnt;
    return cnt;
}

// ---------------------------------------------------------------- file formats

/// Sorted edge list "u v" per line; optional "# n N" records the vertex count.
inline std::string graph_to_edge_list(const Graph& g) {
    std::ostringstream out;
    out << "# n " << g.size() << "\n";
    for (uint32_t v = 0; v < g.size(); ++v)
        for (uint32_t u : g.adj[v])
            if (u > v) out << v << " " << u << "\n";
    return out.str();
}

inline Graph graph_from_edge_list(const std::string& text) {
    Graph g;
    uint32_t declared = 0;
    std::istringstream in(text);
    std::string line;
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    uint32_t maxv = 0;
    bool any = false;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string a, b;
        if (!(ls >> a)) continue;
        if (a == "#") {
            std::string key;
            if (ls >> key >> declared && key == "n") continue;
            continue;
        }
        if (!(ls >> b)) throw ParseError("edge list: malformed line '" + line + "'");
        uint32_t u = uint32_t(std::stoul(a)), v = uint32_t(std::stoul(b));
        if (u == v) throw ParseError("edge list: loop not allowed");
        edges.emplace_back(u, v);
        maxv = std::max({maxv, u, v});
        any = true;
    }
    uint32_t n = std::max(declared, any ? maxv + 1 : 0u);
    g.adj.resize(n);
    for (auto [u, v] : edges) g.add_edge_raw(u, v);
    g.finish();
    return g;
}

inline std::string graph_to_dot(const Graph& g, const std::string& name = "G") {
    std::ostringstream out;
    out << "graph " << name << " {\n";
    for (uint32_t v = 0; v < g.size(); ++v)
        for (uint32_t u : g.adj[v])
            if (u > v) out << "  " << v << " -- " << u << ";\n";
    out << "}\n";
    return out.str();
}

// ---------------------------------------------------------------- isomorphism

namespace detail {

inline std::vector<uint64_t> refine_colors(const Graph& g) {
    std::vector<uint64_t> color(g.size());
    for (uint32_t v = 0; v < g.size(); ++v) color[v] = g.adj[v].size();
    for (int round = 0; round < 8; ++round) {
        std::map<std::pair<uint64_t, std::vector<uint64_t>>, uint64_t> code;
        std::vector<uint64_t> next(g.size());
        for (uint32_t v = 0; v < g.size(); ++v) {
            std::vector<uint64_t> nbr;
            for (uint32_t u : g.adj[v]) nbr.push_back(color[u]);
            std::sort(nbr.begin(), nbr.end());
            auto key = std::make_pair(color[v], std::move(nbr));
            auto it = code.find(key);
            if (it == code.end()) it = code.emplace(std::move(key), code.size()).first;
            next[v] = it->second;
        }
        if (next == color) break;
        color = std::move(next);
    }
    return color;
}

inline bool iso_extend(const Graph& a, const Graph& b, const std::vector<uint64_t>& ca,
                       const std::vector<uint64_t>& cb, std::vector<int>& map_ab,
                       std::vector<int>& map_ba, uint32_t depth,
                       const std::vector<uint32_t>& order, uint64_t& budget) {
    if (depth == a.size()) return true;
    if (budget-- == 0) throw DomainError("isomorphism search budget exhausted");
    const uint32_t v = order[depth];
    for (uint32_t w = 0; w < b.size(); ++w) {
        if (map_ba[w] >= 0 || cb[w] != ca[v]) continue;
        bool ok = true;
        for (uint32_t u : a.adj[v]) {
            if (map_ab[u] >= 0 && !b.has_edge(w, uint32_t(map_ab[u]))) {
                ok = false;
                break;
            }
        }
        if (ok)
            for (uint32_t x : b.adj[w])
                if (map_ba[x] >= 0 && !a.has_edge(v, uint32_t(map_ba[x]))) {
                    ok = false;
                    break;
                }
        if (!ok) continue;
        map_ab[v] = int(w);
        map_ba[w] = int(v);
        if (iso_extend(a, b, ca, cb, map_ab, map_ba, depth + 1, order, budget)) return true;
        map_ab[v] = -1;
        map_ba[w] = -1;
    }
    return false;
}

}  // namespace detail

/// Exact isomorphism test (refinement-guided backtracking). Intended for the
/// small, highly symmetric graphs compared in this project.
inline bool isomorphic(const Graph& a, const Graph& b, uint64_t budget = 50'000'000) {
    if (a.size() != b.size() || a.edge_count() != b.edge_count()) return false;
    auto ca = detail::refine_colors(a);
    auto cb = detail::refine_colors(b);
    {
        auto sa = ca, sb = cb;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return false;
    }
    // order: BFS from vertex 0 keeps the partial map connected
    std::vector<uint32_t> order;
    std::vector<bool> seen(a.size(), false);
    for (uint32_t s = 0; s < a.size(); ++s) {
        if (seen[s]) continue;
        seen[s] = true;
        order.push_back(s);
        for (size_t i = order.size() - 1; i < order.size(); ++i)
            for (uint32_t u : a.adj[order[i]])
                if (!seen[u]) {
                    seen[u] = true;
                    order.push_back(u);
                }
    }
    std::vector<int> map_ab(a.size(), -1), map_ba(b.size(), -1);
    return detail::iso_extend(a, b, ca, cb, map_ab, map_ba, 0, order, budget);
}

// ---------------------------------------------------------------- regularity

enum class RegularityStop {
    ZeroDegree,       // a_i = 0 reached consistently (included in the vector)
    IrregularSphere,  // spheres at the next level disagree; vector ends without 0
    MaxLevel
};

struct RegularityReport {
    std::vector<uint64_t> degrees;
    std::vector<bool> connected;
    RegularityStop stop = RegularityStop::ZeroDegree;
    int witness_level = -1;                // level of the offending clique, if any
    std::vector<uint32_t> witness_clique;  // clique whose sphere is irregular

    int level() const { return int(degrees.size()); }
};

namespace detail {

/// Common degree of an induced subgraph, or -1 if irregular.
inline int64_t regular_degree(const Graph& g, const std::vector<uint32_t>& verts) {
    if (verts.empty()) return 0;
    std::vector<uint32_t> sorted = verts;
    std::sort(sorted.begin(), sorted.end());
    int64_t deg = -1;
    for (uint32_t v : sorted) {
        int64_t d = 0;
        for (uint32_t u : g.adj[v])
            if (std::binary_search(sorted.begin(), sorted.end(), u)) ++d;
        if (deg < 0)
            deg = d;
        else if (deg != d)
            return -1;
    }
    return deg;
}

inline bool sphere_connected(const Graph& g, const std::vector<uint32_t>& verts) {
    if (verts.empty()) return false;
    return is_connected(induced_subgraph(g, verts));
}

/// Enumerate all cliques of a given size (ascending vertex order).
inline void for_each_clique(const Graph& g, int size,
                            const std::function<bool(const std::vector<uint32_t>&)>& fn) {
    std::vector<uint32_t> clique;
    std::function<bool(uint32_t)> rec = [&](uint32_t start) -> bool {
        if (int(clique.size()) == size) return fn(clique);
        for (uint32_t v = start; v < g.size(); ++v) {
            bool ok = true;
            for (uint32_t u : clique)
                if (!g.has_edge(u, v)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            clique.push_back(v);
            if (!rec(v + 1)) return false;
            clique.pop_back();
        }
        return true;
    };
    rec(0);
}

}  // namespace detail

/// Regularity degrees a_0, a_1, ... with per-level connectivity flags.
///
/// assume_transitive: expand a single anchored representative clique chain;
/// the representative's whole sphere is still verified for regularity and
/// connectivity at each level. Otherwise every clique of every level is checked.
inline RegularityReport regularity_vector(const Graph& g, int max_level = 16,
                                          bool assume_transitive = true, uint32_t anchor = 0) {
    RegularityReport rep;
    if (g.size() == 0) {
        rep.stop = RegularityStop::ZeroDegree;
        return rep;
    }
    if (assume_transitive) {
        std::vector<uint32_t> clique;  // grows along lexicographically least sphere vertices
        for (int lev = 0; lev < max_level; ++lev) {
            std::vector<uint32_t> sph = sphere_around(g, clique);
            // the level-lev sphere: Sph(empty) = whole graph
            int64_t d = detail::regular_degree(g, sph);
            if (d < 0) {
                rep.stop = RegularityStop::IrregularSphere;
                rep.witness_level = lev;
                rep.witness_clique = clique;
                return rep;
            }
            rep.degrees.push_back(uint64_t(d));
            rep.connected.push_back(detail::sphere_connected(g, sph));
            if (d == 0) {
                rep.stop = RegularityStop::ZeroDegree;
                return rep;
            }
            uint32_t next = (lev == 0) ? anchor : sph.front();
            if (lev == 0 && std::find(sph.begin(), sph.end(), anchor) == sph.end()) next = sph.front();
            clique.push_back(next);
            std::sort(clique.begin(), clique.end());
        }
        rep.stop = RegularityStop::MaxLevel;
        return rep;
    }
    // exhaustive mode
    for (int lev = 0; lev < max_level; ++lev) {
        int64_t common = -2;
        bool irregular = false;
        std::vector<uint32_t> witness;
        bool all_connected = true;
        bool any = false;
        detail::for_each_clique(g, lev, [&](const std::vector<uint32_t>& c) {
            any = true;
            std::vector<uint32_t> sph = sphere_around(g, c);
            int64_t d = detail::regular_degree(g, sph);
            if (d < 0 || (common != -2 && d != common)) {
                irregular = true;
                witness = c;
                return false;
            }
            common = d;
            if (!detail::sphere_connected(g, sph)) all_connected = false;
            return true;
        });
        if (!any || common == -2) {
            // no cliques of size lev+1 at all: a_lev = 0 by convention
            rep.degrees.push_back(0);
            rep.connected.push_back(false);
            rep.stop = RegularityStop::ZeroDegree;
            return rep;
        }
        if (irregular) {
            rep.stop = RegularityStop::IrregularSphere;
            rep.witness_level = lev;
            rep.witness_clique = witness;
            return rep;
        }
        rep.degrees.push_back(uint64_t(common));
        rep.connected.push_back(all_connected);
        if (common == 0) {
            rep.stop = RegularityStop::ZeroDegree;
            return rep;
        }
    }
    rep.stop = RegularityStop::MaxLevel;
    return rep;
}

/// Graph on the i-cells of the clique complex; adjacent iff contained in a
/// common (i+1)-cell.
inline Graph iwalk_graph(const Graph& g, int i) {
    if (i < 0) throw DomainError("iwalk_graph: i must be >= 0");
    if (i == 0) return g;
    std::map<std::vector<uint32_t>, uint32_t> cells;
    detail::for_each_clique(g, i + 1, [&](const std::vector<uint32_t>& c) {
        cells.emplace(c, uint32_t(cells.size()));
        return true;
    });
    Graph out = Graph::empty(uint32_t(cells.size()));
    detail::for_each_clique(g, i + 2, [&](const std::vector<uint32_t>& c) {
        std::vector<uint32_t> ids;
        for (size_t drop = 0; drop < c.size(); ++drop) {
            std::vector<uint32_t> sub;
            for (size_t t = 0; t < c.size(); ++t)
                if (t != drop) sub.push_back(c[t]);
            ids.push_back(cells.at(sub));
        }
        for (size_t x = 0; x < ids.size(); ++x)
            for (size_t y = x + 1; y < ids.size(); ++y) out.add_edge_raw(ids[x], ids[y]);
        return true;
    });
    out.finish();
    return out;
}

}  // namespace coxpander
