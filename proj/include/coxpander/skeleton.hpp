#pragma once

#include <cstring>
#include <deque>
#include <unordered_map>

#include "group.hpp"

namespace coxpander {

namespace detail {

// Exact-vector context: dual action over Z[theta].
struct ExactCtx {
    Ring R;
    int n = 0;
    std::vector<RingMatrix> gens;  // dual generators, all of S
    std::vector<int> rings;

    using Vec = std::vector<RingElem>;
    using Mat = RingMatrix;

    Vec basepoint() const {
        Vec x(n, ring_zero(R));
        for (int r : rings) x[r] = ring_from_int(R, 1);
        return x;
    }
    Mat identity() const { return RingMatrix::identity(R, n); }
    Vec apply(const Mat& M, const Vec& v) const { return ring_matvec(R, M, v); }
    Mat compose(const Mat& A, const Mat& B) const { return ring_matmul(R, A, B); }
    std::string key(const Vec& v) const { return serialize_ring_vector(v); }
};

// Fast path for degree-1 rings (all Gram entries are plain integers).
struct FastCtx {
    int n;
    std::vector<std::vector<int64_t>> gens;  // row-major n*n
    std::vector<int> rings;

    using Vec = std::vector<int64_t>;
    using Mat = std::vector<int64_t>;

    static constexpr int64_t kLimit = int64_t(1) << 56;

    Vec basepoint() const {
        Vec x(n, 0);
        for (int r : rings) x[r] = 1;
        return x;
    }
    Mat identity() const {
        Mat m(size_t(n) * n, 0);
        for (int i = 0; i < n; ++i) m[size_t(i) * n + i] = 1;
        return m;
    }
    Vec apply(const Mat& M, const Vec& v) const {
        Vec out(n, 0);
        for (int i = 0; i < n; ++i) {
            int64_t acc = 0;
            const int64_t* row = M.data() + size_t(i) * n;
            for (int j = 0; j < n; ++j) acc += row[j] * v[j];
            if (acc > kLimit || acc < -kLimit) throw DomainError("int64 coordinate overflow");
            out[i] = acc;
        }
        return out;
    }
    Mat compose(const Mat& A, const Mat& B) const {
        Mat C(size_t(n) * n, 0);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const int64_t a = A[size_t(i) * n + k];
                if (!a) continue;
                for (int j = 0; j < n; ++j) {
                    int64_t& c = C[size_t(i) * n + j];
                    c += a * B[size_t(k) * n + j];
                    if (c > kLimit || c < -kLimit) throw DomainError("int64 overflow");
                }
            }
        return C;
    }
    std::string key(const Vec& v) const {
        return std::string(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(int64_t));
    }
};

inline ExactCtx make_exact_ctx(const GramMatrix& G, const std::vector<int>& rings) {
    ExactCtx c;
    c.R = G.ring;
    c.n = G.n;
    c.gens = dual_generator_matrices(G);
    c.rings = rings;
    return c;
}

inline bool fast_ctx_possible(const GramMatrix& G) { return G.ring.degree == 1; }

inline FastCtx make_fast_ctx(const GramMatrix& G, const std::vector<int>& rings) {
    FastCtx c;
    c.n = G.n;
    c.rings = rings;
    for (const auto& M : dual_generator_matrices(G)) {
        std::vector<int64_t> flat(size_t(G.n) * G.n);
        for (int i = 0; i < G.n; ++i)
            for (int j = 0; j < G.n; ++j) flat[size_t(i) * G.n + j] = M.at(i, j)[0].convert_to<int64_t>();
        c.gens.push_back(std::move(flat));
    }
    return c;
}

/// Orbit of s0*x0 under the unringed parabolic, with representative matrices.
template <class Ctx>
std::vector<std::pair<typename Ctx::Vec, typename Ctx::Mat>> base_sphere(const Ctx& ctx,
                                                                          uint64_t cap) {
    const auto x0 = ctx.basepoint();
    std::unordered_map<std::string, uint32_t> seen;
    std::vector<std::pair<typename Ctx::Vec, typename Ctx::Mat>> out;
    std::deque<uint32_t> queue;
    for (int s : ctx.rings) {
        auto v = ctx.apply(ctx.gens[s], x0);
        auto k = ctx.key(v);
        if (!seen.count(k)) {
            seen.emplace(std::move(k), uint32_t(out.size()));
            out.push_back({v, ctx.gens[s]});
            queue.push_back(uint32_t(out.size() - 1));
        }
    }
    std::vector<bool> ringed(ctx.n, false);
    for (int r : ctx.rings) ringed[r] = true;
    while (!queue.empty()) {
        uint32_t i = queue.front();
        queue.pop_front();
        for (int s = 0; s < ctx.n; ++s) {
            if (ringed[s]) continue;
            auto v = ctx.apply(ctx.gens[s], out[i].first);
            auto k = ctx.key(v);
            if (!seen.count(k)) {
                if (out.size() >= cap) throw CapExceeded("base sphere cap exceeded");
                seen.emplace(std::move(k), uint32_t(out.size()));
                out.push_back({std::move(v), ctx.compose(ctx.gens[s], out[i].second)});
                queue.push_back(uint32_t(out.size() - 1));
            }
        }
    }
    return out;
}

/// Orbit of the base point with edges via translated base spheres.
/// radius < 0: full closure (finite skeleton); else BFS ball of that radius.
template <class Ctx>
Graph orbit_graph(const Ctx& ctx, int radius, uint64_t cap) {
    auto sphere = base_sphere(ctx, cap);
    const auto x0 = ctx.basepoint();
    Graph g;
    std::unordered_map<std::string, uint32_t> ids;
    ids.emplace(ctx.key(x0), 0);
    g.add_vertex();
    g.annotation.push_back(0);
    std::vector<typename Ctx::Mat> reps = {ctx.identity()};
    std::deque<uint32_t> queue = {0};
    while (!queue.empty()) {
        uint32_t v = queue.front();
        queue.pop_front();
        const int64_t dist = g.annotation[v];
        if (radius >= 0 && dist >= radius) continue;
        for (const auto& [bvec, bmat] : sphere) {
            auto u = ctx.apply(reps[v], bvec);
            auto k = ctx.key(u);
            auto it = ids.find(k);
            uint32_t ui;
            if (it == ids.end()) {
                if (g.size() >= cap) throw CapExceeded("orbit cap exceeded");
                ui = g.size();
                ids.emplace(std::move(k), ui);
                g.add_vertex();
                g.annotation.push_back(dist + 1);
                reps.push_back(ctx.compose(reps[v], bmat));
                queue.push_back(ui);
            } else
                ui = it->second;
            if (ui != v) g.add_edge_raw(v, ui);
        }
    }
    g.finish();
    return g;
}

/// Base ball of radius 1 as an induced graph: centre (vertex 0) + its sphere,
/// with all edges among sphere vertices, each found through that vertex's own
/// representative. Suitable for anchored regularity measurement at any scale.
template <class Ctx>
Graph ball1_induced(const Ctx& ctx, uint64_t cap) {
    auto sphere = base_sphere(ctx, cap);
    Graph g = Graph::empty(uint32_t(sphere.size()) + 1);
    std::unordered_map<std::string, uint32_t> ids;
    for (uint32_t i = 0; i < sphere.size(); ++i) {
        ids.emplace(ctx.key(sphere[i].first), i + 1);
        g.add_edge_raw(0, i + 1);
    }
    for (uint32_t i = 0; i < sphere.size(); ++i) {
        for (const auto& [bvec, bmat] : sphere) {
            auto u = ctx.apply(sphere[i].second, bvec);
            auto it = ids.find(ctx.key(u));
            if (it != ids.end() && it->second > i + 1) g.add_edge_raw(i + 1, it->second);
        }
    }
    g.finish();
    return g;
}

}  // namespace detail

/// Link parabolic of an adorned diagram: the unringed nodes.
inline std::vector<int> unringed_nodes(const AdornedDiagram& d) {
    std::vector<int> out;
    for (int v = 0; v < d.size(); ++v)
        if (!d.ringed(v)) out.push_back(v);
    return out;
}

inline bool vertex_link_finite(const AdornedDiagram& d) {
    auto sub = subdiagram(d, unringed_nodes(d));
    if (sub.size() == 0) return true;
    return classify_signature(sub).kind == SignatureKind::Definite;
}

namespace detail {

template <class Fn>
auto with_ctx(const AdornedDiagram& d, Fn&& fn) {
    if (d.rings.empty()) throw DomainError("Wythoff construction needs a nonempty ring set");
    GramMatrix G = gram_matrix(d);
    if (fast_ctx_possible(G)) {
        FastCtx ctx = make_fast_ctx(G, d.rings);
        return fn(ctx);
    }
    ExactCtx ctx = make_exact_ctx(G, d.rings);
    return fn(ctx);
}

}  // namespace detail

/// 1-skeleton of the Wythoffian polytope of a definite adorned diagram.
/// Vertices are identified by the exact image of the base point; vertex 0 is
/// the base point itself.
inline Graph finite_skeleton(const AdornedDiagram& d, uint64_t cap = 5'000'000) {
    if (classify_signature(d).kind != SignatureKind::Definite)
        throw DomainError("finite_skeleton: diagram is not definite");
    return detail::with_ctx(d, [&](auto& ctx) { return detail::orbit_graph(ctx, -1, cap); });
}

/// Metric ball of the given radius around the base vertex of an infinite
/// Wythoffian skeleton. Vertex annotations carry base-point distance; every
/// vertex at distance < radius has its full neighbourhood present.
inline Graph indefinite_ball(const AdornedDiagram& d, int radius, uint64_t cap = 5'000'000) {
    if (radius < 0) throw DomainError("indefinite_ball: radius must be >= 0");
    if (!vertex_link_finite(d))
        throw DomainError("indefinite_ball: infinite vertex link (parabolic not definite)");
    return detail::with_ctx(d, [&](auto& ctx) { return detail::orbit_graph(ctx, radius, cap); });
}

/// Radius-1 induced ball around the base vertex (centre + sphere + edges among
/// the sphere). The anchored regularity vector of the honeycomb is measured here.
inline Graph base_ball1(const AdornedDiagram& d, uint64_t cap = 5'000'000) {
    if (!vertex_link_finite(d))
        throw DomainError("base_ball1: infinite vertex link (parabolic not definite)");
    return detail::with_ctx(d, [&](auto& ctx) { return detail::ball1_induced(ctx, cap); });
}

/// Johnson graph J(n,k): k-subsets of an n-set, adjacent when the intersection
/// has k-1 elements.
inline Graph johnson_graph(int n, int k) {
    if (k <= 0 || k >= n) throw DomainError("johnson_graph: need 0 < k < n");
    std::vector<uint32_t> subsets;
    for (uint32_t mask = 0; mask < (1u << n); ++mask)
        if (__builtin_popcount(mask) == k) subsets.push_back(mask);
    std::unordered_map<uint32_t, uint32_t> idx;
    for (uint32_t i = 0; i < subsets.size(); ++i) idx[subsets[i]] = i;
    Graph g = Graph::empty(uint32_t(subsets.size()));
    for (uint32_t i = 0; i < subsets.size(); ++i)
        for (uint32_t j = i + 1; j < subsets.size(); ++j)
            if (__builtin_popcount(subsets[i] & subsets[j]) == k - 1) g.add_edge_raw(i, j);
    g.finish();
    return g;
}

}  // namespace coxpander
