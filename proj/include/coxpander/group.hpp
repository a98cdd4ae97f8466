#pragma once

#include <deque>
#include <unordered_map>

#include "diagram.hpp"
#include "graph.hpp"

namespace coxpander {

/// Square matrix of ring elements, row-major.
struct RingMatrix {
    int n = 0;
    std::vector<RingElem> a;

    const RingElem& at(int i, int j) const { return a[size_t(i) * n + j]; }
    RingElem& at(int i, int j) { return a[size_t(i) * n + j]; }

    static RingMatrix identity(const Ring& R, int n) {
        RingMatrix m;
        m.n = n;
        m.a.assign(size_t(n) * n, ring_zero(R));
        for (int i = 0; i < n; ++i) m.at(i, i) = ring_from_int(R, 1);
        return m;
    }
};

inline RingMatrix ring_matmul(const Ring& R, const RingMatrix& A, const RingMatrix& B) {
    RingMatrix C;
    C.n = A.n;
    C.a.assign(size_t(A.n) * A.n, ring_zero(R));
    for (int i = 0; i < A.n; ++i)
        for (int k = 0; k < A.n; ++k) {
            if (ring_is_zero(A.at(i, k))) continue;
            for (int j = 0; j < A.n; ++j) {
                if (ring_is_zero(B.at(k, j))) continue;
                C.at(i, j) = ring_add(C.at(i, j), ring_mul(R, A.at(i, k), B.at(k, j)));
            }
        }
    return C;
}

inline std::vector<RingElem> ring_matvec(const Ring& R, const RingMatrix& A,
                                         const std::vector<RingElem>& v) {
    std::vector<RingElem> out(A.n, ring_zero(R));
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j) {
            if (ring_is_zero(A.at(i, j)) || ring_is_zero(v[j])) continue;
            out[i] = ring_add(out[i], ring_mul(R, A.at(i, j), v[j]));
        }
    return out;
}

inline RingMatrix ring_transpose(const RingMatrix& A) {
    RingMatrix T;
    T.n = A.n;
    T.a.resize(A.a.size());
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

inline bool ring_mat_equal(const RingMatrix& A, const RingMatrix& B) { return A.a == B.a; }

/// Geometric representation: s(v) = v - 2B(v, e_s) e_s, i.e. the matrix is the
/// identity except row s, where M[s][t] = delta_st - (2B)_{ts}.
inline std::vector<RingMatrix> generator_matrices(const GramMatrix& G) {
    std::vector<RingMatrix> out;
    for (int s = 0; s < G.n; ++s) {
        RingMatrix M = RingMatrix::identity(G.ring, G.n);
        for (int t = 0; t < G.n; ++t) M.at(s, t) = ring_sub(M.at(s, t), G.at(t, s));
        out.push_back(std::move(M));
    }
    return out;
}

/// Contragredient action on dual coordinates (used for Wythoff base points):
/// the transpose of the geometric generator.
inline std::vector<RingMatrix> dual_generator_matrices(const GramMatrix& G) {
    std::vector<RingMatrix> out;
    for (const auto& M : generator_matrices(G)) out.push_back(ring_transpose(M));
    return out;
}

// ---------------------------------------------------------------- Todd-Coxeter

/// Complete coset table for a subgroup generated by a subset of S
/// (plus optional extra relator words). Generators act as involutions.
struct CosetTable {
    int ngens = 0;
    uint32_t index = 0;
    std::vector<uint32_t> table;  // index * ngens, action by right multiplication

    uint32_t act(uint32_t coset, int gen) const { return table[size_t(coset) * ngens + gen]; }
};

namespace detail {

constexpr uint32_t kUndef = 0xffffffffu;

struct TCState {
    int ngens;
    uint64_t cap;
    std::vector<uint32_t> tab;  // rows of ngens
    std::vector<uint32_t> rep;  // union-find
    std::deque<std::pair<uint32_t, uint32_t>> coincidences;
    uint32_t live = 0;

    uint32_t find(uint32_t c) {
        while (rep[c] != c) {
            rep[c] = rep[rep[c]];
            c = rep[c];
        }
        return c;
    }
    uint32_t entry(uint32_t c, int g) const { return tab[size_t(c) * ngens + g]; }
    void set_entry(uint32_t c, int g, uint32_t d) { tab[size_t(c) * ngens + g] = d; }

    uint32_t new_coset() {
        if (tab.size() / ngens >= cap)
            throw CapExceeded("todd_coxeter: coset cap exceeded");
        uint32_t c = uint32_t(tab.size() / ngens);
        tab.resize(tab.size() + ngens, kUndef);
        rep.push_back(c);
        ++live;
        return c;
    }

    // define or deduce: c . g = d (and d . g = c, generators being involutions)
    void deduce(uint32_t c, int g, uint32_t d) {
        c = find(c);
        d = find(d);
        uint32_t cg = entry(c, g);
        if (cg != kUndef) {
            cg = find(cg);
            if (cg != d) coincidences.push_back({cg, d});
        } else
            set_entry(c, g, d);
        uint32_t dg = entry(d, g);
        if (dg != kUndef) {
            dg = find(dg);
            if (dg != c) coincidences.push_back({dg, c});
        } else
            set_entry(d, g, c);
    }

    void process_coincidences() {
        while (!coincidences.empty()) {
            auto [a, b] = coincidences.front();
            coincidences.pop_front();
            a = find(a);
            b = find(b);
            if (a == b) continue;
            if (a > b) std::swap(a, b);  // keep the smaller representative
            rep[b] = a;
            --live;
            for (int g = 0; g < ngens; ++g) {
                uint32_t bg = entry(b, g);
                if (bg == kUndef) continue;
                deduce(a, g, find(bg));
            }
        }
    }

    // trace relator word from coset c, defining cosets as needed (HLT style)
    void scan_and_fill(uint32_t c, const std::vector<int>& word) {
        uint32_t f = c;
        size_t fi = 0;
        // forward scan over defined entries
        while (fi < word.size()) {
            uint32_t next = entry(f, word[fi]);
            if (next == kUndef) break;
            f = find(next);
            ++fi;
        }
        if (fi == word.size()) {
            if (f != c) coincidences.push_back({f, c});
            return;
        }
        // backward scan
        uint32_t b = c;
        size_t bi = word.size();
        while (bi > fi) {
            uint32_t prev = entry(b, word[bi - 1]);
            if (prev == kUndef) break;
            b = find(prev);
            --bi;
        }
        if (bi == fi + 1) {
            deduce(f, word[fi], b);
            return;
        }
        if (bi == fi) {
            if (f != b) coincidences.push_back({f, b});
            return;
        }
        // fill the gap with new cosets, closing the final entry as a deduction
        while (bi > fi + 1) {
            uint32_t n = new_coset();
            deduce(f, word[fi], n);
            f = find(n);
            ++fi;
        }
        deduce(f, word[fi], b);
    }
};

}  // namespace detail

/// Relator words of a Coxeter matrix: (s t)^{m_st} for finite labels.
inline std::vector<std::vector<int>> coxeter_relators(const CoxeterMatrix& m) {
    std::vector<std::vector<int>> rels;
    for (int s = 0; s < m.n; ++s)
        for (int t = s + 1; t < m.n; ++t) {
            const int lab = m.at(s, t);
            if (lab == kInfLabel) continue;
            std::vector<int> w;
            for (int k = 0; k < lab; ++k) {
                w.push_back(s);
                w.push_back(t);
            }
            rels.push_back(std::move(w));
        }
    return rels;
}

/// HLT coset enumeration over the parabolic generated by `subgroup_gens`,
/// with optional extra relator words. Deterministic; throws CapExceeded if the
/// enumeration does not close within `cap` allocated cosets.
inline CosetTable todd_coxeter(const CoxeterMatrix& m, const std::vector<int>& subgroup_gens,
                               uint64_t cap = 2'000'000,
                               const std::vector<std::vector<int>>& extra_relators = {}) {
    detail::TCState st;
    st.ngens = m.n;
    st.cap = cap;
    st.new_coset();  // coset 0 = subgroup
    for (int g : subgroup_gens) st.deduce(0, g, 0);
    st.process_coincidences();

    std::vector<std::vector<int>> rels = coxeter_relators(m);
    for (const auto& w : extra_relators) rels.push_back(w);
    // involution relators ensure every entry gets defined
    for (int s = 0; s < m.n; ++s) rels.push_back({s, s});

    for (uint32_t c = 0; c * size_t(st.ngens) < st.tab.size(); ++c) {
        if (st.find(c) != c) continue;
        for (const auto& w : rels) {
            st.scan_and_fill(st.find(c), w);
            st.process_coincidences();
            if (st.find(c) != c) break;  // this coset died; move on
        }
    }

    // compact live cosets in BFS discovery order from coset 0 (deterministic)
    CosetTable out;
    out.ngens = st.ngens;
    std::unordered_map<uint32_t, uint32_t> newid;
    std::vector<uint32_t> order;
    uint32_t root = st.find(0);
    newid[root] = 0;
    order.push_back(root);
    for (size_t i = 0; i < order.size(); ++i) {
        for (int g = 0; g < st.ngens; ++g) {
            uint32_t d = st.entry(order[i], g);
            if (d == detail::kUndef) throw DomainError("todd_coxeter: incomplete table");
            d = st.find(d);
            if (!newid.count(d)) {
                newid[d] = uint32_t(order.size());
                order.push_back(d);
            }
        }
    }
    out.index = uint32_t(order.size());
    out.table.resize(size_t(out.index) * out.ngens);
    for (uint32_t c = 0; c < out.index; ++c)
        for (int g = 0; g < st.ngens; ++g)
            out.table[size_t(c) * out.ngens + g] = newid.at(st.find(st.entry(order[c], g)));
    return out;
}

/// |W| for a definite diagram, as the product of parabolic indices along the
/// chain that drops the last node at each step.
inline Int group_order(const AdornedDiagram& d, uint64_t cap = 2'000'000) {
    if (classify_signature(d).kind != SignatureKind::Definite)
        throw DomainError("group_order: diagram is not definite");
    Int order = 1;
    AdornedDiagram cur = d;
    while (cur.size() > 0) {
        std::vector<int> sub;
        for (int i = 0; i + 1 < cur.size(); ++i) sub.push_back(i);
        CosetTable t = todd_coxeter(cur.mat, sub, cap);
        order *= t.index;
        cur = subdiagram(cur, sub);
    }
    return order;
}

// ---------------------------------------------------------------- root orbits

namespace detail {

inline std::string serialize_ring_vector(const std::vector<RingElem>& v) {
    std::ostringstream out;
    for (const auto& e : v) {
        for (const auto& c : e) out << c << ",";
        out << ";";
    }
    return out.str();
}

}  // namespace detail

/// Longest-word length D of a finite Coxeter group = number of reflections
/// = half the size of the root system (orbit of the simple roots).
inline uint64_t longest_word_length(const AdornedDiagram& d, uint64_t cap = 10'000'000) {
    if (classify_signature(d).kind != SignatureKind::Definite)
        throw DomainError("longest_word_length: diagram is not definite");
    const GramMatrix G = gram_matrix(d);
    const Ring& R = G.ring;
    auto gens = generator_matrices(G);
    std::unordered_map<std::string, uint32_t> seen;
    std::deque<std::vector<RingElem>> queue;
    for (int s = 0; s < G.n; ++s) {
        std::vector<RingElem> e(G.n, ring_zero(R));
        e[s] = ring_from_int(R, 1);
        auto key = detail::serialize_ring_vector(e);
        if (!seen.count(key)) {
            seen.emplace(std::move(key), uint32_t(seen.size()));
            queue.push_back(std::move(e));
        }
    }
    while (!queue.empty()) {
        auto v = std::move(queue.front());
        queue.pop_front();
        for (const auto& M : gens) {
            auto w = ring_matvec(R, M, v);
            auto key = detail::serialize_ring_vector(w);
            if (!seen.count(key)) {
                if (seen.size() >= cap) throw CapExceeded("root orbit cap exceeded");
                seen.emplace(std::move(key), uint32_t(seen.size()));
                queue.push_back(std::move(w));
            }
        }
    }
    return seen.size() / 2;
}

}  // namespace coxpander
