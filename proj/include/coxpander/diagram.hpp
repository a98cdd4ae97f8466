#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "numring.hpp"

namespace coxpander {

/// Symmetric matrix of Coxeter labels; m_ss = 1, m_st >= 2 or kInfLabel off-diagonal.
struct CoxeterMatrix {
    int n = 0;
    std::vector<int> m;  // row-major n*n

    int at(int i, int j) const { return m[size_t(i) * n + j]; }
    void set(int i, int j, int v) {
        m[size_t(i) * n + j] = v;
        m[size_t(j) * n + i] = v;
    }
    static CoxeterMatrix trivial(int n) {
        CoxeterMatrix c;
        c.n = n;
        c.m.assign(size_t(n) * n, 2);
        for (int i = 0; i < n; ++i) c.m[size_t(i) * n + i] = 1;
        return c;
    }
};

struct AdornedDiagram {
    CoxeterMatrix mat;
    std::vector<std::string> names;  // node identifiers, input order
    std::vector<int> rings;          // sorted indices into names

    int size() const { return mat.n; }
    bool ringed(int v) const {
        return std::find(rings.begin(), rings.end(), v) != rings.end();
    }
};

// ---------------------------------------------------------------- parsing

namespace detail {

inline int parse_label(const std::string& tok) {
    if (tok == "inf" || tok == "infinity" || tok == "oo") return kInfLabel;
    try {
        size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size() || v < 1) throw ParseError("bad edge label '" + tok + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        throw ParseError("bad edge label '" + tok + "'");
    }
}

}  // namespace detail

/// Two source forms:
///   string [m1,m2,...] ring i[,j,...]     (path diagram)
///   lines of: node ID | edge ID ID LABEL | ring ID    ('#' comments)
inline AdornedDiagram parse_diagram(const std::string& text) {
    // tokenize line-wise, drop comments
    std::vector<std::vector<std::string>> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (!toks.empty()) lines.push_back(std::move(toks));
    }
    if (lines.empty()) throw ParseError("empty diagram source");

    AdornedDiagram d;
    if (lines[0][0] == "string") {
        // string [3,3,5] ring 0   — possibly spread over the first line only
        std::string rest;
        for (size_t i = 1; i < lines[0].size(); ++i) rest += lines[0][i];
        auto lb = rest.find('[');
        auto rb = rest.find(']');
        if (lb == std::string::npos || rb == std::string::npos || rb < lb)
            throw ParseError("string form: expected [m1,m2,...]");
        std::vector<int> labels;
        {
            std::string body = rest.substr(lb + 1, rb - lb - 1);
            std::string tok;
            std::istringstream bs(body);
            while (std::getline(bs, tok, ','))
                if (!tok.empty()) labels.push_back(detail::parse_label(tok));
        }
        auto ringkw = rest.find("ring", rb);
        if (ringkw == std::string::npos) throw ParseError("string form: missing ring clause");
        std::vector<int> rings;
        {
            std::string body = rest.substr(ringkw + 4);
            std::string tok;
            std::istringstream bs(body);
            while (std::getline(bs, tok, ','))
                if (!tok.empty()) rings.push_back(std::stoi(tok));
        }
        const int n = int(labels.size()) + 1;
        d.mat = CoxeterMatrix::trivial(n);
        for (int i = 0; i + 1 < n; ++i) {
            if (labels[i] != kInfLabel && labels[i] < 2)
                throw ParseError("off-diagonal label must be >= 2 or inf");
            d.mat.set(i, i + 1, labels[i]);
        }
        for (int i = 0; i < n; ++i) d.names.push_back("s" + std::to_string(i));
        for (int r : rings) {
            if (r < 0 || r >= n) throw ParseError("ring index out of range");
            d.rings.push_back(r);
        }
    } else {
        std::vector<std::string> names;
        std::map<std::string, int> index;
        std::vector<std::tuple<std::string, std::string, int>> edges;
        std::vector<std::string> rings;
        for (const auto& toks : lines) {
            if (toks[0] == "node" && toks.size() == 2) {
                if (index.count(toks[1])) throw ParseError("duplicate node " + toks[1]);
                index[toks[1]] = int(names.size());
                names.push_back(toks[1]);
            } else if (toks[0] == "edge" && toks.size() == 4) {
                edges.emplace_back(toks[1], toks[2], detail::parse_label(toks[3]));
            } else if (toks[0] == "ring" && toks.size() == 2) {
                rings.push_back(toks[1]);
            } else {
                throw ParseError("unrecognised line starting with '" + toks[0] + "'");
            }
        }
        const int n = int(names.size());
        if (n == 0) throw ParseError("no nodes declared");
        d.mat = CoxeterMatrix::trivial(n);
        d.names = names;
        for (const auto& [a, b, lab] : edges) {
            if (!index.count(a)) throw ParseError("edge references unknown node " + a);
            if (!index.count(b)) throw ParseError("edge references unknown node " + b);
            if (index[a] == index[b]) throw ParseError("edge endpoints must differ");
            if (lab != kInfLabel && lab < 2) throw ParseError("off-diagonal label must be >= 2 or inf");
            d.mat.set(index[a], index[b], lab);
        }
        for (const auto& r : rings) {
            if (!index.count(r)) throw ParseError("ring references unknown node " + r);
            d.rings.push_back(index[r]);
        }
    }
    std::sort(d.rings.begin(), d.rings.end());
    d.rings.erase(std::unique(d.rings.begin(), d.rings.end()), d.rings.end());
    return d;
}

/// Block form serialization; inverse of the block parser.
inline std::string format_diagram(const AdornedDiagram& d) {
    std::ostringstream out;
    for (const auto& nm : d.names) out << "node " << nm << "\n";
    for (int i = 0; i < d.size(); ++i)
        for (int j = i + 1; j < d.size(); ++j) {
            const int m = d.mat.at(i, j);
            if (m == 2) continue;
            out << "edge " << d.names[i] << " " << d.names[j] << " ";
            if (m == kInfLabel)
                out << "inf\n";
            else
                out << m << "\n";
        }
    for (int r : d.rings) out << "ring " << d.names[r] << "\n";
    return out.str();
}

// ---------------------------------------------------------------- structure

inline std::vector<std::vector<int>> diagram_components(const CoxeterMatrix& m) {
    std::vector<std::vector<int>> comps;
    std::vector<bool> seen(m.n, false);
    for (int s = 0; s < m.n; ++s) {
        if (seen[s]) continue;
        std::vector<int> comp = {s};
        seen[s] = true;
        for (size_t i = 0; i < comp.size(); ++i)
            for (int t = 0; t < m.n; ++t)
                if (!seen[t] && m.at(comp[i], t) != 2) {
                    seen[t] = true;
                    comp.push_back(t);
                }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

inline bool diagram_connected(const AdornedDiagram& d) {
    return diagram_components(d.mat).size() <= 1;
}

/// Induced subdiagram on the given (sorted) node set.
inline AdornedDiagram subdiagram(const AdornedDiagram& d, const std::vector<int>& nodes) {
    AdornedDiagram out;
    out.mat = CoxeterMatrix::trivial(int(nodes.size()));
    for (size_t i = 0; i < nodes.size(); ++i) {
        out.names.push_back(d.names[nodes[i]]);
        for (size_t j = i + 1; j < nodes.size(); ++j)
            out.mat.set(int(i), int(j), d.mat.at(nodes[i], nodes[j]));
    }
    for (size_t i = 0; i < nodes.size(); ++i)
        if (d.ringed(nodes[i])) out.rings.push_back(int(i));
    return out;
}

// ---------------------------------------------------------------- Gram matrix

/// Square matrix over a Ring.
struct GramMatrix {
    Ring ring;
    int n = 0;
    std::vector<RingElem> a;  // row-major, entries of the doubled form 2B

    const RingElem& at(int i, int j) const { return a[size_t(i) * n + j]; }
};

/// Conductor: lcm of finite labels >= 4 (labels 1,2,3 have integer cosines); 3 if none.
inline int diagram_conductor(const CoxeterMatrix& m) {
    long long L = 1;
    for (int i = 0; i < m.n; ++i)
        for (int j = i + 1; j < m.n; ++j) {
            const int lab = m.at(i, j);
            if (lab != kInfLabel && lab >= 4) L = std::lcm(L, (long long)lab);
        }
    if (L == 1) L = 3;
    if (L > 1000000) throw DomainError("conductor too large");
    return int(L);
}

/// Doubled Gram matrix 2B: diagonal 2, off-diagonal -2cos(pi/m_st), exact.
inline GramMatrix gram_matrix(const AdornedDiagram& d) {
    GramMatrix G;
    G.ring = make_ring(diagram_conductor(d.mat));
    G.n = d.size();
    G.a.assign(size_t(G.n) * G.n, ring_zero(G.ring));
    for (int i = 0; i < G.n; ++i)
        for (int j = 0; j < G.n; ++j) {
            if (i == j)
                G.a[size_t(i) * G.n + j] = ring_from_int(G.ring, 2);
            else {
                const int m = d.mat.at(i, j);
                if (m == 2) continue;  // zero
                G.a[size_t(i) * G.n + j] = ring_neg(embed_label(G.ring, m));
            }
        }
    return G;
}

// ---------------------------------------------------------------- signature

enum class SignatureKind { Definite, Semidefinite, Indefinite };

struct SignatureClass {
    int positive = 0, negative = 0, zero = 0;
    SignatureKind kind = SignatureKind::Definite;
};

namespace detail {

/// Berkowitz division-free characteristic polynomial of (square) M over the ring.
/// Returns coefficients of det(xI - M), ascending, monic.
inline std::vector<RingElem> berkowitz_charpoly(const Ring& R, const std::vector<RingElem>& M,
                                                int n) {
    auto at = [&](int i, int j) -> const RingElem& { return M[size_t(i) * n + j]; };
    // leading-first coefficient vectors (classic Berkowitz orientation)
    std::vector<RingElem> vect = {ring_from_int(R, 1), ring_neg(at(0, 0))};
    for (int r = 1; r < n; ++r) {
        // principal block A = M[0..r-1]^2, row Rr = M[r][0..r-1], col C = M[0..r-1][r]
        // s_k = Rr . A^{k-1} . C for k = 1..r, s_0 = M[r][r]
        std::vector<RingElem> s(r + 1, ring_zero(R));
        s[0] = at(r, r);
        std::vector<RingElem> w(r);
        for (int i = 0; i < r; ++i) w[i] = at(i, r);
        for (int k = 1; k <= r; ++k) {
            RingElem acc = ring_zero(R);
            for (int i = 0; i < r; ++i) acc = ring_add(acc, ring_mul(R, at(r, i), w[i]));
            s[k] = acc;
            if (k < r) {
                std::vector<RingElem> w2(r, ring_zero(R));
                for (int i = 0; i < r; ++i) {
                    RingElem a2 = ring_zero(R);
                    for (int j = 0; j < r; ++j) a2 = ring_add(a2, ring_mul(R, at(i, j), w[j]));
                    w2[i] = a2;
                }
                w = std::move(w2);
            }
        }
        // multiply by the (r+2)x(r+1) lower Toeplitz with first column [1, -s0, -s1, ..., -sr]
        std::vector<RingElem> next(r + 2, ring_zero(R));
        for (int row = 0; row < r + 2; ++row) {
            RingElem acc = ring_zero(R);
            for (int col = 0; col < r + 1; ++col) {
                if (col > row) break;
                const int k = row - col;  // 0 -> 1, else -s_{k-1}
                if (k == 0)
                    acc = ring_add(acc, vect[col]);
                else
                    acc = ring_sub(acc, ring_mul(R, s[k - 1], vect[col]));
            }
            next[row] = acc;
        }
        vect = std::move(next);
    }
    std::reverse(vect.begin(), vect.end());  // return ascending
    return vect;
}

}  // namespace detail

/// Exact signature of the bilinear form (computed on 2B; same signs as B).
/// Strategy: division-free characteristic polynomial, then Descartes' rule,
/// exact for real-rooted polynomials, with certified coefficient signs.
inline SignatureClass classify_signature(const AdornedDiagram& d) {
    const GramMatrix G = gram_matrix(d);
    const Ring& R = G.ring;
    const int n = G.n;
    std::vector<RingElem> cp = detail::berkowitz_charpoly(R, G.a, n);
    std::vector<int> sign(cp.size());
    for (size_t i = 0; i < cp.size(); ++i) sign[i] = ring_sign(R, cp[i]);

    SignatureClass out;
    int z = 0;
    while (z < n && sign[z] == 0) ++z;
    out.zero = z;
    // positive roots: sign changes in (c_z, ..., c_n); negative: with alternating flip
    int pos = 0, neg = 0, last = 0;
    for (size_t i = z; i < cp.size(); ++i) {
        if (sign[i] == 0) continue;
        if (last != 0 && sign[i] != last) ++pos;
        last = sign[i];
    }
    last = 0;
    for (size_t i = z; i < cp.size(); ++i) {
        if (sign[i] == 0) continue;
        const int s = (i % 2 == 0) ? sign[i] : -sign[i];
        if (last != 0 && s != last) ++neg;
        last = s;
    }
    out.positive = pos;
    out.negative = neg;
    if (out.positive + out.negative + out.zero != n)
        throw DomainError("signature: sign count mismatch (non-real-rooted?)");
    if (out.negative > 0)
        out.kind = SignatureKind::Indefinite;
    else if (out.zero > 0)
        out.kind = SignatureKind::Semidefinite;
    else
        out.kind = SignatureKind::Definite;
    return out;
}

inline bool is_definite(const AdornedDiagram& d) {
    return classify_signature(d).kind == SignatureKind::Definite;
}

// ---------------------------------------------------------------- finite types

struct FiniteTypeName {
    std::string family;  // "A","B","D","E6","E7","E8","F4","G2","H3","H4","I2(m)"
    int rank = 0;

    std::string str() const {
        if (family == "I2") return "I2(" + std::to_string(rank) + ")";
        if (family.size() > 1) return family;  // E6/E7/E8/F4/G2/H3/H4 carry their rank
        return family + std::to_string(rank);
    }
};

namespace detail {

/// Shape-match one connected component against the finite catalog.
inline std::optional<FiniteTypeName> match_finite_component(const CoxeterMatrix& m,
                                                            const std::vector<int>& comp) {
    const int k = int(comp.size());
    auto lab = [&](int a, int b) { return m.at(comp[a], comp[b]); };
    // degree sequence within the component
    std::vector<std::vector<int>> adj(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (i != j && lab(i, j) != 2) {
                if (lab(i, j) == kInfLabel) return std::nullopt;
                adj[i].push_back(j);
            }
    int edges = 0, maxdeg = 0;
    for (int i = 0; i < k; ++i) {
        edges += int(adj[i].size());
        maxdeg = std::max(maxdeg, int(adj[i].size()));
    }
    edges /= 2;
    if (edges != k - 1) return std::nullopt;  // finite diagrams are trees
    if (k == 1) return FiniteTypeName{"A", 1};
    if (k == 2) {
        const int m01 = lab(0, 1);
        if (m01 == 3) return FiniteTypeName{"A", 2};
        if (m01 == 4) return FiniteTypeName{"B", 2};
        if (m01 == 6) return FiniteTypeName{"G2", 2};
        if (m01 >= 5) return FiniteTypeName{"I2", m01};
        return std::nullopt;
    }
    if (maxdeg > 3) return std::nullopt;
    std::vector<int> branch;
    for (int i = 0; i < k; ++i)
        if (adj[i].size() == 3) branch.push_back(i);
    if (branch.size() > 1) return std::nullopt;

    if (branch.empty()) {
        // a path: walk from a leaf, collect labels
        int leaf = -1;
        for (int i = 0; i < k; ++i)
            if (adj[i].size() == 1) leaf = i;
        std::vector<int> order = {leaf};
        std::vector<bool> used(k, false);
        used[leaf] = true;
        while (int(order.size()) < k) {
            for (int t : adj[order.back()])
                if (!used[t]) {
                    used[t] = true;
                    order.push_back(t);
                    break;
                }
        }
        std::vector<int> labs;
        for (int i = 0; i + 1 < k; ++i) labs.push_back(lab(order[i], order[i + 1]));
        auto classify_path = [&](const std::vector<int>& ls) -> std::optional<FiniteTypeName> {
            auto all3 = [&](int from, int to) {
                for (int i = from; i < to; ++i)
                    if (ls[i] != 3) return false;
                return true;
            };
            const int e = int(ls.size());
            if (all3(0, e)) return FiniteTypeName{"A", k};
            if (ls[0] == 4 && all3(1, e)) return FiniteTypeName{"B", k};
            if (ls[0] == 5 && all3(1, e)) {
                if (k == 3) return FiniteTypeName{"H3", 3};
                if (k == 4) return FiniteTypeName{"H4", 4};
                return std::nullopt;
            }
            if (k == 4 && ls[0] == 3 && ls[1] == 4 && ls[2] == 3) return FiniteTypeName{"F4", 4};
            return std::nullopt;
        };
        if (auto t = classify_path(labs)) return t;
        std::vector<int> rev(labs.rbegin(), labs.rend());
        return classify_path(rev);
    }
    // one trivalent node: all labels must be 3; classify by arm lengths
    for (int i = 0; i < k; ++i)
        for (int j : adj[i])
            if (lab(i, j) != 3) return std::nullopt;
    std::vector<int> arms;
    for (int t : adj[branch[0]]) {
        int len = 1, prev = branch[0], cur = t;
        while (adj[cur].size() == 2) {
            int nxt = (adj[cur][0] == prev) ? adj[cur][1] : adj[cur][0];
            prev = cur;
            cur = nxt;
            ++len;
        }
        if (adj[cur].size() == 3) return std::nullopt;
        arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) return FiniteTypeName{"D", k};
    if (arms[0] == 1 && arms[1] == 2 && arms[2] == 2) return FiniteTypeName{"E6", 6};
    if (arms[0] == 1 && arms[1] == 2 && arms[2] == 3) return FiniteTypeName{"E7", 7};
    if (arms[0] == 1 && arms[1] == 2 && arms[2] == 4) return FiniteTypeName{"E8", 8};
    return std::nullopt;
}

}  // namespace detail

/// Per-component classification; nullopt when some component is not of finite type.
inline std::optional<std::vector<FiniteTypeName>> recognize_finite_types(const AdornedDiagram& d) {
    std::vector<FiniteTypeName> out;
    for (const auto& comp : diagram_components(d.mat)) {
        auto t = detail::match_finite_component(d.mat, comp);
        if (!t) return std::nullopt;
        out.push_back(*t);
    }
    return out;
}

// ---------------------------------------------------------------- face & link

/// Wythoff face recipe: remove R (disjoint from the ring set), keep the
/// components meeting the ring set, rings preserved.
inline AdornedDiagram face_diagram(const AdornedDiagram& d, const std::vector<int>& removed) {
    for (int r : removed)
        if (d.ringed(r)) throw DomainError("face_diagram: removed set meets the ring set");
    std::vector<bool> gone(d.size(), false);
    for (int r : removed) gone.at(r) = true;
    std::vector<int> keep;
    for (int v = 0; v < d.size(); ++v)
        if (!gone[v]) keep.push_back(v);
    AdornedDiagram rest = subdiagram(d, keep);
    // components meeting the rings
    std::vector<int> nodes;
    for (const auto& comp : diagram_components(rest.mat)) {
        bool hit = false;
        for (int v : comp)
            if (rest.ringed(v)) hit = true;
        if (hit)
            for (int v : comp) nodes.push_back(v);
    }
    std::sort(nodes.begin(), nodes.end());
    return subdiagram(rest, nodes);
}

/// Vertex link recipe (|M| = 1, connected): drop the ringed node, ring its
/// former neighbours, keep the rest of the diagram.
inline AdornedDiagram vertex_link_diagram(const AdornedDiagram& d) {
    if (d.rings.size() != 1)
        throw DomainError("vertex_link_diagram requires exactly one ringed node");
    if (!diagram_connected(d)) throw DomainError("vertex_link_diagram requires a connected diagram");
    const int s = d.rings[0];
    std::vector<int> keep;
    for (int v = 0; v < d.size(); ++v)
        if (v != s) keep.push_back(v);
    AdornedDiagram out = subdiagram(d, keep);
    out.rings.clear();
    for (size_t i = 0; i < keep.size(); ++i)
        if (d.mat.at(s, keep[i]) != 2) out.rings.push_back(int(i));
    return out;
}

}  // namespace coxpander
