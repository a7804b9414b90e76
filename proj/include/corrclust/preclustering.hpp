#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "corrclust/clustering.hpp"
#include "corrclust/cost.hpp"
#include "corrclust/graph.hpp"

namespace corrclust {

enum class PrePairClass { Atomic, Admissible, NonAdmissible };

// Atom family plus admissible-pair set for a graph. Atoms are disjoint vertex
// groups kept together by every good cluster; admissible pairs are the only
// non-atomic pairs allowed to share a good cluster. The three pair classes
// partition all vertex pairs. Immutable after construction.
class PreclusteredInstance {
public:
    double epsilon = 0.1;
    std::vector<std::vector<Vertex>> atoms;
    std::vector<std::int32_t> atom_of;          // -1 when atom-free
    std::vector<std::vector<Vertex>> adm;       // sorted admissible partners per vertex
    std::int64_t admissible_pairs = 0;

    std::size_t vertex_count() const { return atom_of.size(); }

    bool in_atom(Vertex v) const { return atom_of[v] >= 0; }

    bool is_admissible(Vertex u, Vertex v) const {
        const auto& a = adm[u].size() <= adm[v].size() ? adm[u] : adm[v];
        Vertex t = adm[u].size() <= adm[v].size() ? v : u;
        return std::binary_search(a.begin(), a.end(), t);
    }

    PrePairClass pair_class(Vertex u, Vertex v) const {
        if (u == v) throw std::invalid_argument("precluster pair_class: u == v");
        if (in_atom(u) && atom_of[u] == atom_of[v]) return PrePairClass::Atomic;
        if (is_admissible(u, v)) return PrePairClass::Admissible;
        return PrePairClass::NonAdmissible;
    }

    std::size_t adm_degree(Vertex v) const { return adm[v].size(); }

    // Atoms file: one atom per line, space-separated vertex ids.
    static std::vector<std::vector<Vertex>> read_atoms(std::istream& in) {
        std::vector<std::vector<Vertex>> out;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::istringstream ls(line);
            std::vector<Vertex> a;
            Vertex v;
            while (ls >> v) a.push_back(v);
            if (!ls.eof()) throw std::runtime_error("atoms file: bad token");
            if (!a.empty()) {
                std::sort(a.begin(), a.end());
                out.push_back(std::move(a));
            }
        }
        return out;
    }

    void write_atoms(std::ostream& out) const {
        for (const auto& a : atoms) {
            for (std::size_t i = 0; i < a.size(); ++i) out << (i ? " " : "") << a[i];
            out << '\n';
        }
    }

    void write_admissible(std::ostream& out) const {
        for (Vertex u = 0; u < adm.size(); ++u)
            for (Vertex v : adm[u])
                if (u < v) out << u << ' ' << v << '\n';
    }
};

struct AtomParams {
    // Condition-3 slack multiplier: thresholds use c * epsilon.
    double c = 5.0;
};

namespace detail {

inline bool degree_similar(const Graph& g, double eps, Vertex u, Vertex v) {
    double du = static_cast<double>(g.degree(u));
    double dv = static_cast<double>(g.degree(v));
    return eps * dv <= du && du <= dv / eps;
}

// Post-hoc atom quality gate: every member adjacent to at least a
// (1 - c*eps) fraction of the other members and with at most c*eps*|K|
// neighbors outside.
inline bool atom_passes_condition3(const Graph& g, const std::vector<Vertex>& atom, double eps,
                                   double c) {
    std::vector<char> member(g.vertex_count(), 0);
    for (Vertex v : atom) member[v] = 1;
    const double slack = c * eps;
    for (Vertex v : atom) {
        auto inside = static_cast<double>(g.degree_into(v, member));
        auto outside = static_cast<double>(g.degree(v)) - inside;
        if (inside < (1.0 - slack) * static_cast<double>(atom.size() - 1)) return false;
        if (outside > slack * static_cast<double>(atom.size())) return false;
    }
    return true;
}

}  // namespace detail

// Atom construction: endpoints of an edge agree when their closed
// neighborhoods differ in at most c*eps*max(d(u), d(v)) vertices; connected
// components of the agreement graph with at least two vertices become
// candidate atoms, and candidates failing the condition-3 gate are discarded.
inline std::vector<std::vector<Vertex>> compute_atoms(const Graph& g, double eps,
                                                      const AtomParams& params = {}) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("compute_atoms: need 0 < eps < 1");
    const std::size_t n = g.vertex_count();

    // union-find over agreement edges
    std::vector<std::uint32_t> parent(n);
    for (std::size_t v = 0; v < n; ++v) parent[v] = static_cast<std::uint32_t>(v);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x) { parent[x] = parent[parent[x]]; x = parent[x]; }
        return x;
    };

    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v : g.neighbors(u)) {
            if (v <= u) continue;
            // |N[u] xor N[v]| via sorted-merge; u and v are adjacent, so the
            // closed neighborhoods share at least {u, v}.
            const auto& a = g.neighbors(u);
            const auto& b = g.neighbors(v);
            std::size_t i = 0, j = 0, sym = 0;
            auto in_closed = [&](Vertex x, Vertex self, Vertex other) {
                return x == self || x == other;
            };
            while (i < a.size() || j < b.size()) {
                Vertex x = i < a.size() ? a[i] : 0xffffffffu;
                Vertex y = j < b.size() ? b[j] : 0xffffffffu;
                if (x < y) {
                    if (!in_closed(x, u, v)) ++sym;
                    ++i;
                } else if (y < x) {
                    if (!in_closed(y, u, v)) ++sym;
                    ++j;
                } else {
                    ++i;
                    ++j;
                }
            }
            double thr = params.c * eps * static_cast<double>(std::max(g.degree(u), g.degree(v)));
            if (static_cast<double>(sym) <= thr) {
                std::uint32_t ru = find(u), rv = find(v);
                if (ru != rv) parent[ru] = rv;
            }
        }
    }

    std::vector<std::vector<Vertex>> groups(n);
    for (Vertex v = 0; v < n; ++v) groups[find(v)].push_back(v);
    std::vector<std::vector<Vertex>> atoms;
    for (auto& grp : groups) {
        if (grp.size() < 2) continue;
        if (detail::atom_passes_condition3(g, grp, eps, params.c)) atoms.push_back(std::move(grp));
    }
    std::sort(atoms.begin(), atoms.end());
    return atoms;
}

// Admissible pairs: (1) at least one endpoint atom-free, (2) degree-similar
// (eps*d(v) <= d(u) <= d(v)/eps), (3) at least eps*min(d(u), d(v)) common
// neighbors that are degree-similar to both endpoints. Zero-degree vertices
// are never admissible; pairs need not be edges.
inline std::vector<std::vector<Vertex>> compute_admissible(
    const Graph& g, double eps, const std::vector<std::vector<Vertex>>& atoms) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("compute_admissible: need 0 < eps < 1");
    const std::size_t n = g.vertex_count();
    std::vector<std::int32_t> atom_of(n, -1);
    for (std::size_t k = 0; k < atoms.size(); ++k)
        for (Vertex v : atoms[k]) atom_of[v] = static_cast<std::int32_t>(k);

    std::vector<std::vector<Vertex>> adm(n);
    for (Vertex u = 0; u < n; ++u) {
        if (g.degree(u) == 0) continue;
        for (Vertex v = u + 1; v < n; ++v) {
            if (g.degree(v) == 0) continue;
            if (atom_of[u] >= 0 && atom_of[v] >= 0) continue;
            if (!detail::degree_similar(g, eps, u, v)) continue;
            const auto& a = g.neighbors(u);
            const auto& b = g.neighbors(v);
            std::size_t i = 0, j = 0, common = 0;
            while (i < a.size() && j < b.size()) {
                if (a[i] < b[j]) ++i;
                else if (b[j] < a[i]) ++j;
                else {
                    Vertex wv = a[i];
                    if (detail::degree_similar(g, eps, wv, u) &&
                        detail::degree_similar(g, eps, wv, v))
                        ++common;
                    ++i;
                    ++j;
                }
            }
            double need = eps * static_cast<double>(std::min(g.degree(u), g.degree(v)));
            if (static_cast<double>(common) >= need) {
                adm[u].push_back(v);
                adm[v].push_back(u);
            }
        }
    }
    for (auto& lst : adm) std::sort(lst.begin(), lst.end());
    return adm;
}

inline PreclusteredInstance make_preclustered(const Graph& g, double eps,
                                              std::vector<std::vector<Vertex>> atoms,
                                              std::vector<std::vector<Vertex>> adm) {
    PreclusteredInstance pc;
    pc.epsilon = eps;
    pc.atoms = std::move(atoms);
    pc.atom_of.assign(g.vertex_count(), -1);
    for (std::size_t k = 0; k < pc.atoms.size(); ++k)
        for (Vertex v : pc.atoms[k]) {
            if (pc.atom_of[v] >= 0) throw std::invalid_argument("precluster: atoms overlap");
            pc.atom_of[v] = static_cast<std::int32_t>(k);
        }
    pc.adm = std::move(adm);
    for (Vertex u = 0; u < pc.adm.size(); ++u)
        for (Vertex v : pc.adm[u]) {
            if (u < v) ++pc.admissible_pairs;
            if (pc.atom_of[u] >= 0 && pc.atom_of[v] >= 0)
                throw std::invalid_argument("precluster: admissible pair inside atom set");
        }
    return pc;
}

inline PreclusteredInstance precluster(const Graph& g, double eps, const AtomParams& params = {}) {
    auto atoms = compute_atoms(g, eps, params);
    auto adm = compute_admissible(g, eps, atoms);
    return make_preclustered(g, eps, std::move(atoms), std::move(adm));
}

inline PreclusteredInstance precluster_with_atoms(const Graph& g, double eps,
                                                  std::vector<std::vector<Vertex>> atoms) {
    auto adm = compute_admissible(g, eps, atoms);
    return make_preclustered(g, eps, std::move(atoms), std::move(adm));
}

// Exhaustive check of the three goodness conditions. Every violated condition
// lists at least one witness.
struct GoodnessReport {
    bool adm_degree_ok = true;          // d_adm(v) <= 2 eps^-3 d(v)
    bool degree_similarity_ok = true;   // d(u) <= 2 eps^-1 d(v) for admissible uv
    bool atom_density_ok = true;        // condition-3 on every atom member
    std::vector<Vertex> adm_degree_witnesses;
    std::vector<std::pair<Vertex, Vertex>> degree_similarity_witnesses;
    std::vector<Vertex> atom_density_witnesses;

    bool all_hold() const { return adm_degree_ok && degree_similarity_ok && atom_density_ok; }
};

inline GoodnessReport validate_good_instance(const Graph& g, const PreclusteredInstance& pc,
                                             double condition3_c = 5.0) {
    GoodnessReport rep;
    const double eps = pc.epsilon;
    const double inv3 = 2.0 / (eps * eps * eps);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (static_cast<double>(pc.adm_degree(v)) > inv3 * static_cast<double>(g.degree(v))) {
            rep.adm_degree_ok = false;
            rep.adm_degree_witnesses.push_back(v);
        }
    }
    // both orientations of each admissible pair must satisfy the degree bound
    const double inv1 = 2.0 / eps;
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        for (Vertex v : pc.adm[u]) {
            if (static_cast<double>(g.degree(u)) > inv1 * static_cast<double>(g.degree(v))) {
                rep.degree_similarity_ok = false;
                rep.degree_similarity_witnesses.emplace_back(u, v);
            }
        }
    const double slack = condition3_c * eps;
    for (const auto& atom : pc.atoms) {
        std::vector<char> member(g.vertex_count(), 0);
        for (Vertex v : atom) member[v] = 1;
        for (Vertex v : atom) {
            auto inside = static_cast<double>(g.degree_into(v, member));
            auto outside = static_cast<double>(g.degree(v)) - inside;
            bool ok = inside >= (1.0 - slack) * static_cast<double>(atom.size() - 1) &&
                      outside <= slack * static_cast<double>(atom.size());
            if (!ok) {
                rep.atom_density_ok = false;
                rep.atom_density_witnesses.push_back(v);
            }
        }
    }
    return rep;
}

// A good cluster keeps atoms unbroken, contains no non-admissible pair, and
// (unless a singleton) has size at least delta * d(v) for every member.
inline bool is_good_cluster(const std::vector<Vertex>& c, const PreclusteredInstance& pc,
                            const Graph& g, double delta) {
    if (c.empty()) return false;
    for (Vertex v : c)
        if (pc.in_atom(v)) {
            const auto& atom = pc.atoms[pc.atom_of[v]];
            for (Vertex u : atom)
                if (std::find(c.begin(), c.end(), u) == c.end()) return false;
        }
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j)
            if (pc.pair_class(c[i], c[j]) == PrePairClass::NonAdmissible) return false;
    if (c.size() > 1) {
        for (Vertex v : c)
            if (static_cast<double>(c.size()) < delta * static_cast<double>(g.degree(v)))
                return false;
    }
    return true;
}

inline bool is_good_clustering(const Clustering& c, const PreclusteredInstance& pc,
                               const Graph& g, double delta) {
    for (const auto& cl : c.clusters())
        if (!is_good_cluster(cl, pc, g, delta)) return false;
    return true;
}

// Search neighborhoods around a seed vertex r: K(r) is r's atom (or {r});
// N(r) is the admissible reach that a cluster grown from r may use; D(r) the
// part of it outside K(r). All lists are sorted.
struct Neighborhoods {
    std::vector<Vertex> n;  // N(r)
    std::vector<Vertex> k;  // K(r)
    std::vector<Vertex> d;  // D(r) = N(r) \ K(r)
};

inline Neighborhoods neighborhoods(const PreclusteredInstance& pc, const Graph& g, Vertex r) {
    if (r >= g.vertex_count() || pc.vertex_count() != g.vertex_count())
        throw std::invalid_argument("neighborhoods: vertex or instance mismatch");
    Neighborhoods out;
    if (!pc.in_atom(r)) {
        out.k = {r};
        out.n.push_back(r);
        for (Vertex u : pc.adm[r])
            if (!pc.in_atom(u)) out.n.push_back(u);
        std::sort(out.n.begin(), out.n.end());
    } else {
        out.k = pc.atoms[pc.atom_of[r]];
        // vertices admissible to every atom member
        std::vector<Vertex> cur;
        bool first = true;
        for (Vertex u : out.k) {
            if (first) { cur = pc.adm[u]; first = false; continue; }
            std::vector<Vertex> next;
            std::set_intersection(cur.begin(), cur.end(), pc.adm[u].begin(), pc.adm[u].end(),
                                  std::back_inserter(next));
            cur = std::move(next);
            if (cur.empty()) break;
        }
        out.n = out.k;
        out.n.insert(out.n.end(), cur.begin(), cur.end());
        std::sort(out.n.begin(), out.n.end());
        out.n.erase(std::unique(out.n.begin(), out.n.end()), out.n.end());
    }
    std::set_difference(out.n.begin(), out.n.end(), out.k.begin(), out.k.end(),
                        std::back_inserter(out.d));
    return out;
}

// Splits every cluster whose contained atom is a vanishing fraction of it
// (576 |K| < eps^21 |C|) into the atom and the remainder. Input must be a
// good clustering for (pc, delta = eps).
inline Clustering split_small_atom_clusters(const Clustering& c, const PreclusteredInstance& pc,
                                            const Graph& g) {
    if (!is_good_clustering(c, pc, g, pc.epsilon))
        throw std::invalid_argument("split_small_atom_clusters: input clustering is not good");
    const long double eps = pc.epsilon;
    long double eps21 = 1.0L;
    for (int i = 0; i < 21; ++i) eps21 *= eps;
    std::vector<std::vector<Vertex>> out;
    for (const auto& cl : c.clusters()) {
        std::int32_t atom_id = -1;
        for (Vertex v : cl)
            if (pc.in_atom(v)) { atom_id = pc.atom_of[v]; break; }  // at most one atom inside
        if (atom_id < 0) {
            out.push_back(cl);
            continue;
        }
        const auto& atom = pc.atoms[atom_id];
        bool split = 576.0L * static_cast<long double>(atom.size()) <
                     eps21 * static_cast<long double>(cl.size());
        if (!split) {
            out.push_back(cl);
            continue;
        }
        std::vector<Vertex> rest;
        std::set_difference(cl.begin(), cl.end(), atom.begin(), atom.end(),
                            std::back_inserter(rest));
        out.push_back(atom);
        if (!rest.empty()) out.push_back(rest);
    }
    return Clustering::from_clusters(c.vertex_count(), out);
}

// Starting point of the sampled search: atoms as clusters, everything else a
// singleton.
inline Clustering atoms_plus_singletons(const PreclusteredInstance& pc) {
    const std::size_t n = pc.vertex_count();
    std::vector<std::uint32_t> a(n);
    std::uint32_t next = static_cast<std::uint32_t>(pc.atoms.size());
    for (std::size_t v = 0; v < n; ++v) {
        if (pc.atom_of[v] >= 0) a[v] = static_cast<std::uint32_t>(pc.atom_of[v]);
        else a[v] = next++;
    }
    return Clustering::from_assignment(std::move(a));
}

}  // namespace corrclust
