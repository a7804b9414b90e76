#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "corrclust/graph.hpp"

namespace corrclust {

// A partition of the vertex set 0..n-1. Kept in a canonical form: cluster ids
// are assigned by order of first appearance over ascending vertex id, and
// each cluster's member list is ascending. Two Clusterings compare equal iff
// they are the same partition.
class Clustering {
public:
    Clustering() = default;

    static Clustering singletons(std::size_t n) {
        std::vector<std::uint32_t> a(n);
        for (std::size_t v = 0; v < n; ++v) a[v] = static_cast<std::uint32_t>(v);
        return from_assignment(std::move(a));
    }

    static Clustering single_cluster(std::size_t n) {
        return from_assignment(std::vector<std::uint32_t>(n, 0));
    }

    // Accepts arbitrary ids; renumbers to first-appearance order.
    static Clustering from_assignment(std::vector<std::uint32_t> raw) {
        Clustering c;
        c.assignment_.assign(raw.size(), kUnset);
        std::uint32_t max_id = 0;
        for (std::uint32_t id : raw) max_id = std::max(max_id, id);
        std::vector<std::uint32_t> remap(static_cast<std::size_t>(max_id) + 1, kUnset);
        std::uint32_t next_id = 0;
        for (std::size_t v = 0; v < raw.size(); ++v) {
            std::uint32_t& slot = remap[raw[v]];
            if (slot == kUnset) slot = next_id++;
            c.assignment_[v] = slot;
        }
        c.clusters_.assign(next_id, {});
        for (std::size_t v = 0; v < c.assignment_.size(); ++v)
            c.clusters_[c.assignment_[v]].push_back(static_cast<Vertex>(v));
        return c;
    }

    // Validates that the given sets are disjoint, nonempty, and cover 0..n-1.
    static Clustering from_clusters(std::size_t n, const std::vector<std::vector<Vertex>>& sets) {
        std::vector<std::uint32_t> a(n, kUnset);
        std::uint32_t id = 0;
        for (const auto& s : sets) {
            if (s.empty()) throw std::invalid_argument("clustering: empty cluster");
            for (Vertex v : s) {
                if (v >= n) throw std::invalid_argument("clustering: vertex out of range");
                if (a[v] != kUnset) throw std::invalid_argument("clustering: overlapping clusters");
                a[v] = id;
            }
            ++id;
        }
        for (std::size_t v = 0; v < n; ++v)
            if (a[v] == kUnset) throw std::invalid_argument("clustering: vertex not covered");
        return from_assignment(std::move(a));
    }

    std::size_t vertex_count() const { return assignment_.size(); }
    std::size_t cluster_count() const { return clusters_.size(); }
    std::uint32_t cluster_of(Vertex v) const { return assignment_[v]; }
    bool same(Vertex u, Vertex v) const { return assignment_[u] == assignment_[v]; }
    const std::vector<Vertex>& cluster(std::uint32_t id) const { return clusters_[id]; }
    const std::vector<std::vector<Vertex>>& clusters() const { return clusters_; }
    const std::vector<std::uint32_t>& assignment() const { return assignment_; }

    std::size_t cluster_size_of(Vertex v) const { return clusters_[assignment_[v]].size(); }

    friend bool operator==(const Clustering& a, const Clustering& b) {
        return a.assignment_ == b.assignment_;
    }
    friend bool operator!=(const Clustering& a, const Clustering& b) { return !(a == b); }

    // Text format: one line per cluster, space-separated vertex ids. Written
    // in canonical order; reading a canonical file and writing it back is
    // byte-exact.
    static Clustering read(std::istream& in) {
        std::vector<std::vector<Vertex>> sets;
        std::size_t total = 0;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::istringstream ls(line);
            std::vector<Vertex> s;
            Vertex v;
            while (ls >> v) s.push_back(v);
            if (!ls.eof()) throw std::runtime_error("clustering: bad token");
            if (s.empty()) continue;
            total += s.size();
            sets.push_back(std::move(s));
        }
        return from_clusters(total, sets);
    }

    void write(std::ostream& out) const {
        for (const auto& s : clusters_) {
            for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
            out << '\n';
        }
    }

    static Clustering load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open clustering file: " + path);
        return read(in);
    }

    void save(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write clustering file: " + path);
        write(out);
    }

private:
    static constexpr std::uint32_t kUnset = 0xffffffffu;

    std::vector<std::uint32_t> assignment_;
    std::vector<std::vector<Vertex>> clusters_;
};

// The swap-in operation: remove the vertices of s from their clusters and add
// s as a new cluster, dropping emptied remnants. Input is not mutated.
inline Clustering add_cluster(const Clustering& c, const std::vector<Vertex>& s) {
    if (s.empty()) throw std::invalid_argument("add_cluster: empty set");
    const std::size_t n = c.vertex_count();
    std::vector<char> in_s(n, 0);
    for (Vertex v : s) {
        if (v >= n) throw std::invalid_argument("add_cluster: unknown vertex");
        if (in_s[v]) throw std::invalid_argument("add_cluster: duplicate vertex");
        in_s[v] = 1;
    }
    const std::uint32_t fresh = static_cast<std::uint32_t>(c.cluster_count());
    std::vector<std::uint32_t> a(n);
    for (std::size_t v = 0; v < n; ++v)
        a[v] = in_s[v] ? fresh : c.cluster_of(static_cast<Vertex>(v));
    return Clustering::from_assignment(std::move(a));
}

}  // namespace corrclust
