#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace corrclust {

using Vertex = std::uint32_t;

// Simple undirected graph over dense vertex ids 0..n-1 with sorted adjacency
// lists. Immutable after construction and safe to share across threads.
// Positive pairs are the edges, negative pairs the non-edges.
class Graph {
public:
    Graph() = default;

    static Graph from_edges(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edges) {
        Graph g;
        g.adj_.assign(n, {});
        for (auto& [u, v] : edges) {
            if (u == v) throw std::invalid_argument("graph: self-loop");
            if (u >= n || v >= n) throw std::invalid_argument("graph: vertex id out of range");
            g.adj_[u].push_back(v);
            g.adj_[v].push_back(u);
        }
        for (auto& nb : g.adj_) {
            std::sort(nb.begin(), nb.end());
            if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
                throw std::invalid_argument("graph: duplicate edge");
        }
        g.m_ = edges.size();
        return g;
    }

    std::size_t vertex_count() const { return adj_.size(); }
    std::size_t edge_count() const { return m_; }

    std::size_t degree(Vertex v) const { return adj_[v].size(); }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }

    bool has_edge(Vertex u, Vertex v) const {
        if (u == v) return false;
        const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
        Vertex t = adj_[u].size() <= adj_[v].size() ? v : u;
        return std::binary_search(a.begin(), a.end(), t);
    }

    // Number of neighbors of v among vertices flagged true.
    std::size_t degree_into(Vertex v, const std::vector<char>& flags) const {
        std::size_t c = 0;
        for (Vertex u : adj_[v]) c += flags[u] != 0;
        return c;
    }

    // Text format: first line "n m", then m lines "u v" with u < v, edges in
    // ascending (u, v) order. Reading and writing are byte-exact inverses on
    // canonical files.
    static Graph read(std::istream& in) {
        std::size_t n = 0, m = 0;
        if (!(in >> n >> m)) throw std::runtime_error("graph: bad header");
        std::vector<std::pair<Vertex, Vertex>> edges;
        edges.reserve(m);
        for (std::size_t i = 0; i < m; ++i) {
            Vertex u, v;
            if (!(in >> u >> v)) throw std::runtime_error("graph: truncated edge list");
            if (!(u < v)) throw std::runtime_error("graph: edge endpoints must satisfy u < v");
            edges.emplace_back(u, v);
        }
        return from_edges(n, std::move(edges));
    }

    void write(std::ostream& out) const {
        out << adj_.size() << ' ' << m_ << '\n';
        for (Vertex u = 0; u < adj_.size(); ++u)
            for (Vertex v : adj_[u])
                if (u < v) out << u << ' ' << v << '\n';
    }

    static Graph load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open graph file: " + path);
        return read(in);
    }

    void save(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write graph file: " + path);
        write(out);
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.m_ == b.m_ && a.adj_ == b.adj_;
    }

private:
    std::vector<std::vector<Vertex>> adj_;
    std::size_t m_ = 0;
};

enum class PairClass { Plus, Minus };

inline PairClass pair_class(const Graph& g, Vertex u, Vertex v) {
    if (u == v) throw std::invalid_argument("pair_class: u == v");
    if (u >= g.vertex_count() || v >= g.vertex_count())
        throw std::invalid_argument("pair_class: vertex out of range");
    return g.has_edge(u, v) ? PairClass::Plus : PairClass::Minus;
}

}  // namespace corrclust
