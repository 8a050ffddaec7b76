// graph.hpp - undirected simple graphs, edge-list I/O, geometric generator, exact oracles
#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace netview {

using NodeId = std::uint32_t;
using NodeSet = std::vector<NodeId>;  // sorted, unique
using Fraction = boost::rational<std::int64_t>;

// Canonical undirected edge, u < v.
struct Edge {
    NodeId u = 0;
    NodeId v = 0;
    auto operator<=>(const Edge&) const = default;
};

Edge make_edge(NodeId a, NodeId b);

class Graph {
public:
    Graph() = default;
    // Self-loops are dropped and duplicates merged.
    Graph(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges);

    std::size_t size() const { return adj_.size(); }
    std::size_t edge_count() const { return m_; }
    const NodeSet& neighbours(NodeId i) const { return adj_.at(i); }
    std::size_t degree(NodeId i) const { return adj_.at(i).size(); }
    bool has_edge(NodeId a, NodeId b) const;
    std::vector<Edge> edges() const;  // sorted
    bool is_connected() const;

    bool operator==(const Graph&) const = default;

private:
    std::vector<NodeSet> adj_;
    std::size_t m_ = 0;
};

// ---- edge-list I/O ----

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class FileNotFound : public std::runtime_error {
public:
    explicit FileNotFound(const std::filesystem::path& p);
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

struct LoadedGraph {
    Graph graph;
    std::vector<std::int64_t> original_ids;  // original_ids[dense] = id in the file
};

// "u v" per line, '#' comments, ids remapped densely in order of first appearance.
LoadedGraph load_edge_list(std::string_view text);
LoadedGraph load_edge_list_file(const std::filesystem::path& path);

// One "u v" line per edge, u < v, sorted.
std::string save_edge_list(const Graph& g);

struct Component {
    Graph graph;
    std::vector<NodeId> members;  // members[new id] = old id
};
Component largest_component(const Graph& g);

// ---- oracles ----

std::vector<int> bfs_distances(const Graph& g, NodeId s);
Fraction closeness_exact(const Graph& g, NodeId i);
std::vector<Fraction> closeness_all(const Graph& g);
int eccentricity_exact(const Graph& g, NodeId i);
std::vector<int> eccentricities(const Graph& g);
int diameter(const Graph& g);
int radius(const Graph& g);

inline double to_double(const Fraction& f) {
    return static_cast<double>(f.numerator()) / static_cast<double>(f.denominator());
}

// Ten-node worked example; dense id k stands for v_{k+1}.
Graph golden_graph();
std::string golden_label(NodeId i);

// ---- random geometric graphs ----

enum class GeometricSampler { connected_chain, rejection };

struct GeometricParams {
    std::size_t n = 100;
    int grid = 200;
    int comm_range = 8;
    std::uint64_t seed = 1;
    GeometricSampler sampler = GeometricSampler::connected_chain;
    int sweeps = 20;          // chain moves per node
    int max_attempts = 1000;  // rejection sampler only
};

struct GeometricGraph {
    Graph graph;
    std::vector<std::pair<int, int>> points;
    int attempts = 1;
};

class GenerationError : public std::runtime_error {
public:
    GenerationError(int attempts, const std::string& what);
    int attempts() const { return attempts_; }

private:
    int attempts_;
};

GeometricGraph random_geometric(const GeometricParams& params);

}  // namespace netview
