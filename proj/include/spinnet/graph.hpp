#ifndef SPINNET_GRAPH_HPP
#define SPINNET_GRAPH_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinnet {

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public GraphError {
public:
    ParseError(int line, const std::string& msg);
    int line() const { return line_; }

private:
    int line_;
};

// Thrown when an exhaustive search would exceed its configured size.
class BoundExceeded : public GraphError {
public:
    BoundExceeded(const std::string& what, std::uint64_t count);
    std::uint64_t count() const { return count_; }

private:
    std::uint64_t count_;
};

// Half-edge index: 2*edge + slot, slot 0 sits at the first endpoint.
using HalfEdge = int;

inline int edge_of(HalfEdge h) { return h >> 1; }
inline HalfEdge opposite(HalfEdge h) { return h ^ 1; }

struct Edge {
    std::string id;
    int u = -1;
    int v = -1;
    std::optional<int> spin; // 2j
};

class Graph {
public:
    int add_vertex(const std::string& id);
    int add_edge(const std::string& id, int u, int v, std::optional<int> spin = {});

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::string& vertex_id(int v) const { return vertices_.at(v); }
    const Edge& edge(int e) const { return edges_.at(e); }
    Edge& edge(int e) { return edges_.at(e); }
    std::optional<int> find_vertex(const std::string& id) const;
    std::optional<int> find_edge(const std::string& id) const;

    // vertex the half-edge is attached to
    int vertex_of(HalfEdge h) const;
    // half-edges at v, in edge declaration order
    const std::vector<HalfEdge>& incident(int v) const { return incident_.at(v); }
    int degree(int v) const { return static_cast<int>(incident_.at(v).size()); }
    bool connected() const;

private:
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<HalfEdge>> incident_;
};

// Clockwise cyclic order of half-edges at every vertex.
struct RotationScheme {
    std::vector<std::vector<HalfEdge>> order;
};

RotationScheme declaration_scheme(const Graph& g);
// trivalent only: +1 keeps declaration order, -1 reverses it
RotationScheme scheme_from_signs(const Graph& g, const std::vector<int>& signs);
void validate_scheme(const Graph& g, const RotationScheme& r);
// orientation of a trivalent vertex relative to its declaration order
int orientation_sign(const Graph& g, const RotationScheme& r, int v);

// A face is a closed walk of directed sides. Side h runs from vertex_of(h)
// to vertex_of(opposite(h)).
using Face = std::vector<HalfEdge>;

struct FaceTrace {
    std::vector<Face> faces;
    std::vector<int> lengths() const;
    // lengths sorted ascending
    std::vector<int> partition() const;
};

FaceTrace trace_faces(const Graph& g, const RotationScheme& r);
int embedding_genus(const Graph& g, const FaceTrace& f);
bool is_embedded_cycle(const Face& face);

constexpr std::uint64_t kDefaultSchemeBound = 1000000;

std::uint64_t scheme_count(const Graph& g);
// Calls visit for every scheme in odometer order (vertex 0 varies slowest).
// Returning false from visit stops early.
void enumerate_schemes(const Graph& g, const std::function<bool(const RotationScheme&)>& visit,
                       std::uint64_t bound = kDefaultSchemeBound);
int graph_genus(const Graph& g, std::uint64_t bound = kDefaultSchemeBound);
bool is_planar(const Graph& g, std::uint64_t bound = kDefaultSchemeBound);

constexpr int kDefaultMinorVertexBound = 12;
bool has_forbidden_minor(const Graph& g, int max_vertices = kDefaultMinorVertexBound);

int set_value(const Graph& g, const RotationScheme& r, const std::vector<int>& vertices);

enum class K33Family { Sym666, Sym4410, Asym18 };
const char* family_name(K33Family f);

struct K33Parts {
    std::vector<int> r; // part holding the first declared vertex
    std::vector<int> s;
};
bool is_k33(const Graph& g);
K33Parts k33_parts(const Graph& g);
// Orientation of each vertex relative to the other part's declaration order.
std::vector<int> k33_signs(const Graph& g, const RotationScheme& r);
K33Family classify_k33(const Graph& g, const RotationScheme& r);

int bipartite_genus(int s, int r);

// Text format: vertex / edge / rotation / orient lines, '#' comments.
struct GraphFile {
    Graph graph;
    RotationScheme scheme;
    bool has_rotation = false; // true if any rotation/orient line was given
};
GraphFile parse_graph(std::istream& in);
GraphFile parse_graph_string(const std::string& text);
GraphFile load_graph(const std::string& path);

std::string side_string(const Graph& g, HalfEdge h);
std::string face_string(const Graph& g, const Face& f);
std::string to_dot(const Graph& g, const FaceTrace* faces = nullptr);

// Small builders used by tests and the CLI.
Graph complete_graph(int n);
Graph complete_bipartite(int s, int r);
Graph petersen_graph();

} // namespace spinnet

#endif
