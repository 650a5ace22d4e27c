#include "spinnet/graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <unordered_set>

namespace spinnet {
namespace {

// Simple graph on at most 16 vertices as adjacency bitmasks.
using Adj = std::vector<std::uint16_t>;

int edge_total(const Adj& a)
{
    int s = 0;
    for (auto m : a)
        s += std::popcount(static_cast<unsigned>(m));
    return s / 2;
}

Adj remove_vertex(const Adj& a, int v)
{
    Adj out;
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
        if (i == v)
            continue;
        unsigned m = a[i];
        unsigned low = m & ((1u << v) - 1u);
        unsigned high = (m >> (v + 1)) << v;
        out.push_back(static_cast<std::uint16_t>(low | high));
    }
    return out;
}

// merge v into u
Adj contract(const Adj& a, int u, int v)
{
    Adj b = a;
    b[u] = static_cast<std::uint16_t>((b[u] | b[v]) & ~((1u << u) | (1u << v)));
    for (int i = 0; i < static_cast<int>(b.size()); ++i)
        if (b[i] & (1u << v))
            b[i] = static_cast<std::uint16_t>((b[i] & ~(1u << v)) | (i == u ? 0u : (1u << u)));
    return remove_vertex(b, v);
}

// Drop vertices of degree <= 1 and smooth degree-2 vertices. Both keep
// K5/K3,3 minors since those have minimum degree 3.
Adj simplify(Adj a)
{
    for (bool changed = true; changed;) {
        changed = false;
        for (int v = 0; v < static_cast<int>(a.size()); ++v) {
            int d = std::popcount(static_cast<unsigned>(a[v]));
            if (d <= 1) {
                a = remove_vertex(a, v);
                changed = true;
                break;
            }
            if (d == 2) {
                int u = std::countr_zero(static_cast<unsigned>(a[v]));
                a = contract(a, u, v);
                changed = true;
                break;
            }
        }
    }
    return a;
}

bool has_k5(const Adj& a)
{
    return a.size() == 5 && edge_total(a) == 10;
}

bool has_k33(const Adj& a)
{
    if (a.size() != 6)
        return false;
    for (unsigned mask = 0; mask < 64; ++mask) {
        if (std::popcount(mask) != 3 || !(mask & 1u))
            continue;
        bool ok = true;
        for (int v = 0; v < 6 && ok; ++v) {
            unsigned other = (mask & (1u << v)) ? (~mask & 63u) : mask;
            ok = (a[v] & other) == other;
        }
        if (ok)
            return true;
    }
    return false;
}

// Relabel by a degree-refined order; equal keys imply isomorphic graphs.
std::string key_of(const Adj& a)
{
    int n = static_cast<int>(a.size());
    std::vector<std::pair<std::vector<int>, int>> sig(n);
    for (int v = 0; v < n; ++v) {
        std::vector<int> s{std::popcount(static_cast<unsigned>(a[v]))};
        std::vector<int> nb;
        for (int w = 0; w < n; ++w)
            if (a[v] & (1u << w))
                nb.push_back(std::popcount(static_cast<unsigned>(a[w])));
        std::sort(nb.begin(), nb.end());
        s.insert(s.end(), nb.begin(), nb.end());
        sig[v] = {s, v};
    }
    std::sort(sig.begin(), sig.end());
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i)
        pos[sig[i].second] = i;
    std::string key(static_cast<std::size_t>(n) * 2, '\0');
    for (int v = 0; v < n; ++v) {
        unsigned m = 0;
        for (int w = 0; w < n; ++w)
            if (a[v] & (1u << w))
                m |= 1u << pos[w];
        key[2 * pos[v]] = static_cast<char>(m & 0xff);
        key[2 * pos[v] + 1] = static_cast<char>(m >> 8);
    }
    return key;
}

struct Search {
    std::unordered_set<std::string> seen;

    bool run(Adj a)
    {
        a = simplify(std::move(a));
        int n = static_cast<int>(a.size());
        int e = edge_total(a);
        if (n < 5 || e < 9)
            return false;
        if (has_k5(a) || has_k33(a))
            return true;
        if (n == 5)
            return false;
        if (!seen.insert(key_of(a)).second)
            return false;
        for (int v = 0; v < n; ++v)
            if (run(remove_vertex(a, v)))
                return true;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if ((a[u] & (1u << v)) && run(contract(a, u, v)))
                    return true;
        return false;
    }
};

} // namespace

bool has_forbidden_minor(const Graph& g, int max_vertices)
{
    if (g.vertex_count() > max_vertices || g.vertex_count() > 16)
        throw BoundExceeded("refusing minor search on " + std::to_string(g.vertex_count()) +
                                " vertices (bound " + std::to_string(max_vertices) + ")",
                            static_cast<std::uint64_t>(g.vertex_count()));
    Adj a(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int e = 0; e < g.edge_count(); ++e) {
        int u = g.edge(e).u, v = g.edge(e).v;
        a[u] = static_cast<std::uint16_t>(a[u] | (1u << v));
        a[v] = static_cast<std::uint16_t>(a[v] | (1u << u));
    }
    Search s;
    return s.run(std::move(a));
}

} // namespace spinnet
