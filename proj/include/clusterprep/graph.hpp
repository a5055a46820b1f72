#pragma once

#include <string>
#include <utility>
#include <vector>

namespace clusterprep {

// Undirected coupling graph on qubits 0..n_qubits-1.
// Edges are stored as (min,max) pairs, sorted, without duplicates or self-loops.
struct CouplingGraph {
    int n_qubits = 0;
    std::vector<std::pair<int, int>> edges;
    std::string name; // display label ("K3", "G2x3", ...); not part of identity

    bool operator==(const CouplingGraph& other) const {
        return n_qubits == other.n_qubits && edges == other.edges;
    }
};

CouplingGraph complete_graph(int n); // K_n, n >= 2
CouplingGraph cycle_graph(int n);    // C_n, n >= 3
CouplingGraph path_graph(int n);     // L_n, n >= 2
CouplingGraph grid_graph(int rows, int cols); // G_{rows,cols}, row-major labels

// Accepts a family token (K<n>, C<n>, L<n>, G<r>x<c>, case-insensitive) or an
// edge-list text: first line "n=<count>", then one "a b" line per edge.
// Blank lines and '#' comments are ignored. Throws parse_error with a line number.
CouplingGraph parse_graph(const std::string& text);

// Canonical edge-list text: "n=<n>" then sorted "a b" lines.
// parse_graph(render(g)) reproduces g.
std::string render(const CouplingGraph& g);

} // namespace clusterprep
