#include "clusterprep/graph.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

#include "clusterprep/errors.hpp"

namespace clusterprep {

namespace {

void finalize(CouplingGraph& g) {
    for (auto& [a, b] : g.edges)
        if (a > b) std::swap(a, b);
    std::sort(g.edges.begin(), g.edges.end());
}

} // namespace

CouplingGraph complete_graph(int n) {
    if (n < 2) throw std::invalid_argument("complete_graph: need n >= 2");
    CouplingGraph g{n, {}, "K" + std::to_string(n)};
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) g.edges.emplace_back(a, b);
    return g;
}

CouplingGraph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle_graph: need n >= 3");
    CouplingGraph g{n, {}, "C" + std::to_string(n)};
    for (int a = 0; a < n; ++a) g.edges.emplace_back(a, (a + 1) % n);
    finalize(g);
    return g;
}

CouplingGraph path_graph(int n) {
    if (n < 2) throw std::invalid_argument("path_graph: need n >= 2");
    CouplingGraph g{n, {}, "L" + std::to_string(n)};
    for (int a = 0; a + 1 < n; ++a) g.edges.emplace_back(a, a + 1);
    return g;
}

CouplingGraph grid_graph(int rows, int cols) {
    if (rows < 1 || cols < 1 || rows * cols < 2)
        throw std::invalid_argument("grid_graph: need rows, cols >= 1 and at least 2 vertices");
    CouplingGraph g{rows * cols, {}, "G" + std::to_string(rows) + "x" + std::to_string(cols)};
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            int v = r * cols + c; // row-major labels
            if (c + 1 < cols) g.edges.emplace_back(v, v + 1);
            if (r + 1 < rows) g.edges.emplace_back(v, v + cols);
        }
    finalize(g);
    return g;
}

namespace {

// K<n>, C<n>, L<n>, G<r>x<c> (case-insensitive); returns false if the text is
// not shaped like a token at all.
bool try_family_token(const std::string& text, CouplingGraph& out) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) return false;
    char kind = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    if (kind != 'K' && kind != 'C' && kind != 'L' && kind != 'G') return false;
    std::string rest = s.substr(1);
    if (rest.empty()) return false;
    auto all_digits = [](const std::string& t) {
        return !t.empty() && std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); });
    };
    if (kind == 'G') {
        auto xpos = rest.find_first_of("xX");
        if (xpos == std::string::npos) return false;
        std::string r = rest.substr(0, xpos), c = rest.substr(xpos + 1);
        if (!all_digits(r) || !all_digits(c)) return false;
        out = grid_graph(std::stoi(r), std::stoi(c));
        return true;
    }
    if (!all_digits(rest)) return false;
    int n = std::stoi(rest);
    switch (kind) {
        case 'K': out = complete_graph(n); break;
        case 'C': out = cycle_graph(n); break;
        case 'L': out = path_graph(n); break;
    }
    return true;
}

} // namespace

CouplingGraph parse_graph(const std::string& text) {
    CouplingGraph tok;
    bool looks_like_token = false;
    try {
        looks_like_token = try_family_token(text, tok);
    } catch (const std::invalid_argument& e) {
        throw parse_error(e.what(), 1); // e.g. "K1"
    }
    if (looks_like_token) return tok;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    int n = -1;
    CouplingGraph g;
    std::set<std::pair<int, int>> seen;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue; // blank
        if (n < 0) {
            if (first.rfind("n=", 0) != 0)
                throw parse_error("expected 'n=<count>' header", line_no);
            try {
                n = std::stoi(first.substr(2));
            } catch (const std::exception&) {
                throw parse_error("bad vertex count '" + first + "'", line_no);
            }
            if (n < 1) throw parse_error("vertex count must be positive", line_no);
            std::string extra;
            if (ls >> extra) throw parse_error("unexpected text after header", line_no);
            g.n_qubits = n;
            continue;
        }
        int a, b;
        std::istringstream es(line);
        if (!(es >> a >> b)) throw parse_error("expected edge 'a b'", line_no);
        std::string extra;
        if (es >> extra) throw parse_error("unexpected text after edge", line_no);
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw parse_error("vertex out of range [0," + std::to_string(n - 1) + "]", line_no);
        if (a == b) throw parse_error("self-loop not allowed", line_no);
        auto e = std::minmax(a, b);
        if (!seen.insert({e.first, e.second}).second)
            throw parse_error("duplicate edge", line_no);
        g.edges.emplace_back(e.first, e.second);
    }
    if (n < 0) throw parse_error("empty graph description", line_no ? line_no : 1);
    std::sort(g.edges.begin(), g.edges.end());
    g.name = "edges(" + std::to_string(n) + ")";
    return g;
}

std::string render(const CouplingGraph& g) {
    std::ostringstream out;
    out << "n=" << g.n_qubits << "\n";
    auto edges = g.edges;
    std::sort(edges.begin(), edges.end());
    for (const auto& [a, b] : edges) out << a << " " << b << "\n";
    return out.str();
}

} // namespace clusterprep
