#include "egoref/graph6.hpp"

namespace egoref {

Graph parse_graph6(const std::string& raw) {
    std::string text = raw;
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    if (text.empty()) throw ParseError("empty graph6 record", 0);
    if (text[0] == '~')
        throw ParseError("long-form graph6 header not supported (n > 62)", 0);
    unsigned char h = static_cast<unsigned char>(text[0]);
    if (h < 63 || h > 126) throw ParseError("malformed length header", 0);
    int n = h - 63;
    std::size_t bits_needed = static_cast<std::size_t>(n) * (n - 1) / 2;
    std::size_t bytes_needed = (bits_needed + 5) / 6;
    if (text.size() < 1 + bytes_needed)
        throw ParseError("truncated edge bits: need " + std::to_string(bytes_needed) + " bytes", text.size());
    if (text.size() > 1 + bytes_needed)
        throw ParseError("trailing garbage after edge bits", 1 + bytes_needed);

    Graph g(n, PropositionUniverse{});
    // Edge bits run column-major over the upper triangle: (0,1), (0,2), (1,2),
    // (0,3), ... with the most significant of each 6-bit group first.
    std::size_t bit = 0;
    for (int col = 1; col < n; ++col) {
        for (int row = 0; row < col; ++row, ++bit) {
            std::size_t byte_idx = 1 + bit / 6;
            unsigned char c = static_cast<unsigned char>(text[byte_idx]);
            if (c < 63 || c > 126) throw ParseError("non-printable byte in edge bits", byte_idx);
            int val = c - 63;
            if ((val >> (5 - bit % 6)) & 1) g.add_edge(row, col);
        }
    }
    // Padding bits in the final byte must be zero.
    for (; bit < bytes_needed * 6; ++bit) {
        unsigned char c = static_cast<unsigned char>(text[1 + bit / 6]);
        if (((c - 63) >> (5 - bit % 6)) & 1)
            throw ParseError("nonzero padding bit", 1 + bit / 6);
    }
    return g;
}

std::string encode_graph6(const Graph& g) {
    int n = g.node_count();
    if (n > 62) throw Error("encode_graph6: only short form (n <= 62) supported");
    std::string out;
    out += static_cast<char>(n + 63);
    std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
    std::vector<int> vals((bits + 5) / 6, 0);
    std::size_t bit = 0;
    for (int col = 1; col < n; ++col)
        for (int row = 0; row < col; ++row, ++bit)
            if (g.adjacent(row, col)) vals[bit / 6] |= 1 << (5 - bit % 6);
    for (int v : vals) out += static_cast<char>(v + 63);
    return out;
}

}  // namespace egoref
