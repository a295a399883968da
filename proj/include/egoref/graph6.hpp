#pragma once

#include <string>

#include "egoref/graph.hpp"

namespace egoref {

// Decodes one graph6 record (short form, n <= 62). The result carries an
// empty proposition universe. Errors report the byte offset.
Graph parse_graph6(const std::string& text);

// Short-form graph6 encoding of an unlabeled graph (labels are dropped).
std::string encode_graph6(const Graph& g);

}  // namespace egoref
