#pragma once

#include <filesystem>
#include <iosfwd>

#include "dagpart/graph.hpp"

namespace dagpart {

// Graph files: header "n m 11", then one line per node: "c s1 w1 s2 w2 ...",
// with zero-based successor ids. Lines starting with '%' are comments.

WeightedDigraph read_graph(std::istream& in);
WeightedDigraph load_graph(const std::filesystem::path& path);

/// Canonical form: adjacency sorted by successor id, single space separators.
void write_graph(std::ostream& out, const WeightedDigraph& g);
void save_graph(const std::filesystem::path& path, const WeightedDigraph& g);

// Partition files: one block id per line, line i for node i-1.

Assignment read_assignment(std::istream& in, NodeId node_count);
Assignment load_assignment(const std::filesystem::path& path, NodeId node_count);
void write_assignment(std::ostream& out, const Assignment& blocks);
void save_assignment(const std::filesystem::path& path, const Assignment& blocks);

}  // namespace dagpart
