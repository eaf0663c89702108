#include "dagpart/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "dagpart/errors.hpp"

namespace dagpart {
namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  /// Next line with content after comment stripping; false at end of input.
  bool next(std::string_view& content) {
    while (std::getline(in_, buffer_)) {
      ++line_;
      std::string_view view(buffer_);
      if (auto pct = view.find('%'); pct != std::string_view::npos) view = view.substr(0, pct);
      if (view.find_first_not_of(" \t\r") == std::string_view::npos) continue;
      content = view;
      return true;
    }
    return false;
  }

  std::size_t line() const noexcept { return line_; }

 private:
  std::istream& in_;
  std::string buffer_;
  std::size_t line_ = 0;
};

std::vector<std::string_view> tokenize(std::string_view s) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) tokens.push_back(s.substr(i, j - i));
    i = j;
  }
  return tokens;
}

std::uint64_t parse_unsigned(std::string_view token, std::size_t line, const char* what) {
  if (!token.empty() && token.front() == '-') {
    throw ParseError(std::string("negative ") + what + " '" + std::string(token) + "'", line);
  }
  std::uint64_t value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(std::string("invalid ") + what + " '" + std::string(token) + "'", line);
  }
  return value;
}

}  // namespace

WeightedDigraph read_graph(std::istream& in) {
  LineReader reader(in);
  std::string_view content;
  if (!reader.next(content)) throw ParseError("missing header line");
  const auto header = tokenize(content);
  if (header.size() != 3) {
    throw ParseError("header must be 'n m 11'", reader.line());
  }
  const auto n = parse_unsigned(header[0], reader.line(), "node count");
  const auto m = parse_unsigned(header[1], reader.line(), "edge count");
  if (header[2] != "11") {
    throw ParseError("format code must be 11 (node and edge weights), got '" + std::string(header[2]) + "'",
                     reader.line());
  }
  if (n > std::numeric_limits<NodeId>::max() - 1) throw ParseError("node count too large", reader.line());

  DigraphBuilder builder(static_cast<NodeId>(n));
  std::uint64_t listed_edges = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (!reader.next(content)) {
      throw ParseError("expected " + std::to_string(n) + " node lines, found " + std::to_string(v), reader.line());
    }
    const auto tokens = tokenize(content);
    if (tokens.size() % 2 == 0) {
      throw ParseError("node line must be 'weight (successor weight)*'", reader.line());
    }
    builder.set_node_weight(v, parse_unsigned(tokens[0], reader.line(), "node weight"));
    for (std::size_t t = 1; t < tokens.size(); t += 2) {
      const auto target = parse_unsigned(tokens[t], reader.line(), "successor id");
      const auto weight = parse_unsigned(tokens[t + 1], reader.line(), "edge weight");
      if (target >= n) {
        throw ParseError("successor " + std::to_string(target) + " out of range", reader.line());
      }
      if (target == v) throw ParseError("self-loop on node " + std::to_string(v), reader.line());
      if (weight == 0) throw ParseError("edge weight must be positive", reader.line());
      builder.add_edge(v, static_cast<NodeId>(target), weight);
      ++listed_edges;
    }
  }
  if (reader.next(content)) {
    throw ParseError("unexpected content after " + std::to_string(n) + " node lines", reader.line());
  }
  if (listed_edges != m) {
    throw ParseError("header declares " + std::to_string(m) + " edges but " + std::to_string(listed_edges) +
                     " are listed", 1);
  }
  return std::move(builder).build();
}

WeightedDigraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file " + path.string());
  return read_graph(in);
}

void write_graph(std::ostream& out, const WeightedDigraph& g) {
  out << g.node_count() << ' ' << g.edge_count() << " 11\n";
  for (NodeId v = 0; v < g.node_count(); ++v) {
    out << g.node_weight(v);
    for (const auto& e : g.out_edges(v)) out << ' ' << e.target << ' ' << e.weight;
    out << '\n';
  }
}

void save_graph(const std::filesystem::path& path, const WeightedDigraph& g) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write graph file " + path.string());
  write_graph(out, g);
}

Assignment read_assignment(std::istream& in, NodeId node_count) {
  LineReader reader(in);
  Assignment blocks;
  blocks.reserve(node_count);
  std::string_view content;
  while (reader.next(content)) {
    const auto tokens = tokenize(content);
    if (tokens.size() != 1) throw ParseError("partition line must hold one block id", reader.line());
    const auto b = parse_unsigned(tokens[0], reader.line(), "block id");
    if (b > std::numeric_limits<BlockId>::max() - 1) throw ParseError("block id too large", reader.line());
    blocks.push_back(static_cast<BlockId>(b));
  }
  if (blocks.size() != node_count) {
    throw ParseError("partition lists " + std::to_string(blocks.size()) + " nodes, graph has " +
                     std::to_string(node_count));
  }
  return blocks;
}

Assignment load_assignment(const std::filesystem::path& path, NodeId node_count) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open partition file " + path.string());
  return read_assignment(in, node_count);
}

void write_assignment(std::ostream& out, const Assignment& blocks) {
  for (auto b : blocks) out << b << '\n';
}

void save_assignment(const std::filesystem::path& path, const Assignment& blocks) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write partition file " + path.string());
  write_assignment(out, blocks);
}

}  // namespace dagpart
