#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "npaiso/graph.hpp"

namespace npaiso {

/// Raised by the parsers; `offset()` is the byte offset of the offending input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// graph6 decoding. Accepts an optional ">>graph6<<" header and trailing
/// whitespace. Simple graphs only.
Graph parse_graph6(std::string_view text);
/// graph6 encoding; throws GraphError on looped graphs.
std::string encode_graph6(const Graph& g);

/// {"n": int, "edges": [[int,int], ...]}; loops allowed, duplicates collapsed.
Graph parse_edge_list(std::string_view text);
Graph edge_list_from_json(const nlohmann::json& doc);
nlohmann::json edge_list_to_json(const Graph& g);

/// JSON edge list when the first non-blank byte is '{', graph6 otherwise.
Graph parse_graph_auto(std::string_view text);

/// Reads a whole file, or stdin when path is "-".
std::string read_text_file(const std::string& path);

}  // namespace npaiso
