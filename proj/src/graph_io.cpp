#include "npaiso/graph_io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace npaiso {

namespace {

constexpr std::string_view kGraph6Header = ">>graph6<<";

bool is_blank(char c) { return c == ' ' || c == '\n' || c == '\r' || c == '\t'; }

std::uint32_t sextet(std::string_view s, std::size_t pos) {
  if (pos >= s.size()) throw ParseError("graph6: truncated input", pos);
  const auto c = static_cast<unsigned char>(s[pos]);
  if (c < 63 || c > 126) {
    throw ParseError("graph6: byte " + std::to_string(c) + " outside printable range 63..126", pos);
  }
  return c - 63u;
}

}  // namespace

Graph parse_graph6(std::string_view text) {
  std::size_t end = text.size();
  while (end > 0 && is_blank(text[end - 1])) --end;
  std::size_t pos = 0;
  if (text.substr(0, kGraph6Header.size()) == kGraph6Header) pos = kGraph6Header.size();
  if (pos >= end) throw ParseError("graph6: empty input", pos);
  const std::string_view s = text.substr(0, end);

  std::size_t n = 0;
  if (s[pos] == '~') {
    if (pos + 1 < end && s[pos + 1] == '~') {
      pos += 2;
      for (int i = 0; i < 6; ++i) n = (n << 6) | sextet(s, pos++);
    } else {
      pos += 1;
      for (int i = 0; i < 3; ++i) n = (n << 6) | sextet(s, pos++);
    }
  } else {
    n = sextet(s, pos++);
  }

  const std::size_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::size_t bytes = (bits + 5) / 6;
  if (end - pos < bytes) throw ParseError("graph6: truncated bit field", end);
  if (end - pos > bytes) throw ParseError("graph6: trailing bytes after bit field", pos + bytes);

  std::vector<Edge> edges;
  std::size_t bit = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i, ++bit) {
      const std::uint32_t word = sextet(s, pos + bit / 6);
      if ((word >> (5 - bit % 6)) & 1u) edges.emplace_back(i, j);
    }
  }
  // Padding bits must be zero.
  for (; bit < bytes * 6; ++bit) {
    if ((sextet(s, pos + bit / 6) >> (5 - bit % 6)) & 1u) {
      throw ParseError("graph6: nonzero padding bit", pos + bit / 6);
    }
  }
  return Graph(n, edges);
}

std::string encode_graph6(const Graph& g) {
  if (!g.is_simple()) throw GraphError("graph6 cannot encode loops");
  const std::size_t n = g.vertex_count();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back('~');
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  } else {
    out.append("~~");
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  }
  unsigned acc = 0;
  int filled = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1u : 0u);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  return out;
}

Graph edge_list_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("n")) throw GraphError("edge list: missing \"n\"");
  const auto& jn = doc.at("n");
  if (!jn.is_number_integer() || jn.get<long long>() < 0) {
    throw GraphError("edge list: \"n\" must be a non-negative integer");
  }
  const auto n = jn.get<std::size_t>();
  std::vector<Edge> edges;
  if (doc.contains("edges")) {
    for (const auto& pair : doc.at("edges")) {
      if (!pair.is_array() || pair.size() != 2) throw GraphError("edge list: edges must be pairs");
      const long long a = pair[0].get<long long>();
      const long long b = pair[1].get<long long>();
      if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n) {
        throw GraphError("edge list: endpoint out of range in [" + std::to_string(a) + "," +
                         std::to_string(b) + "]");
      }
      edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
    }
  }
  return Graph(n, edges);
}

Graph parse_edge_list(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("edge list: ") + e.what(), e.byte);
  }
  return edge_list_from_json(doc);
}

nlohmann::json edge_list_to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.first, e.second});
  return {{"n", g.vertex_count()}, {"edges", edges}};
}

Graph parse_graph_auto(std::string_view text) {
  for (char c : text) {
    if (is_blank(c)) continue;
    return c == '{' ? parse_edge_list(text) : parse_graph6(text);
  }
  throw ParseError("empty input", text.size());
}

std::string read_text_file(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace npaiso
