#pragma once

// Plain-text edge list files. Format: optional '#' comment lines anywhere,
// one 'n=<count>' header line, then one 'pledger,lender' pair per line.
// Saved files are canonical (sorted pairs, no comments), so load(save(x))
// reproduces x exactly.

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rehypo/errors.hpp"
#include "rehypo/network.hpp"

namespace rehypo {

namespace detail {

inline std::string strip(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline int parse_int(const std::string& token, const std::string& path, int line_no) {
  try {
    std::size_t pos = 0;
    const int value = std::stoi(token, &pos);
    if (pos != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw ParseError(path + ":" + std::to_string(line_no) + ": expected an integer, got '" +
                     token + "'");
  }
}

}  // namespace detail

inline RehypoNetwork load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_edge_list: cannot open '" + path + "'");

  std::string line;
  int line_no = 0;
  int n = -1;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = detail::strip(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    if (n < 0) {
      if (body.rfind("n=", 0) != 0)
        throw ParseError(path + ":" + std::to_string(line_no) +
                         ": expected 'n=<count>' header before edges");
      n = detail::parse_int(body.substr(2), path, line_no);
      continue;
    }
    const std::size_t comma = body.find(',');
    if (comma == std::string::npos)
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected 'pledger,lender'");
    edges.push_back(Edge{detail::parse_int(detail::strip(body.substr(0, comma)), path, line_no),
                         detail::parse_int(detail::strip(body.substr(comma + 1)), path, line_no)});
  }
  if (n < 0) throw ParseError(path + ": missing 'n=<count>' header");
  try {
    return network_from_edges(n, std::move(edges));
  } catch (const std::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline void save_edge_list(const RehypoNetwork& net, const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps \n endings everywhere
  if (!out) throw IoError("save_edge_list: cannot open '" + path + "' for writing");
  out << "n=" << net.node_count() << "\n";
  for (const Edge& e : net.edges()) out << e.pledger << "," << e.lender << "\n";
  if (!out) throw IoError("save_edge_list: write to '" + path + "' failed");
}

}  // namespace rehypo
