#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "sfq/oc.hpp"

namespace sfq::io {

namespace detail {

struct Lines {
  std::vector<std::string> lines;
  size_t pos = 0;

  explicit Lines(const std::string& text) {
    std::string cur;
    for (char ch : text) {
      if (ch == '\n') {
        lines.push_back(cur);
        cur.clear();
      } else if (ch != '\r') {
        cur += ch;
      }
    }
    if (!cur.empty()) lines.push_back(cur);
  }

  bool done() const { return pos >= lines.size(); }
  int line_no() const { return static_cast<int>(pos) + 1; }
  const std::string& peek() const { return lines[pos]; }
  std::string next() { return lines[pos++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("line " + std::to_string(line_no()) + ": " + msg);
  }
};

inline std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

inline int parse_vertex(const std::string& tok, const Lines& in) {
  if (tok.size() < 2 || (tok[0] != 'b' && tok[0] != 'w'))
    in.fail("malformed color tag in token '" + tok + "'");
  for (size_t i = 1; i < tok.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(tok[i])))
      in.fail("malformed vertex label in token '" + tok + "'");
  const int label = std::stoi(tok.substr(1));
  return tok[0] == 'b' ? black_vertex(label) : white_vertex(label);
}

inline Edge parse_edge(const std::string& tok, const Lines& in) {
  const auto gt = tok.find('>');
  if (gt == std::string::npos) in.fail("edge token '" + tok + "' lacks '>'");
  return {parse_vertex(tok.substr(0, gt), in), parse_vertex(tok.substr(gt + 1), in)};
}

inline int parse_int_field(const std::string& line, const std::string& key, const Lines& in) {
  const auto ts = tokens(line);
  if (ts.size() != 2 || ts[0] != key) in.fail("expected '" + key + " <int>'");
  try {
    return std::stoi(ts[1]);
  } catch (const std::exception&) {
    in.fail("malformed integer in '" + key + "' field");
  }
}

}  // namespace detail

struct GraphRecord {
  Graph graph;
  Rat coeff = 1;
  bool zero = false;  // explicit zero record
};

inline std::string edge_token(const Edge& e) {
  return vertex_str(e.tail) + ">" + vertex_str(e.head);
}

inline std::string serialize_record(const GraphRecord& r) {
  std::string out;
  out += "nb " + std::to_string(r.graph.nb) + "\n";
  out += "nw " + std::to_string(r.graph.nw) + "\n";
  if (r.zero) {
    out += "zero\n";
    return out;
  }
  out += "coeff " + rat_str(r.coeff) + "\n";
  out += "edges";
  for (const Edge& e : r.graph.edges) out += " " + edge_token(e);
  out += "\n";
  return out;
}

inline GraphRecord parse_record(detail::Lines& in) {
  GraphRecord r;
  while (!in.done() && in.peek().empty()) in.next();
  if (in.done()) in.fail("expected a graph record");
  r.graph.nb = detail::parse_int_field(in.next(), "nb", in);
  if (in.done()) in.fail("expected 'nw' line");
  r.graph.nw = detail::parse_int_field(in.next(), "nw", in);
  if (in.done()) in.fail("expected 'coeff', 'edges' or 'zero' line");
  if (detail::tokens(in.peek()) == std::vector<std::string>{"zero"}) {
    in.next();
    r.zero = true;
    return r;
  }
  auto ts = detail::tokens(in.peek());
  if (!ts.empty() && ts[0] == "coeff") {
    if (ts.size() != 2) in.fail("expected 'coeff <p/q>'");
    try {
      r.coeff = parse_rat(ts[1]);
    } catch (const ParseError& e) {
      in.fail(e.what());
    }
    in.next();
  }
  if (in.done()) in.fail("expected 'edges' line");
  ts = detail::tokens(in.next());
  if (ts.empty() || ts[0] != "edges") {
    in.pos--;
    in.fail("expected 'edges' line");
  }
  for (size_t i = 1; i < ts.size(); ++i) {
    in.pos--;  // report errors on the edges line
    Edge e = detail::parse_edge(ts[i], in);
    in.pos++;
    r.graph.edges.push_back(e);
  }
  try {
    r.graph.validate();
  } catch (const GraphError& e) {
    in.fail(e.what());
  }
  return r;
}

/// A vector file is a sequence of records separated by blank lines; all
/// records must share one bi-arity.
inline GraphVector parse_vector(const std::string& text, Color color = Color::o) {
  detail::Lines in(text);
  std::vector<GraphRecord> recs;
  while (true) {
    while (!in.done() && in.peek().empty()) in.next();
    if (in.done()) break;
    recs.push_back(parse_record(in));
  }
  if (recs.empty()) throw ParseError("empty vector file");
  GraphVector v = GraphVector::zero(recs[0].graph.nb, recs[0].graph.nw, color);
  for (const GraphRecord& r : recs) {
    if (r.graph.nb != v.nb || r.graph.nw != v.nw)
      throw ParseError("records with mixed bi-arity in one vector file");
    if (!r.zero) v.accumulate(r.graph, r.coeff);
  }
  return v;
}

inline std::string serialize_vector(const GraphVector& v) {
  if (v.is_zero()) {
    GraphRecord r;
    r.graph.nb = v.nb;
    r.graph.nw = v.nw;
    r.zero = true;
    return serialize_record(r);
  }
  std::string out;
  bool first = true;
  for (const auto& [g, c] : v.terms) {
    if (!first) out += "\n";
    first = false;
    out += serialize_record({g, c, false});
  }
  return out;
}

// ---------------------------------------------------------------------------
// AlphaTable files
// ---------------------------------------------------------------------------

inline std::string serialize_alpha(const AlphaTable& a) {
  std::string out = "alpha v1\n";
  out += "nmax " + std::to_string(a.nmax()) + "\n";
  out += "kmax " + std::to_string(a.kmax()) + "\n";
  for (const auto& [nk, v] : a.entries()) {
    out += "corolla o:" + std::to_string(nk.first) + "," + std::to_string(nk.second) + "\n";
    for (const auto& [g, c] : v.terms) {
      out += "term " + rat_str(c);
      for (const Edge& e : g.edges) out += " " + edge_token(e);
      out += "\n";
    }
  }
  return out;
}

inline AlphaTable parse_alpha(const std::string& text) {
  detail::Lines in(text);
  if (in.done() || in.next() != "alpha v1") {
    in.pos = 0;
    in.fail("expected header 'alpha v1'");
  }
  const int nmax = detail::parse_int_field(in.next(), "nmax", in);
  const int kmax = detail::parse_int_field(in.next(), "kmax", in);
  AlphaTable a(nmax, kmax);
  int cur_n = -1, cur_k = -1;
  GraphVector cur;
  auto flush = [&]() {
    if (cur_n >= 0) a.set_entry(cur_n, cur_k, std::move(cur));
  };
  while (!in.done()) {
    if (in.peek().empty()) {
      in.next();
      continue;
    }
    auto ts = detail::tokens(in.peek());
    if (ts[0] == "corolla") {
      if (ts.size() != 2 || ts[1].substr(0, 2) != "o:") in.fail("expected 'corolla o:n,k'");
      const auto comma = ts[1].find(',');
      if (comma == std::string::npos) in.fail("expected 'corolla o:n,k'");
      flush();
      try {
        cur_n = std::stoi(ts[1].substr(2, comma - 2));
        cur_k = std::stoi(ts[1].substr(comma + 1));
      } catch (const std::exception&) {
        in.fail("malformed corolla arity");
      }
      cur = GraphVector::zero(cur_n, cur_k, Color::o);
      in.next();
    } else if (ts[0] == "term") {
      if (cur_n < 0) in.fail("'term' before any 'corolla'");
      if (ts.size() < 2) in.fail("expected 'term <p/q> <edges...>'");
      Rat c;
      try {
        c = parse_rat(ts[1]);
      } catch (const ParseError& e) {
        in.fail(e.what());
      }
      Graph g{cur_n, cur_k, {}};
      for (size_t i = 2; i < ts.size(); ++i) g.edges.push_back(detail::parse_edge(ts[i], in));
      try {
        g.validate();
      } catch (const GraphError& e) {
        in.fail(e.what());
      }
      cur.accumulate(g, c);
      in.next();
    } else {
      in.fail("unexpected line '" + in.peek() + "'");
    }
  }
  flush();
  return a;
}

inline std::string verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Unchecked: return "UNCHECKED";
  }
  return "?";
}

inline std::string render_verify(const std::vector<VerifyItem>& items) {
  std::string out;
  for (const VerifyItem& it : items) {
    out += "verify " + it.corolla.str() + " " + verdict_str(it.verdict);
    if (!it.detail.empty()) out += " (" + it.detail + ")";
    out += "\n";
  }
  return out;
}

}  // namespace sfq::io
