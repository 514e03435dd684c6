#include "lclvol/text_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace lclvol {

namespace {

void put_port(std::string& s, Port p) {
  s += ' ';
  if (p == kNoPort) s += '-';
  else s += std::to_string(p);
}

template <class T>
T parse_num(const std::string& tok, const char* what, std::size_t line) {
  T v{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw GraphError("line " + std::to_string(line) + ": bad " + what + " '" + tok + "'");
  return v;
}

Port parse_port_field(const std::string& tok, std::size_t line) {
  if (tok == "-") return kNoPort;
  unsigned v = parse_num<unsigned>(tok, "port", line);
  if (v == 0 || v > kMaxDegree) throw GraphError("line " + std::to_string(line) + ": port out of range");
  return static_cast<Port>(v);
}

}  // namespace

std::string serialize_instance(const Instance& inst) {
  const PortedGraph& g = inst.g;
  std::string s = std::to_string(g.n()) + ' ' + std::to_string(g.max_degree()) + '\n';
  for (Vertex v = 0; v < g.n(); ++v) {
    const NodeLabel& l = inst.lab[v];
    s += std::to_string(g.id(v)) + ' ' + std::to_string(g.degree(v)) + ' ';
    bool first = true;
    for (Port p : g.ports(v)) {
      if (!first) s += ',';
      first = false;
      s += std::to_string(p) + ':' + std::to_string(g.id(g.neighbor(v, p)));
    }
    if (first) s += '-';
    put_port(s, l.parent);
    put_port(s, l.left_child);
    put_port(s, l.right_child);
    put_port(s, l.left_neighbor);
    put_port(s, l.right_neighbor);
    s += ' ';
    s += color_char(l.color);
    s += ' ';
    s += l.level == 0 ? std::string("-") : std::to_string(l.level);
    s += ' ';
    s += l.bit < 0 ? std::string("-") : std::to_string(l.bit);
    s += '\n';
  }
  return s;
}

Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty() && line[0] != '#') return true;
    }
    return false;
  };
  if (!next_line()) throw GraphError("empty instance");
  std::size_t n = 0;
  int delta = 0;
  {
    std::istringstream hs(line);
    std::string a, b, extra;
    if (!(hs >> a >> b) || (hs >> extra)) throw GraphError("line 1: expected header 'n Δ'");
    n = parse_num<std::size_t>(a, "n", lineno);
    delta = parse_num<int>(b, "Δ", lineno);
  }
  std::vector<std::uint64_t> ids(n);
  std::vector<std::vector<std::pair<Port, std::uint64_t>>> adj(n);
  Labeling lab(n);
  std::vector<std::size_t> lines(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (!next_line()) throw GraphError("expected " + std::to_string(n) + " vertex lines");
    lines[v] = lineno;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.size() != 11) throw GraphError("line " + std::to_string(lineno) + ": expected 11 fields");
    ids[v] = parse_num<std::uint64_t>(tok[0], "id", lineno);
    int deg = parse_num<int>(tok[1], "degree", lineno);
    if (tok[2] != "-") {
      std::size_t pos = 0;
      while (pos <= tok[2].size()) {
        std::size_t comma = tok[2].find(',', pos);
        if (comma == std::string::npos) comma = tok[2].size();
        std::string item = tok[2].substr(pos, comma - pos);
        std::size_t colon = item.find(':');
        if (colon == std::string::npos) throw GraphError("line " + std::to_string(lineno) + ": bad port entry");
        Port p = parse_port_field(item.substr(0, colon), lineno);
        if (p == kNoPort) throw GraphError("line " + std::to_string(lineno) + ": bad port entry");
        adj[v].emplace_back(p, parse_num<std::uint64_t>(item.substr(colon + 1), "neighbor id", lineno));
        pos = comma + 1;
      }
    }
    if (static_cast<int>(adj[v].size()) != deg)
      throw GraphError("line " + std::to_string(lineno) + ": degree does not match port list");
    NodeLabel& l = lab[v];
    l.parent = parse_port_field(tok[3], lineno);
    l.left_child = parse_port_field(tok[4], lineno);
    l.right_child = parse_port_field(tok[5], lineno);
    l.left_neighbor = parse_port_field(tok[6], lineno);
    l.right_neighbor = parse_port_field(tok[7], lineno);
    if (tok[8].size() != 1 || !parse_color(tok[8][0]))
      throw GraphError("line " + std::to_string(lineno) + ": bad color");
    l.color = *parse_color(tok[8][0]);
    if (tok[9] != "-") {
      unsigned lv = parse_num<unsigned>(tok[9], "level", lineno);
      if (lv == 0 || lv > 255) throw GraphError("line " + std::to_string(lineno) + ": bad level");
      l.level = static_cast<std::uint8_t>(lv);
    }
    if (tok[10] == "0") l.bit = 0;
    else if (tok[10] == "1") l.bit = 1;
    else if (tok[10] != "-") throw GraphError("line " + std::to_string(lineno) + ": bad bit");
  }
  if (next_line()) throw GraphError("line " + std::to_string(lineno) + ": trailing content");

  std::unordered_map<std::uint64_t, Vertex> index;
  for (Vertex v = 0; v < n; ++v)
    if (!index.emplace(ids[v], v).second) throw GraphError("duplicate id " + std::to_string(ids[v]));
  std::vector<EdgeSpec> edges;
  for (Vertex v = 0; v < n; ++v) {
    for (auto [p, wid] : adj[v]) {
      auto it = index.find(wid);
      if (it == index.end())
        throw GraphError("line " + std::to_string(lines[v]) + ": unknown neighbor id " + std::to_string(wid));
      Vertex w = it->second;
      Port q = kNoPort;
      for (auto [pw, back] : adj[w])
        if (back == ids[v]) q = pw;
      if (q == kNoPort)
        throw GraphError("line " + std::to_string(lines[v]) + ": edge to " + std::to_string(wid) +
                         " not reciprocated");
      if (v < w) edges.push_back({v, w, p, q});
    }
  }
  Instance inst{build_graph(n, edges, ids, delta), std::move(lab)};
  return inst;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

Instance read_instance_file(const std::string& path) { return parse_instance(read_file(path)); }

std::string serialize_outputs(const PortedGraph& g, const OutputLabeling& out) {
  std::string s;
  for (Vertex v = 0; v < g.n(); ++v) s += std::to_string(g.id(v)) + ' ' + to_string(out[v]) + '\n';
  return s;
}

OutputLabeling parse_outputs(const PortedGraph& g, const std::string& text) {
  OutputLabeling out(g.n());
  std::istringstream in(text);
  std::string id, o;
  while (in >> id >> o) {
    Vertex v = g.index_of(parse_num<std::uint64_t>(id, "id", 0));
    if (v == kNoVertex) throw GraphError("output for unknown id " + id);
    out[v] = parse_output(o);
  }
  return out;
}

}  // namespace lclvol
