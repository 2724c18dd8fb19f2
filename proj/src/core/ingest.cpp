/*
 * Copyright 2026 The cgraph Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "core/ingest.hpp"

#include "core/text.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

namespace curriculum {

SyntaxError::SyntaxError(std::string code, int line, int column, const std::string& message)
    : Error(ErrorCategory::Validation, std::move(code),
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line), column_(column) {}

namespace {

// ---- native format ---------------------------------------------------------

struct Field {
  std::string_view text;
  int column = 1; // 1-based, of the first non-blank character
};

/// Splits on '|' that is not preceded by a backslash escape.
std::vector<Field> split_fields(std::string_view line, std::size_t offset) {
  std::vector<Field> out;
  std::size_t start = offset;
  for (std::size_t i = offset; i <= line.size(); ++i) {
    if (i < line.size() && line[i] == '\\') {
      ++i;
      continue;
    }
    if (i == line.size() || line[i] == '|') {
      auto raw = line.substr(start, i - start);
      auto lead = raw.find_first_not_of(" \t");
      out.push_back({text::trim(raw), static_cast<int>(start + (lead == std::string_view::npos
                                                                     ? 0
                                                                     : lead)) + 1});
      start = i + 1;
    }
  }
  return out;
}

std::string unescape_title(const Field& f, int line) {
  std::string out;
  for (std::size_t i = 0; i < f.text.size(); ++i) {
    char c = f.text[i];
    if (c != '\\') {
      out += c;
      continue;
    }
    if (i + 1 < f.text.size() && (f.text[i + 1] == '|' || f.text[i + 1] == '\\')) {
      out += f.text[++i];
      continue;
    }
    throw SyntaxError("BAD_ESCAPE", line, f.column + static_cast<int>(i),
                      "only '\\|' and '\\\\' are valid escapes in titles");
  }
  return out;
}

std::string escape_title(std::string_view title) {
  std::string out;
  for (char c : title) {
    if (c == '|' || c == '\\')
      out += '\\';
    out += c;
  }
  return out;
}

int column_of(std::string_view line, std::string_view token) {
  return static_cast<int>(token.data() - line.data()) + 1;
}

std::string opt_field(std::string_view v) { return v == "-" ? std::string() : std::string(v); }

} // namespace

NativeDocument parse_native(std::string_view content) {
  NativeDocument doc;
  auto& g = doc.graph;
  bool have_header = false;
  std::map<std::string, int> meta_lines;
  std::set<std::string> explicit_groups;
  int line_no = 0;
  for (auto raw : text::split(content, '\n')) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r')
      raw.remove_suffix(1);
    auto line = text::trim(raw);
    if (line.empty() || line.front() == '#')
      continue;
    auto f = text::split_ws(line);
    const auto keyword = f[0];
    const int kw_col = column_of(raw, keyword);

    if (keyword == "graph") {
      if (have_header)
        throw SyntaxError("DUPLICATE_DECLARATION", line_no, kw_col, "second 'graph' header");
      if (f.size() != 2)
        throw SyntaxError("SYNTAX", line_no, kw_col, "expected 'graph <discipline>'");
      g.discipline = f[1];
      have_header = true;
    } else if (keyword == "meta") {
      if (f.size() < 2)
        throw SyntaxError("SYNTAX", line_no, kw_col, "expected 'meta <key> <value>'");
      std::string key(f[1]);
      if (meta_lines.count(key))
        throw SyntaxError("DUPLICATE_DECLARATION", line_no, column_of(raw, f[1]),
                          "meta key '" + key + "' already declared on line " +
                              std::to_string(meta_lines[key]));
      meta_lines[key] = line_no;
      auto after = f[1].data() + f[1].size() - line.data();
      g.metadata[key] = std::string(text::trim(line.substr(static_cast<std::size_t>(after))));
    } else if (keyword == "node") {
      auto offset = static_cast<std::size_t>(keyword.data() + keyword.size() - raw.data());
      auto fields = split_fields(raw, offset);
      if (fields.size() != 5 && fields.size() != 6)
        throw SyntaxError("SYNTAX", line_no, kw_col,
                          "expected 'node <id> | <title> | <cluster|-> | <minutes> | "
                          "<content|-> [| <pages|->]'");
      TopicNode node;
      node.id = fields[0].text;
      if (node.id.empty() || text::split_ws(node.id).size() != 1)
        throw SyntaxError("SYNTAX", line_no, fields[0].column, "node id must be one token");
      node.title = unescape_title(fields[1], line_no);
      node.cluster = opt_field(fields[2].text);
      auto minutes = text::parse_int(fields[3].text);
      if (!minutes || *minutes < std::numeric_limits<int>::min() ||
          *minutes > std::numeric_limits<int>::max())
        throw SyntaxError("BAD_NUMBER", line_no, fields[3].column,
                          "duration must be an integer number of minutes");
      node.duration_minutes = static_cast<int>(*minutes);
      node.content_ref = opt_field(fields[4].text);
      if (fields.size() == 6 && fields[5].text != "-") {
        auto pages = text::parse_decimal(fields[5].text);
        if (!pages)
          throw SyntaxError("BAD_NUMBER", line_no, fields[5].column,
                            "page estimate must be a decimal number");
        node.page_estimate = *pages;
      }
      g.nodes.push_back(std::move(node));
      doc.source.node_lines.push_back(line_no);
    } else if (keyword == "edge") {
      if ((f.size() != 4 && f.size() != 5) || f[2] != "->")
        throw SyntaxError("SYNTAX", line_no, kw_col,
                          "expected 'edge <tail> -> <head> [required|optional|alt:<group>]'");
      PrerequisiteEdge e;
      e.tail = f[1];
      e.head = f[3];
      if (f.size() == 5) {
        auto spec = f[4];
        auto colon = spec.find(':');
        auto kind = parse_edge_kind(spec.substr(0, colon));
        if (!kind)
          throw SyntaxError("BAD_EDGE_KIND", line_no, column_of(raw, spec),
                            "unknown edge kind '" + std::string(spec) + "'");
        e.kind = *kind;
        if (colon != std::string_view::npos) {
          e.alt_group = spec.substr(colon + 1);
          if (e.alt_group.empty())
            throw SyntaxError("BAD_EDGE_KIND", line_no, column_of(raw, spec) + int(colon) + 1,
                              "empty group name");
        }
      }
      if (e.grouped() && !g.alt_groups.count(e.alt_group)) {
        g.alt_groups.emplace(e.alt_group, AltGroup{e.alt_group, e.head});
        doc.source.group_lines[e.alt_group] = line_no;
      }
      g.edges.push_back(std::move(e));
      doc.source.edge_lines.push_back(line_no);
    } else if (keyword == "group") {
      if (f.size() != 3)
        throw SyntaxError("SYNTAX", line_no, kw_col, "expected 'group <id> <head>'");
      std::string id(f[1]);
      if (!explicit_groups.insert(id).second)
        throw SyntaxError("DUPLICATE_DECLARATION", line_no, column_of(raw, f[1]),
                          "group '" + id + "' declared twice");
      // Explicit declarations override the head inferred from edges.
      g.alt_groups[id] = AltGroup{id, std::string(f[2])};
      doc.source.group_lines[id] = line_no;
    } else {
      throw SyntaxError("SYNTAX", line_no, kw_col,
                        "unknown declaration '" + std::string(keyword) + "'");
    }
  }
  if (!have_header)
    throw SyntaxError("MISSING_HEADER", 1, 1, "document has no 'graph <discipline>' line");
  doc.report = validate_graph(g, &doc.source);
  return doc;
}

std::string write_native(const CurriculumGraph& g) {
  std::ostringstream out;
  out << "graph " << g.discipline << "\n";
  for (const auto& [k, v] : g.metadata) {
    out << "meta " << k;
    if (!v.empty())
      out << " " << v;
    out << "\n";
  }
  std::vector<const TopicNode*> nodes;
  for (const auto& n : g.nodes)
    nodes.push_back(&n);
  std::sort(nodes.begin(), nodes.end(), [](auto* a, auto* b) { return a->id < b->id; });
  for (const auto* n : nodes) {
    out << "node " << n->id << " | " << escape_title(n->title) << " | "
        << (n->cluster.empty() ? "-" : n->cluster) << " | " << n->duration_minutes << " | "
        << (n->content_ref.empty() ? "-" : n->content_ref);
    if (n->page_estimate)
      out << " | " << text::format_decimal(*n->page_estimate);
    out << "\n";
  }
  for (const auto& [id, grp] : g.alt_groups)
    out << "group " << id << " " << grp.head << "\n";
  auto edges = g.edges;
  std::sort(edges.begin(), edges.end());
  for (const auto& e : edges) {
    out << "edge " << e.tail << " -> " << e.head << " "
        << (e.kind == EdgeKind::Alternative ? std::string("alt") : std::string(to_string(e.kind)));
    if (e.grouped())
      out << ":" << e.alt_group;
    out << "\n";
  }
  return out.str();
}

bool structurally_equal(const CurriculumGraph& a, const CurriculumGraph& b) {
  if (a.discipline != b.discipline || a.metadata != b.metadata || a.alt_groups != b.alt_groups)
    return false;
  auto by_id = [](const TopicNode& x, const TopicNode& y) { return x.id < y.id; };
  auto na = a.nodes, nb = b.nodes;
  std::sort(na.begin(), na.end(), by_id);
  std::sort(nb.begin(), nb.end(), by_id);
  if (na != nb)
    return false;
  auto ea = a.edges, eb = b.edges;
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  return ea == eb;
}

// ---- colors ----------------------------------------------------------------

namespace {

std::optional<std::string> normalize_color(std::string_view raw) {
  auto s = text::trim(raw);
  if (!s.empty() && s.front() == '#')
    s.remove_prefix(1);
  if (s.size() == 8) // yEd may append an alpha channel
    s.remove_suffix(2);
  if (s.size() != 6)
    return std::nullopt;
  std::string out = "#";
  for (char c : s) {
    if (!std::isxdigit(static_cast<unsigned char>(c)))
      return std::nullopt;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

int channel(const std::string& hex, int i) {
  return std::stoi(hex.substr(1 + 2 * static_cast<std::size_t>(i), 2), nullptr, 16);
}

} // namespace

ColorMap ColorMap::defaults() {
  ColorMap m;
  m.colors = {{"#000000", EdgeKind::Required},
              {"#008000", EdgeKind::Optional},
              {"#ff0000", EdgeKind::Alternative}};
  return m;
}

ColorMap ColorMap::parse(std::string_view spec) {
  auto m = defaults();
  std::vector<std::pair<std::string, EdgeKind>> extra;
  for (const auto& entry : text::split_list(spec)) {
    if (entry == "nearest") {
      m.nearest = true;
      continue;
    }
    auto eq = entry.find('=');
    std::optional<std::string> color;
    std::optional<EdgeKind> kind;
    if (eq != std::string::npos) {
      color = normalize_color(std::string_view(entry).substr(0, eq));
      kind = parse_edge_kind(std::string_view(entry).substr(eq + 1));
    }
    if (!color || !kind)
      throw Error(ErrorCategory::Usage, "INVALID_COLOR_MAP",
                  "color entry '" + entry + "' must look like '#rrggbb=required'");
    extra.emplace_back(*color, *kind);
  }
  for (const auto& [color, kind] : extra) {
    std::erase_if(m.colors, [&](const auto& c) { return c.second == kind || c.first == color; });
  }
  for (const auto& [color, kind] : extra)
    if (std::none_of(m.colors.begin(), m.colors.end(),
                     [&](const auto& c) { return c.first == color; }))
      m.colors.emplace_back(color, kind);
  return m;
}

std::optional<EdgeKind> ColorMap::classify(std::string_view raw) const {
  auto color = normalize_color(raw);
  if (!color)
    return std::nullopt;
  for (const auto& [c, kind] : colors)
    if (c == *color)
      return kind;
  if (!nearest || colors.empty())
    return std::nullopt;
  long best = std::numeric_limits<long>::max();
  std::optional<EdgeKind> out;
  for (const auto& [c, kind] : colors) {
    long d = 0;
    for (int i = 0; i < 3; ++i) {
      long delta = channel(*color, i) - channel(c, i);
      d += delta * delta;
    }
    if (d < best) {
      best = d;
      out = kind;
    }
  }
  return out;
}

// ---- GraphML ---------------------------------------------------------------

namespace {

namespace pt = boost::property_tree;

std::string_view local_name(std::string_view name) {
  auto colon = name.rfind(':');
  return colon == std::string_view::npos ? name : name.substr(colon + 1);
}

std::string attr(const pt::ptree& node, const std::string& name) {
  if (auto a = node.get_child_optional("<xmlattr>"))
    return a->get<std::string>(pt::ptree::path_type(name, '/'), ""); // names contain '.'
  return {};
}

/// First descendant element named `want` (local name), not descending into
/// nested graphs.
const pt::ptree* find_descendant(const pt::ptree& node, std::string_view want,
                                 const std::string& with_attr = {}) {
  for (const auto& [name, child] : node) {
    if (name == "<xmlattr>" || name == "<xmlcomment>" || local_name(name) == "graph")
      continue;
    if (local_name(name) == want && (with_attr.empty() || !attr(child, with_attr).empty()))
      return &child;
    if (const auto* hit = find_descendant(child, want, with_attr))
      return hit;
  }
  return nullptr;
}

struct RawNode {
  std::string id;
  std::string label;
  std::string cluster;
  std::map<std::string, std::string> data; // attr.name -> value
};

struct RawEdge {
  std::string source;
  std::string target;
  std::string color;
};

struct GraphMLReader {
  std::map<std::string, std::string> key_names; // key id -> lowercase attr.name
  std::vector<RawNode> nodes;
  std::vector<RawEdge> edges;

  std::map<std::string, std::string> data_of(const pt::ptree& element) const {
    std::map<std::string, std::string> out;
    for (const auto& [name, child] : element) {
      if (local_name(name) != "data")
        continue;
      auto it = key_names.find(attr(child, "key"));
      if (it == key_names.end())
        continue;
      auto value = text::trim(child.data());
      if (!value.empty())
        out[it->second] = std::string(value);
    }
    return out;
  }

  std::string label_of(const pt::ptree& element, const std::map<std::string, std::string>& data) {
    if (const auto* label = find_descendant(element, "NodeLabel")) {
      auto t = text::trim(label->data());
      if (!t.empty())
        return std::string(t);
    }
    if (auto it = data.find("label"); it != data.end())
      return it->second;
    return {};
  }

  void read_graph(const pt::ptree& graph, const std::string& cluster) {
    for (const auto& [name, child] : graph) {
      auto local = local_name(name);
      if (local == "node") {
        auto data = data_of(child);
        auto label = label_of(child, data);
        const pt::ptree* nested = nullptr;
        for (const auto& [cname, cchild] : child)
          if (local_name(cname) == "graph")
            nested = &cchild;
        if (nested) {
          auto group = text::slugify(label.empty() ? attr(child, "id") : label);
          read_graph(*nested, group.empty() ? cluster : group);
          continue;
        }
        nodes.push_back({attr(child, "id"), std::move(label), cluster, std::move(data)});
      } else if (local == "edge") {
        RawEdge e{attr(child, "source"), attr(child, "target"), {}};
        if (const auto* style = find_descendant(child, "LineStyle", "color"))
          e.color = attr(*style, "color");
        else if (auto d = data_of(child); d.count("color"))
          e.color = d["color"];
        edges.push_back(std::move(e));
      }
    }
  }
};

std::string one_line(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : text::trim(s)) {
    if (c == '\n' || c == '\r' || c == '\t') {
      space = true;
      continue;
    }
    if (space && !out.empty())
      out += ' ';
    space = false;
    out += c;
  }
  return out;
}

} // namespace

GraphMLImport import_graphml(std::string_view xml, const ColorMap& colors,
                             const GraphMLOptions& options) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(xml)};
    pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw SyntaxError("MALFORMED_XML", static_cast<int>(e.line()), 1, e.message());
  }
  const pt::ptree* root = nullptr;
  for (const auto& [name, child] : tree)
    if (local_name(name) == "graphml")
      root = &child;
  if (!root)
    throw SyntaxError("MALFORMED_XML", 1, 1, "no <graphml> root element");

  GraphMLReader reader;
  const pt::ptree* top = nullptr;
  for (const auto& [name, child] : *root) {
    if (local_name(name) == "key") {
      auto an = attr(child, "attr.name");
      if (an.empty())
        an = attr(child, "yfiles.type");
      for (auto& c : an)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      reader.key_names[attr(child, "id")] = an;
    } else if (local_name(name) == "graph" && !top) {
      top = &child;
    }
  }
  if (!top)
    throw SyntaxError("MALFORMED_XML", 1, 1, "no <graph> element");
  reader.read_graph(*top, {});

  GraphMLImport out;
  auto& g = out.graph;
  g.discipline = options.discipline;
  g.metadata["source"] = "graphml";
  auto warn = [&](std::string code, std::string message, std::vector<std::string> ids) {
    out.warnings.push_back({std::move(code), std::move(message), std::move(ids), 0});
  };

  std::map<std::string, std::string> id_of; // element id -> node id
  std::vector<std::string> defaulted;
  for (auto& raw : reader.nodes) {
    TopicNode node;
    std::string id = options.ids_from_labels && !raw.label.empty() ? text::slugify(raw.label)
                                                                   : raw.id;
    if (!text::is_token(id)) {
      auto slug = text::slugify(id);
      warn("NORMALIZED_ID", "node id '" + id + "' normalized to '" + slug + "'", {id, slug});
      id = slug;
    }
    if (id.empty() || id_of.count(raw.id) ||
        std::any_of(g.nodes.begin(), g.nodes.end(), [&](const auto& n) { return n.id == id; }))
      throw Error(ErrorCategory::Validation, "DUPLICATE_NODE_ID",
                  "GraphML node id '" + id + "' is not unique", {id});
    id_of[raw.id] = id;
    node.id = id;
    node.title = raw.label.empty() ? id : one_line(raw.label);
    node.cluster = raw.cluster;
    if (auto it = raw.data.find("cluster"); it != raw.data.end())
      node.cluster = text::slugify(it->second);
    node.duration_minutes = options.default_duration;
    auto minutes = raw.data.count("duration") ? text::parse_int(raw.data["duration"]) : std::nullopt;
    if (minutes && *minutes >= 1 && *minutes <= std::numeric_limits<int>::max())
      node.duration_minutes = static_cast<int>(*minutes);
    else
      defaulted.push_back(id);
    if (auto it = raw.data.find("content_ref"); it != raw.data.end() && text::is_token(it->second))
      node.content_ref = it->second;
    if (auto it = raw.data.find("pages"); it != raw.data.end())
      if (auto p = text::parse_decimal(it->second); p && *p > 0)
        node.page_estimate = *p;
    g.nodes.push_back(std::move(node));
  }
  if (!defaulted.empty())
    warn("DEFAULT_DURATION",
         std::to_string(defaulted.size()) + " node(s) take the default duration of " +
             std::to_string(options.default_duration) + " minutes",
         defaulted);

  std::set<std::tuple<std::string, std::string, EdgeKind>> seen;
  for (const auto& raw : reader.edges) {
    auto t = id_of.find(raw.source);
    auto h = id_of.find(raw.target);
    if (t == id_of.end() || h == id_of.end()) {
      warn("DANGLING_EDGE", "edge " + raw.source + " -> " + raw.target + " dropped: endpoint is "
                                "not a topic node",
           {raw.source, raw.target});
      continue;
    }
    if (t->second == h->second) {
      warn("SELF_LOOP", "self-loop on " + t->second + " dropped", {t->second});
      continue;
    }
    auto kind = colors.classify(raw.color);
    if (!kind) {
      warn("UNKNOWN_COLOR",
           "edge " + t->second + " -> " + h->second + " has unmapped color '" + raw.color +
               "'; imported as required",
           {t->second, h->second, raw.color});
      kind = EdgeKind::Required;
    }
    if (!seen.emplace(t->second, h->second, *kind).second) {
      warn("DUPLICATE_EDGE", "duplicate edge " + t->second + " -> " + h->second + " dropped",
           {t->second, h->second});
      continue;
    }
    g.edges.push_back({t->second, h->second, *kind, {}});
  }

  // One group per head with red in-edges: its red and black in-edges.
  std::map<std::string, std::vector<std::size_t>> red_into, black_into;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (g.edges[i].kind == EdgeKind::Alternative)
      red_into[g.edges[i].head].push_back(i);
    else if (g.edges[i].kind == EdgeKind::Required)
      black_into[g.edges[i].head].push_back(i);
  }
  std::vector<char> drop(g.edges.size(), 0);
  for (const auto& [head, reds] : red_into) {
    std::vector<std::size_t> members;
    std::set<std::string> tails;
    for (auto i : black_into[head])
      if (tails.insert(g.edges[i].tail).second)
        members.push_back(i);
    for (auto i : reds) {
      if (tails.insert(g.edges[i].tail).second) {
        members.push_back(i);
      } else {
        warn("DUPLICATE_EDGE",
             "red edge " + g.edges[i].tail + " -> " + head + " duplicates a black edge; dropped",
             {g.edges[i].tail, head});
        drop[i] = 1;
      }
    }
    if (members.size() < 2) {
      for (auto i : members)
        if (g.edges[i].kind == EdgeKind::Alternative) {
          g.edges[i].kind = EdgeKind::Required;
          warn("LONE_ALTERNATIVE_EDGE",
               "red edge " + g.edges[i].tail + " -> " + head +
                   " has no alternative partner; imported as required",
               {g.edges[i].tail, head});
        }
      continue;
    }
    std::string gid = "alt_" + head;
    std::vector<std::string> ids{gid, head};
    for (auto i : members) {
      g.edges[i].alt_group = gid;
      ids.push_back(g.edges[i].tail);
    }
    g.alt_groups.emplace(gid, AltGroup{gid, head});
    warn("SYNTHESIZED_ALT_GROUP",
         "group " + gid + " synthesized for " + head + " from " + std::to_string(members.size()) +
             " red/black in-edges; review it",
         ids);
  }
  if (std::find(drop.begin(), drop.end(), 1) != drop.end()) {
    std::vector<PrerequisiteEdge> kept;
    for (std::size_t i = 0; i < g.edges.size(); ++i)
      if (!drop[i])
        kept.push_back(std::move(g.edges[i]));
    g.edges = std::move(kept);
  }

  auto report = validate_graph(g);
  if (!report.ok())
    throw InvalidGraphError(std::move(report));
  for (auto& w : report.warnings)
    out.warnings.push_back(std::move(w));
  return out;
}

CurriculumGraph load_graph_file(const std::filesystem::path& path) {
  auto content = text::read_file(path);
  auto head = text::trim(content);
  if (!head.empty() && head.front() == '<')
    return import_graphml(content).graph;
  auto doc = parse_native(content);
  if (!doc.report.ok())
    throw InvalidGraphError(std::move(doc.report));
  return std::move(doc.graph);
}

// ---- content and exercises -------------------------------------------------

ContentStore parse_content_manifest(std::string_view manifest, const std::filesystem::path& base) {
  ContentStore store;
  std::vector<std::string> missing;
  int line_no = 0;
  for (auto raw : text::split(manifest, '\n')) {
    ++line_no;
    auto line = text::trim(raw);
    if (line.empty() || line.front() == '#')
      continue;
    auto f = text::split(line, '\t');
    if (f.size() != 2 || !text::is_token(text::trim(f[0])) || text::trim(f[1]).empty())
      throw Error(ErrorCategory::Validation, "MANIFEST_SYNTAX",
                  "content manifest line " + std::to_string(line_no) +
                      ": expected 'token<TAB>relative/path'");
    std::string token(text::trim(f[0]));
    auto path = base / std::string(text::trim(f[1]));
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
      missing.push_back(path.string());
      continue;
    }
    auto body = text::read_file(path);
    ContentDoc doc;
    auto first_nl = body.find('\n');
    std::string_view first = std::string_view(body).substr(0, first_nl);
    if (first.rfind("# ", 0) == 0) {
      doc.title = std::string(text::trim(first.substr(2)));
      doc.body = first_nl == std::string::npos
                     ? std::string()
                     : std::string(text::trim(std::string_view(body).substr(first_nl + 1)));
    } else {
      doc.title = token;
      doc.body = std::string(text::trim(body));
    }
    store.add(std::move(token), std::move(doc));
  }
  if (!missing.empty())
    throw Error(ErrorCategory::Io, "MISSING_FILE",
                "content file(s) not found: " + text::join(missing, ", "), missing);
  return store;
}

ContentStore load_content_store(const std::filesystem::path& manifest) {
  return parse_content_manifest(text::read_file(manifest), manifest.parent_path());
}

std::vector<Exercise> parse_exercises(std::string_view content) {
  std::vector<Exercise> out;
  std::vector<int> started;
  int line_no = 0;
  auto close = [&]() {
    if (!out.empty() && out.back().prompt_ref.empty())
      throw SyntaxError("MISSING_PROMPT", started.back(), 1,
                        "exercise '" + out.back().id + "' has no prompt line");
  };
  for (auto raw : text::split(content, '\n')) {
    ++line_no;
    auto line = text::trim(raw);
    if (line.empty() || line.front() == '#')
      continue;
    auto f = text::split_ws(line);
    const int col = column_of(raw, f[0]);
    if (f[0] == "exercise") {
      close();
      if (f.size() != 4 || (f[2] != "local" && f[2] != "external"))
        throw SyntaxError("SYNTAX", line_no, col,
                          "expected 'exercise <id> local <node>' or "
                          "'exercise <id> external <node,node,...>'");
      Exercise ex;
      ex.id = f[1];
      ex.kind = f[2] == "local" ? Exercise::Kind::NodeLocal : Exercise::Kind::External;
      ex.nodes = text::split_list(f[3]);
      std::sort(ex.nodes.begin(), ex.nodes.end());
      ex.nodes.erase(std::unique(ex.nodes.begin(), ex.nodes.end()), ex.nodes.end());
      out.push_back(std::move(ex));
      started.push_back(line_no);
    } else if (f[0] == "prompt" || f[0] == "difficulty") {
      if (out.empty())
        throw SyntaxError("SYNTAX", line_no, col, "'" + std::string(f[0]) +
                                                      "' before any exercise line");
      if (f.size() != 2)
        throw SyntaxError("SYNTAX", line_no, col, "expected '" + std::string(f[0]) + " <value>'");
      auto& ex = out.back();
      if (f[0] == "prompt") {
        if (!ex.prompt_ref.empty())
          throw SyntaxError("DUPLICATE_DECLARATION", line_no, col, "second prompt line");
        ex.prompt_ref = f[1];
      } else {
        auto d = text::parse_int(f[1]);
        if (!d || *d < 1 || *d > 5)
          throw SyntaxError("INVALID_DIFFICULTY", line_no, column_of(raw, f[1]),
                            "difficulty must be an integer 1-5");
        ex.difficulty = static_cast<int>(*d);
      }
    } else {
      throw SyntaxError("SYNTAX", line_no, col, "unknown declaration '" + std::string(f[0]) + "'");
    }
  }
  close();
  return out;
}

std::string write_exercises(std::span<const Exercise> exercises) {
  std::ostringstream out;
  for (const auto& ex : exercises) {
    out << "exercise " << ex.id << " "
        << (ex.kind == Exercise::Kind::NodeLocal ? "local " : "external ")
        << text::join(ex.nodes, ",") << "\n";
    out << "prompt " << ex.prompt_ref << "\n";
    if (ex.difficulty)
      out << "difficulty " << *ex.difficulty << "\n";
  }
  return out.str();
}

std::vector<Exercise> load_exercises(const std::filesystem::path& path, const CurriculumGraph& g) {
  auto exercises = parse_exercises(text::read_file(path));
  validate_exercises(g, exercises);
  return exercises;
}

} // namespace curriculum
