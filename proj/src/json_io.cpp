#include "gkt/json_io.hpp"

#include "gkt/errors.hpp"

using nlohmann::json;

namespace gkt {

namespace {

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end())
    throw MalformedInput(std::string("missing field \"") + name + "\"");
  return *it;
}

Word word_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_string()) throw MalformedInput("word fields must be strings");
  return parse_word(v.get<std::string>());
}

std::vector<Word> word_list(const json& v) {
  if (!v.is_array()) throw MalformedInput("expected an array of words");
  std::vector<Word> out;
  for (const json& w : v) {
    if (!w.is_string()) throw MalformedInput("word lists hold strings");
    out.push_back(parse_word(w.get<std::string>()));
  }
  return out;
}

std::vector<int> flat_table(const json& v) {
  if (!v.is_array()) throw MalformedInput("tables are arrays of rows");
  std::vector<int> out;
  for (const json& row : v) {
    if (!row.is_array()) throw MalformedInput("tables are arrays of rows");
    for (const json& x : row) out.push_back(x.get<int>());
  }
  return out;
}

json rows(const std::vector<int>& flat, int n) {
  json out = json::array();
  for (int i = 0; i < n; ++i) {
    json row = json::array();
    for (int j = 0; j < n; ++j) row.push_back(flat[i * n + j]);
    out.push_back(row);
  }
  return out;
}

json words(const std::vector<Word>& ws) {
  json out = json::array();
  for (const Word& w : ws) out.push_back(format_word(w));
  return out;
}

}  // namespace

GroupPtr group_from_json(const json& j) {
  if (!j.is_object()) throw MalformedInput("group spec must be an object");
  std::string kind = field(j, "kind").get<std::string>();
  if (kind == "free") return GroupSpec::free_group(field(j, "rank").get<int>());
  if (kind == "finite")
    return GroupSpec::finite(flat_table(field(j, "table")),
                             j.value("identity", 0));
  if (kind == "abelian")
    return GroupSpec::abelian(
        field(j, "moduli").get<std::vector<long long>>());
  if (kind == "direct")
    return GroupSpec::direct(group_from_json(field(j, "left")),
                             group_from_json(field(j, "right")));
  if (kind == "free_product")
    return GroupSpec::free_product(group_from_json(field(j, "left")),
                                   group_from_json(field(j, "right")));
  if (kind == "amalgam")
    return GroupSpec::amalgam(group_from_json(field(j, "left")),
                              group_from_json(field(j, "right")),
                              flat_table(field(j, "c_table")),
                              word_list(field(j, "embed_left")),
                              word_list(field(j, "embed_right")));
  throw MalformedInput("unknown group kind \"" + kind + "\"");
}

json group_to_json(const GroupSpec& spec) {
  json j;
  switch (spec.kind) {
    case GroupKind::Free:
      j["kind"] = "free";
      j["rank"] = spec.rank;
      break;
    case GroupKind::Finite:
      j["kind"] = "finite";
      j["table"] = rows(spec.table, spec.order);
      j["identity"] = spec.identity;
      break;
    case GroupKind::Abelian:
      j["kind"] = "abelian";
      j["moduli"] = spec.moduli;
      break;
    case GroupKind::Direct:
    case GroupKind::FreeProduct:
      j["kind"] = spec.kind == GroupKind::Direct ? "direct" : "free_product";
      j["left"] = group_to_json(*spec.left);
      j["right"] = group_to_json(*spec.right);
      break;
    case GroupKind::Amalgam:
      j["kind"] = "amalgam";
      j["left"] = group_to_json(*spec.left);
      j["right"] = group_to_json(*spec.right);
      j["c_table"] = rows(spec.c_table, spec.c_order);
      j["embed_left"] = words(spec.embed_left);
      j["embed_right"] = words(spec.embed_right);
      break;
  }
  return j;
}

LabeledGraph graph_from_json(const json& j) {
  if (!j.is_object()) throw MalformedInput("graph must be an object");
  LabeledGraph g;
  g.vertex_count = field(j, "n").get<int>();
  g.alpha = field(j, "alpha").get<int>();
  g.omega = field(j, "omega").get<int>();
  for (const json& e : field(j, "edges")) {
    if (!e.is_array() || e.size() != 3)
      throw MalformedInput("edges are [origin, terminus, label] triples");
    g.edges.push_back({e[0].get<int>(), e[1].get<int>(),
                       parse_word(e[2].get<std::string>())});
  }
  return g;
}

json graph_to_json(const LabeledGraph& g) {
  json j;
  j["n"] = g.vertex_count;
  j["alpha"] = g.alpha;
  j["omega"] = g.omega;
  json edges = json::array();
  for (const auto& e : g.edges)
    edges.push_back(json::array({e.origin, e.terminus, format_word(e.label)}));
  j["edges"] = edges;
  return j;
}

ProblemFile problem_from_json(const json& j) {
  if (!j.is_object()) throw MalformedInput("problem file must be an object");
  ProblemFile f;
  f.problem = field(j, "problem").get<std::string>();
  GroupPtr spec = group_from_json(field(j, "spec"));
  if (f.problem == "ssp") {
    f.payload = SSPInstance{spec, word_list(field(j, "elements")),
                            word_field(j, "target")};
  } else if (f.problem == "bkp") {
    f.payload = BKPInstance{spec, word_list(field(j, "elements")),
                            word_field(j, "target"),
                            field(j, "bound_m").get<long long>()};
  } else if (f.problem == "bsmp") {
    f.payload = BSMPInstance{spec, word_list(field(j, "generators")),
                             word_field(j, "target"),
                             field(j, "bound_m").get<long long>()};
  } else if (f.problem == "kp") {
    f.payload = KPInstance{spec, word_list(field(j, "elements")),
                           word_field(j, "target")};
  } else if (f.problem == "agp") {
    f.payload = AGPInstance{graph_from_json(field(j, "graph")), spec,
                            word_field(j, "target")};
  } else if (f.problem == "rational") {
    f.payload = RationalInstance{graph_from_json(field(j, "automaton")),
                                 field(j, "accepting").get<std::vector<int>>(),
                                 spec, word_field(j, "word")};
  } else {
    throw MalformedInput("unknown problem \"" + f.problem + "\"");
  }
  return f;
}

json problem_to_json(const ProblemFile& f) {
  json j;
  j["problem"] = f.problem;
  std::visit(
      [&](const auto& inst) {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, SSPInstance>) {
          j["spec"] = group_to_json(*inst.spec);
          j["elements"] = words(inst.elements);
          j["target"] = format_word(inst.target);
        } else if constexpr (std::is_same_v<T, BKPInstance>) {
          j["spec"] = group_to_json(*inst.spec);
          j["elements"] = words(inst.elements);
          j["target"] = format_word(inst.target);
          j["bound_m"] = inst.bound_m;
        } else if constexpr (std::is_same_v<T, BSMPInstance>) {
          j["spec"] = group_to_json(*inst.spec);
          j["generators"] = words(inst.generators);
          j["target"] = format_word(inst.target);
          j["bound_m"] = inst.bound_m;
        } else if constexpr (std::is_same_v<T, KPInstance>) {
          j["spec"] = group_to_json(*inst.spec);
          j["elements"] = words(inst.elements);
          j["target"] = format_word(inst.target);
        } else if constexpr (std::is_same_v<T, AGPInstance>) {
          j["spec"] = group_to_json(*inst.spec);
          j["graph"] = graph_to_json(inst.graph);
          j["target"] = format_word(inst.target);
        } else {
          j["spec"] = group_to_json(*inst.spec);
          j["automaton"] = graph_to_json(inst.automaton);
          j["accepting"] = inst.accepting;
          j["word"] = format_word(inst.word);
        }
      },
      f.payload);
  return j;
}

Certificate certificate_from_json(const json& j) {
  if (!j.is_object()) throw MalformedInput("certificate must be an object");
  std::string type = field(j, "type").get<std::string>();
  if (type == "path")
    return PathCertificate{field(j, "edges").get<std::vector<int>>()};
  if (type == "subset")
    return SubsetCert{field(j, "bits").get<std::vector<int>>()};
  if (type == "sequence")
    return SequenceCert{field(j, "indices").get<std::vector<int>>()};
  if (type == "exponents")
    return ExponentsCert{field(j, "exponents").get<std::vector<long long>>()};
  throw MalformedInput("unknown certificate type \"" + type + "\"");
}

json certificate_to_json(const Certificate& cert) {
  json j;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, PathCertificate>) {
          j["type"] = "path";
          j["edges"] = c.edge_positions;
        } else if constexpr (std::is_same_v<T, SubsetCert>) {
          j["type"] = "subset";
          j["bits"] = c.bits;
        } else if constexpr (std::is_same_v<T, SequenceCert>) {
          j["type"] = "sequence";
          j["indices"] = c.indices;
        } else {
          j["type"] = "exponents";
          j["exponents"] = c.exponents;
        }
      },
      cert);
  return j;
}

BoundConfig bound_config_from_json(const json& j) {
  return {field(j, "p_G").get<std::vector<long long>>(),
          field(j, "p_H").get<std::vector<long long>>()};
}

json parse_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw MalformedInput("invalid JSON");
  return j;
}

}  // namespace gkt
