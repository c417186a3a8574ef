#include "gkt/generate.hpp"

#include <algorithm>

#include "gkt/errors.hpp"

namespace gkt {

GroupPtr named_spec(const std::string& name) {
  if (name == "free1") return GroupSpec::free_group(1);
  if (name == "free2") return GroupSpec::free_group(2);
  if (name == "free3") return GroupSpec::free_group(3);
  if (name == "z") return GroupSpec::abelian({0});
  if (name == "z2") return GroupSpec::abelian({0, 0});
  if (name == "zmod2") return GroupSpec::cyclic(2);
  if (name == "zmod3") return GroupSpec::cyclic(3);
  if (name == "zmod4") return GroupSpec::cyclic(4);
  if (name == "zmod5") return GroupSpec::cyclic(5);
  if (name == "zmod6") return GroupSpec::cyclic(6);
  if (name == "zstarz")
    return GroupSpec::free_product(GroupSpec::free_group(1),
                                   GroupSpec::free_group(1));
  if (name == "zstarzmod2")
    return GroupSpec::free_product(GroupSpec::free_group(1),
                                   GroupSpec::cyclic(2));
  if (name == "f2starzmod2")
    return GroupSpec::free_product(GroupSpec::free_group(2),
                                   GroupSpec::cyclic(2));
  if (name == "zmod2starzmod3")
    return GroupSpec::free_product(GroupSpec::cyclic(2),
                                   GroupSpec::cyclic(3));
  if (name == "zmod4starzmod6")
    return GroupSpec::free_product(GroupSpec::cyclic(4),
                                   GroupSpec::cyclic(6));
  if (name == "f2xz")
    return GroupSpec::direct(GroupSpec::free_group(2),
                             GroupSpec::abelian({0}));
  if (name == "amalgam_z4z6")
    // Z/4 *_{Z/2} Z/6 with a^2 = b^3.
    return GroupSpec::amalgam(GroupSpec::cyclic(4), GroupSpec::cyclic(6),
                              {0, 1, 1, 0}, {{}, {{2, 1}}}, {{}, {{3, 1}}});
  throw MalformedInput("unknown spec name \"" + name + "\"");
}

Word random_word(std::mt19937_64& rng, const GroupSpec& spec, int max_len) {
  int len = (int)(rng() % (max_len + 1));
  Word w;
  for (int i = 0; i < len; ++i)
    w.push_back({(int)(rng() % spec.alphabet_size()),
                 rng() % 2 == 0 ? 1 : -1});
  return w;
}

LabeledGraph random_dag(std::mt19937_64& rng, const GroupSpec& spec,
                        int vertices, int edges, int max_label_len) {
  LabeledGraph g;
  g.vertex_count = vertices;
  g.alpha = 0;
  g.omega = vertices - 1;
  for (int i = 0; i < edges && vertices >= 2; ++i) {
    int u = (int)(rng() % (vertices - 1));
    int v = u + 1 + (int)(rng() % (vertices - 1 - u));
    g.edges.push_back({u, v, random_word(rng, spec, max_label_len)});
  }
  return g;
}

LabeledGraph random_digraph(std::mt19937_64& rng, const GroupSpec& spec,
                            int vertices, int edges, int max_label_len) {
  LabeledGraph g;
  g.vertex_count = vertices;
  g.alpha = 0;
  g.omega = vertices - 1;
  for (int i = 0; i < edges; ++i)
    g.edges.push_back({(int)(rng() % vertices), (int)(rng() % vertices),
                       random_word(rng, spec, max_label_len)});
  return g;
}

namespace {

Word product_of(const std::vector<Word>& parts) {
  Word out;
  for (const Word& w : parts) out.insert(out.end(), w.begin(), w.end());
  return out;
}

}  // namespace

Generated generate(const std::string& problem, const std::string& spec_name,
                   const GenOptions& opt) {
  GroupPtr spec = named_spec(spec_name);
  std::mt19937_64 rng(opt.seed * 0x9e3779b97f4a7c15ull + 1);
  Generated out;
  out.file.problem = problem;

  if (problem == "ssp" || problem == "kp") {
    std::vector<Word> elements;
    for (int i = 0; i < opt.k; ++i)
      elements.push_back(random_word(rng, *spec, opt.len));
    Word target;
    if (opt.planted && problem == "ssp") {
      SubsetCert cert;
      std::vector<Word> chosen;
      for (int i = 0; i < opt.k; ++i) {
        cert.bits.push_back((int)(rng() % 2));
        if (cert.bits.back()) chosen.push_back(elements[i]);
      }
      target = product_of(chosen);
      out.certificate = cert;
    } else if (opt.planted) {
      ExponentsCert cert;
      std::vector<Word> parts;
      for (int i = 0; i < opt.k; ++i) {
        cert.exponents.push_back((long long)(rng() % (opt.bound + 1)));
        for (long long e = 0; e < cert.exponents.back(); ++e)
          parts.push_back(elements[i]);
      }
      target = product_of(parts);
      out.certificate = cert;
    } else {
      target = random_word(rng, *spec, opt.len);
    }
    if (problem == "ssp")
      out.file.payload = SSPInstance{spec, std::move(elements), target};
    else
      out.file.payload = KPInstance{spec, std::move(elements), target};
    return out;
  }

  if (problem == "bkp") {
    std::vector<Word> elements;
    for (int i = 0; i < opt.k; ++i)
      elements.push_back(random_word(rng, *spec, opt.len));
    Word target;
    if (opt.planted) {
      ExponentsCert cert;
      std::vector<Word> parts;
      for (int i = 0; i < opt.k; ++i) {
        cert.exponents.push_back((long long)(rng() % (opt.bound + 1)));
        for (long long e = 0; e < cert.exponents.back(); ++e)
          parts.push_back(elements[i]);
      }
      target = product_of(parts);
      out.certificate = cert;
    } else {
      target = random_word(rng, *spec, opt.len);
    }
    out.file.payload =
        BKPInstance{spec, std::move(elements), target, opt.bound};
    return out;
  }

  if (problem == "bsmp") {
    std::vector<Word> generators;
    for (int i = 0; i < opt.k; ++i)
      generators.push_back(random_word(rng, *spec, opt.len));
    Word target;
    if (opt.planted && opt.k > 0) {
      SequenceCert cert;
      long long s = (long long)(rng() % (opt.bound + 1));
      std::vector<Word> parts;
      for (long long i = 0; i < s; ++i) {
        int idx = (int)(rng() % opt.k);
        cert.indices.push_back(idx + 1);
        parts.push_back(generators[idx]);
      }
      target = product_of(parts);
      out.certificate = cert;
    } else {
      target = random_word(rng, *spec, opt.len);
    }
    out.file.payload =
        BSMPInstance{spec, std::move(generators), target, opt.bound};
    return out;
  }

  if (problem == "agp") {
    if (opt.n < 2) throw MalformedInput("agp generation needs n >= 2");
    LabeledGraph g;
    Word target;
    if (opt.planted) {
      g.vertex_count = opt.n;
      g.alpha = 0;
      g.omega = opt.n - 1;
      // Plant a path first, then sprinkle extra edges.
      PathCertificate cert;
      int v = 0;
      std::vector<Word> parts;
      while (v < opt.n - 1) {
        int next = v + 1 + (int)(rng() % (opt.n - 1 - v));
        Word label = random_word(rng, *spec, opt.len);
        parts.push_back(label);
        cert.edge_positions.push_back((int)g.edges.size());
        g.edges.push_back({v, next, std::move(label)});
        v = next;
      }
      target = product_of(parts);
      for (int i = (int)g.edges.size(); i < opt.m; ++i) {
        int u = (int)(rng() % (opt.n - 1));
        int w = u + 1 + (int)(rng() % (opt.n - 1 - u));
        g.edges.push_back({u, w, random_word(rng, *spec, opt.len)});
      }
      out.certificate = cert;
    } else {
      g = random_dag(rng, *spec, opt.n, opt.m, opt.len);
      if (rng() % 2 == 0) target = random_word(rng, *spec, opt.len);
    }
    out.file.payload = AGPInstance{std::move(g), spec, std::move(target)};
    return out;
  }

  if (problem == "rational") {
    LabeledGraph aut = random_digraph(rng, *spec, opt.n, opt.m, opt.len);
    std::vector<int> accepting{(int)(rng() % opt.n)};
    Word word;
    if (opt.planted) {
      // Random walk along existing edges; accept where it stops.
      std::vector<std::vector<int>> out_edges(opt.n);
      for (int i = 0; i < (int)aut.edges.size(); ++i)
        out_edges[aut.edges[i].origin].push_back(i);
      PathCertificate cert;
      int v = aut.alpha;
      std::vector<Word> parts;
      int steps = (int)(rng() % (opt.m + 1));
      for (int i = 0; i < steps && !out_edges[v].empty(); ++i) {
        int ei = out_edges[v][rng() % out_edges[v].size()];
        cert.edge_positions.push_back(ei);
        parts.push_back(aut.edges[ei].label);
        v = aut.edges[ei].terminus;
      }
      word = product_of(parts);
      accepting.push_back(v);
      std::sort(accepting.begin(), accepting.end());
      accepting.erase(std::unique(accepting.begin(), accepting.end()),
                      accepting.end());
      out.certificate = cert;
    } else {
      word = random_word(rng, *spec, opt.len);
    }
    out.file.payload = RationalInstance{std::move(aut), std::move(accepting),
                                        spec, std::move(word)};
    return out;
  }

  throw MalformedInput("unknown problem \"" + problem + "\"");
}

}  // namespace gkt
