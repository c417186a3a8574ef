#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gkt/errors.hpp"
#include "gkt/generate.hpp"
#include "gkt/json_io.hpp"
#include "gkt/knapsack.hpp"

using namespace gkt;
using nlohmann::json;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;
constexpr int kExitResource = 3;

long long resource_limit() {
  if (const char* env = std::getenv("GKT_RESOURCE_LIMIT"))
    return std::strtoll(env, nullptr, 10);
  return 10000000;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw MalformedInput("cannot open file " + path + " for writing");
  out << text;
}

ProblemFile load_problem(const std::string& path, const std::string& expect) {
  ProblemFile f = problem_from_json(parse_json_text(read_file(path)));
  if (!expect.empty() && f.problem != expect)
    throw MalformedInput("input file holds a \"" + f.problem +
                         "\" instance, expected \"" + expect + "\"");
  return f;
}

struct SolveOutcome {
  bool answer = false;
  std::optional<Certificate> certificate;
  json stats;
};

SolveOutcome run_solver(const ProblemFile& f) {
  SolveOutcome out;
  if (const auto* inst = std::get_if<SSPInstance>(&f.payload)) {
    SspResult r = ssp_solve(*inst);
    out.answer = r.answer;
    if (r.certificate) out.certificate = *r.certificate;
  } else if (const auto* inst = std::get_if<BKPInstance>(&f.payload)) {
    BkpResult r = bkp_solve(*inst);
    out.answer = r.answer;
    if (r.certificate) out.certificate = *r.certificate;
  } else if (const auto* inst = std::get_if<BSMPInstance>(&f.payload)) {
    BsmpResult r = bsmp_solve(*inst);
    out.answer = r.answer;
    if (r.certificate) out.certificate = *r.certificate;
  } else if (const auto* inst = std::get_if<KPInstance>(&f.payload)) {
    KpResult r = kp_solve(*inst);
    out.answer = r.answer;
    if (r.certificate) out.certificate = *r.certificate;
  } else if (const auto* inst = std::get_if<AGPInstance>(&f.payload)) {
    if (inst->spec->kind == GroupKind::FreeProduct ||
        inst->spec->kind == GroupKind::Amalgam) {
      SaturationResult r = agp_amalgam_saturate(*inst);
      out.answer = r.answer;
      if (r.certificate) out.certificate = *r.certificate;
      out.stats["rounds"] = r.state.rounds;
      out.stats["added_edges"] = r.state.added_edges.size();
    } else {
      AgpResult r = agp_solve(*inst);
      out.answer = r.answer;
      if (r.certificate) out.certificate = *r.certificate;
    }
  } else {
    const auto& rat = std::get<RationalInstance>(f.payload);
    RationalResult r = rational_membership(rat);
    out.answer = r.answer;
    if (r.certificate) out.certificate = *r.certificate;
  }
  return out;
}

// Path through the automaton from the start state to an accepting state
// whose label equals the queried word.
bool verify_rational(const RationalInstance& inst, const Certificate& cert) {
  const auto* path = std::get_if<PathCertificate>(&cert);
  if (!path) throw MalformedInput("rational expects a Path certificate");
  int v = inst.automaton.alpha;
  Word label;
  for (int pos : path->edge_positions) {
    if (pos < 0 || pos >= (int)inst.automaton.edges.size()) return false;
    const auto& e = inst.automaton.edges[pos];
    if (e.origin != v) return false;
    label.insert(label.end(), e.label.begin(), e.label.end());
    v = e.terminus;
  }
  if (std::find(inst.accepting.begin(), inst.accepting.end(), v) ==
      inst.accepting.end())
    return false;
  return word_problem(inst.spec, concat(label, inverse(inst.word)));
}

bool run_verify(const ProblemFile& f, const Certificate& cert) {
  if (const auto* inst = std::get_if<SSPInstance>(&f.payload))
    return verify_certificate(*inst, cert);
  if (const auto* inst = std::get_if<BKPInstance>(&f.payload))
    return verify_certificate(*inst, cert);
  if (const auto* inst = std::get_if<BSMPInstance>(&f.payload))
    return verify_certificate(*inst, cert);
  if (const auto* inst = std::get_if<KPInstance>(&f.payload))
    return verify_certificate(*inst, cert);
  if (const auto* inst = std::get_if<AGPInstance>(&f.payload))
    return verify_certificate(*inst, cert);
  return verify_rational(std::get<RationalInstance>(f.payload), cert);
}

// Bounded-unrolling ground truth for rational membership.
bool rational_bruteforce(const RationalInstance& inst, long long path_bound,
                         long long guard) {
  check_graph(inst.automaton, inst.spec.get());
  Word target_canon = canonical_word(inst.spec, inst.word);
  std::vector<std::vector<int>> out_edges(inst.automaton.vertex_count);
  for (int i = 0; i < (int)inst.automaton.edges.size(); ++i)
    out_edges[inst.automaton.edges[i].origin].push_back(i);
  std::vector<bool> accepting(inst.automaton.vertex_count, false);
  for (int s : inst.accepting) accepting[s] = true;
  long long count = 0;
  Word label;
  bool found = false;
  auto rec = [&](auto&& self, int v, long long depth) -> void {
    if (found) return;
    if (accepting[v] && canonical_word(inst.spec, label) == target_canon) {
      found = true;
      return;
    }
    if (depth >= path_bound) return;
    for (int ei : out_edges[v]) {
      if (found) return;
      if (++count > guard)
        throw ResourceLimit("path enumeration budget exhausted");
      const auto& e = inst.automaton.edges[ei];
      size_t mark = label.size();
      label.insert(label.end(), e.label.begin(), e.label.end());
      self(self, e.terminus, depth + 1);
      label.resize(mark);
    }
  };
  rec(rec, inst.automaton.alpha, 0);
  return found;
}

bool run_oracle(const ProblemFile& f, long long bound, long long guard) {
  if (const auto* inst = std::get_if<SSPInstance>(&f.payload))
    return ssp_bruteforce(*inst, guard);
  if (const auto* inst = std::get_if<BKPInstance>(&f.payload))
    return bkp_bruteforce(*inst, guard);
  if (const auto* inst = std::get_if<BSMPInstance>(&f.payload))
    return bsmp_bruteforce(*inst, guard);
  if (const auto* inst = std::get_if<KPInstance>(&f.payload))
    return kp_bruteforce(*inst, bound, guard);
  if (const auto* inst = std::get_if<AGPInstance>(&f.payload))
    return agp_bruteforce(*inst, bound, guard);
  return rational_bruteforce(std::get<RationalInstance>(f.payload), bound,
                             guard);
}

json reduce_instance(const std::string& name, const ProblemFile& f) {
  if (name == "ssp-to-agp") {
    const auto& inst = std::get<SSPInstance>(f.payload);
    return problem_to_json({"agp", ssp_to_agp(inst).instance});
  }
  if (name == "bkp-to-ssp") {
    const auto& inst = std::get<BKPInstance>(f.payload);
    return problem_to_json({"ssp", bkp_to_ssp(inst).instance});
  }
  if (name == "bsmp-to-agp") {
    const auto& inst = std::get<BSMPInstance>(f.payload);
    return problem_to_json({"agp", bsmp_to_agp(inst).instance});
  }
  if (name == "agp-to-ssp-free" || name == "agp-to-ssp-direct") {
    const auto& inst = std::get<AGPInstance>(f.payload);
    AgpToSspMode mode = name == "agp-to-ssp-free" ? AgpToSspMode::Free
                                                  : AgpToSspMode::Direct;
    return problem_to_json({"ssp", agp_to_ssp(inst, mode).instance});
  }
  if (name == "bsmp-to-ssp-z") {
    const auto& inst = std::get<BSMPInstance>(f.payload);
    json list = json::array();
    for (const SSPInstance& member : bsmp_to_ssp_direct_z(inst).instances)
      list.push_back(problem_to_json({"ssp", member}));
    return list;
  }
  throw MalformedInput("unknown reduction \"" + name + "\"");
}

std::string problem_of_reduction_input(const std::string& name) {
  if (name == "ssp-to-agp") return "ssp";
  if (name == "bkp-to-ssp") return "bkp";
  if (name == "bsmp-to-agp" || name == "bsmp-to-ssp-z") return "bsmp";
  if (name == "agp-to-ssp-free" || name == "agp-to-ssp-direct") return "agp";
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"knapsack-type and graph word problems in groups"};
  app.require_subcommand(1);

  std::string problem, spec_name, name, in_path, out_path, cert_path;
  long long bound = 0;
  bool want_cert = false;
  GenOptions gen_opt;

  auto* solve = app.add_subcommand("solve", "decide an instance");
  solve->add_option("problem", problem)->required();
  solve->add_option("--in", in_path)->required();
  solve->add_flag("--cert", want_cert);

  auto* reduce = app.add_subcommand("reduce", "transform an instance");
  reduce->add_option("name", name)->required();
  reduce->add_option("--in", in_path)->required();
  reduce->add_option("--out", out_path)->required();

  auto* oracle = app.add_subcommand("oracle", "brute-force ground truth");
  oracle->add_option("problem", problem)->required();
  oracle->add_option("--in", in_path)->required();
  oracle->add_option("--bound", bound);

  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("problem", problem)->required();
  gen->add_option("spec", spec_name)->required();
  gen->add_option("--seed", gen_opt.seed);
  gen->add_option("--k", gen_opt.k);
  gen->add_option("--n", gen_opt.n);
  gen->add_option("--m", gen_opt.m);
  gen->add_option("--len", gen_opt.len);
  gen->add_option("--bound", gen_opt.bound);
  gen->add_flag("--planted", gen_opt.planted);
  gen->add_option("--out", out_path);

  auto* verify = app.add_subcommand("verify", "check a certificate");
  verify->add_option("--in", in_path)->required();
  verify->add_option("--cert", cert_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      ProblemFile f = load_problem(in_path, problem);
      auto start = std::chrono::steady_clock::now();
      SolveOutcome r = run_solver(f);
      auto elapsed = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
      std::cout << (r.answer ? "YES" : "NO") << "\n";
      if (want_cert && r.certificate)
        std::cout << certificate_to_json(*r.certificate).dump() << "\n";
      r.stats["seconds"] = elapsed;
      std::cerr << r.stats.dump() << "\n";
      return r.answer ? kExitYes : kExitNo;
    }
    if (reduce->parsed()) {
      ProblemFile f = load_problem(in_path, problem_of_reduction_input(name));
      write_file(out_path, reduce_instance(name, f).dump(2) + "\n");
      return kExitYes;
    }
    if (oracle->parsed()) {
      ProblemFile f = load_problem(in_path, problem);
      bool answer = run_oracle(f, bound, resource_limit());
      std::cout << (answer ? "YES" : "NO") << "\n";
      return answer ? kExitYes : kExitNo;
    }
    if (gen->parsed()) {
      Generated g = generate(problem, spec_name, gen_opt);
      std::string text = problem_to_json(g.file).dump(2) + "\n";
      if (out_path.empty()) {
        std::cout << text;
        if (g.certificate)
          std::cout << certificate_to_json(*g.certificate).dump() << "\n";
      } else {
        write_file(out_path, text);
        if (g.certificate)
          write_file(out_path + ".cert",
                     certificate_to_json(*g.certificate).dump(2) + "\n");
      }
      return kExitYes;
    }
    // verify
    ProblemFile f = load_problem(in_path, "");
    Certificate cert =
        certificate_from_json(parse_json_text(read_file(cert_path)));
    return run_verify(f, cert) ? 0 : 1;
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
