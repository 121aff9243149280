// icover: command-line front end for the interval cover library.
//
// Exit status: 0 on success, 1 when a check fails or a campaign finds a
// violation, 2 on bad usage or invalid input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "icover/icover.hpp"
#include "icover/report.hpp"

using namespace icover;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Common {
  std::string input;
  std::string output;
  std::string format = "json";
  bool ideals = false;
};

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(c.output);
  if (!out) fail(ErrorKind::ParseError, "cannot write " + c.output);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

Poset load_order(const Common& c) {
  if (c.input.empty()) fail(ErrorKind::ParseError, "--input is required");
  Poset p = read_poset_file(c.input);
  return c.ideals ? ideals_lattice(p).first.order() : p;
}

DistributiveLattice load_distributive(const Common& c) {
  if (c.input.empty()) fail(ErrorKind::ParseError, "--input is required");
  Poset p = read_poset_file(c.input);
  return c.ideals ? ideals_lattice(p).first : DistributiveLattice::certify(p);
}

ElementSet parse_elements(const Poset& p, const std::string& list) {
  ElementSet s(p.size());
  std::stringstream in(list);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    char* end = nullptr;
    unsigned long v = std::strtoul(tok.c_str(), &end, 10);
    if (*end != '\0') fail(ErrorKind::ParseError, "bad element '" + tok + "'");
    if (v >= p.size()) fail(ErrorKind::ElementOutOfRange, "element " + tok + " out of range");
    s.set(v);
  }
  return s;
}

std::string interval_text(const Poset& p, const IntervalCover& c) {
  std::ostringstream out;
  out << "rho " << c.size() << (c.optimal ? " (optimal)" : " (not proved optimal)") << ", span "
      << c.span.elements.count() << " elements\n";
  for (const auto& iv : c.intervals) out << "[" << p.label(iv.a) << ", " << p.label(iv.b) << "]\n";
  return out.str();
}

void write_sidecar(const std::string& path, const json& j) {
  std::ofstream out(path + ".json");
  if (!out) fail(ErrorKind::ParseError, "cannot write " + path + ".json");
  out << j.dump(2) << '\n';
}

std::vector<Element> as_vector(const ElementSet& s) { return members(s); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interval covers of posets and distributive lattices"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub, bool with_input) {
    if (with_input) {
      sub->add_option("--input", common.input, ".poset file")->check(CLI::ExistingFile);
      sub->add_flag("--ideals", common.ideals, "use the lattice of down-sets of the input");
    }
    sub->add_option("--format", common.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("-o,--output", common.output, "output file");
  };

  std::vector<std::size_t> levels;
  std::optional<std::uint64_t> budget;
  std::uint64_t seed = 1;
  unsigned threads = 1;

  // gen
  auto* gen = app.add_subcommand("gen", "generate a family member as a .poset file");
  std::string family;
  std::vector<std::size_t> params;
  double density = 0.3;
  gen->add_option("family", family, "boolean|chain-product|frankl|figure1|glued|random|all")
      ->required()
      ->check(CLI::IsMember({"boolean", "chain-product", "frankl", "figure1", "glued", "random", "all"}));
  gen->add_option("params", params, "family parameters");
  gen->add_option("--density", density, "edge probability for random posets");
  gen->add_option("--seed", seed, "random seed");
  add_common(gen, false);

  // cover
  auto* cover = app.add_subcommand("cover", "exact minimum interval cover");
  std::string lower_list, upper_list, span_file;
  cover->add_option("--levels", levels, "lower and upper level")->expected(2);
  cover->add_option("--lower", lower_list, "lower antichain, comma separated indices");
  cover->add_option("--upper", upper_list, "upper antichain, comma separated indices");
  cover->add_option("--span", span_file, "sidecar JSON with lower/upper")->check(CLI::ExistingFile);
  cover->add_option("--budget", budget, "node budget");
  add_common(cover, true);

  // icp
  auto* icp = app.add_subcommand("icp", "check the interval covering property");
  bool strong = false;
  icp->add_option("--levels", levels, "lower and upper level")->expected(2);
  icp->add_flag("--strong", strong, "all level pairs");
  icp->add_option("--budget", budget, "node budget per level pair");
  add_common(icp, true);

  // scd
  auto* scd = app.add_subcommand("scd", "Greene-Kleitman symmetric chain decomposition of B(n)");
  unsigned scd_n = 0;
  bool scd_verify = false;
  scd->add_option("--n", scd_n, "ground set size")->required();
  scd->add_flag("--verify", scd_verify, "check partition, symmetry and nesting");
  add_common(scd, false);

  // surjection / verify
  auto* surj = app.add_subcommand("surjection", "build a surjection B -> A with the down-set property");
  surj->add_option("--lower", lower_list, "antichain A, comma separated indices")->required();
  surj->add_option("--upper", upper_list, "antichain B, comma separated indices")->required();
  add_common(surj, true);

  auto* verify = app.add_subcommand("verify", "check a map B -> A, or distributivity of the input");
  std::string map_text;
  verify->add_option("--lower", lower_list, "antichain A");
  verify->add_option("--upper", upper_list, "antichain B");
  verify->add_option("--map", map_text, "b:a pairs, comma separated");
  add_common(verify, true);

  // campaigns
  auto* search = app.add_subcommand("search", "level-cover search over O(P) for small P");
  std::string problem = "atoms";
  std::size_t max_n = 4;
  bool inject_glued = false;
  search->add_option("--problem", problem, "atoms, bound or pairs")->check(CLI::IsMember({"atoms", "bound", "pairs"}));
  search->add_option("--max-n", max_n, "largest |P| in the corpus");
  search->add_option("--threads", threads, "worker threads");
  search->add_option("--budget", budget, "node budget per level pair");
  search->add_flag("--inject-glued", inject_glued, "also audit glued B(n)+B(m) for n, m <= 3");
  add_common(search, false);

  auto* conj = app.add_subcommand("conjecture", "width ratio of convex subsets of B(n)");
  unsigned conj_n = 4;
  std::string mode = "exhaustive";
  std::size_t samples = 10000;
  conj->add_option("--n", conj_n, "ground set size");
  conj->add_option("--mode", mode, "exhaustive or sample")->check(CLI::IsMember({"exhaustive", "sample"}));
  conj->add_option("--samples", samples, "number of samples");
  conj->add_option("--seed", seed, "sampling seed");
  conj->add_option("--threads", threads, "worker threads");
  add_common(conj, false);

  // constructive covers
  auto* cac = app.add_subcommand("cover-atoms-coatoms", "constructive cover of D minus 0 and 1");
  add_common(cac, true);
  auto* c2 = app.add_subcommand("cover-two-level", "constructive cover when a level has two elements");
  c2->add_option("--levels", levels, "lower and upper level")->expected(2)->required();
  add_common(c2, true);
  auto* c4 = app.add_subcommand("cover-thm4", "shifted-family cover of two levels");
  c4->add_option("--levels", levels, "lower and upper level")->expected(2)->required();
  add_common(c4, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  const bool as_json = common.format == "json";
  try {
    if (gen->parsed()) {
      auto need = [&](std::size_t k) {
        if (params.size() != k) fail(ErrorKind::ParseError, family + " takes " + std::to_string(k) + " parameter(s)");
      };
      auto to_file = [&](const Poset& p, const std::string& comment) { emit(common, to_poset_text(p, comment)); };
      if (family == "boolean") {
        need(1);
        to_file(families::gen_boolean(static_cast<unsigned>(params[0])).order(), "B(" + std::to_string(params[0]) + ")");
      } else if (family == "chain-product") {
        if (params.empty()) fail(ErrorKind::ParseError, "chain-product needs chain lengths");
        to_file(families::gen_chain_product(params).order(), "product of chains");
      } else if (family == "frankl" || family == "figure1") {
        need(2);
        const auto r = static_cast<unsigned>(params[0]), s = static_cast<unsigned>(params[1]);
        json side;
        if (family == "frankl") {
          auto f = families::gen_frankl(r, s);
          to_file(f.lattice.order(), "frankl " + std::to_string(r) + " " + std::to_string(s));
          side = {{"family", "frankl"}, {"lower", as_vector(f.lower)}, {"upper", as_vector(f.upper)}};
        } else {
          auto f = families::gen_figure1(r, s);
          to_file(f.lattice.order(), "figure1 " + std::to_string(r) + " " + std::to_string(s));
          side = {{"family", "figure1"}, {"lower", as_vector(f.atoms)}, {"upper", as_vector(f.coatoms)}};
        }
        if (!common.output.empty()) write_sidecar(common.output, side);
      } else if (family == "glued") {
        need(2);
        auto g = families::gen_glued(static_cast<unsigned>(params[0]), static_cast<unsigned>(params[1]));
        to_file(g.lattice.order(), "glued " + std::to_string(params[0]) + " " + std::to_string(params[1]));
        if (!common.output.empty())
          write_sidecar(common.output, {{"family", "glued"},
                                        {"levels", {g.lower_level, g.upper_level}},
                                        {"lower", as_vector(g.lower)},
                                        {"upper", as_vector(g.upper)}});
      } else if (family == "random") {
        need(1);
        to_file(families::gen_random_poset(params[0], density, seed),
                "random n=" + std::to_string(params[0]) + " seed=" + std::to_string(seed));
      } else {
        need(1);
        auto all = families::gen_all_posets(params[0]);
        std::string text;
        for (std::size_t i = 0; i < all.size(); ++i)
          text += to_poset_text(all[i], "P" + std::to_string(params[0]) + "-" + std::to_string(i)) + "\n";
        emit(common, text);
      }
      return kOk;
    }

    if (cover->parsed()) {
      Poset p = load_order(common);
      ConvexSpan span;
      if (!levels.empty()) {
        span = level_span(p, rank_profile(p), levels[0], levels[1]);
      } else if (!span_file.empty()) {
        std::ifstream in(span_file);
        json side = json::parse(in);
        span = convex_span(p, make_set(p.size(), side.at("lower").get<std::vector<Element>>()),
                           make_set(p.size(), side.at("upper").get<std::vector<Element>>()));
      } else if (!lower_list.empty() && !upper_list.empty()) {
        span = convex_span(p, parse_elements(p, lower_list), parse_elements(p, upper_list));
      } else {
        fail(ErrorKind::ParseError, "give --levels, --span or --lower/--upper");
      }
      IntervalCover c = exact_min_cover(p, candidate_intervals(p, span), budget);
      emit(common, as_json ? cover_json(c).dump(2) : interval_text(p, c));
      return kOk;
    }

    if (icp->parsed()) {
      Poset p = load_order(common);
      if (!strong && levels.empty()) fail(ErrorKind::ParseError, "give --levels J K or --strong");
      IcpReport r = icp_check(p, strong ? 0 : levels[0], strong ? 0 : levels[1], strong, budget);
      if (as_json) {
        emit(common, icp_json(r).dump(2));
      } else {
        std::ostringstream out;
        for (const auto& pr : r.pairs)
          out << "levels " << pr.j << " " << pr.k << ": rho " << pr.rho << ", bound " << pr.bound
              << (pr.holds() ? "" : "  FAILS") << (pr.optimal ? "" : " (not proved optimal)") << "\n";
        out << (r.holds ? "property holds" : "property fails") << "\n";
        emit(common, out.str());
      }
      return r.holds ? kOk : kFailed;
    }

    if (scd->parsed()) {
      gk::SCD d = gk::gk_decomposition(scd_n);
      std::optional<gk::ScdReport> check;
      if (scd_verify) check = gk::verify_scd(d);
      if (as_json) {
        emit(common, scd_json(d, check ? &*check : nullptr).dump(2));
      } else {
        std::string text;
        for (const auto& c : d.chains) text += gk::chain_to_string(c) + "\n";
        if (check) text += std::to_string(d.chains.size()) + " chains; " + (check->ok() ? "verified" : "FAILED") + "\n";
        emit(common, text);
      }
      return !check || check->ok() ? kOk : kFailed;
    }

    if (surj->parsed()) {
      Poset p = load_order(common);
      ElementSet a = parse_elements(p, lower_list), b = parse_elements(p, upper_list);
      SurjectionTrace trace;
      Surjection f = build_surjection(p, a, b, &trace);
      const bool ok = verify_surjection(p, a, b, f);
      if (as_json) {
        emit(common, json{{"map", surjection_json(f)}, {"verified", ok}, {"trace", surjection_trace_json(trace)}}.dump(2));
      } else {
        std::ostringstream out;
        for (auto [y, x] : f) out << p.label(y) << " -> " << p.label(x) << "\n";
        out << (ok ? "verified" : "FAILED") << "\n";
        emit(common, out.str());
      }
      return ok ? kOk : kFailed;
    }

    if (verify->parsed()) {
      if (map_text.empty()) {
        if (common.input.empty()) fail(ErrorKind::ParseError, "--input is required");
        Poset p = read_poset_file(common.input);
        DistributivityReport r = check_distributive(Lattice::from_poset(p));
        emit(common, as_json ? json{{"lattice", true}, {"distributive", r.distributive}, {"method", r.method}}.dump(2)
                             : std::string(r.distributive ? "distributive" : "not distributive") + " (" + r.method + ")");
        return r.distributive ? kOk : kFailed;
      }
      Poset p = load_order(common);
      ElementSet a = parse_elements(p, lower_list), b = parse_elements(p, upper_list);
      Surjection f;
      std::stringstream in(map_text);
      std::string tok;
      while (std::getline(in, tok, ',')) {
        auto colon = tok.find(':');
        if (colon == std::string::npos) fail(ErrorKind::ParseError, "map entries look like b:a");
        f[static_cast<Element>(std::stoul(tok.substr(0, colon)))] = static_cast<Element>(std::stoul(tok.substr(colon + 1)));
      }
      const bool ok = verify_surjection(p, a, b, f);
      emit(common, as_json ? json{{"verified", ok}}.dump(2) : std::string(ok ? "verified" : "FAILED"));
      return ok ? kOk : kFailed;
    }

    if (search->parsed() || conj->parsed()) {
      harness::CampaignReport r;
      if (search->parsed()) {
        harness::SearchOptions opts;
        opts.threads = threads;
        opts.node_budget = budget;
        opts.inject_glued = inject_glued;
        r = harness::search_level_covers(max_n, harness::parse_problem(problem), opts);
      } else {
        r = harness::check_daykin_frankl(conj_n, harness::parse_mode(mode), samples, seed, threads);
      }
      if (as_json) {
        emit(common, campaign_json(r).dump(2));
      } else {
        std::ostringstream out;
        out << r.campaign << " (" << r.mode << ")\n"
            << "checked " << r.instances_checked << ", violations " << r.violations.size() << ", unresolved "
            << r.unresolved << ", " << r.runtime_seconds << " s\n";
        if (r.extremal) out << "extremal ratio " << r.extremal->num << "/" << r.extremal->den << " at " << r.extremal_id << "\n";
        for (const auto& v : r.violations) {
          out << "violation " << v.id;
          if (v.levels) out << " levels " << v.levels->first << " " << v.levels->second;
          out << ": expected " << v.expected << ", observed " << v.observed << "\n" << v.instance;
        }
        emit(common, out.str());
      }
      return r.violations.empty() ? kOk : kFailed;
    }

    if (cac->parsed() || c2->parsed() || c4->parsed()) {
      DistributiveLattice d = load_distributive(common);
      Construction c = cac->parsed() ? atoms_coatoms_cover(d)
                       : c2->parsed() ? two_level_cover(d, levels[0], levels[1])
                                      : thm4_cover(d, levels[0], levels[1]);
      emit(common, as_json ? construction_json(c).dump(2) : interval_text(d.order(), c.cover));
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
