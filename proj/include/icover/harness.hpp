#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "icover/cover.hpp"
#include "icover/error.hpp"
#include "icover/families.hpp"
#include "icover/lattice.hpp"
#include "icover/poset.hpp"

namespace icover::harness {

struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  // a/b < c/d without division
  friend bool operator<(const Ratio& x, const Ratio& y) { return x.num * y.den < y.num * x.den; }
};

struct Violation {
  std::string id;
  std::optional<std::pair<std::size_t, std::size_t>> levels;
  std::string expected;
  std::string observed;
  std::string instance;  // .poset text; for cover searches the lattice is O(instance)
};

struct CampaignReport {
  std::string campaign;
  std::string mode;
  std::uint64_t seed = 0;
  std::size_t instances_checked = 0;
  std::size_t unresolved = 0;  // solver hit its budget before proving optimality
  std::vector<Violation> violations;
  std::optional<Ratio> extremal;  // minimum w/|C| or maximum rho/max(|A|,|B|)
  std::string extremal_id;
  double runtime_seconds = 0;
};

/// Runs job(i) for i in [0, count) on `threads` workers.
template <typename Job>
void parallel_for(std::size_t count, unsigned threads, Job&& job) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

inline std::uint64_t binomial(unsigned n, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// ---------------------------------------------------------------------------
// Width of convex subsets of B(n)

enum class Mode { Exhaustive, Sample };

inline Mode parse_mode(const std::string& s) {
  if (s == "exhaustive") return Mode::Exhaustive;
  if (s == "sample") return Mode::Sample;
  fail(ErrorKind::ParseError, "mode must be exhaustive or sample");
}

namespace detail {

/// Width of the subposet of B(n) on the given subsets (masks).
inline std::size_t subset_width(const std::vector<std::uint64_t>& members) {
  std::vector<Edge> rel;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = 0; j < members.size(); ++j)
      if (i != j && (members[i] & ~members[j]) == 0) rel.emplace_back(static_cast<Element>(i), static_cast<Element>(j));
  return width_dilworth(Poset::from_edges(members.size(), rel));
}

inline std::string boolean_subset_text(unsigned n, const std::vector<std::uint64_t>& members, const std::string& comment) {
  std::vector<Edge> rel;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < members.size(); ++i) {
    std::string w(n, '0');
    for (unsigned b = 0; b < n; ++b)
      if ((members[i] >> b) & 1U) w[b] = '1';
    labels.push_back(w);
    for (std::size_t j = 0; j < members.size(); ++j)
      if (i != j && (members[i] & ~members[j]) == 0) rel.emplace_back(static_cast<Element>(i), static_cast<Element>(j));
  }
  return to_poset_text(Poset::from_edges(members.size(), rel, labels), comment);
}

}  // namespace detail

/// Checks w(C) / |C| >= C(n, n/2) / 2^n over non-empty convex subsets C of
/// B(n): every subset when exhaustive (n <= 4), or `samples` differences of
/// nested random down-sets (n <= 8).
inline CampaignReport check_daykin_frankl(unsigned n, Mode mode, std::size_t samples = 0, std::uint64_t seed = 0,
                                          unsigned threads = 1) {
  if (n < 1) fail(ErrorKind::ParamTooSmall, "need n >= 1");
  if (mode == Mode::Exhaustive && n > 4) fail(ErrorKind::SizeLimit, "exhaustive mode needs n <= 4");
  if (mode == Mode::Sample && n > 8) fail(ErrorKind::SizeLimit, "sample mode needs n <= 8");
  const auto start = std::chrono::steady_clock::now();
  const std::size_t size = std::size_t{1} << n;
  const std::uint64_t middle = binomial(n, n / 2);
  CampaignReport report;
  report.campaign = "daykin-frankl n=" + std::to_string(n);
  report.mode = mode == Mode::Exhaustive ? "exhaustive" : "sample";
  report.seed = mode == Mode::Sample ? seed : 0;

  struct Outcome {
    bool checked = false;
    Ratio ratio;
    std::vector<std::uint64_t> members;
  };
  auto evaluate = [&](const std::vector<std::uint64_t>& members) {
    Outcome o;
    o.checked = true;
    o.ratio = Ratio{detail::subset_width(members), members.size()};
    o.members = members;
    return o;
  };
  // Up- and down-closure of a set of subsets, as bitmasks over the 2^n elements.
  std::vector<std::uint64_t> up_mask, down_mask;
  std::vector<Outcome> outcomes;
  if (mode == Mode::Exhaustive) {
    up_mask.assign(size, 0);
    down_mask.assign(size, 0);
    for (std::uint64_t x = 0; x < size; ++x)
      for (std::uint64_t y = 0; y < size; ++y)
        if ((x & ~y) == 0) {
          up_mask[x] |= std::uint64_t{1} << y;
          down_mask[y] |= std::uint64_t{1} << x;
        }
    const std::uint64_t subsets = std::uint64_t{1} << size;
    outcomes.resize(subsets);
    parallel_for(subsets - 1, threads, [&](std::size_t i) {
      const std::uint64_t s = i + 1;
      std::uint64_t up = 0, down = 0;
      std::vector<std::uint64_t> members;
      for (std::uint64_t x = 0; x < size; ++x)
        if ((s >> x) & 1U) {
          up |= up_mask[x];
          down |= down_mask[x];
          members.push_back(x);
        }
      if ((up & down) != s) return;
      outcomes[s] = evaluate(members);
    });
  } else {
    outcomes.resize(samples);
    parallel_for(samples, threads, [&](std::size_t i) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(i)};
      std::mt19937_64 rng(seq);
      // D2 is generated by 1..4 random subsets, D1 by up to 3 random members of D2.
      auto closure = [&](const std::vector<std::uint64_t>& gens) {
        std::vector<std::uint64_t> out;
        for (std::uint64_t x = 0; x < size; ++x)
          for (auto g : gens)
            if ((x & ~g) == 0) {
              out.push_back(x);
              break;
            }
        return out;
      };
      std::vector<std::uint64_t> g2(1 + rng() % 4);
      for (auto& g : g2) g = rng() % size;
      std::vector<std::uint64_t> d2 = closure(g2);
      std::vector<std::uint64_t> g1(rng() % 4);
      for (auto& g : g1) g = d2[rng() % d2.size()];
      std::vector<std::uint64_t> d1 = closure(g1);
      std::vector<std::uint64_t> c;
      std::set_difference(d2.begin(), d2.end(), d1.begin(), d1.end(), std::back_inserter(c));
      if (!c.empty()) outcomes[i] = evaluate(c);
    });
  }
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const Outcome& o = outcomes[i];
    if (!o.checked) continue;
    ++report.instances_checked;
    const std::string id = mode == Mode::Exhaustive ? "subset-" + std::to_string(i) : "sample-" + std::to_string(i);
    // ties go to the larger set
    if (!report.extremal || o.ratio < *report.extremal ||
        (!(*report.extremal < o.ratio) && o.ratio.den > report.extremal->den)) {
      report.extremal = o.ratio;
      report.extremal_id = id;
    }
    // w * 2^n >= C(n, n/2) * |C|
    if (o.ratio.num * size < middle * o.ratio.den) {
      report.violations.push_back(Violation{
          id, std::nullopt, ">= " + std::to_string(middle) + "/" + std::to_string(size),
          std::to_string(o.ratio.num) + "/" + std::to_string(o.ratio.den),
          detail::boolean_subset_text(n, o.members, "convex subset of B(" + std::to_string(n) + ")")});
    }
  }
  report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// ---------------------------------------------------------------------------
// Level-cover searches over O(P)

enum class Problem { Atoms, Bound, Pairs };

inline Problem parse_problem(const std::string& s) {
  if (s == "atoms") return Problem::Atoms;
  if (s == "bound") return Problem::Bound;
  if (s == "pairs") return Problem::Pairs;
  fail(ErrorKind::ParseError, "problem must be atoms, bound or pairs");
}

inline std::string to_string(Problem p) {
  switch (p) {
    case Problem::Atoms: return "atoms";
    case Problem::Bound: return "bound";
    case Problem::Pairs: return "pairs";
  }
  return "?";
}

struct SearchOptions {
  unsigned threads = 1;
  std::optional<std::uint64_t> node_budget;
  bool inject_glued = false;  // also audit glued B(n)+B(m), 2 <= n, m <= 3
};

struct CorpusEntry {
  std::string id;
  Poset poset;
};

inline std::vector<CorpusEntry> search_corpus(std::size_t max_n, bool inject_glued) {
  std::vector<CorpusEntry> corpus;
  for (std::size_t n = 1; n <= max_n; ++n) {
    auto level = families::gen_all_posets(n);
    for (std::size_t i = 0; i < level.size(); ++i)
      corpus.push_back({"P" + std::to_string(n) + "-" + std::to_string(i), std::move(level[i])});
  }
  if (inject_glued)
    for (unsigned a = 2; a <= 3; ++a)
      for (unsigned b = 2; b <= 3; ++b)
        corpus.push_back({"glued-" + std::to_string(a) + "-" + std::to_string(b),
                          reconstruct_poset(families::gen_glued(a, b).lattice).poset});
  return corpus;
}

/// Level pairs audited by each problem.
inline std::vector<std::pair<std::size_t, std::size_t>> audited_pairs(const RankProfile& prof, Problem problem) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t h = prof.levels.size();
  for (std::size_t j = 0; j < h; ++j)
    for (std::size_t k = j + 1; k < h; ++k) {
      const std::size_t a = prof.level_sizes[j], b = prof.level_sizes[k];
      switch (problem) {
        case Problem::Atoms:
          if (j == 1) out.emplace_back(j, k);
          break;
        case Problem::Bound:
          if (a > 1 && b > 1) out.emplace_back(j, k);
          break;
        case Problem::Pairs:
          out.emplace_back(j, k);
          break;
      }
    }
  return out;
}

inline std::size_t expected_bound(Problem problem, std::size_t a, std::size_t b) {
  return problem == Problem::Bound ? a + b - 2 : std::max(a, b);
}

struct PairSolve {
  std::size_t rho = 0;
  bool optimal = false;
};

inline PairSolve solve_level_pair(const DistributiveLattice& d, std::size_t j, std::size_t k,
                                  std::optional<std::uint64_t> budget) {
  RankProfile prof = rank_profile(d.order());
  IntervalCover c = exact_min_cover(d.order(), level_span(d.order(), prof, j, k), budget);
  return {c.size(), c.optimal};
}

/// For every P in the corpus and every audited level pair (A, B) of O(P),
/// compares the exact rho([A, B]) with the problem's bound. Only violations
/// proved by a completed search are reported.
inline CampaignReport search_level_covers(std::size_t max_poset_size, Problem problem, const SearchOptions& opts = {}) {
  if (max_poset_size > 6) fail(ErrorKind::SizeLimit, "search corpus supports |P| <= 6");
  const auto start = std::chrono::steady_clock::now();
  std::vector<CorpusEntry> corpus = search_corpus(max_poset_size, opts.inject_glued);
  struct Outcome {
    std::size_t pairs = 0, unresolved = 0;
    std::vector<Violation> violations;
    std::optional<Ratio> worst;
  };
  std::vector<Outcome> outcomes(corpus.size());
  parallel_for(corpus.size(), opts.threads, [&](std::size_t i) {
    const Poset& p = corpus[i].poset;
    DistributiveLattice d = ideals_lattice(p).first;
    RankProfile prof = rank_profile(d.order());
    Outcome& o = outcomes[i];
    for (auto [j, k] : audited_pairs(prof, problem)) {
      const std::size_t a = prof.level_sizes[j], b = prof.level_sizes[k];
      IntervalCover c = exact_min_cover(d.order(), level_span(d.order(), prof, j, k), opts.node_budget);
      ++o.pairs;
      if (!c.optimal) {
        ++o.unresolved;
        continue;
      }
      Ratio r{c.size(), std::max(a, b)};
      if (!o.worst || *o.worst < r) o.worst = r;
      const std::size_t bound = expected_bound(problem, a, b);
      const bool bad = problem == Problem::Bound ? c.size() > bound : c.size() != bound;
      if (bad)
        o.violations.push_back(Violation{corpus[i].id, std::make_pair(j, k),
                                         (problem == Problem::Bound ? "<= " : "") + std::to_string(bound),
                                         std::to_string(c.size()), to_poset_text(p, corpus[i].id)});
    }
  });
  CampaignReport report;
  report.campaign = "level-covers problem=" + to_string(problem) + " max-n=" + std::to_string(max_poset_size) +
                    (opts.inject_glued ? " +glued" : "");
  report.mode = "exhaustive";
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Outcome& o = outcomes[i];
    report.instances_checked += o.pairs;
    report.unresolved += o.unresolved;
    report.violations.insert(report.violations.end(), o.violations.begin(), o.violations.end());
    if (o.worst && (!report.extremal || *report.extremal < *o.worst)) {
      report.extremal = o.worst;
      report.extremal_id = corpus[i].id;
    }
  }
  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [](const Violation& x, const Violation& y) { return x.id < y.id; });
  report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

/// Re-solves a recorded level-cover violation from its serialized poset and
/// returns the observed rho.
inline std::size_t replay_violation(const Violation& v, std::optional<std::uint64_t> budget = std::nullopt) {
  if (!v.levels) fail(ErrorKind::PreconditionViolated, "violation has no level pair");
  Poset p = parse_poset(v.instance);
  DistributiveLattice d = ideals_lattice(p).first;
  return solve_level_pair(d, v.levels->first, v.levels->second, budget).rho;
}

}  // namespace icover::harness
