// segal_lab: command-line driver; every report is a single JSON document.

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "segal/backends/f1.hpp"
#include "segal/backends/fq.hpp"
#include "segal/backends/freeab.hpp"
#include "segal/combinatorics.hpp"
#include "segal/counterexamples.hpp"
#include "segal/cyclic_polytope.hpp"
#include "segal/hall.hpp"
#include "segal/indexed.hpp"
#include "segal/proto_exact.hpp"
#include "segal/segal_sum.hpp"
#include "segal/simplicial.hpp"
#include "segal/waldhausen.hpp"

using nlohmann::json;
using namespace segal;

namespace {

constexpr int kSchemaVersion = 1;

enum Exit { kOk = 0, kViolation = 1, kUsage = 2, kResource = 3 };

struct Outcome {
  json report;
  bool verdict = true;
  std::optional<bool> expected;
};

struct Config {
  std::string backend = "f1";
  int k = 1, n = 2, d = 1, bound = 2, entry_bound = 2;
  std::string side = "lower";
  std::string path = "left";
  std::string expect = "auto";
  std::string out;
  std::string csv;
  std::string which;
  std::uint64_t seed = 0;
  bool force = false, count_only = false, criterion = false, no_cross_check = false;
  int multiplier = 2, rank_bound = 2, dim_bound = 2;
};

// Desk-scale limits; --force lifts them.
struct Limits {
  int n = 7, k = 3, bound = 3, sum_bound = 4, hall_f1 = 5, hall_fq = 3;
};

std::string lower(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

Side parse_side(const std::string& s) {
  if (s == "lower") return Side::Lower;
  if (s == "upper") return Side::Upper;
  fail(errc::invalid_arguments, "side must be lower or upper, got '" + s + "'");
}

std::vector<Side> parse_sides(const std::string& s) {
  if (s == "fully") return {Side::Lower, Side::Upper};
  return {parse_side(s)};
}

PathSide parse_path(const std::string& s) {
  if (s == "left") return PathSide::Left;
  if (s == "right") return PathSide::Right;
  if (s == "double") return PathSide::Double;
  fail(errc::invalid_arguments, "path must be left, right or double, got '" + s + "'");
}

void desk(bool ok, bool force, const std::string& what) {
  if (!ok && !force) fail(errc::resource_limit, what + " is beyond the desk-scale limits (pass --force)");
}

json subsets_json(const std::vector<Subset>& xs) {
  json a = json::array();
  for (const auto& s : xs) a.push_back(s.members);
  return a;
}

// Calls f with a category wrapper for the backend string.
template <class F>
json with_category(const Config& c, F&& f) {
  const auto b = lower(c.backend);
  if (b == "f1") return f(Indexed<F1>(F1{}, c.bound));
  if (b.rfind("fq:", 0) == 0) {
    int q = std::stoi(b.substr(3));
    return f(Indexed<Fq>(Fq(q), c.bound));
  }
  if (b == "freeab") return f(Cached<FreeAb>(FreeAb(c.entry_bound), c.bound));
  if (b.rfind("nil", 0) == 0) fail(errc::unsupported, "backend '" + c.backend + "' is not built");
  fail(errc::invalid_arguments, "unknown backend '" + c.backend + "'");
}

// Plain backends with block sums.
template <class F>
json with_sum_backend(const Config& c, F&& f) {
  const auto b = lower(c.backend);
  if (b == "f1") return f(F1{});
  if (b.rfind("fq:", 0) == 0) return f(Fq(std::stoi(b.substr(3))));
  if (b == "freeab" || b.rfind("nil", 0) == 0)
    fail(errc::unsupported, "backend '" + c.backend + "' is not supported by this subcommand");
  fail(errc::invalid_arguments, "unknown backend '" + c.backend + "'");
}

template <class F>
json with_backend(const Config& c, F&& f) {
  const auto b = lower(c.backend);
  if (b == "freeab") return f(FreeAb(c.entry_bound));
  return with_sum_backend(c, std::forward<F>(f));
}

// Expected verdict over several sides: known only when known for each.
struct SideExpectation {
  bool all_known = true, value = true;
  void add(std::optional<bool> e) {
    all_known = all_known && e.has_value();
    value = value && e.value_or(true);
  }
  std::optional<bool> get() const { return all_known ? std::optional<bool>(value) : std::nullopt; }
};

std::optional<bool> resolve_expect(const Config& c, std::optional<bool> automatic) {
  if (c.expect == "true") return true;
  if (c.expect == "false") return false;
  if (c.expect == "none") return std::nullopt;
  return automatic;
}

Outcome run_gale(const Config& c) {
  require(c.d >= 0 && c.n >= c.d, errc::invalid_arguments, "gale needs n >= d >= 0");
  desk(c.n <= 12 && c.d <= 6, c.force, "gale n/d");
  auto g = gale_facets(c.n, c.d);
  json rows = json::array();
  bool agree = true;
  std::size_t counts[4] = {0, 0, 0, 0};
  for (const auto& I : subsets_of_size(c.n, c.d + 1)) {
    auto p = classify_subset(I);
    auto geo = facet_side_geometric(I, c.n, c.d);
    const FacetSide want = p == Parity::Even ? FacetSide::Lower
                           : p == Parity::Odd ? FacetSide::Upper
                           : p == Parity::Both ? FacetSide::Both
                                               : FacetSide::NotAFacet;
    ++counts[static_cast<int>(p)];
    if (want != geo) {
      agree = false;
      rows.push_back({{"subset", I.members}, {"parity", parity_name(p)}, {"geometric", facet_side_name(geo)}});
    }
  }
  Outcome o;
  o.report = {{"n", c.n},
              {"d", c.d},
              {"lower_facets", subsets_json(g.lower)},
              {"upper_facets", subsets_json(g.upper)},
              {"counts", {{"even", counts[0]}, {"odd", counts[1]}, {"both", counts[2]}, {"neither", counts[3]}}},
              {"geometric_agreement", agree},
              {"disagreements", rows}};
  o.verdict = agree;
  o.expected = resolve_expect(c, true);
  return o;
}

Outcome run_poset(const Config& c) {
  desk(c.n <= 12, c.force, "poset n");
  Outcome o;
  for (auto s : parse_sides(c.side)) {
    auto P = segal_poset(c.n, c.d, s);
    o.report[side_name(s)] = {{"maximal", subsets_json(P.maximal)},
                              {"elements", subsets_json(P.elements)},
                              {"size", P.elements.size()}};
  }
  o.report["n"] = c.n;
  o.report["d"] = c.d;
  o.expected = resolve_expect(c, std::nullopt);
  return o;
}

EnumerationBounds enum_bounds(const Config& c) {
  return c.force ? EnumerationBounds{8, 14} : EnumerationBounds{};
}

Outcome run_triangulate(const Config& c) {
  auto ts = enumerate_triangulations(c.n, c.d, enum_bounds(c));
  Outcome o;
  o.report = {{"n", c.n}, {"d", c.d}, {"count", ts.size()}};
  if (!c.count_only) {
    json all = json::array();
    bool valid = true;
    for (const auto& T : ts) {
      all.push_back(subsets_json(T.simplices));
      valid = valid && is_triangulation(T).ok;
    }
    o.report["triangulations"] = all;
    o.report["all_valid"] = valid;
    o.verdict = valid;
  }
  o.expected = resolve_expect(c, c.count_only ? std::nullopt : std::optional<bool>(true));
  return o;
}

Outcome run_flipgraph(const Config& c) {
  auto G = flip_graph(c.n, c.d, enum_bounds(c));
  std::size_t edges = 0;
  json adj = json::array();
  for (std::size_t i = 0; i < G.out.size(); ++i) {
    json row = json::array();
    for (const auto& [j, I] : G.out[i]) row.push_back({{"to", j}, {"circuit", I.members}});
    edges += G.out[i].size();
    adj.push_back(row);
  }
  Outcome o;
  o.report = {{"n", c.n},
              {"d", c.d},
              {"nodes", G.nodes.size()},
              {"edges", edges},
              {"connected", G.connected},
              {"lower_index", G.lower_index},
              {"upper_index", G.upper_index},
              {"lower_is_source", G.lower_is_source},
              {"upper_is_sink", G.upper_is_sink},
              {"acyclic", G.acyclic},
              {"adjacency", adj}};
  o.verdict = G.connected && G.lower_index >= 0 && G.upper_index >= 0;
  o.expected = resolve_expect(c, true);
  return o;
}

Outcome run_below_order(const Config& c) {
  auto b = enum_bounds(c);
  auto cert = below_order_check(c.n, c.d, true, b);
  auto ts = enumerate_triangulations(c.n, c.d, b);
  bool bottoms = true;
  for (const auto& T : ts) bottoms = bottoms && bottom_simplex(T).has_value();
  json cycle = json::array();
  for (int i : cert.cycle) cycle.push_back(cert.nodes[i].members);
  Outcome o;
  o.report = {{"n", c.n},
              {"d", c.d},
              {"simplices", cert.nodes.size()},
              {"edges", cert.edges.size()},
              {"acyclic", cert.acyclic},
              {"cycle", cycle},
              {"literal_edges", cert.literal_edges},
              {"literal_two_cycles", cert.literal_two_cycles},
              {"triangulations", ts.size()},
              {"bottom_simplex_everywhere", bottoms}};
  if (cert.literal_two_cycle)
    o.report["literal_two_cycle"] = {cert.literal_two_cycle->first.members, cert.literal_two_cycle->second.members};
  o.verdict = cert.acyclic && bottoms;
  o.expected = resolve_expect(c, true);
  return o;
}

Outcome run_segal_sum(const Config& c) {
  desk(c.n <= 6 && c.k <= 2 && c.bound <= Limits{}.sum_bound, c.force, "check-segal-sum n/k/bound");
  Outcome o;
  bool all = true;
  SideExpectation expected;
  for (auto s : parse_sides(c.side)) {
    auto rep = with_sum_backend(c, [&](const auto& b) {
      return segal_check_sum(b, c.k, c.n, c.d, s, c.bound, !c.no_cross_check).to_json();
    });
    all = all && rep["verdict"].get<bool>();
    o.report[side_name(s)] = rep;
    // lower (2k-1)-Segal, hence fully 2k-Segal
    const bool known = (s == Side::Lower && c.d >= 2 * c.k - 1) || c.d >= 2 * c.k;
    expected.add(known ? std::optional<bool>(true) : std::nullopt);
  }
  o.report["verdict"] = all;
  o.verdict = all;
  o.expected = resolve_expect(c, expected.get());
  return o;
}

std::optional<bool> waldhausen_expectation(const Config& c, Side s) {
  const bool abelian = lower(c.backend) != "freeab";
  if (c.k == 1 && c.d >= 2) return true;
  if (abelian && c.d >= 2 * c.k) return true;
  if (s == Side::Upper && c.d == 2 * c.k - 1) {
    if (c.k == 2) return abelian;
    return false;
  }
  return std::nullopt;
}

Outcome run_waldhausen(const Config& c) {
  Limits L;
  desk(c.n <= L.n && c.k <= L.k && c.bound <= L.bound, c.force, "check-waldhausen n/k/bound");
  Outcome o;
  bool all = true;
  SideExpectation expected;
  for (auto s : parse_sides(c.side)) {
    auto rep = with_category(c, [&](const auto& cat) {
      SimplicialCategory X(cat, c.k, Variant::Exact);
      return X.segal_map_check(c.n, c.d, s).to_json();
    });
    all = all && rep["verdict"].get<bool>();
    o.report[side_name(s)] = rep;
    expected.add(waldhausen_expectation(c, s));
  }
  o.report["verdict"] = all;
  o.verdict = all;
  o.expected = resolve_expect(c, expected.get());
  return o;
}

// Same Segal question asked of X at level n+1 and of a path space at level n.
Outcome run_path_criterion(const Config& c) {
  require(c.d >= 1, errc::invalid_arguments, "the path space criterion needs d >= 1");
  const Side s = parse_side(c.side);
  require(c.d % 2 == 0 || s == Side::Upper, errc::invalid_arguments,
          "for odd d the criterion concerns the upper side only");
  Outcome o;
  o.report = with_category(c, [&](const auto& cat) {
    SimplicialCategory X(cat, c.k, Variant::Exact);
    json r;
    const bool base = X.segal_map_check(c.n + 1, c.d, s).eq.verdict;
    r["simplicial"] = {{"level", c.n + 1}, {"d", c.d}, {"side", side_name(s)}, {"verdict", base}};
    json paths = json::array();
    bool agree = true;
    auto probe = [&](Transform t, Side ps) {
      auto P = X.with(t);
      const bool v = P.segal_map_check(c.n, c.d - 1, ps).eq.verdict;
      paths.push_back({{"path", transform_name(t)}, {"d", c.d - 1}, {"side", side_name(ps)}, {"verdict", v}});
      agree = agree && v == base;
    };
    if (c.d % 2 == 0) {
      probe(s == Side::Lower ? Transform::LeftPath : Transform::RightPath, Side::Lower);
    } else {
      probe(Transform::LeftPath, Side::Upper);
      probe(Transform::RightPath, Side::Lower);
    }
    r["path_spaces"] = paths;
    r["agree"] = agree;
    return r;
  });
  o.verdict = o.report["agree"].get<bool>();
  o.expected = resolve_expect(c, true);
  return o;
}

Outcome run_pathspace(const Config& c) {
  Limits L;
  desk(c.n <= L.n - 1 && c.k <= L.k && c.bound <= L.bound, c.force, "pathspace n/k/bound");
  if (c.criterion) return run_path_criterion(c);
  const PathSide p = parse_path(c.path);
  Outcome o;
  o.report = with_category(c, [&](const auto& cat) {
    auto r = path_space_equivalence(cat, c.k, c.n, p).to_json();
    r["path"] = path_side_name(p);
    return r;
  });
  o.verdict = o.report["verdict"].get<bool>();
  o.expected = resolve_expect(c, true);
  return o;
}

Outcome run_stringency(const Config& c) {
  desk(c.bound <= 3, c.force, "stringency bound");
  Outcome o;
  bool found = false;
  o.report = with_backend(c, [&](const auto& b) {
    json r = {{"backend", b.name()}, {"size_bound", c.bound}};
    auto w = stringency_probe(b, c.bound);
    found = w.has_value();
    r["witness"] = w ? json{{"f", b.to_json(w->f)}, {"coimage_to_image", b.to_json(w->coim_to_im)}} : json(nullptr);
    return r;
  });
  o.report["stringent"] = !found;
  o.verdict = !found;
  o.expected = resolve_expect(c, lower(c.backend) != "freeab");
  return o;
}

Outcome run_counterexample(const Config& c) {
  desk(c.rank_bound <= 2 && c.dim_bound <= 2, c.force, "counterexample bounds");
  Outcome o;
  if (c.which == "5.9" || c.which == "kernel")
    o.report = kernel_counterexample(c.multiplier, c.rank_bound, c.entry_bound);
  else if (c.which == "5.10" || c.which == "sum")
    o.report = sum_counterexample(c.dim_bound);
  else
    fail(errc::invalid_arguments, "unknown counterexample '" + c.which + "'");
  o.verdict = o.report["verdict"].get<bool>();
  o.expected = resolve_expect(c, true);
  return o;
}

Outcome run_hall(const Config& c) {
  Limits L;
  const bool f1 = lower(c.backend) == "f1";
  desk(c.bound <= (f1 ? L.hall_f1 : L.hall_fq), c.force, "hall bound");
  Outcome o;
  bool ok = true;
  std::string csv;
  o.report = with_sum_backend(c, [&](const auto& b) {
    auto t = hall_table(b, c.bound);
    auto a = associativity_check(t);
    json r = t.to_json();
    r["associativity"] = a.to_json();
    ok = a.associative;
    if (!c.no_cross_check) {
      bool agree = true;
      std::size_t checked = 0;
      const int cb = std::min(c.bound, f1 ? 3 : 2);
      for (int M = 0; M <= cb; ++M)
        for (int N = 0; N <= M; ++N, ++checked)
          agree = agree && hall_number_from_faces(b, M, N, M - N) == t.at(M, N, M - N);
      r["face_fiber_check"] = {{"bound", cb}, {"entries", checked}, {"agree", agree}};
      ok = ok && agree;
    }
    csv = t.to_csv();
    return r;
  });
  if (!c.csv.empty()) {
    std::ofstream f(c.csv);
    require(static_cast<bool>(f), errc::invalid_arguments, "cannot write " + c.csv);
    f << csv;
    o.report["csv"] = c.csv;
  }
  o.report["verdict"] = ok;
  o.verdict = ok;
  o.expected = resolve_expect(c, true);
  return o;
}

json config_json(const std::string& cmd, const Config& c) {
  json j = {{"seed", c.seed}, {"force", c.force}};
  auto add = [&](std::initializer_list<const char*> keys) {
    for (const char* key : keys) {
      const std::string k = key;
      if (k == "backend") j[k] = c.backend;
      if (k == "k") j[k] = c.k;
      if (k == "n") j[k] = c.n;
      if (k == "d") j[k] = c.d;
      if (k == "side") j[k] = c.side;
      if (k == "bound") j[k] = c.bound;
      if (k == "path") j[k] = c.path;
      if (k == "which") j[k] = c.which;
    }
  };
  if (cmd == "gale" || cmd == "triangulate" || cmd == "flipgraph" || cmd == "below-order") add({"n", "d"});
  if (cmd == "poset") add({"n", "d", "side"});
  if (cmd == "check-segal-sum" || cmd == "check-waldhausen") add({"backend", "k", "n", "d", "side", "bound"});
  if (cmd == "pathspace") {
    add({"backend", "k", "n", "bound"});
    if (c.criterion) {
      add({"d", "side"});
      j["criterion"] = true;
    } else {
      add({"path"});
    }
  }
  if (cmd == "stringency" || cmd == "hall") add({"backend", "bound"});
  if (cmd == "counterexample") add({"which"});
  if (lower(c.backend) == "freeab") j["entry_bound"] = c.entry_bound;
  return j;
}

int emit(const Config& c, const json& doc) {
  const auto text = doc.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(c.out);
    if (!f) {
      std::cerr << "cannot write " << c.out << "\n";
      return kUsage;
    }
    f << text;
  }
  return doc["exit_code"].get<int>();
}

int exit_for(errc e) {
  switch (e) {
    case errc::resource_limit: return kResource;
    case errc::invalid_arguments:
    case errc::invalid_input:
    case errc::unsupported:
    case errc::not_flippable: return kUsage;
    default: return kViolation;
  }
}

const char* status_name(int code) {
  switch (code) {
    case kOk: return "ok";
    case kViolation: return "violation";
    case kUsage: return "usage-error";
    case kResource: return "resource-limit";
  }
  return "unknown";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Higher Segal and Waldhausen constructions at desk scale"};
  app.require_subcommand(1);
  Config c;

  auto common = [&](CLI::App* s) {
    s->add_option("--out", c.out, "write the JSON report here instead of stdout");
    s->add_option("--seed", c.seed, "seed recorded in the report");
    s->add_flag("--force", c.force, "lift desk-scale limits");
    s->add_option("--expect", c.expect, "expected verdict")->check(CLI::IsMember({"auto", "true", "false", "none"}));
  };
  auto geometry = [&](CLI::App* s) {
    s->add_option("--n", c.n, "top vertex of [n]")->required()->check(CLI::NonNegativeNumber);
    s->add_option("--d", c.d, "dimension")->required()->check(CLI::NonNegativeNumber);
  };
  auto algebra = [&](CLI::App* s, bool with_d) {
    s->add_option("--backend", c.backend, "f1, fq:<q>, freeab");
    s->add_option("--k", c.k, "dimension of the construction")->check(CLI::PositiveNumber);
    s->add_option("--n", c.n, "simplicial level")->required()->check(CLI::NonNegativeNumber);
    if (with_d) s->add_option("--d", c.d, "Segal dimension")->check(CLI::NonNegativeNumber);
    s->add_option("--bound", c.bound, "object size bound")->check(CLI::NonNegativeNumber);
    s->add_option("--entry-bound", c.entry_bound, "entry bound for freeab")->check(CLI::NonNegativeNumber);
  };

  std::map<std::string, std::function<Outcome(const Config&)>> runners;

  auto* gale = app.add_subcommand("gale", "Gale facets of C([n],d) with geometric cross-check");
  geometry(gale);
  common(gale);
  runners["gale"] = run_gale;

  auto* poset = app.add_subcommand("poset", "lower/upper d-Segal posets");
  geometry(poset);
  poset->add_option("--side", c.side, "lower, upper or fully");
  common(poset);
  runners["poset"] = run_poset;

  auto* tri = app.add_subcommand("triangulate", "enumerate triangulations of C([n],d)");
  geometry(tri);
  tri->add_flag("--count-only", c.count_only, "report the count only");
  common(tri);
  runners["triangulate"] = run_triangulate;

  auto* flips = app.add_subcommand("flipgraph", "flip graph of triangulations");
  geometry(flips);
  common(flips);
  runners["flipgraph"] = run_flipgraph;

  auto* below = app.add_subcommand("below-order", "lies-below relation and its acyclicity");
  geometry(below);
  common(below);
  runners["below-order"] = run_below_order;

  auto* sum = app.add_subcommand("check-segal-sum", "Segal map of the higher Segal construction");
  algebra(sum, true);
  sum->add_option("--side", c.side, "lower, upper or fully");
  sum->add_flag("--no-cross-check", c.no_cross_check, "skip the explicit full-faithfulness search");
  common(sum);
  runners["check-segal-sum"] = run_segal_sum;

  auto* wald = app.add_subcommand("check-waldhausen", "Segal map of the higher Waldhausen construction");
  algebra(wald, true);
  wald->add_option("--side", c.side, "lower, upper or fully");
  common(wald);
  runners["check-waldhausen"] = run_waldhausen;

  auto* path = app.add_subcommand("pathspace", "path spaces: forgetful equivalence or Segal criterion");
  algebra(path, true);
  path->add_option("--path", c.path, "left, right or double");
  path->add_flag("--criterion", c.criterion, "compare Segal verdicts of X and its path spaces");
  path->add_option("--side", c.side, "side for --criterion");
  common(path);
  runners["pathspace"] = run_pathspace;

  auto* str = app.add_subcommand("stringency", "search for a non-strict morphism");
  str->add_option("--backend", c.backend, "f1, fq:<q>, freeab");
  str->add_option("--bound", c.bound, "object size bound")->check(CLI::NonNegativeNumber);
  str->add_option("--entry-bound", c.entry_bound, "entry bound for freeab")->check(CLI::NonNegativeNumber);
  common(str);
  runners["stringency"] = run_stringency;

  auto* cx = app.add_subcommand("counterexample", "kernel display (5.9) or three-dimensional sum display (5.10)");
  cx->add_option("which", c.which, "5.9 | 5.10 (aliases: kernel, sum)")
      ->required()
      ->check(CLI::IsMember({"5.9", "5.10", "kernel", "sum"}));
  cx->add_option("--multiplier", c.multiplier, "the map Z -> Z for the kernel display");
  cx->add_option("--rank-bound", c.rank_bound, "rank bound for the preimage search")->check(CLI::PositiveNumber);
  cx->add_option("--entry-bound", c.entry_bound, "entry bound for the preimage search")->check(CLI::PositiveNumber);
  cx->add_option("--dim-bound", c.dim_bound, "dimension bound for the sum display")->check(CLI::PositiveNumber);
  common(cx);
  runners["counterexample"] = run_counterexample;

  auto* hall = app.add_subcommand("hall", "Hall numbers and associativity");
  hall->add_option("--backend", c.backend, "f1 or fq:<q>");
  hall->add_option("--bound", c.bound, "object size bound")->check(CLI::NonNegativeNumber);
  hall->add_option("--csv", c.csv, "also write the structure constants as CSV");
  hall->add_flag("--no-cross-check", c.no_cross_check, "skip the face-fiber comparison");
  common(hall);
  runners["hall"] = run_hall;

  std::string cmd;
  json doc = {{"schema_version", kSchemaVersion}, {"tool", "segal_lab"}};
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    doc["command"] = nullptr;
    doc["error"] = {{"code", "usage"}, {"message", e.what()}};
    doc["status"] = status_name(kUsage);
    doc["exit_code"] = static_cast<int>(kUsage);
    std::cout << doc.dump(2) << "\n";
    return kUsage;
  }
  cmd = app.get_subcommands().front()->get_name();
  doc["command"] = cmd;
  doc["config"] = config_json(cmd, c);
  int code = kOk;
  try {
    auto o = runners.at(cmd)(c);
    doc["report"] = o.report;
    doc["verdict"] = o.verdict;
    doc["expected"] = o.expected ? json(*o.expected) : json(nullptr);
    code = !o.expected || *o.expected == o.verdict ? kOk : kViolation;
  } catch (const segal::error& e) {
    code = exit_for(e.code());
    doc["error"] = {{"code", errc_name(e.code())}, {"message", e.what()}};
  } catch (const std::bad_alloc&) {
    code = kResource;
    doc["error"] = {{"code", "resource-limit"}, {"message", "out of memory"}};
  } catch (const std::exception& e) {
    code = kUsage;
    doc["error"] = {{"code", "invalid-arguments"}, {"message", e.what()}};
  }
  doc["status"] = status_name(code);
  doc["exit_code"] = code;
  return emit(c, doc);
}
