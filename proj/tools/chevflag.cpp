// Command-line front end: every subcommand prints one JSON report.
// Exit status: 0 all checks pass, 1 a check failed, 2 inconclusive, resource
// or usage error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "chevflag/chevflag.hpp"

using namespace chevflag;
using nlohmann::json;

namespace {

struct Options {
  std::string type = "A2";
  unsigned rank = 0;
  unsigned q = 2;
  unsigned p = 0;
  std::string coeff = "F5";
  std::string J = "all";
  std::string mode = "both";
  std::string gens;
  std::string orders = "exhaustive";
  std::string input;
  std::string expect;
  std::string out;
  std::size_t trials = 0;
  std::size_t budget = kDefaultMoveBudget;
  std::uint64_t seed = 1;
};

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RootSystem root_system(const Options& o) {
  if (o.rank) return RootSystem::parse(o.type + std::to_string(o.rank));
  return RootSystem::parse(o.type);
}

std::uint32_t coefficient(const std::string& s) {
  std::string digits = (!s.empty() && (s[0] == 'F' || s[0] == 'f')) ? s.substr(1) : s;
  try {
    std::size_t used = 0;
    auto v = std::stoul(digits, &used);
    if (used != digits.size()) throw std::invalid_argument(s);
    return static_cast<std::uint32_t>(PrimeField(static_cast<std::uint32_t>(v)).order());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("coefficient field must look like F5, got '" + s + "'");
  }
}

std::vector<Subset> subsets(const std::string& s, unsigned n) {
  if (s == "all") return all_subsets(n);
  std::string t;
  for (char ch : s)
    if (ch != '{' && ch != '}' && ch != ' ') t += ch;
  Subset J = 0;
  if (t == "empty" || t.empty()) return {0};
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    unsigned i = 0;
    try {
      i = static_cast<unsigned>(std::stoul(item));
    } catch (const std::exception&) {
      throw ConfigError("J must be 'all' or a list of simple indices such as 1,2; got '" + s + "'");
    }
    if (i < 1 || i > n) throw ConfigError("simple index " + item + " is outside 1.." + std::to_string(n));
    J |= 1u << (i - 1);
  }
  return {J};
}

std::string cache_dir() {
  const char* d = std::getenv("CHEVFLAG_CACHE_DIR");
  return d ? d : "";
}

Chevalley make_group(const RootSystem& rs, unsigned q) {
  auto F = FiniteField::of_order(q);
  const auto dir = cache_dir();
  if (dir.empty()) return Chevalley(rs, F);
  return Chevalley(rs, F, cached_structure_constants(rs, dir));
}

struct Report {
  std::string command;
  json config = json::object();
  std::vector<Check> checks;
  json extra = json::object();
  std::string repro;

  CheckVerdict verdict() const {
    bool inconclusive = false;
    for (const auto& c : checks) {
      if (c.verdict == CheckVerdict::Fail) return CheckVerdict::Fail;
      if (c.verdict == CheckVerdict::Inconclusive) inconclusive = true;
    }
    return inconclusive ? CheckVerdict::Inconclusive : CheckVerdict::Pass;
  }

  json to_json() const {
    json j;
    j["tool"] = "chevflag";
    j["version"] = CHEVFLAG_VERSION;
    j["command"] = command;
    j["config"] = config;
    j["config_hash"] = hex64(fnv1a(command + "|" + config.dump()));
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    auto cs = json::array();
    for (const auto& c : checks) cs.push_back(c.to_json());
    j["checks"] = cs;
    j["verdict"] = to_string(verdict());
    if (verdict() != CheckVerdict::Pass) j["repro"] = repro;
    return j;
  }
};

int emit(const Report& r, const Options& o) {
  const auto text = r.to_json().dump(2) + "\n";
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw ConfigError("cannot write " + o.out);
    f << text;
  } else {
    std::cout << text;
  }
  switch (r.verdict()) {
    case CheckVerdict::Pass: return 0;
    case CheckVerdict::Fail: return 1;
    default: return 2;
  }
}

std::string repro_line(const std::string& cmd, const std::vector<std::pair<std::string, std::string>>& flags) {
  std::string s = "chevflag " + cmd;
  for (const auto& [k, v] : flags) s += " --" + k + " " + v;
  return s;
}

// ---- commands ----

Report rootsys_report(const Options& o) {
  auto rs = root_system(o);
  WeylGroup W(rs);
  Report r;
  r.command = "rootsys report";
  r.config = {{"type", rs.label()}};
  r.repro = repro_line(r.command, {{"type", rs.label()}});
  auto roots = json::array();
  for (int k = 0; k < rs.num_positive(); ++k)
    roots.push_back({{"index", k}, {"coords", rs.coords(k)}, {"height", rs.height(k)}, {"label", rs.format_root(k)}});
  auto elems = json::array();
  for (WeylGroup::Index w = 0; w < W.size(); ++w) {
    std::vector<unsigned> word;
    for (auto i : W.word(w)) word.push_back(i + 1u);
    elems.push_back({{"index", w},
                     {"word", word},
                     {"length", W.length(w)},
                     {"right_descents", format_subset(W.right_descents(w), rs.rank())},
                     {"left_descents", format_subset(W.left_descents(w), rs.rank())}});
  }
  auto para = json::array();
  for (Subset J : all_subsets(rs.rank())) {
    auto P = parabolic_data(W, J);
    para.push_back({{"J", format_subset(J, rs.rank())}, {"w_J", P.w_J}, {"X_J", P.X}, {"Y_J", P.Y}});
  }
  r.extra = {{"positive_roots", roots}, {"weyl_group", elems}, {"parabolics", para}, {"order_hash", hex64(rs.order_hash())}};
  Check c{"longest_element_length"};
  c.require(W.length(W.longest()) == static_cast<unsigned>(rs.num_positive()));
  Check d{"inversion_set_sizes"};
  for (WeylGroup::Index w = 0; w < W.size(); ++w) d.require(W.inversion_set(w).size() == W.length(w));
  r.checks = {c, d};
  return r;
}

Report chevalley_selfcheck(const Options& o) {
  auto rs = root_system(o);
  auto G = make_group(rs, o.q);
  const std::size_t trials = o.trials ? o.trials : 1000;
  Report r;
  r.command = "chevalley selfcheck";
  r.config = {{"type", rs.label()}, {"q", o.q}, {"trials", trials}, {"seed", o.seed}};
  r.repro = repro_line(r.command, {{"type", rs.label()}, {"q", std::to_string(o.q)}, {"trials", std::to_string(trials)},
                                   {"seed", std::to_string(o.seed)}});
  std::mt19937_64 rng(o.seed);
  Check assoc{"collection_associative"};
  Check inv{"inverse"};
  std::size_t bad_assoc = 0, bad_inv = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    auto a = random_unipotent(G, rng), b = random_unipotent(G, rng), c = random_unipotent(G, rng);
    bad_assoc += !(G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c)));
    bad_inv += !G.is_identity(G.mul(a, G.inverse(a)));
  }
  assoc.require(bad_assoc == 0);
  inv.require(bad_inv == 0);
  assoc.data = {{"trials", trials}, {"mismatches", bad_assoc}};
  inv.data = {{"trials", trials}, {"mismatches", bad_inv}};
  r.checks = {assoc, inv};
  if (rs.type() == 'A') {
    MatrixModel M(G);
    Check mm{"matrix_model_homomorphism"};
    std::size_t bad = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      auto a = random_unipotent(G, rng), b = random_unipotent(G, rng);
      bad += !(M.unipotent_matrix(G.mul(a, b)) == M.mul(M.unipotent_matrix(a), M.unipotent_matrix(b)));
    }
    mm.require(bad == 0);
    mm.data = {{"trials", trials}, {"mismatches", bad}};
    r.checks.push_back(mm);
  }
  r.checks.push_back(suites::sl2(G));
  return r;
}

Report flagmod_build(const Options& o) {
  auto rs = root_system(o);
  auto G = make_group(rs, o.q);
  const auto ell = coefficient(o.coeff);
  if (o.mode != "spin" && o.mode != "quotient" && o.mode != "rewriting" && o.mode != "both")
    throw ConfigError("mode must be spin, quotient, rewriting or both");
  Report r;
  r.command = "flagmod build";
  r.config = {{"type", rs.label()}, {"q", o.q}, {"coeff", "F" + std::to_string(ell)}, {"J", o.J}, {"mode", o.mode}};
  r.repro = repro_line(r.command, {{"type", rs.label()}, {"q", std::to_string(o.q)}, {"coeff", "F" + std::to_string(ell)},
                                   {"J", o.J}, {"mode", o.mode}});
  FlagSpace X(G);
  FlagModule<PrimeField> M(X, PrimeField(ell));
  auto modules = json::array();
  std::size_t total = 0;
  const auto Js = subsets(o.J, rs.rank());
  for (Subset J : Js) {
    json m{{"J", format_subset(J, rs.rank())}};
    auto P = parabolic_data(G.weyl(), J);
    Check basis{"basis J=" + format_subset(J, rs.rank())};
    if (o.mode == "spin" || o.mode == "both") {
      auto mj = mj_presentation(M, J);
      basis.require(mj.check && mj.check->holds());
      m["M_J_dim"] = mj.dim();
    }
    std::optional<Presentation<PrimeField>> quo, rew;
    if (o.mode != "rewriting") quo = ej_quotient(M, J);
    if (o.mode == "rewriting" || o.mode == "both") {
      EJModule<PrimeField> E(G, J, PrimeField(ell));
      rew = ej_rewriting(E);
    }
    const auto& ej = quo ? *quo : *rew;
    if (quo) basis.require(quo->check && quo->check->holds());
    basis.require(ej.dim() == ej_index(G, P).size());
    if (quo && rew) {
      Check agree{"quotient_matches_rewriting J=" + format_subset(J, rs.rank())};
      agree.require(quo->matrices == rew->matrices);
      r.checks.push_back(agree);
    }
    std::vector<std::string> hashes;
    for (const auto& g : ej.matrices) hashes.push_back(hex64(matrix_hash(M.field(), g)));
    auto cells = json::array();
    for (std::size_t c = 0; c < ej.basis.num_cells(); ++c)
      cells.push_back({{"w", G.weyl().format(ej.basis.cells()[c])}, {"size", ej.basis.cell_size(c)}});
    m["E_J_dim"] = ej.dim();
    m["cells"] = cells;
    m["matrix_hashes"] = hashes;
    total += ej.dim();
    modules.push_back(m);
    r.checks.push_back(basis);
  }
  r.extra = {{"modules", modules}, {"flag_dim", X.size()}};
  if (Js.size() == (1u << rs.rank())) {
    Check part{"partition_total"};
    part.require(total == X.size());
    part.data = {{"total", total}, {"flag_dim", X.size()}};
    r.checks.push_back(part);
    r.extra["partition_total"] = total;
  }
  return r;
}

Unipotent parse_coords(const Chevalley& G, const std::string& s) {
  Unipotent u = G.identity();
  std::stringstream ss(s);
  std::string item;
  std::size_t k = 0;
  while (std::getline(ss, item, ',')) {
    if (k >= u.size()) throw ConfigError("too many coordinates in '" + s + "'");
    unsigned v = 0;
    try {
      v = static_cast<unsigned>(std::stoul(item));
    } catch (const std::exception&) {
      throw ConfigError("bad coordinate '" + item + "'");
    }
    if (v >= G.field().q()) throw ConfigError("coordinate " + item + " is not an element of F_q");
    u[k++] = static_cast<Elem>(v);
  }
  if (k != u.size()) throw ConfigError("expected " + std::to_string(u.size()) + " coordinates in '" + s + "'");
  return u;
}

Report selfenc_closure(const Options& o) {
  auto rs = root_system(o);
  auto G = make_group(rs, o.q);
  if (o.gens.empty()) throw ConfigError("--gens is required, e.g. --gens 1,0,0;0,1,0");
  ElementSet X;
  std::stringstream ss(o.gens);
  std::string item;
  while (std::getline(ss, item, ';'))
    if (!item.empty()) X.insert(parse_coords(G, item));
  std::vector<RootOrder> orders;
  if (o.orders == "exhaustive") {
    RootOrder ord(rs.num_positive());
    for (int k = 0; k < rs.num_positive(); ++k) ord[k] = k;
    if (ord.size() > 8) throw ResourceError("exhaustive orders need at most 8 positive roots");
    do orders.push_back(ord);
    while (std::next_permutation(ord.begin(), ord.end()));
  } else if (o.orders.rfind("sample:", 0) == 0) {
    orders = sampled_orders(G, std::stoul(o.orders.substr(7)), o.seed);
  } else {
    throw ConfigError("orders must be exhaustive or sample:N");
  }
  Report r;
  r.command = "selfenc closure";
  r.config = {{"type", rs.label()}, {"q", o.q}, {"gens", o.gens}, {"orders", o.orders}, {"seed", o.seed}};
  r.repro = repro_line(r.command, {{"type", rs.label()}, {"q", std::to_string(o.q)}, {"gens", "'" + o.gens + "'"},
                                   {"orders", o.orders}, {"seed", std::to_string(o.seed)}});
  auto c = closure(G, X);
  auto rep = is_self_enclosed(G, c.H, orders);
  Check enc{"self_enclosed"};
  auto per = json::array();
  for (const auto& v : rep.orders) {
    enc.require(v.self_enclosed);
    per.push_back({{"order", format_order(G, v.order)}, {"self_enclosed", v.self_enclosed}});
  }
  enc.data = {{"orders", per}};
  Check pp{"p_power_order"};
  pp.require(is_p_power(c.H.size(), G.field().p()));
  Check cont{"contains_generators"};
  cont.require(std::includes(c.H.begin(), c.H.end(), X.begin(), X.end()));
  auto factors = json::array();
  for (const auto& f : root_factor(G, c.H, height_order(G))) factors.push_back(std::vector<Elem>(f.begin(), f.end()));
  r.extra = {{"closure_size", c.H.size()}, {"root_factors", factors}};
  r.checks = {cont, pp, enc};
  return r;
}

Report augment_search(const Options& o) {
  auto rs = root_system(o);
  auto G = make_group(rs, o.q);
  const auto ell = coefficient(o.coeff);
  const std::size_t trials = o.trials ? o.trials : 100;
  Report r;
  r.command = "augment search";
  r.config = {{"type", rs.label()}, {"q", o.q},         {"coeff", "F" + std::to_string(ell)}, {"J", o.J},
              {"trials", trials},   {"budget", o.budget}, {"seed", o.seed}};
  r.repro = repro_line(r.command, {{"type", rs.label()}, {"q", std::to_string(o.q)}, {"coeff", "F" + std::to_string(ell)},
                                   {"J", o.J}, {"trials", std::to_string(trials)}, {"budget", std::to_string(o.budget)},
                                   {"seed", std::to_string(o.seed)}});
  for (Subset J : subsets(o.J, rs.rank())) r.checks.push_back(suites::augment_suite(G, J, ell, trials, o.budget, o.seed + J));
  return r;
}

Report charp_pipeline(const Options& o) {
  auto rs = root_system(o);
  const unsigned q = o.p ? o.p : o.q;
  auto G = make_group(rs, q);
  const std::size_t trials = o.trials ? o.trials : 50;
  Report r;
  r.command = "charp pipeline";
  r.config = {{"type", rs.label()}, {"q", q}, {"J", o.J}, {"trials", trials}, {"seed", o.seed}};
  r.repro = repro_line(r.command, {{"type", rs.label()}, {"q", std::to_string(q)}, {"J", o.J},
                                   {"trials", std::to_string(trials)}, {"seed", std::to_string(o.seed)}});
  for (Subset J : subsets(o.J, rs.rank())) r.checks.push_back(suites::charp_suite(G, J, trials, o.seed + J));
  return r;
}

Report modengine_factors(const Options& o) {
  if (o.input.empty()) throw ConfigError("--input is required");
  std::ifstream in(o.input);
  if (!in) throw ConfigError("cannot read " + o.input);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  auto M = module_from_json(j);
  Report r;
  r.command = "modengine factors";
  r.config = {{"input_hash", hex64(module_hash(M))}, {"dim", M.dim}, {"ell", M.field.order()}, {"seed", o.seed}};
  r.repro = repro_line(r.command, {{"input", o.input}, {"seed", std::to_string(o.seed)}});
  if (!o.expect.empty()) r.repro += " --expect " + o.expect;
  std::vector<std::size_t> expected;
  if (!o.expect.empty()) {
    std::stringstream ss(o.expect);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        expected.push_back(std::stoul(item));
      } catch (const std::exception&) {
        throw ConfigError("--expect takes dimensions such as 1,6,6,8");
      }
    }
    std::sort(expected.begin(), expected.end());
    r.config["expect"] = expected;
  }
  r.checks.push_back(suites::factors_suite(M, expected, o.seed));
  Check sum{"dimensions_sum"};
  std::size_t s = 0;
  for (auto d : r.checks[0].data["dims"]) s += d.get<std::size_t>();
  sum.require(s == M.dim);
  r.checks.push_back(sum);
  return r;
}

Report modengine_export(const Options& o) {
  auto rs = root_system(o);
  auto G = make_group(rs, o.q);
  const auto ell = coefficient(o.coeff);
  Report r;
  r.command = "modengine export";
  r.config = {{"type", rs.label()}, {"q", o.q}, {"coeff", "F" + std::to_string(ell)}, {"J", o.J}};
  r.repro = repro_line(r.command, {{"type", rs.label()}, {"q", std::to_string(o.q)}, {"coeff", "F" + std::to_string(ell)},
                                   {"J", o.J}});
  MatrixModule M;
  if (o.J == "flag") {
    M = flag_permutation_module(G, PrimeField(ell));
  } else {
    auto Js = subsets(o.J, rs.rank());
    if (Js.size() != 1) throw ConfigError("export needs a single J or 'flag'");
    EJModule<PrimeField> E(G, Js[0], PrimeField(ell));
    M = MatrixModule(E.field(), E.dim(), E.generator_matrices(),
                     "E_" + format_subset(Js[0], rs.rank()) + " " + rs.label() + "(F" + std::to_string(o.q) + ")");
  }
  r.extra = {{"module", to_json(M)}};
  return r;
}

Report verify_all(const Options& o) {
  auto rs = root_system(o);
  auto G = make_group(rs, o.q);
  const auto ell = coefficient(o.coeff);
  Report r;
  r.command = "verify all";
  r.config = {{"type", rs.label()}, {"q", o.q}, {"coeff", "F" + std::to_string(ell)}, {"seed", o.seed}};
  r.repro = repro_line(r.command, {{"type", rs.label()}, {"q", std::to_string(o.q)}, {"coeff", "F" + std::to_string(ell)},
                                   {"seed", std::to_string(o.seed)}});
  r.checks.push_back(suites::partition(G, ell));
  r.checks.push_back(suites::basis_claims(G, ell));
  r.checks.push_back(suites::rewriting(G, ell, o.trials ? o.trials : 200, o.seed));
  r.checks.push_back(suites::sl2(G));
  r.checks.push_back(suites::closure_suite(G, o.trials ? o.trials : 50, o.seed));
  r.checks.push_back(suites::coset_suite(G, o.trials ? o.trials : 50, o.seed));
  if (ell != G.field().p())
    for (Subset J : all_subsets(rs.rank()))
      r.checks.push_back(suites::augment_suite(G, J, ell, o.trials ? o.trials : 25, o.budget, o.seed + J));
  for (Subset J : all_subsets(rs.rank()))
    r.checks.push_back(suites::charp_suite(G, J, o.trials ? o.trials : 10, o.seed + J));
  r.checks.push_back(suites::factors_suite(flag_permutation_module(G, PrimeField(ell)), {}, o.seed));
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flag modules of finite Chevalley groups: construction and verification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(CHEVFLAG_VERSION));
  Options o;

  auto add_group = [&](CLI::App* c) {
    c->add_option("--type", o.type, "Root system, e.g. A2, or a letter with --rank");
    c->add_option("--rank", o.rank, "Rank when --type is a single letter");
    c->add_option("--q", o.q, "Order of the base field F_q");
  };
  auto add_common = [&](CLI::App* c) {
    c->add_option("--seed", o.seed, "Random seed");
    c->add_option("--out", o.out, "Write the report to this file");
  };

  Report (*run)(const Options&) = nullptr;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, Report (*fn)(const Options&)) {
    auto* c = parent->add_subcommand(name, help);
    add_common(c);
    c->callback([&run, fn] { run = fn; });
    return c;
  };

  auto* rootsys = app.add_subcommand("rootsys", "Root systems and Weyl groups")->require_subcommand(1);
  auto* rep = leaf(rootsys, "report", "Positive roots, Weyl elements and parabolic data", rootsys_report);
  add_group(rep);

  auto* chev = app.add_subcommand("chevalley", "Unipotent group arithmetic")->require_subcommand(1);
  auto* sc = leaf(chev, "selfcheck", "Collection, inverses and the sl2 identity", chevalley_selfcheck);
  add_group(sc);
  sc->add_option("--trials", o.trials);

  auto* flag = app.add_subcommand("flagmod", "Flag modules M_J and E_J")->require_subcommand(1);
  auto* build = leaf(flag, "build", "Build presentations and check the basis claims", flagmod_build);
  add_group(build);
  build->add_option("--coeff", o.coeff, "Coefficient field, e.g. F5");
  build->add_option("--J", o.J, "'all' or simple indices such as 1,2");
  build->add_option("--mode", o.mode, "spin, quotient, rewriting or both");

  auto* sel = app.add_subcommand("selfenc", "Self-enclosed subgroups")->require_subcommand(1);
  auto* clo = leaf(sel, "closure", "Self-enclosed closure of a set of unipotent elements", selfenc_closure);
  add_group(clo);
  clo->add_option("--gens", o.gens, "Elements as root coordinates, separated by ';'");
  clo->add_option("--orders", o.orders, "exhaustive or sample:N");

  auto* aug = app.add_subcommand("augment", "Augmentation non-vanishing")->require_subcommand(1);
  auto* srch = leaf(aug, "search", "Seeded search for g with eps(g xi) != 0", augment_search);
  add_group(srch);
  srch->add_option("--coeff", o.coeff);
  srch->add_option("--J", o.J);
  srch->add_option("--trials", o.trials);
  srch->add_option("--budget", o.budget);

  auto* cp = app.add_subcommand("charp", "Equal-characteristic reductions")->require_subcommand(1);
  auto* pipe = leaf(cp, "pipeline", "oneterm and leastterm reductions with certificates", charp_pipeline);
  add_group(pipe);
  pipe->add_option("--p", o.p, "Base field order (alias of --q)");
  pipe->add_option("--J", o.J);
  pipe->add_option("--trials", o.trials);

  auto* me = app.add_subcommand("modengine", "Composition factors")->require_subcommand(1);
  auto* fac = leaf(me, "factors", "Composition factors of a module given as JSON", modengine_factors);
  fac->add_option("--input", o.input, "Module JSON file");
  fac->add_option("--expect", o.expect, "Expected factor dimensions, e.g. 1,6,6,8");
  auto* exp = leaf(me, "export", "Write F[G/B] (--J flag) or E_J as module JSON", modengine_export);
  add_group(exp);
  exp->add_option("--coeff", o.coeff);
  exp->add_option("--J", o.J);

  auto* ver = app.add_subcommand("verify", "Aggregate verification")->require_subcommand(1);
  auto* all = leaf(ver, "all", "Every suite for one group and coefficient field", verify_all);
  add_group(all);
  all->add_option("--coeff", o.coeff);
  all->add_option("--trials", o.trials);
  all->add_option("--budget", o.budget);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    return emit(run(o), o);
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 2;
}
