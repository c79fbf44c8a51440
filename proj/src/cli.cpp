#include "latcap/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "latcap/canonical.hpp"
#include "latcap/io.hpp"
#include "latcap/lattice.hpp"
#include "latcap/measures.hpp"
#include "latcap/oracle.hpp"

namespace latcap::cli {

namespace {

using nlohmann::json;

std::string fixed12(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x < 0 && x > -5e-13) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", x);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

const char* yn(bool b) { return b ? "yes" : "no"; }

struct Options {
  std::string structure;
  std::string capacity;
  std::string relative;
  std::string mode = "auto";
  bool per_chain = false;
  bool exact = false;
  bool json_out = false;
  std::uint64_t seed = 20260816;
  int trials = 200;
  std::uint64_t budget = kDefaultChainBudget;
};

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

int cmd_classify(const Options& opt, std::ostream& out) {
  StructureRef s = io::load_structure(opt.structure);
  json j;
  j["command"] = "classify";

  // Rows are tristate: yes / no / n/a when the predicate does not apply to
  // the input kind or the cover graph is unavailable.
  std::vector<std::pair<std::string, std::string>> rows;
  auto put = [&](const std::string& key, const std::string& val,
                 const json& jval) {
    rows.emplace_back(key, val);
    std::string jkey = key;
    for (char& c : jkey)
      if (c == ' ' || c == '-') c = '_';
    j[jkey] = jval;
  };
  auto put_flag = [&](const std::string& key, bool b) { put(key, yn(b), b); };
  auto put_na = [&](const std::string& key) {
    put(key, "n/a", nullptr);
  };

  if (const auto* sp = as_set_system(s)) {
    const SetSystem& ss = **sp;
    put("kind", "set system", "set system");
    put("players", std::to_string(ss.ground_size()), ss.ground_size());
    put("elements", std::to_string(ss.size()), ss.size());
    if (!ss.has_hasse()) {
      for (const char* key :
           {"regular", "convex geometry", "antimatroid", "vee-minimal regular",
            "wedge-minimal regular", "distributive", "jordan-dedekind"})
        put_na(key);
      put_na("join-irreducibles");
      put_na("meet-irreducibles");
      put_na("maximal chains");
    } else {
      put_flag("regular", is_regular(ss));
      put_flag("convex geometry", is_convex_geometry(ss));
      put_flag("antimatroid", is_antimatroid(ss));
      try {
        BoundedLattice lv = BoundedLattice::from_poset(ss.containment_poset());
        put_flag("vee-minimal regular", is_vee_minimal_regular(lv));
        put_flag("wedge-minimal regular", is_wedge_minimal_regular(lv));
        put_flag("distributive", is_distributive(lv));
      } catch (const Error&) {
        put_na("vee-minimal regular");
        put_na("wedge-minimal regular");
        put_na("distributive");
      }
      put_flag("jordan-dedekind",
               jordan_dedekind_holds(ss.containment_poset(), ss.hasse()));
      int joins = 0, meets = 0;
      for (std::size_t e = 0; e < ss.size(); ++e) {
        joins += ss.hasse().down[e].size() == 1;
        meets += ss.hasse().up[e].size() == 1;
      }
      put("join-irreducibles", std::to_string(joins), joins);
      put("meet-irreducibles", std::to_string(meets), meets);
      put("maximal chains", count_maximal_chains(ss).str(),
          count_maximal_chains(ss).str());
    }
  } else {
    const BoundedLattice& l = **as_lattice(s);
    put("kind", "lattice", "lattice");
    put("elements", std::to_string(l.size()), l.size());
    put_na("regular");
    put_na("convex geometry");
    put_na("antimatroid");
    put_flag("vee-minimal regular", is_vee_minimal_regular(l));
    put_flag("wedge-minimal regular", is_wedge_minimal_regular(l));
    put_flag("distributive", is_distributive(l));
    put_flag("jordan-dedekind", jordan_dedekind_holds(l));
    put("join-irreducibles", std::to_string(join_irreducibles(l).size()),
        join_irreducibles(l).size());
    put("meet-irreducibles", std::to_string(meet_irreducibles(l).size()),
        meet_irreducibles(l).size());
    put("maximal chains", count_maximal_chains(l).str(),
        count_maximal_chains(l).str());
  }

  if (opt.json_out) {
    emit(out, j);
  } else {
    for (const auto& [key, val] : rows) out << key << ": " << val << "\n";
  }
  return 0;
}

std::string resolve_mode(const std::string& mode, const StructureRef& s,
                         bool exact) {
  const auto* sp = as_set_system(s);
  if (mode == "auto") {
    if (sp && (*sp)->is_full_powerset() && !exact) return "classical";
    if (sp && is_regular(**sp)) return "chain";
    if (!sp && is_vee_minimal_regular(**as_lattice(s))) return "lattice";
    throw PreconditionError(
        "no Shapley mode applies to this structure; pass --mode");
  }
  if (mode == "classical" && exact)
    throw PreconditionError("exact mode supports chain, lattice, and dual");
  return mode;
}

int cmd_shapley(const Options& opt, std::ostream& out) {
  StructureRef s = io::load_structure(opt.structure);
  const std::string mode = resolve_mode(opt.mode, s, opt.exact);

  json j;
  j["command"] = "shapley";
  j["mode"] = mode;
  j["exact"] = opt.exact;
  json jphi = json::array();

  std::vector<std::string> labels;
  std::vector<std::string> printed;
  std::string printed_sum;
  const char* index_name = "players";

  if (opt.exact) {
    io::ExactCapacity ec =
        io::parse_capacity_text_exact(read_file(opt.capacity), s);
    ShapleyExpansion exp = [&] {
      if (mode == "chain") return shapley_chain_expansion(**as_set_system(s));
      if (mode == "lattice")
        return shapley_lattice_expansion(**as_lattice(s));
      if (mode == "dual")
        return shapley_lattice_dual_expansion(**as_lattice(s));
      throw PreconditionError("exact mode supports chain, lattice, and dual");
    }();
    auto phi = evaluate_exact(exp, ec.values);
    Rational sum = 0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
      labels.push_back(exp.labels[i]);
      printed.push_back(io::format_rational(phi[i]));
      jphi.push_back({{"id", exp.ids[i]},
                      {"label", exp.labels[i]},
                      {"value", printed.back()}});
      sum += phi[i];
    }
    printed_sum = io::format_rational(sum);
    index_name = exp.index_kind == ShapleyVector::Index::players
                     ? "players"
                     : (exp.index_kind == ShapleyVector::Index::join_irreducibles
                            ? "join-irreducibles"
                            : "meet-irreducibles");
    j["sum"] = printed_sum;
  } else {
    Capacity v = io::load_capacity(opt.capacity, s);
    ShapleyVector sv = [&] {
      if (mode == "classical") return shapley_classical(v);
      if (mode == "chain") return shapley_chain(v);
      if (mode == "lattice") return shapley_lattice(v);
      return shapley_lattice_dual(v);
    }();
    for (std::size_t i = 0; i < sv.phi.size(); ++i) {
      labels.push_back(sv.labels[i]);
      printed.push_back(fixed12(sv.phi[i]));
      jphi.push_back({{"id", sv.ids[i]},
                      {"label", sv.labels[i]},
                      {"value", sv.phi[i]}});
    }
    printed_sum = fixed12(sv.sum());
    index_name = sv.index_kind == ShapleyVector::Index::players
                     ? "players"
                     : (sv.index_kind == ShapleyVector::Index::join_irreducibles
                            ? "join-irreducibles"
                            : "meet-irreducibles");
    j["sum"] = sv.sum();
  }

  j["index"] = index_name;
  j["phi"] = jphi;
  if (opt.json_out) {
    emit(out, j);
  } else {
    out << "mode: " << mode << "\n";
    out << "index: " << index_name << "\n";
    for (std::size_t i = 0; i < labels.size(); ++i)
      out << "phi[" << labels[i] << "] = " << printed[i] << "\n";
    out << "sum = " << printed_sum << "\n";
  }
  return 0;
}

int cmd_entropy(const Options& opt, std::ostream& out) {
  StructureRef s = io::load_structure(opt.structure);
  json j;
  j["command"] = "entropy";

  if (opt.exact) {
    if (opt.per_chain)
      throw PreconditionError("--per-chain does not apply in exact mode");
    auto exp = entropy_expansion(s);
    std::vector<Rational> inc;
    bool have_cap = !opt.capacity.empty();
    io::ExactCapacity ec;
    if (have_cap)
      ec = io::parse_capacity_text_exact(read_file(opt.capacity), s);
    json jexp = json::array();
    if (!opt.json_out) out << "edge weights:\n";
    for (const auto& term : exp) {
      const std::string lo = structure_label(s, term.lo);
      const std::string hi = structure_label(s, term.hi);
      const std::string w = io::format_rational(term.weight);
      json row{{"lo", lo}, {"hi", hi}, {"weight", w}};
      std::string line = "  " + lo + " -> " + hi + ": " + w;
      if (have_cap) {
        const Rational dv = ec.values[std::size_t(term.hi)] -
                            ec.values[std::size_t(term.lo)];
        row["dv"] = io::format_rational(dv);
        line += "  dv = " + io::format_rational(dv);
      }
      jexp.push_back(row);
      if (!opt.json_out) out << line << "\n";
    }
    j["expansion"] = jexp;
    j["edges"] = exp.size();
    if (opt.json_out)
      emit(out, j);
    else
      out << "edges: " << exp.size() << "\n";
    return 0;
  }

  if (opt.capacity.empty())
    throw PreconditionError("entropy needs --capacity");
  Capacity v = io::load_capacity(opt.capacity, s);

  if (!opt.relative.empty()) {
    if (opt.per_chain)
      throw PreconditionError("--per-chain does not combine with --relative");
    Capacity u = io::load_capacity(opt.relative, s);
    const double d = relative_entropy(v, u);
    j["relative_entropy_bits"] = d;
    if (opt.json_out)
      emit(out, j);
    else
      out << "relative entropy: " << fixed12(d) << " bits\n";
    return 0;
  }

  EntropyOptions eo;
  eo.per_chain = opt.per_chain;
  eo.chain_budget = opt.budget;
  EntropyReport rep = entropy(v, eo);
  j["entropy_bits"] = rep.bits;
  j["maximal_chains"] = rep.chain_count.str();
  if (opt.per_chain) {
    json jc = json::array();
    for (const auto& [chain, bits] : rep.per_chain) {
      json labels = json::array();
      for (ElementId e : chain) labels.push_back(structure_label(s, e));
      jc.push_back({{"chain", labels}, {"bits", bits}});
    }
    j["per_chain"] = jc;
  }
  if (opt.json_out) {
    emit(out, j);
  } else {
    out << "entropy: " << fixed12(rep.bits) << " bits\n";
    out << "maximal chains: " << rep.chain_count.str() << "\n";
    if (opt.per_chain)
      for (const auto& [chain, bits] : rep.per_chain) {
        std::string path;
        for (std::size_t i = 0; i < chain.size(); ++i) {
          if (i) path += " < ";
          path += structure_label(s, chain[i]);
        }
        out << "  " << path << ": " << fixed12(bits) << "\n";
      }
  }
  return 0;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  json j;
  j["command"] = "verify";
  j["seed"] = opt.seed;
  j["trials"] = opt.trials;
  std::string warning;
  if (opt.trials == 0)
    warning = "warning: 0 trials requested; every check is vacuous";

  oracle::HarnessOptions ho;
  ho.seed = opt.seed;
  ho.trials = opt.trials;
  oracle::HarnessReport rep = oracle::proposition_harness(ho);

  json jc = json::array();
  for (const auto& c : rep.checks) {
    jc.push_back({{"name", c.name},
                  {"trials", c.trials},
                  {"failures", c.failures},
                  {"skipped", c.skipped},
                  {"detail", c.detail}});
  }
  j["checks"] = jc;
  j["passed"] = rep.all_passed();
  if (!warning.empty()) j["warning"] = warning;
  if (!rep.artifact.empty()) j["artifact"] = rep.artifact;

  if (opt.json_out) {
    emit(out, j);
  } else {
    if (!warning.empty()) out << warning << "\n";
    for (const auto& c : rep.checks) {
      if (c.failures == 0) {
        out << "pass  " << c.name << " (" << c.trials << " trials";
        if (c.skipped) out << ", " << c.skipped << " vacuous";
        out << ")\n";
      } else {
        out << "FAIL  " << c.name << " (" << c.failures << "/" << c.trials
            << "): " << c.detail << "\n";
      }
    }
    if (!rep.artifact.empty())
      out << "first failing input:\n" << rep.artifact << "\n";
  }
  return rep.all_passed() ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options opt;
  CLI::App app{"capacities on lattices and set systems"};
  app.require_subcommand(1);

  auto* classify = app.add_subcommand(
      "classify", "structure predicates, irreducible and chain counts");
  classify->add_option("--structure", opt.structure, "file or shorthand")
      ->required();
  classify->add_flag("--json", opt.json_out, "machine-readable output");

  auto* shapley =
      app.add_subcommand("shapley", "chain-average or classical Shapley value");
  shapley->add_option("--structure", opt.structure, "file or shorthand")
      ->required();
  shapley->add_option("--capacity", opt.capacity, "capacity file")->required();
  shapley->add_option("--mode", opt.mode, "auto|classical|chain|lattice|dual")
      ->check(CLI::IsMember({"auto", "classical", "chain", "lattice", "dual"}));
  shapley->add_flag("--exact", opt.exact, "rational arithmetic");
  shapley->add_flag("--json", opt.json_out, "machine-readable output");

  auto* entropy =
      app.add_subcommand("entropy", "chain-average entropy in bits");
  entropy->add_option("--structure", opt.structure, "file or shorthand")
      ->required();
  entropy->add_option("--capacity", opt.capacity, "capacity file");
  entropy->add_option("--relative", opt.relative,
                      "second capacity file; report divergence from it");
  entropy->add_flag("--per-chain", opt.per_chain, "list each chain's entropy");
  entropy->add_flag("--exact", opt.exact, "print the exact edge expansion");
  entropy->add_option("--budget", opt.budget, "maximal chain enumeration cap");
  entropy->add_flag("--json", opt.json_out, "machine-readable output");

  auto* verify = app.add_subcommand("verify", "randomized property harness");
  verify->add_option("--seed", opt.seed, "base seed");
  verify->add_option("--trials", opt.trials, "trials per check")
      ->check(CLI::NonNegativeNumber);
  verify->add_flag("--json", opt.json_out, "machine-readable output");

  std::vector<const char*> argv;
  argv.push_back("latcap");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (classify->parsed()) return cmd_classify(opt, out);
    if (shapley->parsed()) return cmd_shapley(opt, out);
    if (entropy->parsed()) return cmd_entropy(opt, out);
    return cmd_verify(opt, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace latcap::cli
