#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "bordcalc/ahss.hpp"
#include "bordcalc/charnum.hpp"
#include "bordcalc/errors.hpp"
#include "bordcalc/picard.hpp"
#include "bordcalc/registry.hpp"

using namespace bordcalc;

namespace {

enum Exit { kOk = 0, kInput = 1, kUnresolved = 2, kIntegrality = 3 };

struct SsOptions {
  std::string space;
  std::string coeff = "spin";
  std::string hints;
  int upto = 8;
  bool unreduced = false;
  std::string format = "table";
};

int run_ss(const SsOptions& o) {
  Workspace ws(registry_loader());
  std::shared_ptr<const CoefficientRow> row;
  if (o.coeff == "spin") {
    row = std::make_shared<CoefficientRow>(spin_coefficients());
  } else if (o.coeff.rfind("row:", 0) == 0) {
    auto path = o.coeff.substr(4);
    row = std::make_shared<CoefficientRow>(parse_row(ws.loader()(path), path));
  } else if (o.coeff.rfind("point:", 0) == 0) {
    row = std::make_shared<CoefficientRow>(point_bordism_row(parse_structure(o.coeff.substr(6))));
  } else if (o.coeff.rfind("bordism:", 0) == 0) {
    auto rest = o.coeff.substr(8);
    auto colon = rest.find(':');
    if (colon == std::string::npos) throw InputError("--coeff bordism:<space>:<hints> needs both files");
    RunRequest base;
    base.space_path = rest.substr(0, colon);
    base.hints_path = rest.substr(colon + 1);
    base.row = std::make_shared<CoefficientRow>(spin_coefficients());
    base.upto = o.upto;
    auto result = ws.run(base);
    row = std::make_shared<CoefficientRow>(result->as_row("bordism(" + result->space->name + ")"));
  } else {
    throw InputError("unknown coefficient source '" + o.coeff + "' (spin, row:<file>, point:<structure>, bordism:<space>:<hints>)");
  }

  RunRequest req;
  req.space_path = o.space;
  if (!o.hints.empty()) req.hints_path = o.hints;
  req.row = row;
  req.upto = o.upto;
  req.unreduced = o.unreduced;
  auto run = ws.run(req);
  std::cout << render(*run, o.format == "kv" ? OutputFormat::KeyValue : OutputFormat::Table);
  return run->overall() == ReportStatus::Resolved ? kOk : kUnresolved;
}

std::string tuple(const std::vector<Integer>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].get_str();
  return out + ")";
}

// "SU(2): c2 = s4, c3 = ..." or "U(3): c1 = ..."
BundleData parse_bundle(const std::string& text, const ManifoldModel& model) {
  auto colon = text.find(':');
  std::string head = text.substr(0, colon);
  head.erase(std::remove_if(head.begin(), head.end(), ::isspace), head.end());
  BundleData b;
  auto open = head.find('('), close = head.find(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw InputError("bundle '" + text + "' should start with SU(r) or U(r)");
  std::string fam = head.substr(0, open);
  if (fam == "SU") b.group = BundleData::Group::SU;
  else if (fam == "U") b.group = BundleData::Group::U;
  else throw InputError("bundle group must be SU(r) or U(r), got " + fam);
  b.rank = text::parse_int(head.substr(open + 1, close - open - 1), "rank");
  if (colon != std::string::npos) {
    for (auto part : text::split(text.substr(colon + 1), ",")) {
      part = text::trim(part);
      if (part.empty()) continue;
      auto eq = part.find('=');
      if (eq == std::string::npos || part[0] != 'c') throw InputError("expected 'c<i> = <class>' in '" + part + "'");
      int i = text::parse_int(text::trim(part.substr(1, eq - 1)), "Chern class index");
      auto x = model.parse_class(2 * i, text::trim(part.substr(eq + 1)));
      if (!x.is_zero()) b.chern.insert_or_assign(i, x);
    }
  }
  b.validate(model);
  return b;
}

struct AbcOptions {
  std::string model;
  std::vector<std::string> bundles;
  int generator = 0;
  int rank = 0;
};

int run_abc(const AbcOptions& o) {
  auto model = ManifoldModel::parse(o.model);
  BundleData q;
  if (o.generator) {
    q = generator_bundle(o.generator, model);
  } else {
    std::vector<BundleData> parts;
    for (const auto& b : o.bundles) parts.push_back(parse_bundle(b, model));
    q = whitney_sum(parts, model);
  }
  auto values = bsu_loop_invariants(model, q);
  std::cout << tuple(values);
  if (values.size() == 3) {
    int r = o.rank ? o.rank : q.rank;
    if (o.rank && o.rank < q.rank) throw InputError("--rank is smaller than the bundle rank " + std::to_string(q.rank));
    if (r >= 2) {
      auto inv = SuLoopInvariants{values[0], values[1], values[2]};
      Integer direct = xi_index(r, integrate(multiply(q.c(2, model), q.c(2, model)), model),
                                integrate(q.c(4, model), model), integrate(multiply(model.p1(), q.c(2, model)), model));
      if (direct != xi_from_abc(r, inv)) throw IntegralityError("index formula and (a,b,c) disagree");
      std::cout << "  Xi=" << direct.get_str();
    } else {
      std::cout << "  Xi=0";
    }
  }
  std::cout << "\n";
  return kOk;
}

struct InvariantOptions {
  std::string target;
  std::string model;
  std::vector<std::string> classes;
};

int run_invariants(const InvariantOptions& o) {
  auto model = ManifoldModel::parse(o.model);
  PulledClasses classes;
  for (const auto& c : o.classes) {
    auto eq = c.find('=');
    if (eq == std::string::npos) throw InputError("expected <name>=<class>, got '" + c + "'");
    std::string name = text::trim(c.substr(0, eq));
    if (name.size() < 2 || !std::isdigit(static_cast<unsigned char>(name[1])))
      throw InputError("class names look like b2, b3, b4 or d3");
    int i = text::parse_int(name.substr(1), "class index");
    int degree = name[0] == 'b' ? 2 * i - 1 : i;
    classes.insert_or_assign(name, model.parse_class(degree, text::trim(c.substr(eq + 1))));
  }
  std::vector<Integer> values;
  if (o.target == "su") values = su_invariants_low(model, classes);
  else if (o.target == "kz3") values = kz3_invariants(model, classes);
  else throw InputError("invariants are available for 'su' and 'kz3'");
  std::cout << tuple(values) << "\n";
  return kOk;
}

int run_picard(const std::string& query, const std::vector<std::string>& args) {
  auto need = [&](std::size_t k) {
    if (args.size() != k)
      throw InputError("picard " + query + " takes " + std::to_string(k) + " argument(s)");
  };
  if (query == "ses") {
    need(2);
    auto c = ses_check(FGAbelianGroup::parse(args[0]), FGAbelianGroup::parse(args[1]));
    std::cout << "|Alt|=" << c.alt.get_str() << " |Skew|=" << c.skew.get_str()
              << " exact=" << (c.exact ? "true" : "false") << " |Hom(pi0/2pi0,pi1)|=" << c.hom.get_str() << "\n";
    return kOk;
  }
  if (query == "forgetful" || query == "identity") {
    need(0);
    auto super = super_torsor_picard();
    auto target = query == "forgetful" ? plain_torsor_picard() : super;
    auto id = GroupMorphism(super.pi0, target.pi0, IntMatrix::identity(1));
    auto id1 = GroupMorphism(super.pi1, target.pi1, IntMatrix::identity(1));
    bool ok = functor_exists(super, target, id, id1);
    std::cout << (ok ? "OK" : "NOT SYMMETRIC-MONOIDAL") << "\n";
    return kOk;
  }
  if (query == "torsor") {
    need(0);
    bool involution = true, hexagon = true;
    for (int e = 0; e < 2; ++e)
      for (int f = 0; f < 2; ++f) {
        auto t = GradedTorsor::make("a", "b", e), u = GradedTorsor::make("c", "d", f);
        if (compose(torsor_symmetry(u, t), torsor_symmetry(t, u)) != TorsorMap{}) involution = false;
        for (int g = 0; g < 2; ++g)
          if (!hexagon_holds(t, u, GradedTorsor::make("e", "f", g))) hexagon = false;
      }
    std::cout << "symmetry involution: " << (involution ? "OK" : "FAIL") << "\n"
              << "hexagon (8 grade triples): " << (hexagon ? "OK" : "FAIL") << "\n";
    return involution && hexagon ? kOk : kInput;
  }
  if (query == "bordism") {
    need(2);
    auto data = picard_from_bordism(parse_structure(args[0]), text::parse_int(args[1], "n"));
    std::cout << data.str() << "\n";
    return data.q ? kOk : kUnresolved;
  }
  throw InputError("unknown picard query '" + query + "' (ses, forgetful, identity, torsor, bordism)");
}

int run_registry(const std::string& table, const std::vector<std::string>& args) {
  if (table == "bordism") {
    if (args.empty() || args.size() > 2) throw InputError("registry bordism <structure> [n]");
    auto s = parse_structure(args[0]);
    if (args.size() == 2) {
      std::cout << lookup_point_bordism(s, text::parse_int(args[1], "n")).str() << "\n";
    } else {
      for (int n = 0; n <= max_degree(s); ++n) std::cout << "n=" << n << ": " << lookup_point_bordism(s, n).str() << "\n";
    }
    return kOk;
  }
  if (table == "e8" || table == "be8") {
    if (args.size() != 1) throw InputError("registry " + table + " <d>");
    std::cout << lookup_e8_homotopy(text::parse_int(args[0], "d"), table == "be8").str() << "\n";
    return kOk;
  }
  if (table == "complex") {
    if (args.size() != 2) throw InputError("registry complex <source> <target>");
    auto rec = complex_type(parse_group(args[0]), parse_group(args[1]));
    std::cout << (rec ? "complex type: " + rec->str() : std::string("not listed")) << "\n";
    return kOk;
  }
  throw InputError("unknown registry table '" + table + "' (bordism, e8, be8, complex)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bordism and characteristic-number calculator"};
  app.require_subcommand(1);

  SsOptions ss;
  auto* ss_cmd = app.add_subcommand("ss", "Run an Atiyah-Hirzebruch spectral sequence");
  ss_cmd->add_option("space", ss.space, "Space descriptor (builtin/<name> for a bundled fixture)")->required();
  ss_cmd->add_option("--coeff", ss.coeff, "spin | row:<file> | point:<structure> | bordism:<space>:<hints>");
  ss_cmd->add_option("--hints", ss.hints, "Hint file");
  ss_cmd->add_option("--upto", ss.upto, "Highest total degree")->check(CLI::Range(0, 40));
  ss_cmd->add_flag("--unreduced", ss.unreduced, "Include the basepoint");
  ss_cmd->add_option("--format", ss.format, "table | kv")->check(CLI::IsMember({"table", "kv"}));

  int floer_r = 0, stabilize = 0;
  auto* floer_cmd = app.add_subcommand("floer", "Floer grading divisibility for SU(r)");
  floer_cmd->add_option("r", floer_r, "Rank")->required();
  floer_cmd->add_option("--stabilize", stabilize, "Compute through SU(r') with c4 = 0");

  AbcOptions abc;
  auto* abc_cmd = app.add_subcommand("abc", "Loop-space invariants (a,b,c) and Xi of a bundle on X x S1");
  abc_cmd->alias("xi");
  abc_cmd->add_option("--model", abc.model, "Product manifold, e.g. \"S4 x S3 x S1\"")->required();
  abc_cmd->add_option("--bundle", abc.bundles, "Summand such as \"SU(2): c2 = s4\" (repeatable, Whitney sum)");
  abc_cmd->add_option("--generator", abc.generator, "Use the clutching bundle of the i-th generator");
  abc_cmd->add_option("--rank", abc.rank, "Structure group SU(r) for Xi (defaults to the bundle rank)");

  InvariantOptions inv;
  auto* inv_cmd = app.add_subcommand("invariants", "Bordism invariants of SU or K(Z,3)");
  inv_cmd->add_option("target", inv.target, "su | kz3")->required();
  inv_cmd->add_option("--model", inv.model, "Product manifold")->required();
  inv_cmd->add_option("--class", inv.classes, "Pulled-back class, e.g. \"d3=s3\"");

  std::string expr;
  int orient_n = 7;
  auto* orient_cmd = app.add_subcommand("orientable", "Orientability of gauge moduli spaces for a Lie group");
  orient_cmd->add_option("group", expr, "Group expression, e.g. \"SU(5) x E8\" or \"SO(10)/K\"")->required();
  orient_cmd->add_option("--n", orient_n, "Dimension 7 or 8")->check(CLI::IsMember({7, 8}));

  std::string picard_query;
  std::vector<std::string> picard_args;
  auto* picard_cmd = app.add_subcommand("picard", "Picard groupoid queries");
  picard_cmd->add_option("query", picard_query, "ses | forgetful | identity | torsor | bordism")->required();
  picard_cmd->add_option("args", picard_args, "Query arguments");

  std::string registry_table;
  std::vector<std::string> registry_args;
  auto* registry_cmd = app.add_subcommand("registry", "Look up tabulated groups");
  registry_cmd->add_option("table", registry_table, "bordism | e8 | be8 | complex")->required();
  registry_cmd->add_option("args", registry_args, "Table arguments");

  std::string export_name;
  auto* export_cmd = app.add_subcommand("export", "Print a bundled fixture or a bordism row");
  export_cmd->add_option("name", export_name, "su.space, kz3.hints, ..., or row:<structure>")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*ss_cmd) return run_ss(ss);
    if (*floer_cmd) {
      if (stabilize) {
        if (floer_r >= 4) throw InputError("--stabilize applies to r = 2 or 3, where c4 vanishes");
        if (floer_r < 2) throw InputError("rank must be at least 2");
        std::cout << stabilized_divisibility(stabilize).get_str() << "\n";
      } else {
        std::cout << floer_divisibility(floer_r).get_str() << "\n";
      }
      return kOk;
    }
    if (*abc_cmd) return run_abc(abc);
    if (*inv_cmd) return run_invariants(inv);
    if (*orient_cmd) {
      std::cout << classify_orientability(parse_group(expr), orient_n).str() << "\n";
      return kOk;
    }
    if (*picard_cmd) return run_picard(picard_query, picard_args);
    if (*registry_cmd) return run_registry(registry_table, registry_args);
    if (*export_cmd) {
      std::cout << export_document(export_name);
      return kOk;
    }
  } catch (const IntegralityError& e) {
    std::cerr << "integrality violation: " << e.what() << "\n";
    return kIntegrality;
  } catch (const UnresolvedError& e) {
    std::cerr << "unresolved: " << e.what() << "\n";
    return kUnresolved;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
