// Command-line front end: validation, classification, factorizations,
// liftings, right-lifting-property checks, tensor presentations, bounded
// equality, slices and the generating families.  Machine-readable JSON goes
// to standard output, a one-line human summary to standard error.
// Exit codes: 0 success/true, 1 false/negative result, 2 error.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "opemodel/factorization.hpp"
#include "opemodel/generators.hpp"
#include "opemodel/lifting.hpp"
#include "opemodel/presented.hpp"
#include "opemodel/serialize.hpp"

using namespace opemodel;

namespace {

void emit(const json& machine, const std::string& human) {
  std::cout << machine.dump(2) << "\n";
  std::cerr << human << "\n";
}

Document load(const std::string& path) { return parse_document_file(path); }

FiniteOperad load_operad(const std::string& path) {
  Document doc = load(path);
  if (doc.kind != Document::Kind::operad) throw SemanticError(path + " is not an operad document");
  return std::get<FiniteOperad>(doc.payload);
}

OperadFunctor load_functor(const std::string& path) {
  Document doc = load(path);
  if (doc.kind != Document::Kind::functor) throw SemanticError(path + " is not a functor document");
  return std::get<OperadFunctor>(doc.payload);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

long long default_budget() {
  if (const char* env = std::getenv("OPEMODEL_BUDGET")) {
    try {
      return std::stoll(env);
    } catch (...) {
      throw InvalidArgument("OPEMODEL_BUDGET is not an integer");
    }
  }
  return kDefaultSearchBudget;
}

json functor_document(const OperadFunctor& f) {
  return document_to_json(Document{Document::Kind::functor, f});
}

int cmd_validate(const std::string& file) {
  json report;
  report["command"] = "validate";
  json issues = json::array();
  bool ok = true;
  json j = parse_json_text(read_file(file));
  std::string kind = detail::expect_string(j, "kind", "document");
  report["kind"] = kind;
  std::string base = std::filesystem::path(file).parent_path().string();
  if (kind == "operad") {
    ValidationReport rep = validate(operad_from_json(detail::expect(j, "payload", "document")));
    ok = rep.ok();
    for (const auto& issue : rep.issues)
      issues.push_back(json{{"axiom", issue.axiom}, {"witness", issue.witness}});
  } else if (kind == "category") {
    ValidationReport rep = validate(category_from_json(detail::expect(j, "payload", "document")));
    ok = rep.ok();
    for (const auto& issue : rep.issues)
      issues.push_back(json{{"axiom", issue.axiom}, {"witness", issue.witness}});
  } else {
    try {
      parse_document_json(j, base.empty() ? "." : base);
    } catch (const Error& e) {
      ok = false;
      issues.push_back(json{{"axiom", e.kind()}, {"witness", e.what()}});
    }
  }
  report["ok"] = ok;
  report["issues"] = issues;
  emit(report, ok ? "valid " + kind
                  : "invalid " + kind + ": " + std::to_string(issues.size()) + " issue(s)");
  return ok ? 0 : 1;
}

int cmd_classify(const std::string& file) {
  OperadFunctor f = load_functor(file);
  ClassMembership c = classify(f);
  json report;
  report["command"] = "classify";
  report["classes"] = json{{"cofibration", c.cofibration},
                           {"fibration", c.fibration},
                           {"weak_equivalence", c.weak_equivalence},
                           {"trivial_cofibration", c.trivial_cofibration},
                           {"trivial_fibration", c.trivial_fibration},
                           {"fully_faithful", is_fully_faithful(f)},
                           {"essentially_surjective", is_essentially_surjective(f)}};
  std::string human = "classes:";
  if (c.cofibration) human += " cofibration";
  if (c.fibration) human += " fibration";
  if (c.weak_equivalence) human += " weak_equivalence";
  emit(report, human);
  return 0;
}

int cmd_factor(const std::string& mode, const std::string& file) {
  OperadFunctor f = load_functor(file);
  Factorization fac = mode == "trivcof-fib" ? factor_trivcof_fib(f) : factor_cof_trivfib(f);
  json report;
  report["command"] = "factor";
  report["mode"] = mode;
  report["first"] = functor_document(fac.first);
  report["second"] = functor_document(fac.second);
  emit(report, "factored through a middle operad with " +
                   std::to_string(fac.middle.colors.size()) + " colors");
  return 0;
}

int cmd_lift(const std::string& file) {
  Document doc = load(file);
  if (doc.kind != Document::Kind::square) throw SemanticError(file + " is not a square document");
  const LiftingSquare& sq = std::get<LiftingSquare>(doc.payload);
  OperadFunctor lift = [&sq]() {
    if (is_cofibration(sq.left) && is_trivial_fibration(sq.right)) return solve_lift_trivfib(sq);
    if (is_trivial_cofibration(sq.left) && is_fibration(sq.right)) return solve_lift_trivcof(sq);
    throw NotApplicable("the square is in neither model-structure lifting configuration");
  }();
  emit(functor_document(lift), "lift found");
  return 0;
}

int cmd_rlp(const std::string& left_file, const std::string& right_file, long long budget) {
  OperadFunctor left = load_functor(left_file);
  OperadFunctor right = load_functor(right_file);
  bool result = has_rlp(left, right, budget);
  json report;
  report["command"] = "rlp";
  report["result"] = result;
  report["budget"] = budget;
  emit(report, result ? "right lifting property holds" : "right lifting property fails");
  return result ? 0 : 1;
}

int cmd_bv(const std::string& p_file, const std::string& q_file, int bound) {
  FiniteOperad P = load_operad(p_file);
  FiniteOperad Q = load_operad(q_file);
  Presentation pres = bv_presentation(P, Q);
  std::string human = "tensor presentation: " + std::to_string(pres.collection.generators.size()) +
                      " generators, " + std::to_string(pres.relations.size()) + " relations";
  bool unary = true;
  for (const auto& g : pres.collection.generators) unary = unary && g.arity() == 1;
  if (unary) {
    try {
      FiniteCategory cat = realize_unary(pres, bound);
      human += "; realizes a category with " + std::to_string(cat.objects.size()) +
               " objects and " + std::to_string(cat.all_arrows().size()) + " arrows at bound " +
               std::to_string(bound);
    } catch (const Unstable&) {
      human += "; realization unstable at bound " + std::to_string(bound);
    }
  }
  std::cout << serialize_document(Document{Document::Kind::presentation, std::move(pres)});
  std::cerr << human << "\n";
  return 0;
}

int cmd_eq(const std::string& pres_file, const std::string& t1_file, const std::string& t2_file,
           int bound) {
  Document doc = load(pres_file);
  if (doc.kind != Document::Kind::presentation)
    throw SemanticError(pres_file + " is not a presentation document");
  const Presentation& pres = std::get<Presentation>(doc.payload);
  std::vector<Morphism> gens(pres.collection.generators.begin(),
                             pres.collection.generators.end());
  TreeTerm t1 = term_from_json(parse_json_text(read_file(t1_file)), gens);
  TreeTerm t2 = term_from_json(parse_json_text(read_file(t2_file)), gens);
  Equality eq = decide_equal(pres, t1, t2, bound);
  std::string verdict = eq == Equality::equal      ? "equal"
                        : eq == Equality::distinct ? "distinct"
                                                   : "unknown";
  json report;
  report["command"] = "eq";
  report["result"] = verdict;
  report["bound"] = bound;
  emit(report, verdict + " at bound " + std::to_string(bound));
  return eq == Equality::equal ? 0 : 1;
}

int cmd_slice(const std::string& direction, const std::string& file, bool symmetric) {
  if (direction == "to-cat") {
    OperadFunctor f = load_functor(file);
    FiniteCategory cat = slice_to_cat(f);
    std::cout << serialize_document(Document{Document::Kind::category, cat});
    std::cerr << "category with " << cat.objects.size() << " objects\n";
    return 0;
  }
  Document doc = load(file);
  if (doc.kind != Document::Kind::category)
    throw SemanticError(file + " is not a category document");
  OperadFunctor f = slice_from_cat(std::get<FiniteCategory>(doc.payload), symmetric);
  std::cout << serialize_document(Document{Document::Kind::functor, f});
  std::cerr << "functor over the one-point operad\n";
  return 0;
}

int cmd_gens(int max_arity, bool symmetric) {
  json report;
  report["command"] = "gens";
  report["trivial_cofibrations"] = json::array();
  for (const auto& f : generating_trivial_cofibrations(symmetric))
    report["trivial_cofibrations"].push_back(functor_document(f));
  report["cofibrations"] = json::array();
  for (const auto& f : generating_cofibrations(max_arity, symmetric))
    report["cofibrations"].push_back(functor_document(f));
  emit(report, std::to_string(report["trivial_cofibrations"].size()) +
                   " generating trivial cofibration(s), " +
                   std::to_string(report["cofibrations"].size()) + " generating cofibration(s)");
  return 0;
}

int cmd_corner(const std::string& f_file, const std::string& g_file) {
  OperadFunctor F = load_functor(f_file);
  OperadFunctor G = load_functor(g_file);
  bool injective = corner_map_object_check(F, G);
  json report;
  report["command"] = "corner";
  report["injective"] = injective;
  emit(report, injective ? "corner map injective on objects" : "corner map not injective");
  return injective ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite colored operads: model-structure classes, factorizations, liftings and "
               "tensor presentations"};
  app.require_subcommand(1);

  std::string file, left, right, mode, direction, pres_file, t1_file, t2_file;
  int max_arity = 2;
  int bound = 4;
  int eq_bound = 0;
  long long budget = -1;
  bool symmetric = false;

  CLI::App* validate_cmd = app.add_subcommand("validate", "validate a document");
  validate_cmd->add_option("FILE", file)->required();

  CLI::App* classify_cmd = app.add_subcommand("classify", "classify a functor");
  classify_cmd->add_option("FILE", file)->required();

  CLI::App* factor_cmd = app.add_subcommand("factor", "factor a functor");
  factor_cmd->add_option("--mode", mode)
      ->required()
      ->check(CLI::IsMember({"trivcof-fib", "cof-trivfib"}));
  factor_cmd->add_option("FILE", file)->required();

  CLI::App* lift_cmd = app.add_subcommand("lift", "solve a lifting square");
  lift_cmd->add_option("FILE", file)->required();

  CLI::App* rlp_cmd = app.add_subcommand("rlp", "decide a right lifting property");
  rlp_cmd->add_option("LEFT", left)->required();
  rlp_cmd->add_option("RIGHT", right)->required();
  rlp_cmd->add_option("--budget", budget);

  CLI::App* bv_cmd = app.add_subcommand("bv", "tensor presentation of two symmetric operads");
  bv_cmd->add_option("P", left)->required();
  bv_cmd->add_option("Q", right)->required();
  bv_cmd->add_option("--bound", bound);

  CLI::App* eq_cmd = app.add_subcommand("eq", "bounded equality in a presented operad");
  eq_cmd->add_option("PRES", pres_file)->required();
  eq_cmd->add_option("T1", t1_file)->required();
  eq_cmd->add_option("T2", t2_file)->required();
  eq_cmd->add_option("--bound", eq_bound)->required();

  CLI::App* slice_cmd = app.add_subcommand("slice", "slice over the one-point operad");
  slice_cmd->add_option("DIRECTION", direction)
      ->required()
      ->check(CLI::IsMember({"to-cat", "from-cat"}));
  slice_cmd->add_option("FILE", file)->required();
  slice_cmd->add_flag("--symmetric", symmetric);

  CLI::App* gens_cmd = app.add_subcommand("gens", "generating (trivial) cofibrations");
  gens_cmd->add_option("--max-arity", max_arity);
  gens_cmd->add_flag("--symmetric", symmetric);

  CLI::App* corner_cmd = app.add_subcommand("corner", "object-level pushout-product check");
  corner_cmd->add_option("F", left)->required();
  corner_cmd->add_option("G", right)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage problems follow the error exit contract
  }

  try {
    if (budget < 0) budget = default_budget();
    if (validate_cmd->parsed()) return cmd_validate(file);
    if (classify_cmd->parsed()) return cmd_classify(file);
    if (factor_cmd->parsed()) return cmd_factor(mode, file);
    if (lift_cmd->parsed()) return cmd_lift(file);
    if (rlp_cmd->parsed()) return cmd_rlp(left, right, budget);
    if (bv_cmd->parsed()) return cmd_bv(left, right, bound);
    if (eq_cmd->parsed()) return cmd_eq(pres_file, t1_file, t2_file, eq_bound);
    if (slice_cmd->parsed()) return cmd_slice(direction, file, symmetric);
    if (gens_cmd->parsed()) return cmd_gens(max_arity, symmetric);
    if (corner_cmd->parsed()) return cmd_corner(left, right);
  } catch (const Error& e) {
    json report;
    report["error"] = json{{"kind", e.kind()}, {"message", e.what()}};
    emit(report, std::string("error: ") + e.what());
    return 2;
  } catch (const std::exception& e) {
    json report;
    report["error"] = json{{"kind", "InternalError"}, {"message", e.what()}};
    emit(report, std::string("internal error: ") + e.what());
    return 2;
  }
  return 2;
}
