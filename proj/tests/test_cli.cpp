#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "opemodel/factorization.hpp"
#include "opemodel/generators.hpp"
#include "opemodel/lifting.hpp"
#include "opemodel/serialize.hpp"

using namespace opemodel;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* cli_path() { return std::getenv("OPEMODEL_CLI"); }
const char* data_path() { return std::getenv("OPEMODEL_DATA"); }

RunResult run_cli(const std::string& args) {
  fs::path dir = fs::temp_directory_path() / "opemodel_cli_io";
  fs::create_directories(dir);
  fs::path out = dir / "out.txt";
  fs::path err = dir / "err.txt";
  std::string cmd = std::string(cli_path()) + " " + args + " > " + out.string() + " 2> " +
                    err.string();
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return RunResult{code, slurp(out), slurp(err)};
}

std::string data_file(const std::string& name) {
  return (fs::path(data_path()) / name).string();
}

}  // namespace

#define REQUIRE_CLI_ENV()                                            \
  if (!cli_path() || !data_path()) {                                 \
    SKIP("OPEMODEL_CLI / OPEMODEL_DATA not set; run through ctest"); \
  }

TEST_CASE("validate accepts the shipped documents") {
  REQUIRE_CLI_ENV();
  for (const char* name : {"star.json", "h.json", "star_to_h.json", "square_trivcof_fib.json",
                           "walking_iso_cat.json"}) {
    RunResult r = run_cli("validate " + data_file(name));
    INFO(name << ": " << r.out);
    REQUIRE(r.code == 0);
    REQUIRE(json::parse(r.out)["ok"] == true);
  }
}

TEST_CASE("validate reports violations and exits 1") {
  REQUIRE_CLI_ENV();
  json j = json::parse(slurp(data_file("star.json")));
  j["payload"]["identities"].erase("star");
  fs::path tmp = fs::temp_directory_path() / "opemodel_bad_star.json";
  {
    std::ofstream out(tmp);
    out << j.dump(2);
  }
  RunResult r = run_cli("validate " + tmp.string());
  REQUIRE(r.code == 1);
  json rep = json::parse(r.out);
  REQUIRE(rep["ok"] == false);
  REQUIRE(rep["issues"][0]["axiom"] == "identity-missing");
  REQUIRE(rep["issues"][0]["witness"] == "star");
}

TEST_CASE("classify matches the library and exits 0") {
  REQUIRE_CLI_ENV();
  RunResult r = run_cli("classify " + data_file("star_to_h.json"));
  REQUIRE(r.code == 0);
  json rep = json::parse(r.out);
  REQUIRE(rep["classes"]["cofibration"] == true);
  REQUIRE(rep["classes"]["fibration"] == false);
  REQUIRE(rep["classes"]["weak_equivalence"] == true);
  OperadFunctor f = generating_trivial_cofibrations(false)[0];
  ClassMembership c = classify(f);
  REQUIRE(rep["classes"]["cofibration"] == c.cofibration);
  REQUIRE(rep["classes"]["fibration"] == c.fibration);
  REQUIRE(rep["classes"]["weak_equivalence"] == c.weak_equivalence);
  REQUIRE(rep["classes"]["trivial_cofibration"] == c.trivial_cofibration);
  REQUIRE(rep["classes"]["trivial_fibration"] == c.trivial_fibration);
}

TEST_CASE("classify is deterministic across runs") {
  REQUIRE_CLI_ENV();
  RunResult a = run_cli("classify " + data_file("star_to_h.json"));
  RunResult b = run_cli("classify " + data_file("star_to_h.json"));
  REQUIRE(a.out == b.out);
}

TEST_CASE("rlp detects fibrations and reflects the library result") {
  REQUIRE_CLI_ENV();
  RunResult yes = run_cli("rlp " + data_file("star_to_h.json") + " " + data_file("h_to_star.json"));
  REQUIRE(yes.code == 0);
  REQUIRE(json::parse(yes.out)["result"] == true);
  RunResult no = run_cli("rlp " + data_file("star_to_h.json") + " " + data_file("star_to_h.json"));
  REQUIRE(no.code == 1);
  REQUIRE(json::parse(no.out)["result"] == false);
  OperadFunctor f = generating_trivial_cofibrations(false)[0];
  REQUIRE(json::parse(yes.out)["result"].get<bool>() == has_rlp(f, std::get<OperadFunctor>(
      parse_document_file(data_file("h_to_star.json")).payload)));
}

TEST_CASE("the search budget is configurable by flag and environment") {
  REQUIRE_CLI_ENV();
  RunResult r = run_cli("rlp " + data_file("star_to_h.json") + " " + data_file("h_to_star.json") +
                        " --budget 2");
  REQUIRE(r.code == 2);
  REQUIRE(json::parse(r.out)["error"]["kind"] == "SearchBudgetExceeded");
  std::string cmd = std::string("OPEMODEL_BUDGET=2 ") + cli_path() + " rlp " +
                    data_file("star_to_h.json") + " " + data_file("h_to_star.json") +
                    " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(WEXITSTATUS(status) == 2);
}

TEST_CASE("lift solves the shipped square and the result commutes") {
  REQUIRE_CLI_ENV();
  RunResult r = run_cli("lift " + data_file("square_trivcof_fib.json"));
  REQUIRE(r.code == 0);
  Document doc = parse_document(r.out, data_path());
  REQUIRE(doc.kind == Document::Kind::functor);
  const OperadFunctor& lift = std::get<OperadFunctor>(doc.payload);
  Document sq_doc = parse_document_file(data_file("square_trivcof_fib.json"));
  const LiftingSquare& sq = std::get<LiftingSquare>(sq_doc.payload);
  REQUIRE(compose_functors(lift, sq.left) == sq.top);
  REQUIRE(compose_functors(sq.right, lift) == sq.bottom);
}

TEST_CASE("lift rejects a non-commuting square with exit 2") {
  REQUIRE_CLI_ENV();
  OperadFunctor s2h = generating_trivial_cofibrations(false)[0];
  OperadFunctor idh = identity_functor(walking_iso(false));
  json at_b = functor_to_json(s2h);
  at_b["objects"]["star"] = "b";
  at_b["morphisms"]["0/id"] = "3/id";  // the identity at b
  json sq;
  sq["kind"] = "square";
  sq["payload"] = json{{"left", functor_to_json(s2h)},
                       {"right", functor_to_json(idh)},
                       {"top", at_b},
                       {"bottom", functor_to_json(idh)}};
  fs::path tmp = fs::temp_directory_path() / "opemodel_bad_square.json";
  {
    std::ofstream out(tmp);
    out << sq.dump(2);
  }
  RunResult r = run_cli("lift " + tmp.string());
  REQUIRE(r.code == 2);
  REQUIRE(r.out.find("SquareNotCommutative") != std::string::npos);
}

TEST_CASE("factor emits verified factors") {
  REQUIRE_CLI_ENV();
  for (const char* mode : {"trivcof-fib", "cof-trivfib"}) {
    RunResult r = run_cli(std::string("factor --mode ") + mode + " " + data_file("star_to_h.json"));
    REQUIRE(r.code == 0);
    json rep = json::parse(r.out);
    Document first = parse_document_json(rep["first"], ".");
    Document second = parse_document_json(rep["second"], ".");
    OperadFunctor f = generating_trivial_cofibrations(false)[0];
    REQUIRE(compose_functors(std::get<OperadFunctor>(second.payload),
                             std::get<OperadFunctor>(first.payload)) == f);
  }
}

TEST_CASE("gens emits the truncated generating families") {
  REQUIRE_CLI_ENV();
  RunResult r = run_cli("gens --max-arity 0");
  REQUIRE(r.code == 0);
  json rep = json::parse(r.out);
  REQUIRE(rep["trivial_cofibrations"].size() == 1);
  REQUIRE(rep["cofibrations"].size() == 3);
  RunResult r2 = run_cli("gens");
  REQUIRE(json::parse(r2.out)["cofibrations"].size() == 7);
}

TEST_CASE("bv and eq work together on the tensor of two points") {
  REQUIRE_CLI_ENV();
  fs::path dir = fs::temp_directory_path() / "opemodel_bv";
  fs::create_directories(dir);
  fs::path pres = dir / "pres.json";
  {
    RunResult r = run_cli("bv " + data_file("star_sym.json") + " " + data_file("star_sym.json") +
                          " --bound 3");
    REQUIRE(r.code == 0);
    std::ofstream out(pres);
    out << r.out;
    Document doc = parse_document(r.out);
    REQUIRE(doc.kind == Document::Kind::presentation);
    REQUIRE(std::get<Presentation>(doc.payload).collection.generators.size() == 2);
  }
  fs::path t1 = dir / "t1.json";
  fs::path t2 = dir / "t2.json";
  {
    std::ofstream o1(t1);
    o1 << R"({"gen": 0, "children": [{"leaf": "star__star"}]})";
    std::ofstream o2(t2);
    o2 << R"({"leaf": "star__star"})";
  }
  RunResult eq = run_cli("eq " + pres.string() + " " + t1.string() + " " + t2.string() +
                         " --bound 2");
  REQUIRE(eq.code == 0);
  REQUIRE(json::parse(eq.out)["result"] == "equal");
  RunResult eq0 = run_cli("eq " + pres.string() + " " + t1.string() + " " + t2.string() +
                          " --bound 0");
  REQUIRE(eq0.code == 1);
  REQUIRE(json::parse(eq0.out)["result"] == "unknown");
}

TEST_CASE("slice converts in both directions") {
  REQUIRE_CLI_ENV();
  RunResult to_cat = run_cli("slice to-cat " + data_file("iso_over_star.json"));
  REQUIRE(to_cat.code == 0);
  Document cat_doc = parse_document(to_cat.out);
  REQUIRE(std::get<FiniteCategory>(cat_doc.payload) == walking_iso_category());

  RunResult from_cat = run_cli("slice from-cat " + data_file("walking_iso_cat.json"));
  REQUIRE(from_cat.code == 0);
  Document f_doc = parse_document(from_cat.out);
  REQUIRE(std::get<OperadFunctor>(f_doc.payload) ==
          slice_from_cat(walking_iso_category(), false));
  REQUIRE(from_cat.out == slurp(data_file("iso_over_star.json")));
}

TEST_CASE("corner checks the shipped symmetric cofibration") {
  REQUIRE_CLI_ENV();
  RunResult r = run_cli("corner " + data_file("empty_to_star_sym.json") + " " +
                        data_file("empty_to_star_sym.json"));
  REQUIRE(r.code == 0);
  REQUIRE(json::parse(r.out)["injective"] == true);
}

TEST_CASE("missing files exit with code 2") {
  REQUIRE_CLI_ENV();
  RunResult r = run_cli("classify /nonexistent/nowhere.json");
  REQUIRE(r.code == 2);
  REQUIRE(json::parse(r.out).contains("error"));
}
