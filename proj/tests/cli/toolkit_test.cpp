#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nsjet/exprio.hpp"
#include "nsjet/ns_presets.hpp"
#include "nsjet/toolkit.hpp"

using namespace nsjet;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_toolkit(args, in, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

const char* kTranslation = "f1: u1_[1,0,0]; f2: u2_[1,0,0]; f3: u3_[1,0,0]; f: p_[1,0,0]";

}  // namespace

TEST(Toolkit, Reduce) {
  EXPECT_EQ(run({"reduce", "--constraints", "ce"}, "u1_[1,0,0]").out, "-u2_[0,1,0] - u3_[0,0,1]\n");
  EXPECT_EQ(run({"--constraints", "ce", "reduce", "-"}, "u1_[1,0,0]").out, "-u2_[0,1,0] - u3_[0,0,1]\n");
  EXPECT_EQ(run({"reduce"}, "0").out, "0\n");
  EXPECT_EQ(run({"reduce", "--constraints", "free"}, "u1_[1,0,0]").out, "u1_[1,0,0]\n");
  const Outcome r = run({"reduce", "--constraints", "cpe"}, "p_[2,0,0] + p_[0,2,0] + p_[0,0,2]");
  EXPECT_EQ(r.code, kExitPass);
  EXPECT_FALSE(contains(r.out, "p_[2,0,0]"));
}

TEST(Toolkit, ParseErrorsExitWithDiagnostics) {
  const Outcome r = run({"reduce"}, "x1 +\nu1_[1,0]");
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_TRUE(r.out.empty());
  EXPECT_TRUE(contains(r.err, "<stdin>:2:1: multi-index has 2 entries"));
  EXPECT_TRUE(contains(r.err, "  u1_[1,0]\n  ^^^^^^^^\n"));

  EXPECT_EQ(run({"check", "symmetry"}, "g: 1").code, kExitUsage);
  EXPECT_EQ(run({"reduce", "/nonexistent/input.txt"}).code, kExitUsage);
}

TEST(Toolkit, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"--dim", "1", "reduce"}, "0").code, kExitUsage);
  EXPECT_EQ(run({"--constraints", "weird", "reduce"}, "0").code, kExitUsage);
  EXPECT_EQ(run({"--viscosity", "-1", "ns", "check"}).code, kExitUsage);
  EXPECT_EQ(run({"tderiv"}, "u1_[0,0,0]").code, kExitUsage);
  EXPECT_EQ(run({"check", "bogus"}).code, kExitUsage);
  const Outcome help = run({"--help"});
  EXPECT_EQ(help.code, kExitPass);
  EXPECT_TRUE(contains(help.out, "kernel"));
}

TEST(Toolkit, TotalDerivative) {
  EXPECT_EQ(run({"tderiv", "--constraints", "ce", "--direction", "1"}, "u1_[0,0,0]").out, "-u2_[0,1,0] - u3_[0,0,1]\n");
  EXPECT_EQ(run({"tderiv", "--constraints", "free", "--index", "2,0,1"}, "x1^3*p_[0,0,0]").out,
            "6*x1*p_[0,0,1] + 6*x1^2*p_[1,0,1] + x1^3*p_[2,0,1]\n");
  EXPECT_EQ(run({"tderiv", "--dim", "2", "--index", "1,0,0"}, "x1").code, kExitUsage);
}

TEST(Toolkit, EulerAndHelmholtz) {
  EXPECT_EQ(run({"euler"}, "p_[0,0,0]*(u1_[1,0,0] + u2_[0,1,0] + u3_[0,0,1])").out,
            "chi_u1: -p_[1,0,0]; chi_u2: -p_[0,1,0]; chi_u3: -p_[0,0,1]; "
            "chi_p: u1_[1,0,0] + u2_[0,1,0] + u3_[0,0,1]\n");

  const Outcome variational = run({"helmholtz"}, "chi_u1: -p_[1,0,0]; chi_p: u1_[1,0,0]");
  EXPECT_EQ(variational.code, kExitPass);
  EXPECT_EQ(variational.out, "helmholtz: 0\npass\n");

  const Outcome r = run({"check", "helmholtz"}, "chi_u1: u1_[1,0,0]");
  EXPECT_EQ(r.code, kExitResidual);
  EXPECT_EQ(r.out, "(u1,u1,[1,0,0]): 2\nfail: 1 nonzero residual\n");
}

TEST(Toolkit, SymmetryChecks) {
  EXPECT_EQ(run({"check", "symmetry"}, kTranslation).code, kExitPass);
  const Outcome shift = run({"symmetry"}, "f: 1");
  EXPECT_EQ(shift.code, kExitPass);
  EXPECT_EQ(shift.out, "divergence: 0\npoisson: 0\npass\n");

  const Outcome bad = run({"symmetry", "--constraints", "ce"}, "f1: x1");
  EXPECT_EQ(bad.code, kExitResidual);
  EXPECT_EQ(bad.out, "divergence: 1\nfail: 1 nonzero residual\n");
}

TEST(Toolkit, CurrentChecks) {
  EXPECT_EQ(run({"check", "current", "--constraints", "ce"}, "J1: u1_[0,0,0]; J2: u2_[0,0,0]; J3: u3_[0,0,0]").code,
            kExitPass);
  EXPECT_EQ(run({"current"}, "J1: u1_[0,0,0]^2").code, kExitResidual);

  const NsInstance ns = ns_build(3);
  EXPECT_EQ(run({"current"}, print_current(ns.current)).code, kExitPass);
}

TEST(Toolkit, TimeSymmetry) {
  const NsInstance ns = ns_build(3);
  EXPECT_EQ(run({"time-symmetry"}, print_characteristic(Characteristic(ns.evolution, Expr()))).code, kExitPass);
  EXPECT_EQ(run({"time-symmetry"}, "f: 1").code, kExitPass);
  EXPECT_EQ(run({"time-symmetry"}, "f1: t").code, kExitResidual);
}

TEST(Toolkit, ReducedSystemAndKernel) {
  EXPECT_EQ(run({"lemma2"}, "chi01: 1").code, kExitPass);
  EXPECT_EQ(run({"check", "lemma2"}, "chi1: x1").code, kExitResidual);

  EXPECT_EQ(run({"kernel", "--setting", "ce", "--max-order", "0", "--max-degree", "0"}).out, "chi01: 1\ncount: 1\n");
  const Outcome cpe = run({"kernel", "--setting", "cpe", "--max-order", "0", "--max-degree", "0"});
  EXPECT_EQ(cpe.code, kExitPass);
  EXPECT_TRUE(contains(cpe.out, "chi01: 1\n"));

  const Outcome capped = run({"kernel", "--max-unknowns", "0"});
  EXPECT_EQ(capped.code, kExitUsage);
  EXPECT_TRUE(contains(capped.err, "needs 7 unknowns"));
  EXPECT_EQ(run({"kernel", "--constraints", "free"}).code, kExitUsage);
}

TEST(Toolkit, NavierStokes) {
  const Outcome check = run({"ns", "check"});
  EXPECT_EQ(check.code, kExitPass);
  EXPECT_TRUE(contains(check.out, "div_E_cpe: 0\n"));
  EXPECT_TRUE(contains(check.out, "current_identity: 0\n"));
  EXPECT_TRUE(contains(check.out, "poisson_E (informational): "));
  EXPECT_EQ(run({"check", "ns", "--dim", "2", "--viscosity", "1/10"}).code, kExitPass);

  const Outcome show = run({"ns", "show", "--dim", "2"});
  EXPECT_EQ(show.code, kExitPass);
  EXPECT_TRUE(contains(show.out, "E1: nu*u1_[2,0] + nu*u1_[0,2]"));
  EXPECT_TRUE(contains(show.out, "CE_0: u1_[1,0] + u2_[0,1]\n"));
}

TEST(Toolkit, StructuredOutput) {
  const Outcome r = run({"--format", "structured", "reduce", "--constraints", "ce"}, "u1_[1,0,0]");
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["command"], "reduce");
  EXPECT_EQ(expr_from_json(j["result"], 3), reduce_ce(3, JetVariable::u(1, {1, 0, 0})));

  const auto report = nlohmann::json::parse(run({"--format", "structured", "ns", "check"}).out);
  EXPECT_TRUE(report["passed"]);
  EXPECT_EQ(report["residuals"].size(), 5u);
  EXPECT_TRUE(report["residuals"][4]["informational"]);

  const auto kernel = nlohmann::json::parse(run({"kernel", "--format", "structured", "--setting", "ce"}).out);
  EXPECT_EQ(kernel["count"], 1);
  EXPECT_EQ(expr_from_json(kernel["basis"][0]["chi01"], 3), Expr(1));
}

TEST(Toolkit, FilesAndDeterminism) {
  const auto path = std::filesystem::temp_directory_path() / "nsjet_toolkit_test_input.txt";
  {
    std::ofstream f(path);
    f << kTranslation << "\n";
  }
  const Outcome a = run({"symmetry", path.string()});
  const Outcome b = run({"symmetry", path.string()});
  std::filesystem::remove(path);
  EXPECT_EQ(a.code, kExitPass);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(run({"ns", "show"}).out, run({"ns", "show"}).out);
}
