#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"
#include "qcoh/qcoh.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  std::string cmd = std::string(QCOH_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  Result r;
  if (!p)
    return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0)
    r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("qcoh_cli_" + std::to_string(::getpid()) + "_" +
                                       ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string file(const std::string& name, const std::string& body) {
    fs::path p = dir / name;
    std::ofstream(p) << body;
    return p.string();
  }
  std::string fixture(const std::string& name) { return file(name + ".qnd", qcoh::serialize(qcoh::catalog_get(name).quandle)); }

  fs::path dir;
};

} // namespace

TEST_F(Cli, InfoDihedral) {
  Result r = run("info " + file("d3.qnd", "3\n0 2 1\n2 1 0\n1 0 2\n"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("quandle, indecomposable, n=3"), std::string::npos) << r.out;
}

TEST_F(Cli, InfoTrivialIsDecomposable) {
  Result r = run("info " + file("t.qnd", "2\n0 1\n0 1\n"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("decomposable"), std::string::npos);
  EXPECT_EQ(r.out.find("indecomposable"), std::string::npos);
}

TEST_F(Cli, InfoMalformed) {
  EXPECT_EQ(run("info " + file("bad.qnd", "3\n0 2 1\n2 1\n")).code, 2);
}

TEST_F(Cli, InfoJson) {
  Result r = run("--json info " + fixture("transpositions-4"));
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["size"], 6);
  EXPECT_EQ(j["indecomposable"], true);
  EXPECT_EQ(j["phi_orders"].size(), 6u);
}

TEST_F(Cli, H2Transpositions) {
  std::string out_dir = (dir / "gens").string();
  Result r = run("--json h2 " + fixture("transpositions-4") + " --out-dir " + out_dir);
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["h2_order"], 4);
  EXPECT_EQ(j["n0_invariant_factors"], nlohmann::json::array({2}));
  for (const char* key : {"quandle_size", "fx_order", "nx_order", "n0_order", "h2_type", "generators"})
    EXPECT_TRUE(j.contains(key)) << key;
  ASSERT_EQ(j["generators"].size(), 1u);
  std::string ref = j["generators"][0]["ref"];
  EXPECT_TRUE(fs::exists(ref));
  EXPECT_EQ(run("verify " + fixture("transpositions-4") + " " + ref).code, 0);
}

TEST_F(Cli, H2AffineZ6) {
  Result r = run("--json --coeff Z6 h2 " + fixture("aff-5-2"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["h2_order"], 6);
}

TEST_F(Cli, H2Decomposable) {
  Result r = run("h2 " + file("t.qnd", "2\n0 1\n0 1\n"));
  EXPECT_EQ(r.code, 3);
}

TEST_F(Cli, CocycleVerifyDecompose) {
  std::string q = fixture("transpositions-4");
  std::string c = (dir / "c.coc").string();
  int bp = qcoh::transposition_index(4, 0, 1);
  ASSERT_EQ(run("--base-point " + std::to_string(bp) + " cocycle " + q + " --a 1 --g 1 -o " + c).code, 0);
  Result v = run("--json verify " + q + " " + c);
  EXPECT_EQ(nlohmann::json::parse(v.out)["cocycle"], true);
  Result d = run("--json --base-point " + std::to_string(bp) + " decompose " + q + " " + c);
  auto j = nlohmann::json::parse(d.out);
  EXPECT_EQ(j["a"], "1");
  EXPECT_EQ(j["g"], nlohmann::json::array({"1"}));
}

TEST_F(Cli, CocycleZeroCharacterIsConstant) {
  Result r = run("cocycle " + fixture("aff-5-2") + " --g 0");
  ASSERT_EQ(r.code, 0);
  qcoh::Cocycle c = qcoh::parse_cocycle(r.out);
  EXPECT_TRUE(c.is_constant());
}

TEST_F(Cli, CocycleExponentOutOfRange) {
  EXPECT_EQ(run("cocycle " + fixture("transpositions-4") + " --g 2").code, 4);
  EXPECT_EQ(run("--coeff Z5 cocycle " + fixture("transpositions-4") + " --a 7").code, 4);
}

TEST_F(Cli, DecomposeChi) {
  std::string q = fixture("transpositions-4");
  std::string c = file("chi.coc", qcoh::serialize(qcoh::chi_cocycle(4)));
  Result r = run("--base-point " + std::to_string(qcoh::transposition_index(4, 0, 1)) + " decompose " + q + " " + c);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("a = 1"), std::string::npos);
  EXPECT_NE(r.out.find("g = [1]"), std::string::npos);
}

TEST_F(Cli, VerifyNegative) {
  qcoh::Cocycle chi = qcoh::chi_cocycle(4);
  chi.at(0, 1) = chi.at(0, 1) + chi.group.from_int(1);
  Result r = run("--json verify " + fixture("transpositions-4") + " " + file("bad.coc", qcoh::serialize(chi)));
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["cocycle"], false);
  EXPECT_EQ(j["witness"].size(), 3u);
}

TEST_F(Cli, Equiv) {
  qcoh::Quandle q = qcoh::transpositions(4).quandle;
  auto A = qcoh::CoefficientGroup::cyclic(6);
  std::vector<qcoh::Coeff> gamma;
  for (int i = 0; i < 6; ++i)
    gamma.push_back(A.from_int(i));
  qcoh::Cocycle c = qcoh::Cocycle::constant(6, A, A.from_int(2));
  qcoh::Cocycle c2 = c + qcoh::coboundary(q, A, gamma);
  std::string qf = fixture("transpositions-4");
  Result r = run("--json equiv " + qf + " " + file("a.coc", qcoh::serialize(c)) + " " + file("b.coc", qcoh::serialize(c2)));
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["cohomologous"], true);
  // recovered up to a constant
  for (int i = 0; i < 6; ++i)
    EXPECT_EQ(*A.parse(j["gamma"][i].get<std::string>()) - *A.parse(j["gamma"][0].get<std::string>()),
              gamma[i] - gamma[0]);
  Result n = run("--json equiv " + qf + " " + file("a.coc", qcoh::serialize(c)) + " " +
              file("k.coc", qcoh::serialize(qcoh::Cocycle::constant(6, A, A.from_int(1)))));
  EXPECT_EQ(nlohmann::json::parse(n.out)["cohomologous"], false);
}

TEST_F(Cli, Homology) {
  Result r = run("--json homology " + fixture("transpositions-4") + " --oracle");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["engine"]["rack"]["free_rank"], 1);
  EXPECT_EQ(j["engine"]["rack"]["torsion"], nlohmann::json::array({2}));
  EXPECT_EQ(j["oracle"]["rack"]["torsion"], nlohmann::json::array({2}));
  EXPECT_EQ(j["agree"], true);
  Result d = run("homology " + fixture("dihedral-3") + " --oracle");
  EXPECT_NE(d.out.find("H2 = Z, H2Q = 0"), std::string::npos) << d.out;
}

TEST_F(Cli, HomologyOracleSkipped) {
  Result r = run("--oracle-cap 5 homology " + fixture("transpositions-5") + " --oracle");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("oracle skipped"), std::string::npos);
}

TEST_F(Cli, ResourceCap) {
  EXPECT_EQ(run("--max-cosets 10 h2 " + fixture("transpositions-4")).code, 5);
}

TEST_F(Cli, Affine) {
  Result r = run("--json affine --family A1 --p 5 --alpha 2 --beta 3");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["gamma_order"], 4);
  EXPECT_EQ(j["s_invariant_factors"], nlohmann::json::array({5}));
  EXPECT_EQ(j["predicted_h2"]["torsion"], nlohmann::json::array({5}));
  Result m = run("--json affine --moduli 3,3 --gamma \"2,0;0,2\"");
  EXPECT_EQ(nlohmann::json::parse(m.out)["s_invariant_factors"], nlohmann::json::array({3}));
  Result t = run("affine --family A3 --p 5 --alpha 0,2 --qnd");
  EXPECT_EQ(qcoh::parse_quandle(t.out).size(), 25);
  EXPECT_EQ(run("affine --family A4 --p 5 --alpha 6").code, 4);
  EXPECT_EQ(run("affine --moduli 5,5 --gamma \"1,0;0,1\"").code, 3);
}

TEST_F(Cli, Catalog) {
  Result l = run("catalog list");
  EXPECT_EQ(l.code, 0);
  EXPECT_NE(l.out.find("transpositions-4"), std::string::npos);
  Result g = run("catalog get a4");
  ASSERT_EQ(g.code, 0);
  EXPECT_EQ(qcoh::parse_quandle(g.out), qcoh::a4_three_cycles().quandle);
  EXPECT_EQ(run("catalog get nope").code, 4);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 4);
  EXPECT_EQ(run("frobnicate").code, 4);
  EXPECT_EQ(run("--coeff Q h2 " + fixture("dihedral-3")).code, 4);
}
