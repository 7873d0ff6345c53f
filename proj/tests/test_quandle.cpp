#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qcoh/qcoh.hpp"

using namespace qcoh;

namespace {

std::vector<int> dihedral3() {
  std::vector<int> t(9);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      t[x * 3 + y] = ((2 * x - y) % 3 + 3) % 3;
  return t;
}

std::vector<int> trivial(int n) {
  std::vector<int> t(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      t[x * n + y] = y;
  return t;
}

// axioms checked by brute force, independently of validate()
bool axioms_hold(int n, const std::vector<int>& t) {
  for (int x = 0; x < n; ++x) {
    std::vector<int> row(t.begin() + x * n, t.begin() + x * n + n);
    std::sort(row.begin(), row.end());
    for (int i = 0; i < n; ++i)
      if (row[i] != i)
        return false;
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (t[x * n + t[y * n + z]] != t[t[x * n + y] * n + t[x * n + z]])
          return false;
  return true;
}

} // namespace

TEST(Validate, TrivialIsQuandle) {
  auto t = trivial(3);
  EXPECT_EQ(validate(3, t).status, Classification::Status::quandle);
}

TEST(Validate, DihedralIsQuandle) {
  auto t = dihedral3();
  ASSERT_TRUE(axioms_hold(3, t));
  EXPECT_EQ(validate(3, t).status, Classification::Status::quandle);
}

TEST(Validate, RepeatedEntryInRow) {
  std::vector<int> t{0, 0, 1, 1};
  Classification c = validate(2, t);
  EXPECT_EQ(c.status, Classification::Status::invalid);
  EXPECT_EQ(c.violation, Classification::Violation::non_bijective_row);
  EXPECT_EQ(c.witness[0], 0);
}

TEST(Validate, OutOfRange) {
  std::vector<int> t{0, 2, 0, 1};
  EXPECT_EQ(validate(2, t).violation, Classification::Violation::out_of_range);
}

TEST(Validate, RackWithoutIdempotence) {
  // x|>y = y+1 mod 3
  std::vector<int> t{1, 2, 0, 1, 2, 0, 1, 2, 0};
  ASSERT_TRUE(axioms_hold(3, t));
  EXPECT_EQ(validate(3, t).status, Classification::Status::rack);
  EXPECT_FALSE(Quandle::from_table(3, t).is_quandle());
}

TEST(Validate, DistributivityWitness) {
  // bijective rows but not self-distributive
  std::vector<int> t{0, 2, 1, 2, 1, 0, 0, 1, 2};
  ASSERT_FALSE(axioms_hold(3, t));
  Classification c = validate(3, t);
  EXPECT_EQ(c.violation, Classification::Violation::distributivity);
  int x = c.witness[0], y = c.witness[1], z = c.witness[2];
  EXPECT_NE(t[x * 3 + t[y * 3 + z]], t[t[x * 3 + y] * 3 + t[x * 3 + z]]);
}

TEST(Validate, AgreesWithBruteForceOnAllSize2Tables) {
  for (int code = 0; code < 16; ++code) {
    std::vector<int> t(4);
    for (int i = 0; i < 4; ++i)
      t[i] = (code >> i) & 1;
    EXPECT_EQ(validate(2, t).valid(), axioms_hold(2, t)) << code;
  }
}

TEST(Quandle, FromTableRejectsInvalid) {
  try {
    Quandle::from_table(2, {0, 0, 1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::precondition);
  }
}

TEST(Quandle, InverseOperation) {
  Quandle q = transpositions(4).quandle;
  for (int x = 0; x < q.size(); ++x)
    for (int y = 0; y < q.size(); ++y)
      EXPECT_EQ(q.inv_op(x, q.op(x, y)), y);
}

TEST(InnerAction, Dihedral) {
  InnerAction a = inner_action(Quandle::from_table(3, dihedral3()));
  EXPECT_TRUE(a.indecomposable());
  for (long o : a.phi_orders)
    EXPECT_EQ(o, 2);
}

TEST(InnerAction, TrivialHasSingletonOrbits) {
  InnerAction a = inner_action(Quandle::from_table(2, trivial(2)));
  EXPECT_EQ(a.orbits.size(), 2u);
  EXPECT_FALSE(a.indecomposable());
}

TEST(InnerAction, TranspositionsS4) {
  EXPECT_TRUE(inner_action(transpositions(4).quandle).indecomposable());
}

TEST(ConjugationQuandle, TranspositionsS4) {
  ConjugationQuandle c = conjugation_quandle({perm::from_cycles(4, {{0, 1}}), perm::from_cycles(4, {{0, 1, 2, 3}})},
                                             perm::from_cycles(4, {{0, 1}}));
  EXPECT_EQ(c.quandle.size(), 6);
  EXPECT_TRUE(std::is_sorted(c.elements.begin(), c.elements.end()));
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y)
      EXPECT_EQ(c.elements[c.quandle.op(x, y)], perm::conjugate(c.elements[x], c.elements[y]));
}

TEST(ConjugationQuandle, ThreeCyclesOfA4MatchTetrahedralTable) {
  ConjugationQuandle c = conjugation_quandle({perm::from_cycles(4, {{0, 1, 2}}), perm::from_cycles(4, {{1, 2, 3}})},
                                             perm::from_cycles(4, {{0, 1, 2}}));
  EXPECT_EQ(c.quandle.size(), 4);
  EXPECT_TRUE(oracle::isomorphic(c.quandle, a4_three_cycles().quandle));
}

TEST(ConjugationQuandle, AbelianGroupGivesTrivialQuandle) {
  Perm g = perm::from_cycles(3, {{0, 1, 2}});
  ConjugationQuandle c = conjugation_quandle({g}, g);
  EXPECT_EQ(c.quandle.size(), 1);
}

TEST(ConjugationQuandle, ClassTooLarge) {
  std::vector<int> cyc{0, 1, 2, 3, 4, 5, 6};
  try {
    conjugation_quandle({perm::from_cycles(7, {{0, 1}}), perm::from_cycles(7, {cyc})}, perm::from_cycles(7, {{0, 1}}),
                        10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::resource);
  }
}

TEST(Extension, ZeroCocycleIsProduct) {
  Quandle q = Quandle::from_table(3, dihedral3());
  auto A = CoefficientGroup::cyclic(2);
  Quandle y = extension_by_cocycle(q, 2, Cocycle::constant(3, A, A.from_int(0)));
  EXPECT_EQ(y.size(), 6);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      EXPECT_EQ(y.op(a, b), q.op(a / 2, b / 2) * 2 + b % 2);
}

TEST(Extension, TetrahedralBySign) {
  Quandle y = extension_by_cocycle(a4_three_cycles().quandle, 2, a4_sign_cocycle());
  EXPECT_EQ(y.size(), 8);
  EXPECT_TRUE(y.is_quandle());
  EXPECT_TRUE(axioms_hold(8, y.table()));
}

TEST(Extension, CoboundaryGivesIsomorphicExtension) {
  Quandle q = Quandle::from_table(3, dihedral3());
  auto A = CoefficientGroup::cyclic(3);
  std::vector<Coeff> gamma{A.from_int(0), A.from_int(1), A.from_int(2)};
  Cocycle d = coboundary(q, A, gamma);
  Quandle y0 = extension_by_cocycle(q, 3, Cocycle::constant(3, A, A.from_int(0)));
  Quandle y1 = extension_by_cocycle(q, 3, d);
  // (x,i) -> (x, i + gamma(x)) maps y0 onto y1
  auto phi = [&](int e) { return (e / 3) * 3 + static_cast<int>((e % 3 + A.to_int(gamma[e / 3])) % 3); };
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b)
      EXPECT_EQ(phi(y0.op(a, b)), y1.op(phi(a), phi(b)));
}

TEST(Extension, RejectsNonCocycle) {
  Quandle q = transpositions(4).quandle;
  Cocycle c = chi_cocycle(4);
  c.at(0, 1) = c.at(0, 1) + c.group.from_int(1);
  try {
    extension_by_cocycle(q, 2, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::precondition);
  }
}

TEST(TextFormat, RoundTrip) {
  std::string s = "3\n0 2 1\n2 1 0\n1 0 2\n";
  Quandle q = parse_quandle(s);
  EXPECT_EQ(serialize(q), s);
  EXPECT_EQ(q, Quandle::from_table(3, dihedral3()));
}

TEST(TextFormat, CommentsAndBlankLines) {
  Quandle q = parse_quandle("# dihedral\n\n3\n# rows\n0 2 1\n2 1 0\n1 0 2\n");
  EXPECT_EQ(q.size(), 3);
}

TEST(TextFormat, RowCountMismatch) {
  try {
    parse_quandle("3\n0 2 1\n2 1 0\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse);
  }
}

TEST(TextFormat, DiagnosticHasLineAndColumn) {
  try {
    parse_quandle("3\n0 2 1\n2 x 0\n1 0 2\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse);
    EXPECT_NE(std::string(e.what()).find("line 3, column 3"), std::string::npos) << e.what();
  }
}

TEST(TextFormat, EntryOutOfRange) {
  EXPECT_THROW(parse_quandle("2\n0 1\n0 2\n"), Error);
}
