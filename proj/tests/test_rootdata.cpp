#include <algorithm>

#include "doctest.h"
#include "vwb/errors.hpp"
#include "vwb/rootdata.hpp"

using namespace vwb;

namespace {
const std::vector<std::string> kTypes = {"A1", "A1xA1", "A2", "B2"};

std::vector<std::vector<int>> all_levis(int rank) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << rank); ++mask) {
    std::vector<int> I;
    for (int i = 0; i < rank; ++i)
      if (mask & (1 << i)) I.push_back(i);
    out.push_back(I);
  }
  return out;
}
}  // namespace

TEST_CASE("root system invariants") {
  std::vector<int> npos = {1, 2, 3, 4};
  for (std::size_t t = 0; t < kTypes.size(); ++t) {
    RootSystem R = RootSystem::build(kTypes[t]);
    CHECK(static_cast<int>(R.positive_roots().size()) == npos[t]);
    for (int a = 0; a < R.num_roots(); ++a) {
      CHECK(R.pairing(R.root(a), a) == 2);
      CHECK(R.root(R.negative(a)) == -R.root(a));
    }
    for (int i = 0; i < R.rank(); ++i)
      for (int j = 0; j < R.rank(); ++j) CHECK(R.cartan()[i][j] == R.pairing(R.root(R.simple(j)), R.simple(i)));
    // ρ is half the sum of positive roots
    Weight s = Weight::zero(R.rank());
    for (int a : R.positive_roots()) s += R.root(a);
    CHECK(s == R.rho() * 2);
    CHECK(R.weyl_group().size() == std::vector<std::size_t>{2, 4, 6, 8}[t]);
    CHECK(R.longest().length() == R.positive_roots().size());
  }
  CHECK_THROWS_AS(RootSystem::build("G2"), Error);
}

TEST_CASE("build_root_system examples") {
  RootSystem A1 = RootSystem::build("A1");
  CHECK(A1.rho() == Weight{1});
  CHECK(A1.pairing(A1.rho(), A1.simple(0)) == 1);
  RootSystem A2 = RootSystem::build("A2");
  CHECK(A2.positive_roots().size() == 3);
  for (int i = 0; i < 2; ++i) CHECK(A2.pairing(A2.rho(), A2.simple(i)) == 1);
  RootSystem B2 = RootSystem::build("B2");
  CHECK(B2.cartan() == IntMatrix{{2, -1}, {-2, 2}});
  CHECK(B2.is_long(B2.simple(0)));
  CHECK_FALSE(B2.is_long(B2.simple(1)));
}

TEST_CASE("good_prime_check") {
  CHECK_FALSE(good_prime_check("A2", 3));
  CHECK(good_prime_check("A1", 3));
  CHECK_FALSE(good_prime_check("B2", 2));
  CHECK(good_prime_check("A2", 2));
  CHECK(good_prime_check("B2", 3));
  CHECK_FALSE(good_prime_check("A1", 4));
}

TEST_CASE("dot action examples") {
  RootSystem A1 = RootSystem::build("A1");
  WeylElement id = A1.weyl_group()[0];
  CHECK(A1.dot(id, Weight{5}) == Weight{5});
  CHECK(A1.dot(A1.reflection(0), Weight{0}) == Weight{-2});
  RootSystem A2 = RootSystem::build("A2");
  CHECK(A2.dot(A2.longest(), Weight{0, 0}) == Weight({-2, -2}));
}

TEST_CASE("dot action is a group action on words up to length 4") {
  for (const auto& t : kTypes) {
    RootSystem R = RootSystem::build(t);
    int n = R.rank();
    std::vector<std::vector<int>> words = {{}};
    for (int len = 1; len <= 4; ++len) {
      std::vector<std::vector<int>> next;
      for (const auto& w : words)
        if (static_cast<int>(w.size()) == len - 1)
          for (int i = 0; i < n; ++i) {
            auto x = w;
            x.push_back(i);
            next.push_back(x);
          }
      words.insert(words.end(), next.begin(), next.end());
    }
    for (int a = -2; a <= 2; ++a)
      for (int b = -2; b <= 2; ++b) {
        Weight lam = n == 1 ? Weight{a} : Weight{a, b};
        if (n == 1 && b != 0) continue;
        for (std::size_t i = 0; i < words.size(); i += 3)
          for (std::size_t j = 0; j < words.size(); j += 5) {
            WeylElement w = R.from_word(words[i]), v = R.from_word(words[j]);
            std::vector<int> wv = words[i];
            wv.insert(wv.end(), words[j].begin(), words[j].end());
            CHECK(R.dot(w, R.dot(v, lam)) == R.dot(R.from_word(wv), lam));
          }
      }
  }
}

TEST_CASE("Weyl matrices preserve the pairing") {
  for (const auto& t : kTypes) {
    RootSystem R = RootSystem::build(t);
    for (const auto& w : R.weyl_group())
      for (int a = 0; a < R.num_roots(); ++a) {
        int wa = R.act_on_root(w, a);
        for (int x = -3; x <= 3; ++x) {
          Weight lam = R.rank() == 1 ? Weight{x} : Weight{x, 2 - x};
          CHECK(R.pairing(act(w.matrix, lam), wa) == R.pairing(lam, a));
        }
      }
  }
}

TEST_CASE("affine reflection examples") {
  RootSystem A1 = RootSystem::build("A1");
  int a = A1.simple(0);
  CHECK(affine_reflection(A1, a, 0, 3, Weight{0}, false) == Weight{0});
  CHECK(affine_reflection(A1, a, 1, 3, Weight{0}, false) == Weight{6});
  CHECK(affine_reflection(A1, a, 0, 3, Weight{1}, true) == Weight{-3});
}

TEST_CASE("levi data") {
  for (const auto& t : kTypes) {
    RootSystem R = RootSystem::build(t);
    for (const auto& I : all_levis(R.rank())) {
      LeviDatum D = levi_datum(R, I);
      int expect = static_cast<int>(R.positive_roots().size() - D.RI_plus.size());
      CHECK(D.N == expect);
      CHECK(static_cast<int>(D.wsup.length()) == expect);
      std::vector<int> pos_out;
      for (int a : R.positive_roots())
        if (!D.in_levi_roots(a)) pos_out.push_back(a);
      std::vector<int> b = D.beta;
      std::sort(b.begin(), b.end());
      CHECK(b == pos_out);
      for (const auto& w : D.chain) CHECK(in_WI_min(R, D, w));
      // the word multiplies out to w^I
      CHECK(R.from_word(D.reduced_expr).matrix == D.wsup.matrix);
    }
  }
  RootSystem A1 = RootSystem::build("A1");
  LeviDatum full = levi_datum(A1, {0});
  CHECK(full.N == 0);
  CHECK(full.wsup.length() == 0);
  LeviDatum empty = levi_datum(A1, {});
  CHECK(empty.N == 1);
  CHECK(empty.beta == std::vector<int>{A1.simple(0)});
  RootSystem A2 = RootSystem::build("A2");
  LeviDatum d1 = levi_datum(A2, {0});
  CHECK(d1.N == 2);
  std::vector<Weight> bw;
  for (int b : d1.beta) bw.push_back(A2.root(b));
  std::sort(bw.begin(), bw.end());
  std::vector<Weight> expect = {A2.root(A2.simple(1)), A2.root(A2.simple(0)) + A2.root(A2.simple(1))};
  std::sort(expect.begin(), expect.end());
  CHECK(bw == expect);
}

TEST_CASE("n_of_lambda and twist_weight") {
  RootSystem A1 = RootSystem::build("A1");
  LeviDatum full = levi_datum(A1, {0}), empty = levi_datum(A1, {});
  for (int l = -5; l <= 5; ++l) CHECK(n_of_lambda(A1, full, Weight{l}, 3) == 0);
  CHECK(n_of_lambda(A1, empty, Weight{2}, 3) == 0);
  CHECK(n_of_lambda(A1, empty, Weight{1}, 3) == 1);
  WeylElement id = A1.weyl_group()[0];
  CHECK(twist_weight(A1, Weight{4}, id, 3) == Weight{4});
  CHECK(twist_weight(A1, Weight{0}, empty.wsup, 3) == Weight{-4});
  CHECK(twist_weight(A1, Weight{1}, empty.wsup, 3) == Weight{-3});
  // the two displayed forms agree: λ + (p-1)(wρ-ρ) = λ - (p-1)(ρ - wρ)
  for (const auto& t : kTypes) {
    RootSystem R = RootSystem::build(t);
    for (const auto& I : all_levis(R.rank())) {
      LeviDatum D = levi_datum(R, I);
      Weight lam = Weight::zero(R.rank());
      lam[0] = 3;
      Weight alt = lam - (R.rho() - act(D.wsup.matrix, R.rho())) * 4;
      CHECK(twist_weight(R, lam, D.wsup, 5) == alt);
    }
  }
}

TEST_CASE("linkage orbits") {
  RootSystem A1 = RootSystem::build("A1");
  LeviDatum full = levi_datum(A1, {0}), empty = levi_datum(A1, {});
  Linkage L0(A1, empty, 3), L1(A1, full, 3);
  CHECK(L0.orbit_in_box(Weight{2}, 4) == std::set<Weight>{Weight{2}});
  // graded orbit: W_I·0 + 3Zα = {0,-2} + 6Z
  CHECK(L1.orbit_in_box(Weight{0}, 4) == std::set<Weight>{Weight{-2}, Weight{0}, Weight{4}});
  CHECK(L1.orbit_in_box(Weight{2}, 4) == std::set<Weight>{Weight{-4}, Weight{2}});
  // label test agrees with the box closure, and the relation is symmetric
  for (const auto& t : kTypes) {
    RootSystem R = RootSystem::build(t);
    for (int p : {2, 3, 5}) {
      if (!good_prime_check(t, p)) continue;
      for (const auto& I : all_levis(R.rank())) {
        LeviDatum D = levi_datum(R, I);
        Linkage L(R, D, p);
        int box = R.rank() == 1 ? 2 * p : p;
        std::vector<Weight> pts;
        for (int a = -box; a <= box; ++a)
          for (int b = -box; b <= box; ++b) {
            if (R.rank() == 1 && b != -box) continue;
            pts.push_back(R.rank() == 1 ? Weight{a} : Weight{a, b});
          }
        for (std::size_t i = 0; i < pts.size(); i += 3) {
          auto orb = L.orbit_in_box(pts[i], box);
          for (const auto& q : pts) {
            bool in_orbit = orb.count(q) > 0;
            // the box closure can miss points reachable only through the outside
            if (in_orbit) CHECK(L.linked(pts[i], q));
            if (in_orbit) CHECK(L.orbit_in_box(q, box).count(pts[i]) == 1);
          }
        }
      }
    }
  }
}

TEST_CASE("grade order") {
  RootSystem A2 = RootSystem::build("A2");
  LeviDatum D = levi_datum(A2, {0});
  Linkage L(A2, D, 2);
  Weight z{0, 0};
  CHECK(L.grade_leq(z - A2.root(A2.simple(1)), z));
  CHECK(L.grade_leq(z + A2.root(A2.simple(0)), z));  // differs by ZI
  CHECK_FALSE(L.grade_leq(z + A2.root(A2.simple(1)), z));
  CHECK(L.grade(A2.root(A2.simple(0))) == L.grade(z));
}
