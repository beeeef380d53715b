#include <random>
#include <doctest.h>

#include "brute_force.hpp"
#include "systole/error.hpp"
#include "systole/surface_group.hpp"

using namespace systole;

namespace {

// Letters a b c d, upper case for inverses.
Word word(const std::string& s) {
  Word w;
  for (char c : s) {
    const int i = std::tolower(c) - 'a' + 1;
    w.push_back(std::islower(static_cast<unsigned char>(c)) ? i : -i);
  }
  return w;
}

}  // namespace

TEST_CASE("free reduction and inverses") {
  CHECK(free_reduce(word("aAbB")).empty());
  CHECK(free_reduce(word("abBc")) == word("ac"));
  CHECK(inverse(word("abC")) == word("cBA"));
  CHECK(to_string(Word{}) == "1");
}

TEST_CASE("relator and its rotations are trivial") {
  const SurfaceGroup g(2);
  CHECK(g.relator() == word("abABcdCD"));
  const Word r = g.relator();
  for (std::size_t i = 0; i < r.size(); ++i) {
    Word rot(r.begin() + static_cast<long>(i), r.end());
    rot.insert(rot.end(), r.begin(), r.begin() + static_cast<long>(i));
    CHECK(g.is_trivial(rot));
    CHECK(g.is_trivial(inverse(rot)));
  }
  // Conjugate of the relator by ca.
  Word conj = word("ca");
  conj.insert(conj.end(), r.begin(), r.end());
  const Word tail = word("AC");
  conj.insert(conj.end(), tail.begin(), tail.end());
  CHECK(g.is_trivial(conj));
}

TEST_CASE("nontrivial words") {
  const SurfaceGroup g(2);
  for (const char* s : {"a", "ab", "abAB", "abABcd", "aa", "abABc"}) CHECK_FALSE(g.is_trivial(word(s)));
  // Half-relator swap: abAB = (cdCD)^-1.
  CHECK(g.equal(word("abAB"), word("dcDC")));
  CHECK_FALSE(g.equal(word("ab"), word("ba")));
}

TEST_CASE("agrees with the string oracle on random words") {
  const SurfaceGroup g(2);
  const oracle::StringDehn ref;
  std::mt19937 gen(5);
  const std::string letters = "abcdABCD";
  for (int i = 0; i < 5000; ++i) {
    std::string s;
    const int len = static_cast<int>(gen() % 24);
    for (int k = 0; k < len; ++k) s += letters[gen() % 8];
    CHECK(g.is_trivial(word(s)) == ref.reduce(s).empty());
  }
  // Products w r w^-1 with the relator spliced in are trivial in both.
  for (int i = 0; i < 500; ++i) {
    std::string s;
    for (int k = 0; k < 6; ++k) s += letters[gen() % 8];
    const std::string t = s + "abABcdCD" + oracle::StringDehn::inv(s);
    CHECK(g.is_trivial(word(t)));
    CHECK(ref.reduce(t).empty());
  }
}

TEST_CASE("higher genus") {
  const SurfaceGroup g(3);
  CHECK(g.relator().size() == 12);
  CHECK(g.is_trivial(g.relator()));
  CHECK_FALSE(g.is_trivial(Word{5}));
  CHECK_THROWS_AS(SurfaceGroup(1), Error);
}

TEST_CASE("polygon complex") {
  const auto p = PolygonComplex::standard(2);
  CHECK(p.generator_lengths.size() == 4);
  CHECK(p.area == doctest::Approx(2.0 * (1.0 + std::sqrt(2.0))).epsilon(1e-14));
  CHECK(p.letter_length(-3) == 1.0);
}
