#pragma once

// The fundamental group of the closed orientable genus-g surface,
//   < a1, b1, ..., ag, bg | [a1, b1] ... [ag, bg] >,
// with Dehn's algorithm for the word problem (valid for g >= 2, where the
// relator satisfies C'(1/6)).

#include <cstdint>
#include <string>
#include <vector>

namespace systole {

/// Generator a_i is letter 2i - 1, b_i is 2i (i = 1..g); the negated letter is
/// the inverse.
using Letter = int;
using Word = std::vector<Letter>;

Word inverse(const Word& w);
Word free_reduce(const Word& w);
std::string to_string(const Word& w);

class SurfaceGroup {
 public:
  explicit SurfaceGroup(int genus);

  int genus() const noexcept { return genus_; }
  int generator_count() const noexcept { return 2 * genus_; }
  const Word& relator() const noexcept { return relator_; }

  /// Freely reduces, then repeatedly replaces any subword that is longer than
  /// half of a cyclic rotation of the relator (or its inverse) by the inverse
  /// of the complementary piece, until no such subword remains.
  Word dehn_reduce(Word w) const;

  bool is_trivial(const Word& w) const { return dehn_reduce(w).empty(); }
  bool equal(const Word& a, const Word& b) const;

 private:
  int genus_;
  Word relator_;
  // For each letter, its position in the relator and in the inverse relator.
  std::vector<int> pos_in_relator_;
  std::vector<int> pos_in_inverse_;
  Word inverse_relator_;

  int letter_slot(Letter x) const { return x > 0 ? x - 1 : generator_count() - x - 1; }
};

/// One-vertex complex: the 4g-gon with sides identified by the surface
/// relator. Each generator loop has its own length.
struct PolygonComplex {
  int genus = 2;
  std::vector<double> generator_lengths;  // index i-1 for letter i
  double area = 0.0;

  /// Equal side lengths, with the area of the regular Euclidean 4g-gon.
  static PolygonComplex standard(int genus, double edge_length = 1.0);

  double letter_length(Letter x) const;
};

}  // namespace systole
