#include "systole/surface_group.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "systole/error.hpp"

namespace systole {

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& x : out) x = -x;
  return out;
}

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter x : w) {
    if (!out.empty() && out.back() == -x) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return out;
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (Letter x : w) {
    const int g = std::abs(x);
    s += (g % 2 == 1) ? 'a' : 'b';
    s += std::to_string((g + 1) / 2);
    if (x < 0) s += "^-1";
    s += ' ';
  }
  s.pop_back();
  return s;
}

SurfaceGroup::SurfaceGroup(int genus) : genus_(genus) {
  if (genus < 2) throw Error(ErrorKind::Domain, "Dehn's algorithm needs genus >= 2");
  for (int i = 1; i <= genus; ++i) {
    const Letter a = 2 * i - 1, b = 2 * i;
    relator_.insert(relator_.end(), {a, b, -a, -b});
  }
  inverse_relator_ = inverse(relator_);
  pos_in_relator_.assign(static_cast<std::size_t>(2 * generator_count()), -1);
  pos_in_inverse_.assign(static_cast<std::size_t>(2 * generator_count()), -1);
  for (std::size_t k = 0; k < relator_.size(); ++k) {
    pos_in_relator_[static_cast<std::size_t>(letter_slot(relator_[k]))] = static_cast<int>(k);
    pos_in_inverse_[static_cast<std::size_t>(letter_slot(inverse_relator_[k]))] = static_cast<int>(k);
  }
}

Word SurfaceGroup::dehn_reduce(Word w) const {
  const int n = static_cast<int>(relator_.size());
  const int half = n / 2;
  w = free_reduce(w);
  bool changed = true;
  while (changed) {
    changed = false;
    const int len = static_cast<int>(w.size());
    for (int i = 0; i < len && !changed; ++i) {
      // Every letter occurs exactly once in the relator and once in its
      // inverse, so a match starting at w[i] has a unique anchor in each.
      for (int which = 0; which < 2 && !changed; ++which) {
        const Word& cyc = which == 0 ? relator_ : inverse_relator_;
        const auto& pos = which == 0 ? pos_in_relator_ : pos_in_inverse_;
        const int p = pos[static_cast<std::size_t>(letter_slot(w[static_cast<std::size_t>(i)]))];
        if (p < 0) continue;
        int m = 0;
        while (m < n && i + m < len &&
               w[static_cast<std::size_t>(i + m)] == cyc[static_cast<std::size_t>((p + m) % n)]) {
          ++m;
        }
        if (m <= half) continue;
        // cyc[p..p+m) * cyc[p+m..p+n) = 1, so the matched piece equals the
        // inverse of the complement.
        Word replacement;
        replacement.reserve(static_cast<std::size_t>(n - m));
        for (int k = n - 1; k >= m; --k) replacement.push_back(-cyc[static_cast<std::size_t>((p + k) % n)]);
        Word next(w.begin(), w.begin() + i);
        next.insert(next.end(), replacement.begin(), replacement.end());
        next.insert(next.end(), w.begin() + i + m, w.end());
        w = free_reduce(next);
        changed = true;
      }
    }
  }
  return w;
}

bool SurfaceGroup::equal(const Word& a, const Word& b) const {
  Word w = a;
  const Word bi = inverse(b);
  w.insert(w.end(), bi.begin(), bi.end());
  return is_trivial(w);
}

PolygonComplex PolygonComplex::standard(int genus, double edge_length) {
  if (genus < 2) throw Error(ErrorKind::Domain, "polygon complex needs genus >= 2");
  if (!(edge_length > 0.0) || !std::isfinite(edge_length)) {
    throw Error(ErrorKind::Domain, "edge length must be positive");
  }
  PolygonComplex pc;
  pc.genus = genus;
  pc.generator_lengths.assign(static_cast<std::size_t>(2 * genus), edge_length);
  const double sides = 4.0 * genus;
  pc.area = sides * edge_length * edge_length / (4.0 * std::tan(std::numbers::pi / sides));
  return pc;
}

double PolygonComplex::letter_length(Letter x) const {
  return generator_lengths.at(static_cast<std::size_t>(std::abs(x) - 1));
}

}  // namespace systole
