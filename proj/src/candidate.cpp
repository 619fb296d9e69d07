#include "bsm/candidate.hpp"

#include <tuple>

namespace bsm {

int Candidate::subset_size() const {
  int size = 0;
  for (const auto& e : active) size += e.coefficient;
  for (const auto& c : commitments) {
    if (const auto* f = std::get_if<Fixed>(&c)) {
      size += f->multiplicity;
    } else {
      size += std::get<BlockChoice>(c).count;
    }
  }
  return size;
}

bool canonical_less(const Candidate& a, const Candidate& b) {
  return std::tie(a.active, a.residual, a.commitments) <
         std::tie(b.active, b.residual, b.commitments);
}

}  // namespace bsm
