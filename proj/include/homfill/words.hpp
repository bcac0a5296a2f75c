#pragma once

#include <string>
#include <vector>

#include "homfill/util.hpp"

namespace homfill {

// Group words over single-letter generators: generator k is stored as k+1,
// its inverse as -(k+1).
using Word = std::vector<int>;

Word parse_word(const std::string& s, int gen_count);
std::string format_word(const Word& w);
Word free_reduce(const Word& w);
Word inverse_word(const Word& w);

// Dehn's algorithm for small-cancellation presentations: repeatedly replace
// any subword longer than half of a cyclic conjugate of a relator (or its
// inverse) by the inverse of the complement, freely reducing in between.
class DehnReducer {
  public:
    explicit DehnReducer(const std::vector<Word>& relators);

    Word reduce(Word w) const;
    bool is_trivial(const Word& w) const { return reduce(w).empty(); }

    int min_relator_length() const { return min_len_; }

    // For |w| = len/2 exactly, the other geodesic spelling of the same element
    // (the inverse of the relator complement), if w is half of a conjugate.
    // Words shorter than half a relator are unique spellings.
    std::vector<Word> half_partners(const Word& w) const;

  private:
    std::vector<Word> conjugates_;
    int min_len_ = 0;
};

}  // namespace homfill
