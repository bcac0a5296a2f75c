#include "homfill/words.hpp"

#include <algorithm>

namespace homfill {

Word parse_word(const std::string& s, int gen_count) {
    Word w;
    w.reserve(s.size());
    for (char c : s) {
        int letter;
        if (c >= 'a' && c <= 'z')
            letter = (c - 'a') + 1;
        else if (c >= 'A' && c <= 'Z')
            letter = -((c - 'A') + 1);
        else
            throw ContractError(std::string("bad letter '") + c + "' in word");
        if (std::abs(letter) > gen_count)
            throw ContractError(std::string("unknown generator '") + c + "'");
        w.push_back(letter);
    }
    return w;
}

std::string format_word(const Word& w) {
    std::string s;
    for (int x : w) s += x > 0 ? static_cast<char>('a' + x - 1) : static_cast<char>('A' - x - 1);
    return s;
}

Word free_reduce(const Word& w) {
    Word out;
    for (int x : w) {
        if (!out.empty() && out.back() == -x)
            out.pop_back();
        else
            out.push_back(x);
    }
    return out;
}

Word inverse_word(const Word& w) {
    Word out(w.rbegin(), w.rend());
    for (int& x : out) x = -x;
    return out;
}

DehnReducer::DehnReducer(const std::vector<Word>& relators) {
    auto add_conjugates = [this](const Word& r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            Word c(r.begin() + i, r.end());
            c.insert(c.end(), r.begin(), r.begin() + i);
            conjugates_.push_back(std::move(c));
        }
    };
    min_len_ = 0;
    for (const Word& rel : relators) {
        const Word rr = free_reduce(rel);
        if (rr.empty()) continue;
        if (min_len_ == 0 || static_cast<int>(rr.size()) < min_len_)
            min_len_ = static_cast<int>(rr.size());
        add_conjugates(rr);
        add_conjugates(inverse_word(rr));
    }
}

Word DehnReducer::reduce(Word w) const {
    w = free_reduce(w);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Word& conj : conjugates_) {
            const int len = static_cast<int>(conj.size());
            for (int take = len; take > len / 2 && !changed; --take) {
                if (static_cast<int>(w.size()) < take) continue;
                for (std::size_t pos = 0; pos + take <= w.size(); ++pos) {
                    if (std::equal(conj.begin(), conj.begin() + take, w.begin() + pos)) {
                        const Word repl = inverse_word(Word(conj.begin() + take, conj.end()));
                        Word next(w.begin(), w.begin() + pos);
                        next.insert(next.end(), repl.begin(), repl.end());
                        next.insert(next.end(), w.begin() + pos + take, w.end());
                        w = free_reduce(next);
                        changed = true;
                        break;
                    }
                }
            }
            if (changed) break;
        }
    }
    return w;
}

std::vector<Word> DehnReducer::half_partners(const Word& w) const {
    std::vector<Word> out;
    for (const Word& conj : conjugates_) {
        const int len = static_cast<int>(conj.size());
        if (static_cast<int>(w.size()) * 2 != len) continue;
        if (std::equal(w.begin(), w.end(), conj.begin()))
            out.push_back(inverse_word(Word(conj.begin() + w.size(), conj.end())));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace homfill
