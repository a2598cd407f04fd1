#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "frobsub/matrix.hpp"

namespace frobsub {

using Letter = std::uint32_t;
using Word = std::vector<Letter>;

/// Ordered set of distinct letter names; position = matrix coordinate.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> letters);

    std::size_t size() const { return letters_.size(); }
    const std::string& name(Letter a) const { return letters_.at(a); }
    const std::vector<std::string>& letters() const { return letters_; }

    bool contains(std::string_view name) const;
    Letter index(std::string_view name) const;  // throws InvalidArgument

    /// True when every letter is a single character, so words print without separators.
    bool single_char() const { return single_char_; }

    std::string render(const Word& w) const;
    /// Inverse of render: characters when single_char(), otherwise
    /// whitespace-separated names.
    Word parse(std::string_view text) const;

    friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.letters_ == b.letters_; }

private:
    std::vector<std::string> letters_;
    std::map<std::string, Letter, std::less<>> index_;
    bool single_char_ = true;
};

class Substitution {
public:
    Substitution() = default;
    Substitution(Alphabet alphabet, std::vector<Word> images);

    /// Convenience for single-character alphabets: {{"a", "ab"}, {"b", "a"}}.
    static Substitution from_strings(const std::vector<std::pair<std::string, std::string>>& rules);

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t size() const { return images_.size(); }
    const Word& image(Letter a) const { return images_.at(a); }
    const std::vector<Word>& images() const { return images_; }

    bool is_erasing() const;

    friend bool operator==(const Substitution&, const Substitution&) = default;

private:
    Alphabet alphabet_;
    std::vector<Word> images_;
};

Word apply(const Substitution& s, const Word& w);
Word iterate(const Substitution& s, const Word& w, std::uint64_t t, std::size_t max_length = 10'000'000);

/// Entry (i, j) counts letter i in the image of letter j.
ExactMatrix incidence_matrix(const Substitution& s);

bool is_expanding_subst(const Substitution& s);

/// Exponent t such that the incidence matrix of s^t is PB-Frobenius.
std::uint64_t stabilizing_power(const Substitution& s);

/// s^t; throws LengthOverflow when an image would exceed 10^7 letters.
Substitution substitution_power(const Substitution& s, std::uint64_t t);

/// Factors of length n of the language, in discovery order.
struct FactorAlphabet {
    std::size_t n = 0;
    std::vector<Word> words;
    std::map<Word, std::size_t> index;

    std::size_t size() const { return words.size(); }
    bool contains(const Word& w) const { return index.count(w) != 0; }
};

FactorAlphabet factor_alphabet(const Substitution& s, std::size_t n, std::size_t cap = 0);

struct BlowUp {
    Substitution substitution;  // over letters named "(ab)", or "(x.y)" for multi-character names
    FactorAlphabet factors;
};

/// Level-n blow-up: each length-n factor w = x_1...x_n maps to the first
/// |s(x_1)| sliding windows of length n in s(w).
BlowUp blow_up(const Substitution& s, std::size_t n);

/// Overlapping occurrences of u in w.
std::size_t count_occurrences(const Word& w, const Word& u);

/// Letter counts of w.
ExactVector occurrence_vector(const Word& w, std::size_t alphabet_size);

}  // namespace frobsub
