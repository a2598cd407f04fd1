#include "frobsub/subst.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

#include "frobsub/errors.hpp"

namespace frobsub {

// ---------------------------------------------------------------- Alphabet

Alphabet::Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
    if (letters_.empty()) throw InvalidArgument("alphabet is empty");
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        const auto& l = letters_[i];
        if (l.empty()) throw InvalidArgument("empty letter name");
        if (std::any_of(l.begin(), l.end(), [](unsigned char c) { return std::isspace(c); }))
            throw InvalidArgument("letter name contains whitespace: '" + l + "'");
        if (!index_.emplace(l, static_cast<Letter>(i)).second) throw InvalidArgument("duplicate letter '" + l + "'");
        if (l.size() != 1) single_char_ = false;
    }
}

bool Alphabet::contains(std::string_view name) const {
    return index_.find(name) != index_.end();
}

Letter Alphabet::index(std::string_view name) const {
    const auto it = index_.find(name);
    if (it == index_.end()) throw InvalidArgument("unknown letter '" + std::string(name) + "'");
    return it->second;
}

std::string Alphabet::render(const Word& w) const {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!single_char_ && i > 0) out += ' ';
        out += name(w[i]);
    }
    return out;
}

Word Alphabet::parse(std::string_view text) const {
    Word out;
    if (single_char_) {
        for (char c : text) {
            if (std::isspace(static_cast<unsigned char>(c)) || c == ',') continue;
            out.push_back(index(std::string_view(&c, 1)));
        }
        return out;
    }
    std::string token;
    auto flush = [&] {
        if (!token.empty()) out.push_back(index(token));
        token.clear();
    };
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)))
            flush();
        else
            token += c;
    }
    flush();
    return out;
}

// ------------------------------------------------------------ Substitution

Substitution::Substitution(Alphabet alphabet, std::vector<Word> images)
    : alphabet_(std::move(alphabet)), images_(std::move(images)) {
    if (images_.size() != alphabet_.size()) throw InvalidArgument("one image per letter expected");
    for (const auto& img : images_)
        for (Letter x : img)
            if (x >= alphabet_.size()) throw InvalidArgument("image uses a letter outside the alphabet");
}

Substitution Substitution::from_strings(const std::vector<std::pair<std::string, std::string>>& rules) {
    std::vector<std::string> names;
    for (const auto& r : rules) names.push_back(r.first);
    Alphabet alphabet(names);
    std::vector<Word> images;
    for (const auto& r : rules) images.push_back(alphabet.parse(r.second));
    return Substitution(std::move(alphabet), std::move(images));
}

bool Substitution::is_erasing() const {
    return std::any_of(images_.begin(), images_.end(), [](const Word& w) { return w.empty(); });
}

Word apply(const Substitution& s, const Word& w) {
    Word out;
    std::size_t len = 0;
    for (Letter x : w) len += s.image(x).size();
    out.reserve(len);
    for (Letter x : w) {
        const auto& img = s.image(x);
        out.insert(out.end(), img.begin(), img.end());
    }
    return out;
}

Word iterate(const Substitution& s, const Word& w, std::uint64_t t, std::size_t max_length) {
    Word cur = w;
    for (std::uint64_t k = 0; k < t; ++k) {
        std::size_t len = 0;
        for (Letter x : cur) len += s.image(x).size();
        if (len > max_length) throw LengthOverflow("iterate exceeds " + std::to_string(max_length) + " letters");
        cur = frobsub::apply(s, cur);
    }
    return cur;
}

ExactMatrix incidence_matrix(const Substitution& s) {
    const std::size_t n = s.size();
    std::vector<std::vector<BigInt>> rows(n, std::vector<BigInt>(n, BigInt(0)));
    for (std::size_t j = 0; j < n; ++j)
        for (Letter x : s.image(static_cast<Letter>(j))) rows[x][j] += 1;
    return ExactMatrix(std::move(rows));
}

bool is_expanding_subst(const Substitution& s) {
    return is_expanding(incidence_matrix(s));
}

std::uint64_t stabilizing_power(const Substitution& s) {
    const auto m = incidence_matrix(s);
    if (!is_expanding(m)) throw NotExpanding("substitution is not expanding");
    return pb_frobenius_power(m).exponent;
}

Substitution substitution_power(const Substitution& s, std::uint64_t t) {
    if (t == 0) throw InvalidArgument("power must be positive");
    constexpr std::size_t kMaxImage = 10'000'000;
    std::vector<Word> images;
    images.reserve(s.size());
    for (Letter a = 0; a < s.size(); ++a) images.push_back(iterate(s, Word{a}, t, kMaxImage));
    return Substitution(s.alphabet(), std::move(images));
}

// ------------------------------------------------------------------ factors

namespace {

void add_factors(const Word& w, std::size_t n, FactorAlphabet& fa, std::deque<std::size_t>& queue, std::size_t cap) {
    if (w.size() < n) return;
    for (std::size_t p = 0; p + n <= w.size(); ++p) {
        Word f(w.begin() + static_cast<std::ptrdiff_t>(p), w.begin() + static_cast<std::ptrdiff_t>(p + n));
        if (fa.index.count(f)) continue;
        if (fa.words.size() >= cap) throw CapExceeded("factor alphabet exceeds cap " + std::to_string(cap));
        fa.index.emplace(f, fa.words.size());
        queue.push_back(fa.words.size());
        fa.words.push_back(std::move(f));
    }
}

}  // namespace

FactorAlphabet factor_alphabet(const Substitution& s, std::size_t n, std::size_t cap) {
    if (n == 0) throw InvalidArgument("factor length must be positive");
    if (!is_expanding_subst(s)) throw NotExpanding("substitution is not expanding");
    if (cap == 0) {
        cap = 1;
        for (std::size_t k = 0; k < n && cap <= (std::size_t{1} << 40); ++k) cap *= s.size();
    }

    // Levels 0..K, K the first level where every image reaches length n.
    std::vector<std::vector<Word>> levels(s.size());
    for (Letter a = 0; a < s.size(); ++a) levels[a].push_back(Word{a});
    auto shortest = [&] {
        std::size_t m = static_cast<std::size_t>(-1);
        for (const auto& l : levels) m = std::min(m, l.back().size());
        return m;
    };
    while (shortest() < n)
        for (Letter a = 0; a < s.size(); ++a) levels[a].push_back(frobsub::apply(s, levels[a].back()));

    FactorAlphabet fa;
    fa.n = n;
    std::deque<std::size_t> queue;
    for (Letter a = 0; a < s.size(); ++a)
        for (const auto& w : levels[a]) add_factors(w, n, fa, queue, cap);
    while (!queue.empty()) {
        const std::size_t k = queue.front();
        queue.pop_front();
        const Word w = fa.words[k];
        add_factors(frobsub::apply(s, w), n, fa, queue, cap);
    }
    return fa;
}

BlowUp blow_up(const Substitution& s, std::size_t n) {
    if (n < 2) throw InvalidArgument("blow-up level must be at least 2");
    BlowUp out;
    out.factors = factor_alphabet(s, n);
    const auto& fa = out.factors;

    std::vector<std::string> names;
    names.reserve(fa.size());
    for (const auto& w : fa.words) {
        std::string name = "(";
        for (std::size_t p = 0; p < w.size(); ++p) {
            if (p > 0 && !s.alphabet().single_char()) name += '.';
            name += s.alphabet().name(w[p]);
        }
        names.push_back(name + ")");
    }

    std::vector<Word> images;
    images.reserve(fa.size());
    for (const auto& w : fa.words) {
        const Word big = frobsub::apply(s, w);
        const std::size_t count = s.image(w.front()).size();
        if (big.size() < count + n - 1) throw ImageTooShort("image of " + s.alphabet().render(w) + " is too short");
        Word img;
        img.reserve(count);
        for (std::size_t p = 0; p < count; ++p) {
            Word f(big.begin() + static_cast<std::ptrdiff_t>(p), big.begin() + static_cast<std::ptrdiff_t>(p + n));
            const auto it = fa.index.find(f);
            if (it == fa.index.end()) throw Error("blow-up produced a factor outside the language");
            img.push_back(static_cast<Letter>(it->second));
        }
        images.push_back(std::move(img));
    }
    out.substitution = Substitution(Alphabet(std::move(names)), std::move(images));
    return out;
}

std::size_t count_occurrences(const Word& w, const Word& u) {
    if (u.empty()) throw InvalidArgument("pattern must be non-empty");
    if (u.size() > w.size()) return 0;
    std::size_t count = 0;
    for (std::size_t p = 0; p + u.size() <= w.size(); ++p)
        if (std::equal(u.begin(), u.end(), w.begin() + static_cast<std::ptrdiff_t>(p))) ++count;
    return count;
}

ExactVector occurrence_vector(const Word& w, std::size_t alphabet_size) {
    std::vector<BigInt> c(alphabet_size, BigInt(0));
    for (Letter x : w) {
        if (x >= alphabet_size) throw InvalidArgument("letter outside the alphabet");
        c[x] += 1;
    }
    return ExactVector(std::move(c));
}

}  // namespace frobsub
