#include "frobsub/freq.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace frobsub {

double FrequencyTable::frequency(const Word& w) const {
    const auto it = entries.find(w);
    return it == entries.end() ? 0.0 : it->second;
}

double FrequencyTable::length_sum(std::size_t n) const {
    double s = 0.0;
    for (const auto& [w, f] : entries)
        if (w.size() == n) s += f;
    return s;
}

namespace {

struct Stabilized {
    std::uint64_t power = 1;
    Substitution subst;
};

Stabilized stabilize(const Substitution& s) {
    if (!is_expanding_subst(s)) throw NotExpanding("substitution is not expanding");
    Stabilized out;
    out.power = stabilizing_power(s);
    out.subst = out.power == 1 ? s : substitution_power(s, out.power);
    return out;
}

ConvergenceReport letter_report(const Stabilized& st, Letter a, double tol) {
    if (a >= st.subst.size()) throw InvalidArgument("letter index out of range");
    return normalized_limit(incidence_matrix(st.subst), ExactVector::unit(st.subst.size(), a), tol);
}

std::map<Word, double> level_frequencies(const Stabilized& st, Letter a, std::size_t n, double tol) {
    const auto blow = blow_up(st.subst, n);
    const auto seeds = seed_factors(blow.factors, a);
    if (seeds.empty())
        throw NoSeedWord("no factor of length " + std::to_string(n) + " starts with letter '" +
                         st.subst.alphabet().name(a) + "'");
    return factor_frequencies_from_seed(blow, seeds.front(), tol);
}

}  // namespace

FloatVector letter_frequencies(const Substitution& s, Letter a, double tol) {
    return letter_report(stabilize(s), a, tol).limit;
}

double growth_rate(const Substitution& s, Letter a, double tol) {
    return letter_report(stabilize(s), a, tol).eigenvalue;
}

std::vector<std::size_t> seed_factors(const FactorAlphabet& fa, Letter a) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < fa.size(); ++k)
        if (fa.words[k].front() == a) out.push_back(k);
    return out;
}

std::map<Word, double> factor_frequencies_from_seed(const BlowUp& blow, std::size_t seed, double tol) {
    const auto& fa = blow.factors;
    if (seed >= fa.size()) throw InvalidArgument("seed index out of range");
    const auto m = incidence_matrix(blow.substitution);
    const auto rep = normalized_limit(m, ExactVector::unit(fa.size(), seed), tol);
    std::map<Word, double> out;
    for (std::size_t k = 0; k < fa.size(); ++k) out.emplace(fa.words[k], rep.limit[k]);
    return out;
}

std::map<Word, double> factor_frequencies(const Substitution& s, Letter a, std::size_t n, double tol) {
    if (n < 2) throw InvalidArgument("factor length must be at least 2; use letter_frequencies");
    return level_frequencies(stabilize(s), a, n, tol);
}

FrequencyTable frequency_table(const Substitution& s, Letter a, std::size_t max_len, double tol) {
    if (max_len == 0) throw InvalidArgument("max_len must be positive");
    const auto st = stabilize(s);
    FrequencyTable tab;
    tab.base_letter = a;
    tab.alphabet_size = s.size();
    tab.max_len = max_len;
    tab.power_used = st.power;

    const auto rep = letter_report(st, a, tol);
    tab.growth_rate = rep.eigenvalue;
    for (Letter x = 0; x < s.size(); ++x) tab.entries.emplace(Word{x}, rep.limit[x]);
    for (std::size_t n = 2; n <= max_len; ++n)
        for (auto& [w, f] : level_frequencies(st, a, n, tol)) tab.entries.emplace(w, f);
    return tab;
}

KirchhoffReport kirchhoff_check(const FrequencyTable& tab, double tol) {
    KirchhoffReport rep;
    auto consider = [&](const Word& w, double value) {
        double left = 0.0, right = 0.0;
        Word ext(w.size() + 1);
        for (Letter x = 0; x < tab.alphabet_size; ++x) {
            ext[0] = x;
            std::copy(w.begin(), w.end(), ext.begin() + 1);
            left += tab.frequency(ext);
            std::copy(w.begin(), w.end(), ext.begin());
            ext.back() = x;
            right += tab.frequency(ext);
        }
        const double r = std::max(std::abs(value - left), std::abs(value - right));
        if (r > rep.max_residual) {
            rep.max_residual = r;
            rep.worst = w;
        }
    };
    if (tab.max_len >= 1) consider(Word{}, 1.0);
    for (const auto& [w, f] : tab.entries)
        if (w.size() < tab.max_len) consider(w, f);
    rep.passed = rep.max_residual <= tol;
    return rep;
}

double measure_cylinder(const Substitution& s, Letter a, const Word& w, double tol) {
    if (w.empty()) throw InvalidArgument("cylinder word must be non-empty");
    for (Letter x : w)
        if (x >= s.size()) throw InvalidArgument("word uses a letter outside the alphabet");
    const auto st = stabilize(s);
    if (w.size() == 1) return letter_report(st, a, tol).limit[w[0]];
    const auto freqs = level_frequencies(st, a, w.size(), tol);
    const auto it = freqs.find(w);
    return it == freqs.end() ? 0.0 : it->second;
}

}  // namespace frobsub
