#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>

#include "frobsub/spectral.hpp"
#include "frobsub/subst.hpp"

namespace frobsub {

/// Limit frequencies f_w(a) of factors w in the iterates of one base letter a,
/// for all lengths 1..max_len.
struct FrequencyTable {
    Letter base_letter = 0;
    std::size_t alphabet_size = 0;
    std::map<Word, double> entries;  // words of the language only
    std::size_t max_len = 0;
    std::uint64_t power_used = 1;    // the substitution was raised to this power
    double growth_rate = 0.0;        // of the powered substitution

    /// 0 for words outside the table.
    double frequency(const Word& w) const;
    double length_sum(std::size_t n) const;
};

/// Limit letter frequencies of s^p(a), p the stabilizing power. Coordinates sum to 1.
FloatVector letter_frequencies(const Substitution& s, Letter a, double tol = kDefaultTol);

/// lim |z^(t+1)(a)| / |z^t(a)| for z = s^p, p the stabilizing power. Exceeds 1.
double growth_rate(const Substitution& s, Letter a, double tol = kDefaultTol);

/// Length-n factor frequencies via the level-n blow-up of s^p, started from
/// the first factor (in discovery order) that begins with `a`.
std::map<Word, double> factor_frequencies(const Substitution& s, Letter a, std::size_t n, double tol = kDefaultTol);

/// Same, for an already stabilized substitution and an explicit seed factor
/// (an index into blow.factors).
std::map<Word, double> factor_frequencies_from_seed(const BlowUp& blow, std::size_t seed, double tol = kDefaultTol);

/// Indices of factors starting with `a`, discovery order.
std::vector<std::size_t> seed_factors(const FactorAlphabet& fa, Letter a);

FrequencyTable frequency_table(const Substitution& s, Letter a, std::size_t max_len, double tol = kDefaultTol);

struct KirchhoffReport {
    double max_residual = 0.0;
    Word worst;      // word realizing the maximum (empty word included)
    bool passed = false;
};

/// max over |w| < max_len of |w(w) - sum_i w(a_i w)| and |w(w) - sum_i w(w a_i)|.
KirchhoffReport kirchhoff_check(const FrequencyTable& tab, double tol = 1e-6);

/// Measure mu_a of the cylinder of w; 0 for words outside the language.
double measure_cylinder(const Substitution& s, Letter a, const Word& w, double tol = kDefaultTol);

}  // namespace frobsub
