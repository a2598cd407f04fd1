#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "frobsub/freq.hpp"
#include "frobsub/matrix.hpp"
#include "frobsub/spectral.hpp"
#include "frobsub/subst.hpp"

namespace frobsub {

// Block numbers below are positions in the topological block order.

struct BlockReport {
    std::size_t index = 0;
    std::vector<std::size_t> indices;  // original coordinates
    std::vector<std::string> letters;  // substitutions only
    std::string cls;
    std::size_t period = 0;
    double eigenvalue = 0.0;
    std::size_t growth_degree = 0;
    int limit_case = 0;
    bool principal = false;

    friend bool operator==(const BlockReport&, const BlockReport&) = default;
};

struct PrincipalReport {
    std::size_t block = 0;
    double eigenvalue = 0.0;
    FloatVector vector;
    double residual = 0.0;

    friend bool operator==(const PrincipalReport&, const PrincipalReport&) = default;
};

struct LimitReport {
    std::vector<std::string> start;  // decimal integers
    std::uint64_t power = 1;         // the limit is taken for M^power
    FloatVector limit;
    double eigenvalue = 0.0;
    std::size_t iterations = 0;
    double residual = 0.0;
    std::size_t growth_degree = 0;

    friend bool operator==(const LimitReport&, const LimitReport&) = default;
};

struct BlowupReport {
    std::size_t n = 0;
    std::size_t alphabet_size = 0;
    std::vector<std::string> factors;
    bool pb_frobenius = false;
    bool primitive = false;

    friend bool operator==(const BlowupReport&, const BlowupReport&) = default;
};

struct LetterFrequencyReport {
    std::string letter;
    FloatVector frequencies;
    double growth_rate = 0.0;

    friend bool operator==(const LetterFrequencyReport&, const LetterFrequencyReport&) = default;
};

struct AnalysisReport {
    std::string kind;   // "matrix" or "substitution"
    std::string input;
    std::size_t dimension = 0;
    std::vector<std::string> alphabet;
    bool expanding = false;
    bool pb_frobenius = false;
    std::uint64_t pb_power = 1;        // smallest power in PB-Frobenius form
    std::uint64_t analysis_power = 1;  // power in primitive Frobenius form; blocks describe M^analysis_power
    std::optional<std::uint64_t> stabilizing_power;
    std::vector<BlockReport> blocks;
    std::vector<std::pair<std::size_t, std::size_t>> order;
    std::vector<PrincipalReport> principal;
    std::vector<LimitReport> limits;
    std::optional<BlowupReport> blowup;
    std::vector<LetterFrequencyReport> frequencies;
    std::vector<std::string> notes;

    friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

void to_json(nlohmann::json& j, const AnalysisReport& r);
void from_json(const nlohmann::json& j, AnalysisReport& r);

/// Spectral analysis of a matrix. Stages whose hypotheses fail are skipped
/// and explained in `notes`. `vectors` are starting vectors for limits.
AnalysisReport analyze_matrix(const ExactMatrix& m, const std::vector<ExactVector>& vectors = {});

/// Throws NotExpanding for non-expanding substitutions.
AnalysisReport analyze_substitution(const Substitution& s, std::optional<std::size_t> blowup = std::nullopt);

std::string render_text(const AnalysisReport& r);

/// {"base_letter", "power_used", "frequencies", "growth_rate", "max_len", "kirchhoff"}.
nlohmann::json table_to_json(const FrequencyTable& tab, const Alphabet& alphabet, const KirchhoffReport& k);

}  // namespace frobsub
