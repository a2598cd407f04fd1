#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "frobsub/matrix.hpp"
#include "frobsub/subst.hpp"

namespace frobsub {

/// Rows of non-negative decimal integers separated by whitespace or commas,
/// '#' comment lines; or a JSON 2D array. Throws ParseError.
ExactMatrix parse_matrix(std::string_view text);
ExactMatrix read_matrix_file(const std::filesystem::path& path);

/// One rule per line, "<letter> -> <image>". Images are whitespace-separated
/// letters, or a bare string when every letter is a single character.
/// Coordinates follow the order in which letters first appear. Throws ParseError.
Substitution parse_substitution(std::string_view text);
Substitution read_substitution_file(const std::filesystem::path& path);

/// 12 significant digits; integral values keep a trailing ".0".
std::string format_float(double x);

/// x rounded to 12 significant digits.
double round12(double x);

}  // namespace frobsub
