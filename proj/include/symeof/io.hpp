#pragma once

#include "symeof/closed_form.hpp"
#include "symeof/symplectic.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace symeof {

/// Locale-independent formatting, `significant` digits, shortest general
/// form ('.' decimal separator, "nan"/"inf" lowercase).
std::string format_sig(double v, int significant = 12);

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, int line, int column)
        : std::runtime_error(what), line(line), column(column) {}
    int line = 0;
    int column = 0;
};

struct CmInput {
    Mat4 gamma = Mat4::Identity();
    bool from_triple = false;
    StandardForm triple;  // set when from_triple
};

/// Accepts either 16 whitespace-separated reals (row-major 4x4 matrix) or
/// 3 reals "n kx kp" (symmetric standard form). Format is chosen by token
/// count; anything else raises ParseError with line/column.
CmInput parse_cm_text(std::string_view text);
CmInput load_cm_file(const std::string& path);

std::string report_text(const EntanglementReport& rep);
std::string report_csv_header();
std::string report_csv_row(const EntanglementReport& rep);
std::string report_json(const EntanglementReport& rep);

}  // namespace symeof
