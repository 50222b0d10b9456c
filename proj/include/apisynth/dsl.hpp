#pragma once

#include <stdexcept>
#include <string>

#include "apisynth/expr.hpp"

namespace apisynth {

struct DslParseError : std::runtime_error {
    int line;
    int col;
    DslParseError(std::string msg, int l, int c)
        : std::runtime_error(std::move(msg)), line(l), col(c) {}
};

// Deterministic textual form:
//   \param1 param2 -> {
//     let x = f(a=e, b=e)
//     x1 <- e
//     if e == e
//     return e
//   }
// Statements sit on their own lines inside the braces; the final line is the
// result expression.
std::string render_program(const Program& p);

// Inverse of render_program; also accepts ';' as a statement separator.
// Throws DslParseError with line/column on malformed input.
Program parse_program(const std::string& text);

} // namespace apisynth
