#pragma once

#include <memory>
#include <string>
#include <vector>

namespace psifrac {

/// Compiled arithmetic expression over a fixed list of variable names.
///
/// Grammar: + - * / ^, unary minus, parentheses, numeric literals, the
/// constant pi, and the functions sin cos exp log abs sqrt (one argument) and
/// min max (two arguments). Throws ParseError on malformed input or unknown
/// identifiers.
class Expression {
public:
    Expression(const std::string& text, std::vector<std::string> variables);
    ~Expression();
    Expression(const Expression&);
    Expression& operator=(const Expression&);
    Expression(Expression&&) noexcept;
    Expression& operator=(Expression&&) noexcept;

    /// values[i] binds variables[i]; the span must cover all variables.
    double eval(const double* values) const;
    const std::string& text() const { return text_; }

    struct Node;

private:
    std::string text_;
    std::vector<std::string> vars_;
    std::shared_ptr<const Node> root_;
};

}  // namespace psifrac
