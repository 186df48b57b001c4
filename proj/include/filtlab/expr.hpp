#pragma once

#include <memory>
#include <string>

#include "filtlab/errors.hpp"

namespace filtlab {

// Arithmetic expressions for scalar config fields: numbers, the variables
// x and u, + - * / ^, parentheses, unary minus and the functions exp, log,
// sqrt, abs, sin, cos, tanh.  Parsed once, evaluated per point.
class Expression {
public:
    static Expression parse(const std::string& text);
    double operator()(double x, double u = 0.0) const;

    struct Node;

private:
    std::shared_ptr<const Node> root_;
};

}  // namespace filtlab
