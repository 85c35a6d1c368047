#pragma once

#include <stdexcept>
#include <string>

namespace cvnn {

// Non-finite value met while sweeping a grid; carries the offending node.
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(const std::string& what, std::string node)
        : std::runtime_error(what + " at node " + node), node_(std::move(node)) {}
    const std::string& node() const { return node_; }

private:
    std::string node_;
};

// Divided-difference step floor reached before the residual target was met.
class ConditioningError : public std::runtime_error {
public:
    ConditioningError(const std::string& what, double best_residual)
        : std::runtime_error(what), best_residual_(best_residual) {}
    double best_residual() const { return best_residual_; }

private:
    double best_residual_;
};

class NotAdmissibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Stencil would leave the activation's smoothness ball.
class StencilError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class DegenerateNodesError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Ridge direction sampling failed the span certificate.
class SpanFailureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Ridge basis cannot represent the requested polynomial space.
class BasisInsufficientError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace cvnn
