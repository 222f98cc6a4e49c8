#ifndef EASL_EXPR_HPP
#define EASL_EXPR_HPP

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include "easl/term.hpp"

namespace easl {

// Arithmetic expression over numbers and variables, used by concern
// definitions and plan-context comparisons. Evaluation is total: unbound
// variables, non-numeric bindings, and division by zero yield absence.
class ArithExpr {
public:
    using Ptr = std::shared_ptr<const ArithExpr>;

    enum class Kind { number, variable, binary, negate };

    static Ptr number(double v);
    static Ptr variable(std::string name);
    static Ptr binary(char op, Ptr lhs, Ptr rhs);
    static Ptr negate(Ptr operand);

    Kind kind() const { return kind_; }
    std::optional<double> eval(const Substitution& bindings) const;
    void print(std::ostream& os) const;

private:
    Kind kind_ = Kind::number;
    double value_ = 0.0;
    std::string var_;
    char op_ = '+';
    Ptr lhs_;
    Ptr rhs_;
};

std::ostream& operator<<(std::ostream& os, const ArithExpr& e);

} // namespace easl

#endif
