#include "easl/expr.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace easl {

ArithExpr::Ptr ArithExpr::number(double v) {
    auto e = std::make_shared<ArithExpr>();
    e->kind_ = Kind::number;
    e->value_ = v;
    return e;
}

ArithExpr::Ptr ArithExpr::variable(std::string name) {
    auto e = std::make_shared<ArithExpr>();
    e->kind_ = Kind::variable;
    e->var_ = std::move(name);
    return e;
}

ArithExpr::Ptr ArithExpr::binary(char op, Ptr lhs, Ptr rhs) {
    auto e = std::make_shared<ArithExpr>();
    e->kind_ = Kind::binary;
    e->op_ = op;
    e->lhs_ = std::move(lhs);
    e->rhs_ = std::move(rhs);
    return e;
}

ArithExpr::Ptr ArithExpr::negate(Ptr operand) {
    auto e = std::make_shared<ArithExpr>();
    e->kind_ = Kind::negate;
    e->lhs_ = std::move(operand);
    return e;
}

std::optional<double> ArithExpr::eval(const Substitution& bindings) const {
    switch (kind_) {
    case Kind::number:
        return value_;
    case Kind::variable: {
        const TermPtr* bound = bindings.lookup(var_);
        if (!bound) return std::nullopt;
        TermPtr t = bindings.apply(*bound);
        if (!t->is_number()) return std::nullopt;
        return t->number();
    }
    case Kind::negate: {
        auto v = lhs_->eval(bindings);
        if (!v) return std::nullopt;
        return -*v;
    }
    case Kind::binary: {
        auto a = lhs_->eval(bindings);
        auto b = rhs_->eval(bindings);
        if (!a || !b) return std::nullopt;
        switch (op_) {
        case '+': return *a + *b;
        case '-': return *a - *b;
        case '*': return *a * *b;
        case '/':
            if (*b == 0.0) return std::nullopt;
            return *a / *b;
        }
        return std::nullopt;
    }
    }
    return std::nullopt;
}

void ArithExpr::print(std::ostream& os) const {
    switch (kind_) {
    case Kind::number: {
        char buf[32];
        auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value_);
        (void)ec;
        os << std::string_view(buf, end - buf);
        return;
    }
    case Kind::variable:
        os << var_;
        return;
    case Kind::negate:
        os << "-(";
        lhs_->print(os);
        os << ')';
        return;
    case Kind::binary:
        os << '(';
        lhs_->print(os);
        os << ' ' << op_ << ' ';
        rhs_->print(os);
        os << ')';
        return;
    }
}

std::ostream& operator<<(std::ostream& os, const ArithExpr& e) {
    e.print(os);
    return os;
}

} // namespace easl
