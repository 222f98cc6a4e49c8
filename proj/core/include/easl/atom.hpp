#ifndef EASL_ATOM_HPP
#define EASL_ATOM_HPP

#include <compare>
#include <functional>
#include <string>
#include <string_view>

namespace easl {

// Interned lowercase identifier. Equality is pointer identity; ordering is
// lexicographic so that atom-keyed containers iterate deterministically.
class Atom {
public:
    Atom() : s_(nullptr) {}

    static Atom intern(std::string_view text);

    const std::string& str() const { return *s_; }
    bool valid() const { return s_ != nullptr; }

    friend bool operator==(Atom a, Atom b) { return a.s_ == b.s_; }
    friend bool operator!=(Atom a, Atom b) { return a.s_ != b.s_; }
    friend bool operator<(Atom a, Atom b) {
        if (a.s_ == b.s_) return false;
        if (a.s_ == nullptr) return true;
        if (b.s_ == nullptr) return false;
        return *a.s_ < *b.s_;
    }

private:
    explicit Atom(const std::string* s) : s_(s) {}
    const std::string* s_;

    friend struct std::hash<Atom>;
};

} // namespace easl

template <>
struct std::hash<easl::Atom> {
    size_t operator()(easl::Atom a) const {
        return std::hash<const std::string*>()(a.s_);
    }
};

#endif
