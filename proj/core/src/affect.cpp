#include "easl/affect.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "easl/diagnostics.hpp"

namespace easl {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

AffectVector& AffectVector::clamp() {
    for (double& x : c_) x = std::min(1.0, std::max(-1.0, x));
    return *this;
}

AffectVector AffectVector::clamped() const {
    AffectVector out = *this;
    out.clamp();
    return out;
}

double AffectVector::magnitude() const {
    double s = 0.0;
    for (double x : c_) s += x * x;
    return std::sqrt(s);
}

double AffectVector::intensity() const {
    return magnitude() / std::sqrt(static_cast<double>(c_.size()));
}

double AffectVector::angle() const {
    double a = std::atan2(c_[1], c_[0]);
    if (a < 0) a += two_pi;
    return a;
}

bool AffectVector::zero() const {
    for (double x : c_)
        if (x != 0.0) return false;
    return true;
}

AffectVector operator+(const AffectVector& a, const AffectVector& b) {
    AffectVector out = a;
    for (size_t i = 0; i < out.c_.size() && i < b.c_.size(); ++i) out.c_[i] += b.c_[i];
    return out;
}

AffectVector operator-(const AffectVector& a, const AffectVector& b) {
    AffectVector out = a;
    for (size_t i = 0; i < out.c_.size() && i < b.c_.size(); ++i) out.c_[i] -= b.c_[i];
    return out;
}

AffectVector operator*(double k, const AffectVector& v) {
    AffectVector out = v;
    for (double& x : out.c_) x *= k;
    return out;
}

std::ostream& operator<<(std::ostream& os, const AffectVector& v) {
    os << '(';
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << v[i];
    }
    return os << ')';
}

double angle_distance(double a, double b) {
    double d = std::fabs(a - b);
    d = std::fmod(d, two_pi);
    return std::min(d, two_pi - d);
}

void CorrelationMatrix::set(Atom emotion, Atom trait, double weight) {
    w_[{emotion, trait}] = weight;
    labels_.insert(emotion);
    traits_.insert(trait);
}

double CorrelationMatrix::get(Atom emotion, Atom trait) const {
    auto it = w_.find({emotion, trait});
    return it == w_.end() ? 0.0 : it->second;
}

bool CorrelationMatrix::has_row(Atom emotion) const {
    return labels_.count(emotion) > 0;
}

double CorrelationMatrix::row_sum(Atom emotion) const {
    double s = 0.0;
    for (Atom t : traits_) s += get(emotion, t);
    return s;
}

EmotionPrototypeTable EmotionPrototypeTable::builtin_default() {
    // PAD placements following the ALMA-style mapping, with angles kept
    // pairwise distinct in the pleasure/arousal plane so nearest-angle
    // labeling is total.
    EmotionPrototypeTable t;
    t.set(Atom::intern("joy"), AffectVector::pad(0.4, 0.2, 0.1));
    t.set(Atom::intern("happy_for"), AffectVector::pad(0.3, 0.4, 0.2));
    t.set(Atom::intern("hope"), AffectVector::pad(0.2, 0.2, -0.1));
    t.set(Atom::intern("anger"), AffectVector::pad(-0.51, 0.59, 0.25));
    t.set(Atom::intern("fear"), AffectVector::pad(-0.64, 0.6, -0.43));
    t.set(Atom::intern("guilt"), AffectVector::pad(-0.5, 0.05, -0.6));
    t.set(Atom::intern("sadness"), AffectVector::pad(-0.4, -0.2, -0.5));
    t.set(Atom::intern("sorry_for"), AffectVector::pad(-0.25, -0.45, -0.5));
    return t;
}

EmotionPrototypeTable EmotionPrototypeTable::parse(std::istream& in, const std::string& filename) {
    EmotionPrototypeTable t;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv(line);
        if (auto hash = sv.find('#'); hash != std::string_view::npos) sv = sv.substr(0, hash);
        std::istringstream ls{std::string(sv)};
        std::string label;
        if (!(ls >> label)) continue;
        double p, a, d;
        if (!(ls >> p >> a >> d))
            throw parse_error(filename, lineno, 1, "expected `label p a d`");
        AffectVector v = AffectVector::pad(p, a, d);
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i] < -1.0 || v[i] > 1.0)
                throw parse_error(filename, lineno, 1, "prototype component outside [-1,1]");
        t.set(Atom::intern(label), v);
    }
    return t;
}

EmotionPrototypeTable EmotionPrototypeTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open prototype table: " + path);
    return parse(in, path);
}

void EmotionPrototypeTable::set(Atom label, AffectVector proto) {
    protos_[label] = std::move(proto);
}

const AffectVector* EmotionPrototypeTable::find(Atom label) const {
    auto it = protos_.find(label);
    return it == protos_.end() ? nullptr : &it->second;
}

Atom AffectModel::label_of(const AffectVector& v) const {
    if (v.planar_zero() || prototypes.empty()) return neutral_label;
    double a = v.angle();
    Atom best;
    double best_d = 0.0;
    for (const auto& [label, proto] : prototypes.entries()) {
        double d = angle_distance(a, proto.angle());
        if (!best.valid() || d < best_d) {
            best = label;
            best_d = d;
        }
    }
    return best;
}

double AffectModel::label_probability(const AffectVector& v, Atom c) const {
    if (v.planar_zero() || prototypes.empty()) return c == neutral_label ? 1.0 : 0.0;
    double a = v.angle();
    double total = 0.0;
    double own = 0.0;
    bool known = false;
    for (const auto& [label, proto] : prototypes.entries()) {
        double p = std::max(0.0, std::cos(a - proto.angle()));
        total += p;
        if (label == c) {
            own = p;
            known = true;
        }
    }
    if (!known) return 0.0;
    if (total > 0.0) return own / total;
    return label_of(v) == c ? 1.0 : 0.0;
}

double AffectModel::psi(const Traits& traits, const AffectVector& v) const {
    Atom label = label_of(v);
    if (label == neutral_label) return 0.0;
    double num = 0.0;
    double den = 0.0;
    for (const auto& [trait, beta] : traits) {
        double w = omega.get(label, trait);
        num += beta * w;
        den += w;
    }
    if (den <= 0.0)
        throw config_error("omega matrix has no weights for emotion label '" +
                           label.str() + "' over the agent's traits");
    return num / den;
}

AffectVector decay(const AffectVector& mood, const AffectVector& equilibrium, double rate) {
    return (mood + rate * (equilibrium - mood)).clamped();
}

} // namespace easl
