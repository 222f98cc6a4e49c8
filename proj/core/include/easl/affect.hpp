#ifndef EASL_AFFECT_HPP
#define EASL_AFFECT_HPP

#include <initializer_list>
#include <iosfwd>
#include <map>
#include <set>
#include <vector>

#include "easl/atom.hpp"

namespace easl {

using Traits = std::map<Atom, double>;

// n-dimensional affect vector, components in [-1, 1] after clamping.
// Default space is PAD: components 0/1/2 = pleasure/arousal/dominance.
class AffectVector {
public:
    explicit AffectVector(size_t n = 3) : c_(n, 0.0) {}
    AffectVector(std::initializer_list<double> values) : c_(values) {}
    static AffectVector pad(double p, double a, double d) { return AffectVector{p, a, d}; }

    size_t size() const { return c_.size(); }
    double operator[](size_t i) const { return c_[i]; }
    double& operator[](size_t i) { return c_[i]; }
    const std::vector<double>& components() const { return c_; }

    AffectVector& clamp();
    AffectVector clamped() const;

    double magnitude() const;
    // Normalized magnitude |v| / sqrt(n), in [0, 1] for clamped vectors.
    double intensity() const;
    // Planar angle of the (pleasure, arousal) components, in [0, 2*pi).
    double angle() const;
    bool planar_zero() const { return c_[0] == 0.0 && c_[1] == 0.0; }
    bool zero() const;

    friend AffectVector operator+(const AffectVector& a, const AffectVector& b);
    friend AffectVector operator-(const AffectVector& a, const AffectVector& b);
    friend AffectVector operator*(double k, const AffectVector& v);
    friend bool operator==(const AffectVector& a, const AffectVector& b) { return a.c_ == b.c_; }

private:
    std::vector<double> c_;
};

std::ostream& operator<<(std::ostream& os, const AffectVector& v);

// Shortest circular distance between two angles.
double angle_distance(double a, double b);

// An emotion is a labeled affect vector; intensity and angle always reflect
// the current vector.
struct Emotion {
    Atom label;
    AffectVector vector = AffectVector(3);

    double intensity() const { return vector.intensity(); }
    double angle() const { return vector.angle(); }
};

// omega: (emotion label, personality trait) -> weight >= 0. Missing entries
// read as zero.
class CorrelationMatrix {
public:
    void set(Atom emotion, Atom trait, double weight);
    double get(Atom emotion, Atom trait) const;
    bool has_row(Atom emotion) const;
    double row_sum(Atom emotion) const;
    const std::set<Atom>& emotion_labels() const { return labels_; }
    const std::set<Atom>& trait_labels() const { return traits_; }

private:
    std::map<std::pair<Atom, Atom>, double> w_;
    std::set<Atom> labels_;
    std::set<Atom> traits_;
};

// label -> prototype vector, loaded from a `label p a d` file or the built-in
// default mapping.
class EmotionPrototypeTable {
public:
    static EmotionPrototypeTable builtin_default();
    static EmotionPrototypeTable parse(std::istream& in, const std::string& filename);
    static EmotionPrototypeTable load(const std::string& path);

    void set(Atom label, AffectVector proto);
    const AffectVector* find(Atom label) const;
    bool empty() const { return protos_.empty(); }
    const std::map<Atom, AffectVector>& entries() const { return protos_; }

private:
    std::map<Atom, AffectVector> protos_;
};

// Shared affective configuration: the omega matrix, the prototype table, the
// neutral label and the updateAl weighting factor.
struct AffectModel {
    CorrelationMatrix omega;
    EmotionPrototypeTable prototypes = EmotionPrototypeTable::builtin_default();
    Atom neutral_label = Atom::intern("neutral");
    double al_weight = 0.5;

    // Label whose prototype angle is nearest to v's, ties broken by label
    // order; the neutral label for planar-degenerate vectors.
    Atom label_of(const AffectVector& v) const;

    // P(C = c | angle(v)): clamped-cosine similarity normalized over all
    // labels. When every cosine is <= 0 the whole mass goes to the
    // nearest-angle label.
    double label_probability(const AffectVector& v, Atom c) const;

    // psi weighting factor: trait-weighted mean of omega's row for label_of(v).
    // Zero for the neutral label; throws config_error on a zero denominator.
    double psi(const Traits& traits, const AffectVector& v) const;
};

// One decay step toward the equilibrium mood: mood + rate * (eq - mood).
AffectVector decay(const AffectVector& mood, const AffectVector& equilibrium, double rate);

} // namespace easl

#endif
