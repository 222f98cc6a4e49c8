#include <doctest.h>

#include <cmath>
#include <random>

#include <sstream>

#include "easl/affect.hpp"
#include "easl/diagnostics.hpp"

using namespace easl;

namespace {

// Table-1 omega: Anger E 0.5 / N 0.8, Sadness E 0.6 / N 0.7.
AffectModel table1_model() {
    AffectModel m;
    m.omega.set(Atom::intern("anger"), Atom::intern("extraversion"), 0.5);
    m.omega.set(Atom::intern("anger"), Atom::intern("neuroticism"), 0.8);
    m.omega.set(Atom::intern("sadness"), Atom::intern("extraversion"), 0.6);
    m.omega.set(Atom::intern("sadness"), Atom::intern("neuroticism"), 0.7);
    return m;
}

Traits lily_traits() {
    return {{Atom::intern("extraversion"), 0.9}, {Atom::intern("neuroticism"), 0.1}};
}

} // namespace

TEST_CASE("psi reproduces the hand-derived Table-1 values") {
    AffectModel m = table1_model();
    Traits tr = lily_traits();
    // independent oracle: direct evaluation of the weighting formula
    double sadness_oracle = (0.9 * 0.6 + 0.1 * 0.7) / (0.6 + 0.7);
    double anger_oracle = (0.9 * 0.5 + 0.1 * 0.8) / (0.5 + 0.8);
    CHECK(sadness_oracle == doctest::Approx(0.469231).epsilon(1e-6));
    CHECK(anger_oracle == doctest::Approx(0.407692).epsilon(1e-6));

    const AffectVector* sad = m.prototypes.find(Atom::intern("sadness"));
    const AffectVector* anger = m.prototypes.find(Atom::intern("anger"));
    REQUIRE(sad);
    REQUIRE(anger);
    CHECK(m.psi(tr, *sad) == doctest::Approx(sadness_oracle).epsilon(1e-9));
    CHECK(m.psi(tr, *anger) == doctest::Approx(anger_oracle).epsilon(1e-9));
}

TEST_CASE("psi of all-ones traits is 1; unknown rows are a configuration error") {
    AffectModel m = table1_model();
    Traits ones = {{Atom::intern("extraversion"), 1.0}, {Atom::intern("neuroticism"), 1.0}};
    CHECK(m.psi(ones, *m.prototypes.find(Atom::intern("sadness"))) == doctest::Approx(1.0));

    Traits tr = lily_traits();
    const AffectVector* joy = m.prototypes.find(Atom::intern("joy"));
    REQUIRE(joy);
    CHECK_THROWS_AS(m.psi(tr, *joy), config_error); // no joy row in Table 1
    CHECK(m.psi(tr, AffectVector{0, 0, 0}) == 0.0);  // neutral suppresses psi
}

TEST_CASE("psi monotonicity in the trait values") {
    AffectModel m = table1_model();
    const AffectVector& sad = *m.prototypes.find(Atom::intern("sadness"));
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        Traits tr = {{Atom::intern("extraversion"), unit(rng)},
                     {Atom::intern("neuroticism"), unit(rng)}};
        double base = m.psi(tr, sad);
        Traits bumped = tr;
        Atom which = i % 2 ? Atom::intern("extraversion") : Atom::intern("neuroticism");
        bumped[which] = std::min(1.0, bumped[which] + 0.1);
        CHECK(m.psi(bumped, sad) >= base - 1e-12);
    }
}

TEST_CASE("label_of picks the nearest prototype angle") {
    AffectModel m;
    for (const auto& [label, proto] : m.prototypes.entries())
        CHECK(m.label_of(proto) == label); // exact prototype

    CHECK(m.label_of(AffectVector{0, 0, 0}) == m.neutral_label);

    // midpoint tie breaks to the lexicographically smaller label
    AffectModel tie;
    tie.prototypes = EmotionPrototypeTable();
    tie.prototypes.set(Atom::intern("alpha"), AffectVector{1, 0, 0});  // 0 deg
    tie.prototypes.set(Atom::intern("beta"), AffectVector{0, 1, 0});   // 90 deg
    AffectVector mid{std::sqrt(0.5), std::sqrt(0.5), 0.0};             // 45 deg
    CHECK(angle_distance(mid.angle(), AffectVector{1, 0, 0}.angle()) ==
          doctest::Approx(angle_distance(mid.angle(), AffectVector{0, 1, 0}.angle())));
    CHECK(tie.label_of(mid) == Atom::intern("alpha"));
}

TEST_CASE("label_probability") {
    AffectModel m;
    m.prototypes = EmotionPrototypeTable();
    m.prototypes.set(Atom::intern("c"), AffectVector{1, 0, 0});
    m.prototypes.set(Atom::intern("far"), AffectVector{-1, 0, 0});
    // aligned with c, the only positive cosine
    CHECK(m.label_probability(AffectVector{0.5, 0, 0}, Atom::intern("c")) == doctest::Approx(1.0));

    m.prototypes.set(Atom::intern("up"), AffectVector{0, 1, 0});
    // orthogonal to c while another label is aligned
    CHECK(m.label_probability(AffectVector{0, 0.7, 0}, Atom::intern("c")) == doctest::Approx(0.0));

    // two prototypes at +-45 degrees normalize to one half each
    AffectModel pair;
    pair.prototypes = EmotionPrototypeTable();
    pair.prototypes.set(Atom::intern("a"), AffectVector{1, 0, 0});
    pair.prototypes.set(Atom::intern("b"), AffectVector{0, 1, 0});
    AffectVector mid{std::sqrt(0.5), std::sqrt(0.5), 0.0};
    CHECK(pair.label_probability(mid, Atom::intern("a")) == doctest::Approx(0.5));
    CHECK(pair.label_probability(mid, Atom::intern("b")) == doctest::Approx(0.5));
}

TEST_CASE("label_of attains the maximum label probability") {
    AffectModel m;
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> comp(-1.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        AffectVector v{comp(rng), comp(rng), comp(rng)};
        if (v.planar_zero()) continue;
        Atom best = m.label_of(v);
        double best_p = m.label_probability(v, best);
        for (const auto& [label, proto] : m.prototypes.entries())
            CHECK(m.label_probability(v, label) <= best_p + 1e-12);
    }
}

TEST_CASE("intensity homogeneity and angle invariance under scaling") {
    AffectModel m;
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> comp(-1.0, 1.0);
    std::uniform_real_distribution<double> scale(0.05, 1.0);
    for (int i = 0; i < 300; ++i) {
        AffectVector v{comp(rng), comp(rng), comp(rng)};
        if (v.planar_zero()) continue;
        double k = scale(rng);
        AffectVector kv = k * v;
        CHECK(kv.intensity() == doctest::Approx(k * v.intensity()).epsilon(1e-9));
        CHECK(kv.angle() == doctest::Approx(v.angle()).epsilon(1e-9));
        CHECK(m.label_of(kv) == m.label_of(v));
    }
}

TEST_CASE("clamping is idempotent and bounds every component") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> wide(-3.0, 3.0);
    for (int i = 0; i < 300; ++i) {
        AffectVector v{wide(rng), wide(rng), wide(rng)};
        AffectVector once = v.clamped();
        for (size_t c = 0; c < once.size(); ++c) {
            CHECK(once[c] >= -1.0);
            CHECK(once[c] <= 1.0);
        }
        CHECK(once.clamped() == once);
    }
}

TEST_CASE("decay formula, fixed point, one-step convergence") {
    AffectVector mood{0.5, 0, 0};
    AffectVector eq{0, 0, 0};
    CHECK(decay(mood, eq, 0.1) == AffectVector{0.45, 0, 0});
    CHECK(decay(eq, eq, 0.3) == eq);
    AffectVector anywhere{0.7, -0.2, 0.4};
    CHECK(decay(anywhere, eq, 1.0) == eq);
}

TEST_CASE("decay converges monotonically") {
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> comp(-1.0, 1.0);
    std::uniform_real_distribution<double> rate_dist(0.01, 1.0);
    for (int i = 0; i < 200; ++i) {
        AffectVector mood{comp(rng), comp(rng), comp(rng)};
        AffectVector eq{comp(rng), comp(rng), comp(rng)};
        double rate = rate_dist(rng);
        double dist = (mood - eq).magnitude();
        for (int step = 0; step < 200 && dist > 1e-9; ++step) {
            mood = decay(mood, eq, rate);
            double next = (mood - eq).magnitude();
            CHECK(next <= dist + 1e-12);
            dist = next;
        }
    }
}

TEST_CASE("prototype table file format") {
    std::istringstream in("# comment\njoy 0.4 0.2 0.1\nsadness -0.4 -0.2 -0.5\n");
    auto table = EmotionPrototypeTable::parse(in, "inline");
    REQUIRE(table.find(Atom::intern("joy")));
    CHECK((*table.find(Atom::intern("joy")))[0] == doctest::Approx(0.4));
    REQUIRE(table.find(Atom::intern("sadness")));

    std::istringstream bad("joy 0.4 0.2\n");
    CHECK_THROWS_AS(EmotionPrototypeTable::parse(bad, "inline"), parse_error);
    std::istringstream oob("joy 1.4 0.2 0.0\n");
    CHECK_THROWS_AS(EmotionPrototypeTable::parse(oob, "inline"), parse_error);
}
