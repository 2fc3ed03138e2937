#include <catch_amalgamated.hpp>

#include "../support/random_poly.hpp"
#include "thoma/poly_core/format.hpp"
#include "thoma/poly_core/natural.hpp"

using namespace thoma;

namespace {
const Coeff theta = Coeff::param(Param::theta);
const Coeff s1 = Coeff::param(Param::s1);
}  // namespace

TEST_CASE("coefficient ring arithmetic", "[coeff]") {
  const Coeff c = Coeff(2L) - theta * Coeff(2L) + s1;
  CHECK(c.size() == 3);
  CHECK((c - c).is_zero());
  CHECK(theta * Coeff::param(Param::theta, -1) == Coeff(1L));
  CHECK((c * Coeff(mpq_class(1, 2))).constant_term() == 1);
  CHECK(theta.inverse() == Coeff::param(Param::theta, -1));
  CHECK_THROWS_AS(s1.inverse(), Error);
}

TEST_CASE("coefficient substitution and specialisation", "[coeff]") {
  const Coeff c = Coeff::param(Param::theta, -1) * Coeff::param(Param::s2) + s1 * Coeff(3L);
  const Coeff sub = c.substitute(Param::s2, Coeff::param(Param::tau) * theta).substitute(Param::s1, -Coeff::param(Param::a));
  CHECK(sub == Coeff::param(Param::tau) - Coeff::param(Param::a) * Coeff(3L));
  CHECK(sub.theta_to_zero() == sub);
  CHECK_THROWS_AS(c.theta_to_zero(), Error);
  CHECK((theta * theta + Coeff(5L)).theta_to_zero() == Coeff(5L));
  const Coeff bound = c.substitute(Param::theta, Coeff(mpq_class(1, 2)));
  CHECK(bound == Coeff::param(Param::s2) * Coeff(2L) + s1 * Coeff(3L));
  CHECK(c.evaluate({2.0, 1.0, 4.0, 0, 0}) == Catch::Approx(5.0));
}

TEST_CASE("coefficient text form", "[coeff]") {
  CHECK((Coeff(2L) - theta * Coeff(2L) + s1).str() == "2 - 2*theta + s1");
  CHECK((Coeff::param(Param::theta, -1) * Coeff::param(Param::s2)).str() == "theta^-1*s2");
  CHECK(Coeff(mpq_class(-3, 4)).str() == "-3/4");
}

TEST_CASE("polynomial arithmetic and derivatives", "[poly]") {
  const MomentPoly q1 = moment_q(1), q2 = moment_q(2);
  CHECK(moment_q(0) == MomentPoly::constant({}, Coeff(1L)));
  const MomentPoly p = q1 * q1 * q2 + q2 * theta;
  CHECK(p.grading() == 7);
  CHECK(MomentPoly{}.grading() == std::nullopt);
  CHECK(p.derivative(Gen::q(1)) == q1 * q2 * Coeff(2L));
  CHECK(p.derivative(Gen::q(2)) == q1 * q1 + MomentPoly::constant({}, theta));
  CHECK(p.derivative(Gen::q(5)).is_zero());
  CHECK((p - p).is_zero());
  CHECK(q1.pow(3) == q1 * q1 * q1);
}

TEST_CASE("family errors", "[poly]") {
  const ExtPoly a = ext_qs({1, 0}, 1), b = ext_qs({0, 1}, 1);
  CHECK_THROWS_AS(a + b, Error);
  try {
    (void)(a * b);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::level_mismatch);
  }
  CHECK_THROWS_AS(ext_x({1, 0}, -1), Error);
  CHECK_THROWS_AS(nat_x({2, 0}, 3), Error);
  CHECK_THROWS_AS(moment_q(1).derivative(Gen::x(1)), Error);
}

TEST_CASE("canonical printing", "[format]") {
  const MomentPoly p = moment_q(1) * (Coeff(6L) - theta * Coeff(6L) + s1 * Coeff(3L)) + MomentPoly::constant({}, theta * Coeff(3L));
  CHECK(to_string(p) == "3*(2 - 2*theta + s1)*q1 + 3*theta");
  CHECK(to_string(MomentPoly{}) == "0");
  CHECK(to_string(ext_qs({1, 0}, 3) + ext_x({1, 0}, 1).pow(4)) == "qs3@1,0 + a1^4");
  CHECK(to_string(-nat_x({1, 1}, -1)) == "-b1");
}

TEST_CASE("moment substitution", "[natural]") {
  const Truncation t{1, 1};
  const NatPoly a1 = nat_x(t, 1), b1 = nat_x(t, -1);
  CHECK(substitute_moments(moment_q(1), t) == a1 * a1 - b1 * b1 * theta);
  CHECK(substitute_moments(moment_q(2), t) == a1.pow(3) + b1.pow(3) * theta * theta);
  CHECK(substitute_moments(MomentPoly::constant({}, Coeff(4L)), t) == NatPoly::constant({t}, Coeff(4L)));
}

TEST_CASE("simplex reduction", "[natural]") {
  const Truncation t{2, 1};
  const NatPoly sum = coordinate_sum(t);
  const NatPoly one = NatPoly::constant({t}, Coeff(1L));
  CHECK(reduce_mod_simplex(sum - one).is_zero());
  CHECK(reduce_mod_simplex(nat_x(t, 2)) == one - nat_x(t, 1) - nat_x(t, -1));
  CHECK_THROWS_AS(reduce_mod_simplex(NatPoly(NatFamily{Truncation{0, 0}})), Error);
  // with no positive coordinates the last negative one is eliminated
  const Truncation tb{0, 2};
  CHECK(reduce_mod_simplex(coordinate_sum(tb) - NatPoly::constant({tb}, Coeff(1L))).is_zero());
}

TEST_CASE("ring axioms on random polynomials", "[poly][property]") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto a = testing::random_moment_poly(rng), b = testing::random_moment_poly(rng),
               c = testing::random_moment_poly(rng);
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    const Gen g = Gen::q(1 + i % 4);
    CHECK((a * b).derivative(g) == a.derivative(g) * b + a * b.derivative(g));
  }
}

TEST_CASE("simplex reduction is a normal form", "[natural][property]") {
  std::mt19937_64 rng(5);
  const Truncation t{3, 2};
  const NatPoly ideal = coordinate_sum(t) - NatPoly::constant({t}, Coeff(1L));
  for (int i = 0; i < 40; ++i) {
    const auto f = testing::random_nat_poly(rng, t), g = testing::random_nat_poly(rng, t);
    CHECK(reduce_mod_simplex(f * ideal).is_zero());
    const NatPoly r = reduce_mod_simplex(f + g * ideal);
    CHECK(r == reduce_mod_simplex(f));
    CHECK(reduce_mod_simplex(r) == r);
    for (const auto& [m, c] : r.terms()) CHECK(m.exponent(Gen::x(3)) == 0);
  }
}

TEST_CASE("moment substitution is a ring homomorphism", "[natural][property]") {
  std::mt19937_64 rng(9);
  const Truncation t{2, 2};
  for (int i = 0; i < 30; ++i) {
    const auto a = testing::random_moment_poly(rng, 3, 2, 2), b = testing::random_moment_poly(rng, 3, 2, 2);
    CHECK(substitute_moments(a * b, t) == substitute_moments(a, t) * substitute_moments(b, t));
  }
}
