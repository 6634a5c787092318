#include <doctest.h>

#include "conslaw/schemes.hpp"
#include "test_util.hpp"

using namespace conslaw;
using namespace conslaw::stencil;

TEST_SUITE_BEGIN("schemes");

TEST_CASE("registry knows exactly the four schemes") {
  CHECK(scheme_names() ==
        std::vector<std::string>{"LinearCross", "NonlinearDiv2",
                                 "NonlinearNine3", "NonlinearCross1"});
  CHECK_THROWS_AS(get_scheme("Unknown"), Error);
}

TEST_CASE("residual forms") {
  // the linear residual is exactly the divergence D-tau(U_t) - D-h(U_x)
  const Scheme& lin = get_scheme("LinearCross");
  CHECK(lin.residual ==
        diff_op(ut(), Dir::MinusTau) - diff_op(ux(), Dir::MinusH));
  CHECK(lin.residual == utt() - uxx());

  const Scheme& nl1 = get_scheme("NonlinearCross1");
  CHECK(nl1.residual ==
        utt() - uxx() -
            (ux() * ux() + uxb() * uxb()) * Rational(1, 2) * uxx());

  const Scheme& nl3 = get_scheme("NonlinearNine3");
  CHECK(nl3.residual ==
        utt() - uxx() -
            Rational(1, 6) *
                diff_op(ux() * ux() * (uhx() + ucx()), Dir::MinusH));
  CHECK(nl3.stepper == StepperKind::ImplicitTridiagonal);

  // triple counts per scheme: 6, 2, 3, 1
  CHECK(lin.triples.size() == 6);
  CHECK(get_scheme("NonlinearDiv2").triples.size() == 2);
  CHECK(nl3.triples.size() == 3);
  CHECK(nl1.triples.size() == 1);
}

TEST_CASE("all registered triples certify") {
  for (const auto& name : scheme_names()) {
    const Scheme& s = get_scheme(name);
    for (const auto& c : verify_conservation_identity(s)) {
      CHECK_MESSAGE(c.identity_ok, name, "/", c.label);
      CHECK_MESSAGE(c.multiplier_ok, name, "/", c.label);
      CHECK_MESSAGE(c.limit_ok, name, "/", c.label);
      CHECK(c.passed());
    }
  }
}

TEST_CASE("multiplier condition checked independently of the pair") {
  for (const auto& name : scheme_names()) {
    const Scheme& s = get_scheme(name);
    for (const auto& tr : s.triples)
      CHECK(euler_op(tr.multiplier * s.residual).is_zero());
  }
}

TEST_CASE("synthetic divergence scheme passes by construction") {
  testutil::RandomPolyGen gen(5656);
  for (int trial = 0; trial < 5; ++trial) {
    Scheme synth;
    synth.id = SchemeId::LinearCross;
    synth.name = "synthetic";
    const Poly theta = gen(), phi = gen();
    synth.residual = diff_op(theta, Dir::MinusTau, 4) +
                     diff_op(phi, Dir::MinusH, 4);
    synth.nonlinear = false;
    synth.triples.push_back({"unit", Poly(Rational(1)), theta, phi,
                             Poly(Rational(1))});
    const auto checks = verify_conservation_identity(synth, 4);
    CHECK(checks[0].identity_ok);
    CHECK(checks[0].multiplier_ok);
  }
}

TEST_CASE("a wrong density is distinguished from a wrong multiplier") {
  const Scheme& lin = get_scheme("LinearCross");
  Scheme broken = lin;
  broken.triples.resize(1);
  broken.triples[0].density += U(0, 0) * U(0, 0);  // typo in the density
  const auto checks = verify_conservation_identity(broken);
  CHECK_FALSE(checks[0].identity_ok);
  CHECK(checks[0].multiplier_ok);  // the multiplier is still valid
  CHECK(checks[0].reconstructed);  // and a certificate was rebuilt
  REQUIRE(checks[0].reconstruction.has_value());
  const auto& [th, ph] = *checks[0].reconstruction;
  CHECK(diff_op(th, Dir::MinusTau) + diff_op(ph, Dir::MinusH) ==
        broken.triples[0].multiplier * broken.residual);

  Scheme wrong = lin;
  wrong.triples.resize(1);
  wrong.triples[0].multiplier = U(0, 0);  // not a multiplier at all
  const auto checks2 = verify_conservation_identity(wrong);
  CHECK_FALSE(checks2[0].identity_ok);
  CHECK_FALSE(checks2[0].multiplier_ok);
  CHECK_FALSE(checks2[0].reconstructed);
}

TEST_CASE("symmetry reports") {
  for (const auto& name : scheme_names()) {
    const Scheme& s = get_scheme(name);
    const auto rep = check_symmetries(s);
    CHECK_MESSAGE(rep.all_ok(), name);
    CHECK(rep.note.find("Lorentz") != std::string::npos);
    // stretch_x only appears for the linear scheme
    bool has_stretch = false;
    for (const auto& c : rep.checks) has_stretch |= c.name == "stretch_x";
    CHECK(has_stretch == (s.id == SchemeId::LinearCross));
  }
}

TEST_CASE("gauge invariance fails for a translation-broken scheme") {
  Scheme broken = get_scheme("LinearCross");
  broken.residual += U(0, 0);  // mass term breaks the gauge shift
  const auto rep = check_symmetries(broken);
  bool gauge_ok = true, galilei_ok = true;
  for (const auto& c : rep.checks) {
    if (c.name == "gauge") gauge_ok = c.ok;
    if (c.name == "galilei") galilei_ok = c.ok;
  }
  CHECK_FALSE(gauge_ok);
  CHECK_FALSE(galilei_ok);
}

TEST_CASE("scaling weights") {
  CHECK(get_scheme("LinearCross").scale_exponent == -2);
  for (const char* n : {"NonlinearDiv2", "NonlinearNine3", "NonlinearCross1"})
    CHECK(get_scheme(n).scale_exponent == -1);
}

TEST_CASE("nonexistence: no boost-free scaling analog on the cross stencil") {
  // within the coordinate ansatz the only multipliers are 1, t, x, the two
  // difference quotients and the boost combination; x*u_x + t*u_t has no
  // preimage
  const Scheme& lin = get_scheme("LinearCross");
  const auto basis = find_multipliers(lin.residual, cross5_coordinate_ansatz());
  CHECK(basis.size() == 6);
  std::vector<Poly> limits;
  for (const auto& m : basis)
    limits.push_back(step_degree_zero_part(taylor_expand(m, 2)));
  const Poly t = Poly::var(Var::t());
  const Poly x = Poly::var(Var::x());
  CHECK(in_span(Poly(Rational(1)), limits));
  CHECK(in_span(t, limits));
  CHECK(in_span(x, limits));
  CHECK(in_span(jet(0, 1), limits));
  CHECK(in_span(jet(1, 0), limits));
  CHECK(in_span(t * jet(0, 1) + x * jet(1, 0), limits));
  CHECK_FALSE(in_span(x * jet(0, 1) + t * jet(1, 0), limits));
}

TEST_CASE("nonexistence: no u_x-limit multiplier for the nine-point scheme") {
  const Scheme& nine = get_scheme("NonlinearNine3");
  const auto basis = find_multipliers(nine.residual, nine_linear_ansatz());
  REQUIRE(basis.size() == 1);
  // the surviving direction is the symmetric time difference
  CHECK(proportional(basis[0], U(1, 0) - U(-1, 0)));
  // leading part ~ tau * u_t; in particular not proportional to h * u_x
  auto [deg, lead] = leading_step_part(taylor_expand(basis[0], 2));
  CHECK(deg == 1);
  CHECK(proportional(lead, Poly::var(Var::tau()) * jet(1, 0)));
  CHECK_FALSE(proportional(lead, Poly::var(Var::h()) * jet(0, 1)));
}

TEST_SUITE_END();
