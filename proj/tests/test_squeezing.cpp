#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "spinsqueeze/closed_forms.hpp"
#include "spinsqueeze/coherent_states.hpp"
#include "spinsqueeze/squeezing.hpp"

using namespace spinsqueeze;

namespace {

constexpr double kPi = std::numbers::pi;

StateVector random_state(const SpinSpace& space, std::mt19937_64& gen) {
  Vector a(space.dim());
  for (int n = 0; n < space.dim(); ++n) {
    const double u1 = 1.0 - (gen() >> 11) * 0x1.0p-53;
    const double u2 = (gen() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    a[n] = Complex(r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2));
  }
  return StateVector::normalized(space, std::move(a));
}

}  // namespace

TEST_CASE("mean spin") {
  SECTION("ground state points down") {
    for (int two_j : {1, 2, 10}) {
      const SpinSpace space(two_j);
      const Eigen::Vector3d m = mean_spin(StateVector::basis(space, 0));
      CHECK(std::abs(m.x()) <= 1e-14);
      CHECK(std::abs(m.y()) <= 1e-14);
      CHECK(m.z() == Catch::Approx(-space.j()).margin(1e-12));
    }
  }
  SECTION("reference parameters j=5, eta=0.1") {
    const Eigen::Vector3d m = mean_spin(scs(CoherentParams{make_space(10), Complex(0.1, 0.0)}));
    // 2j eta / (1+eta^2) and j (eta^2-1)/(1+eta^2)
    CHECK(m.x() == Catch::Approx(10.0 * 0.1 / 1.01).margin(1e-12));
    CHECK(std::abs(m.y()) <= 1e-12);
    CHECK(m.z() == Catch::Approx(5.0 * (0.01 - 1.0) / 1.01).margin(1e-12));
  }
  SECTION("eta = 1 points along +x") {
    for (int two_j : {1, 7}) {
      const SpinSpace space(two_j);
      const Eigen::Vector3d m = mean_spin(scs(CoherentParams{space, Complex(1.0, 0.0)}));
      CHECK(m.x() == Catch::Approx(space.j()).margin(1e-12));
      CHECK(std::abs(m.y()) <= 1e-12);
      CHECK(std::abs(m.z()) <= 1e-12);
    }
  }
}

TEST_CASE("orthogonal triad") {
  SECTION("canonical axes for n1 = z") {
    const auto [n2, n3] = orthogonal_triad(Direction::z_axis());
    CHECK(n2.x() == Catch::Approx(1.0).margin(1e-15));
    CHECK(std::abs(n2.y()) <= 1e-15);
    CHECK(std::abs(n2.z()) <= 1e-15);
    CHECK(std::abs(n3.x()) <= 1e-15);
    CHECK(n3.y() == Catch::Approx(1.0).margin(1e-15));
    CHECK(std::abs(n3.z()) <= 1e-15);
  }
  SECTION("orthonormal and right-handed for assorted n1") {
    const std::array<Direction, 4> dirs{
        Direction::x_axis(), Direction::normalized(1.0, 1.0, 1.0),
        Direction::normalized(-0.2, 0.9, 0.1), Direction::normalized(0.0, -1.0, 1e-7)};
    for (const Direction& n1 : dirs) {
      const auto [n2, n3] = orthogonal_triad(n1);
      CHECK(std::abs(n1.vec().dot(n2.vec())) <= 1e-12);
      CHECK(std::abs(n1.vec().dot(n3.vec())) <= 1e-12);
      CHECK(std::abs(n2.vec().dot(n3.vec())) <= 1e-12);
      CHECK((n2.vec().cross(n3.vec()) - n1.vec()).norm() <= 1e-12);
    }
  }
}

TEST_CASE("squeezing parameter") {
  SECTION("scs has xi^2 = 1 along z for any eta != 0") {
    for (int two_j : {1, 5, 10, 20}) {
      const SpinSpace space(two_j);
      for (const Complex eta : {Complex(0.3, 0.0), Complex(0.2, -0.7), Complex(1.0, 1.0)}) {
        const SqueezingReport report =
            squeezing_parameter(scs(CoherentParams{space, eta}), Direction::z_axis());
        CHECK(std::abs(report.xi2 - 1.0) <= 1e-10);
      }
    }
  }
  SECTION("ground state along z is undefined") {
    CHECK_THROWS_AS(
        squeezing_parameter(StateVector::basis(make_space(6), 0), Direction::z_axis()),
        undefined_direction_error);
  }
  SECTION("ground state along x gives exactly 1") {
    const SpinSpace space(6);
    const SqueezingReport report =
        squeezing_parameter(StateVector::basis(space, 0), Direction::x_axis());
    CHECK(report.xi2 == Catch::Approx(1.0).margin(1e-12));
    CHECK(report.variance_n1 == Catch::Approx(space.j() / 2.0).margin(1e-12));
    CHECK(report.denominator == Catch::Approx(space.j() * space.j()).margin(1e-12));
  }
  SECTION("report invariants on random states") {
    std::mt19937_64 gen(99);
    for (int i = 0; i < 20; ++i) {
      const SpinSpace space(2 + int((gen() >> 11) * 0x1.0p-53 * 15));
      const StateVector psi = random_state(space, gen);
      const Direction n1 = Direction::normalized(0.3, -0.5, 0.81);
      SqueezingReport report{n1};
      try {
        report = squeezing_parameter(psi, n1);
      } catch (const undefined_direction_error&) {
        continue;
      }
      CHECK(report.xi2 ==
            Catch::Approx(space.two_j() * report.variance_n1 / report.denominator));
      const double triad_free =
          report.mean_spin.squaredNorm() - std::pow(n1.vec().dot(report.mean_spin), 2);
      CHECK(std::abs(report.denominator - triad_free) <= 1e-10);
    }
  }
  SECTION("explicit triads must be orthogonal") {
    const SpinSpace space(4);
    const StateVector psi = scs(CoherentParams{space, Complex(0.4, 0.0)});
    CHECK_THROWS_AS(squeezing_parameter(psi, Direction::z_axis(), Direction::z_axis(),
                                        Direction::y_axis(), cartesian_components(space)),
                    std::invalid_argument);
  }
}

TEST_CASE("triad invariance of xi^2") {
  std::mt19937_64 gen(7);
  const SpinSpace space(9);
  const CartesianOperators ops = cartesian_components(space);
  for (int i = 0; i < 10; ++i) {
    const StateVector psi = random_state(space, gen);
    const Direction n1 = Direction::normalized(0.2, 0.1, -0.97);
    const auto [n2, n3] = orthogonal_triad(n1);
    const double angle = (gen() >> 11) * 0x1.0p-53 * 2.0 * kPi;
    const Eigen::Vector3d r2 = std::cos(angle) * n2.vec() + std::sin(angle) * n3.vec();
    const Eigen::Vector3d r3 = -std::sin(angle) * n2.vec() + std::cos(angle) * n3.vec();
    try {
      const double base = squeezing_parameter(psi, n1, n2, n3, ops).xi2;
      const double rotated =
          squeezing_parameter(psi, n1, Direction::normalized(r2.x(), r2.y(), r2.z()),
                              Direction::normalized(r3.x(), r3.y(), r3.z()), ops)
              .xi2;
      CHECK(std::abs(base - rotated) / std::max(1.0, std::abs(base)) <= 1e-10);
    } catch (const undefined_direction_error&) {
    }
  }
}

TEST_CASE("squeezing along x, y, z") {
  const SpinSpace space(10);
  SECTION("scs is not squeezed in any of the three directions") {
    const AxisReports reports = squeezing_xyz(scs(CoherentParams{space, Complex(0.1, 0.0)}));
    REQUIRE(reports.x.has_value());
    REQUIRE(reports.y.has_value());
    REQUIRE(reports.z.has_value());
    CHECK(std::abs(reports.x->xi2 - 1.0) <= 1e-10);
    CHECK(std::abs(reports.y->xi2 - 1.0) <= 1e-10);
    CHECK(std::abs(reports.z->xi2 - 1.0) <= 1e-10);
  }
  SECTION("one undefined axis does not suppress the others") {
    // eta = 1: mean spin along +x, so the x denominator vanishes
    const AxisReports reports = squeezing_xyz(scs(CoherentParams{space, Complex(1.0, 0.0)}));
    CHECK_FALSE(reports.x.has_value());
    REQUIRE(reports.y.has_value());
    REQUIRE(reports.z.has_value());
    CHECK(std::abs(reports.y->xi2 - 1.0) <= 1e-10);
    CHECK(std::abs(reports.z->xi2 - 1.0) <= 1e-10);
  }
  SECTION("small-t evolution under N^2 squeezes x, not y") {
    const NonlinearFunction F = NonlinearFunction::parse("N^2");
    const StateVector psi =
        nonlinear_scs(EvolvedParams{CoherentParams{space, Complex(0.1, 0.0)}, F, 0.005});
    const AxisReports reports = squeezing_xyz(psi);
    REQUIRE(reports.x.has_value());
    REQUIRE(reports.y.has_value());
    CHECK(reports.x->xi2 < 1.0);
    CHECK(reports.y->xi2 > 1.0);
  }
  SECTION("small-t evolution under sin(2N) squeezes y, not x") {
    const NonlinearFunction F = NonlinearFunction::parse("sin(2*N)");
    const StateVector psi =
        nonlinear_scs(EvolvedParams{CoherentParams{space, Complex(0.1, 0.0)}, F, 0.005});
    const AxisReports reports = squeezing_xyz(psi);
    REQUIRE(reports.x.has_value());
    REQUIRE(reports.y.has_value());
    CHECK(reports.y->xi2 < 1.0);
    CHECK(reports.x->xi2 > 1.0);
  }
}

TEST_CASE("the z report agrees with the number-operator form") {
  // xi_z^2 = 2j (Delta N)^2 / |<J->|^2, since Delta N = Delta Jz and
  // |<J->|^2 = <Jx>^2 + <Jy>^2
  const SpinSpace space(10);
  const NonlinearFunction F = NonlinearFunction::parse("N^2");
  const Matrix jm = ladder_lowering(space).entries();
  const Operator number = number_operator(space);
  for (double t : {0.0, 0.3, 1.4}) {
    for (const Complex eta : {Complex(0.1, 0.0), Complex(0.4, 0.3)}) {
      const StateVector psi = nonlinear_scs(EvolvedParams{CoherentParams{space, eta}, F, t});
      const SqueezingReport report = squeezing_parameter(psi, Direction::z_axis());
      const Complex jminus = psi.amplitudes().dot(jm * psi.amplitudes());
      const double alt = space.two_j() * variance(number, psi) / std::norm(jminus);
      CHECK(std::abs(report.xi2 - alt) <= 1e-10);
    }
  }
}

TEST_CASE("pure functions are safe to share across threads") {
  // sweep-style workload from four threads over the same immutable inputs;
  // every thread must see identical values
  const SpinSpace space(10);
  const CartesianOperators ops = cartesian_components(space);
  const NonlinearFunction F = NonlinearFunction::parse("sin(2*N)");
  const Complex eta(0.1, 0.0);

  auto compute = [&] {
    std::vector<double> values;
    for (int i = 0; i < 50; ++i) {
      const double t = 0.01 * i;
      const StateVector psi = nonlinear_scs(EvolvedParams{CoherentParams{space, eta}, F, t});
      values.push_back(squeezing_parameter(psi, Direction::z_axis(), ops).xi2);
      values.push_back(nlscs_xi_z(space.two_j(), eta, F, t));
    }
    return values;
  };

  std::array<std::vector<double>, 4> results;
  {
    std::array<std::thread, 4> workers;
    for (std::size_t w = 0; w < workers.size(); ++w) {
      workers[w] = std::thread([&, w] { results[w] = compute(); });
    }
    for (std::thread& worker : workers) worker.join();
  }
  for (std::size_t w = 1; w < results.size(); ++w) CHECK(results[w] == results[0]);
}

TEST_CASE("variances decompose through the ladder identities") {
  // <Jx^2> = (2j(2N+1) - 2N^2 + J+^2 + J-^2)/4 and the J_y analogue
  std::mt19937_64 gen(1234);
  for (int two_j : {2, 9, 16}) {
    const SpinSpace space(two_j);
    const CartesianOperators ops = cartesian_components(space);
    const Matrix jm2 = ladder_lowering(space).entries() * ladder_lowering(space).entries();
    const Operator number = number_operator(space);
    for (int i = 0; i < 5; ++i) {
      const StateVector psi = random_state(space, gen);
      const double mean_n = expectation(number, psi).real();
      const double mean_n2 = (number.entries() * psi.amplitudes()).squaredNorm();
      const Complex jm2_mean = psi.amplitudes().dot(jm2 * psi.amplitudes());
      const double plus_terms = 2.0 * jm2_mean.real();  // <J+^2> + <J-^2> = 2 Re <J-^2>
      const double jx2 = (psi.amplitudes().dot(ops.jx.entries() * ops.jx.entries() *
                                               psi.amplitudes()))
                             .real();
      const double jy2 = (psi.amplitudes().dot(ops.jy.entries() * ops.jy.entries() *
                                               psi.amplitudes()))
                             .real();
      const double base = two_j * (2.0 * mean_n + 1.0) - 2.0 * mean_n2;
      CHECK(std::abs(jx2 - 0.25 * (base + plus_terms)) <= 1e-10);
      CHECK(std::abs(jy2 - 0.25 * (base - plus_terms)) <= 1e-10);
    }
  }
}
