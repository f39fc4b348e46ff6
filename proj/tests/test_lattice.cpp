#include "kmsbound/lattice.hpp"

#include <random>
#include <sstream>

#include "doctest.h"

using namespace kmsbound;

namespace {

const char* kTfIsing = R"(dim 1 range 1
param g 1.0
term -1 Z0 Z1
term -1*g X0
)";

InteractionSpec tf_ising(double g) {
  std::istringstream in("dim 1 range 1\nparam g " + std::to_string(g) +
                        "\nterm -1 Z0 Z1\nterm -1*g X0\n");
  return InteractionSpec::parse(in, "tfising");
}

InteractionSpec classical_ising() {
  std::istringstream in("dim 1 range 1\nterm -1 Z0 Z1\n");
  return InteractionSpec::parse(in, "ising");
}

InteractionSpec ising2d(double g) {
  std::istringstream in("dim 2 range 1\nparam g " + std::to_string(g) +
                        "\nterm -1 Z0,0 Z1,0\nterm -1 Z0,0 Z0,1\nterm -1*g X0,0\n");
  return InteractionSpec::parse(in, "ising2d");
}

PauliOperator P(const std::string& text) { return PauliOperator::parse(text); }

double dist(const PauliOperator& a, const PauliOperator& b) { return (a - b).norm1(); }

}  // namespace

TEST_CASE("model file parsing") {
  std::istringstream in(kTfIsing);
  InteractionSpec spec = InteractionSpec::parse(in, "tfising");
  CHECK(spec.dimension() == 1);
  CHECK(spec.range() == 1);
  CHECK(spec.terms().size() == 2);
  CHECK(spec.parameters().at("g") == 1.0);

  std::istringstream bad("dim 1 range 1\nterm -1*h X0\n");
  CHECK_THROWS_WITH_AS(InteractionSpec::parse(bad, "m"),
                       "m:2: unknown parameter 'h'", std::runtime_error);

  std::istringstream bad2("dim 1 range 1\nterm oops X0\n");
  CHECK_THROWS_AS(InteractionSpec::parse(bad2, "m"), std::runtime_error);

  std::istringstream bad3("term -1 X0\n");
  CHECK_THROWS_AS(InteractionSpec::parse(bad3, "m"), std::runtime_error);

  std::istringstream far("dim 1 range 1\nterm -1 Z0 Z2\n");
  CHECK_THROWS_AS(InteractionSpec::parse(far, "m"), std::runtime_error);
}

TEST_CASE("windows") {
  Window w = Window::box(1, 2);
  CHECK(w.size() == 5);
  CHECK(w.contains({-2}));
  CHECK(!w.contains({3}));
  CHECK(w.describe() == "{-2..2}");

  Window b2 = Window::box(2, 1);
  CHECK(b2.size() == 9);
  CHECK(b2.shrunk(1).size() == 1);
  CHECK(Window::segment(0, 3).size() == 4);
  CHECK(Window::box(1, 2).shrunk(1) == Window::box(1, 1));
}

TEST_CASE("windowed Hamiltonians for the transverse-field Ising chain") {
  InteractionSpec spec = tf_ising(0.7);

  PauliOperator hw = hamiltonian_in(spec, Window::segment(0, 1));
  CHECK(dist(hw, P("(-1,0) Z0 Z1 + (-0.7,0) X0 + (-0.7,0) X1")) < 1e-12);

  PauliOperator ht = hamiltonian_touching(spec, Window::segment(0, 0));
  CHECK(dist(ht, P("(-1,0) Z-1 Z0 + (-1,0) Z0 Z1 + (-0.7,0) X0")) < 1e-12);

  // singleton window keeps only the field term
  CHECK(dist(hamiltonian_in(spec, Window::segment(0, 0)), P("(-0.7,0) X0")) < 1e-12);

  // a window too small for any term
  std::istringstream in("dim 1 range 1\nterm -1 Z0 Z1\n");
  InteractionSpec pairs_only = InteractionSpec::parse(in, "m");
  CHECK(hamiltonian_in(pairs_only, Window::segment(0, 0)).is_zero());

  // spec with only single-site terms: touching == in
  std::istringstream in2("dim 1 range 0\nterm 0.5 X0\n");
  InteractionSpec fields = InteractionSpec::parse(in2, "m");
  Window w = Window::segment(-1, 1);
  CHECK(dist(hamiltonian_touching(fields, w), hamiltonian_in(fields, w)) < 1e-12);
  CHECK(boundary_extension(fields, w) == w);
}

TEST_CASE("boundary extension") {
  InteractionSpec spec = tf_ising(1.0);
  CHECK(boundary_extension(spec, Window::box(1, 1)) == Window::box(1, 2));

  InteractionSpec spec2d = ising2d(1.0);
  Window plus = boundary_extension(spec2d, Window(std::vector<Coord>{{0, 0}}));
  CHECK(plus.size() == 5);
  CHECK(plus.contains({1, 0}));
  CHECK(plus.contains({-1, 0}));
  CHECK(plus.contains({0, 1}));
  CHECK(plus.contains({0, -1}));
}

TEST_CASE("2D touching Hamiltonian matches brute-force enumeration") {
  InteractionSpec spec = ising2d(0.5);
  Window w(std::vector<Coord>{{0, 0}});
  PauliOperator ht = hamiltonian_touching(spec, w);

  // brute force: translate every term over a generous box and keep those
  // whose support hits the window
  PauliOperator expected;
  for (const auto& term : spec.terms()) {
    for (int x = -3; x <= 3; ++x) {
      for (int y = -3; y <= 3; ++y) {
        PauliOperator t = translate(term, {x, y});
        bool touches = false;
        for (const auto& s : t.support()) touches = touches || w.contains(s);
        if (touches) expected += t;
      }
    }
  }
  CHECK(dist(ht, expected) < 1e-12);
  // 4 bonds + 1 field
  CHECK(ht.size() == 5);
}

TEST_CASE("commutator with the Hamiltonian") {
  InteractionSpec spec = tf_ising(0.7);

  PauliOperator cz = commutator_with_hamiltonian(spec, P("Z0"));
  CHECK(dist(cz, P("(0,1.4) Y0")) < 1e-12);

  // [H, X0] against a dense oracle on the 3-site window that supports it
  PauliOperator cx = commutator_with_hamiltonian(spec, P("X0"));
  std::vector<Coord> w3 = {{-1}, {0}, {1}};
  Eigen::MatrixXcd h3 = to_dense(hamiltonian_touching(spec, Window::segment(0, 0)), w3);
  Eigen::MatrixXcd x3 = to_dense(P("X0"), w3);
  Eigen::MatrixXcd expected = h3 * x3 - x3 * h3;
  CHECK((to_dense(cx, w3) - expected).norm() < 1e-12);
  CHECK(dist(cx, P("(0,-2) Z-1 Y0 + (0,-2) Y0 Z1")) < 1e-12);

  // a term of a commuting spec commutes with H
  InteractionSpec ising = classical_ising();
  CHECK(ising.is_commuting());
  CHECK(commutator_with_hamiltonian(ising, hamiltonian_in(ising, Window::segment(0, 3))).is_zero());
  CHECK(!tf_ising(0.5).is_commuting());
}

TEST_CASE("commutator with H is translation covariant") {
  InteractionSpec spec = tf_ising(1.3);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> coeff(-1, 1);
  for (int rep = 0; rep < 10; ++rep) {
    PauliOperator a = P("X0 Z1") * Complex(coeff(rng), coeff(rng)) +
                      P("Y0") * Complex(coeff(rng), 0) + P("Z0 Z1") * Complex(0, coeff(rng));
    Coord x{int(rng() % 9) - 4};
    CHECK(dist(commutator_with_hamiltonian(spec, translate(a, x)),
               translate(commutator_with_hamiltonian(spec, a), x)) < 1e-12);
  }
}

TEST_CASE("surface term") {
  InteractionSpec spec = tf_ising(0.9);
  Window w = Window::segment(-1, 1);
  PauliOperator surf = surface_term(spec, w);
  CHECK(dist(surf, P("(-1,0) Z-2 Z-1 + (-1,0) Z1 Z2")) < 1e-12);
  // supported on the extension and intersecting the complement
  Window ext = boundary_extension(spec, w);
  CHECK(ext.contains_all(surf.support()));
  bool outside = false;
  for (const auto& s : surf.support()) outside = outside || !w.contains(s);
  CHECK(outside);
}
