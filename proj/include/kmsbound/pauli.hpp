#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace kmsbound {

using Complex = std::complex<double>;

// Lattice coordinate in Z^D. The dimension is a runtime parameter; all
// coordinates appearing in one operator must have the same length.
using Coord = std::vector<int>;

enum class PauliLetter : std::uint8_t { X = 1, Y = 2, Z = 3 };

char letter_char(PauliLetter l);
PauliLetter letter_from_char(char c);

/// A tensor product of single-site Pauli matrices, identity factors omitted.
/// Factors are kept strictly sorted by coordinate; the empty string is the
/// identity operator. Pauli strings are Hermitian and square to the identity.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::vector<std::pair<Coord, PauliLetter>> factors);

  static PauliString single(const Coord& site, PauliLetter l);

  bool is_identity() const { return factors_.empty(); }
  std::size_t weight() const { return factors_.size(); }
  const std::vector<std::pair<Coord, PauliLetter>>& factors() const { return factors_; }

  std::vector<Coord> support() const;
  PauliString translated(const Coord& shift) const;

  /// Product of two Pauli strings is a third one times a power of i.
  /// Returns the string and the phase exponent k with lhs*rhs = i^k * result.
  static std::pair<PauliString, int> multiply(const PauliString& lhs, const PauliString& rhs);

  bool commutes_with(const PauliString& other) const;

  std::string label() const;  // e.g. "Z0 Z1", "I" for the identity

  auto operator<=>(const PauliString& other) const = default;

 private:
  std::vector<std::pair<Coord, PauliLetter>> factors_;
};

/// A complex linear combination of Pauli strings. Coefficients below the
/// drop tolerance are removed, so the zero operator has an empty term map.
class PauliOperator {
 public:
  static constexpr double kDropTol = 1e-14;

  PauliOperator() = default;
  PauliOperator(const PauliString& s, Complex c) { add(s, c); }

  static PauliOperator identity(Complex c = 1.0) { return PauliOperator(PauliString(), c); }
  static PauliOperator zero() { return PauliOperator(); }

  const std::map<PauliString, Complex>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const PauliString& s, Complex c);
  Complex coefficient(const PauliString& s) const;

  PauliOperator& operator+=(const PauliOperator& other);
  PauliOperator& operator-=(const PauliOperator& other);
  PauliOperator& operator*=(Complex c);

  std::vector<Coord> support() const;
  bool is_hermitian(double tol = 1e-12) const;
  double norm1() const;  // sum of |coefficients|

  std::string render() const;
  static PauliOperator parse(const std::string& text);

 private:
  std::map<PauliString, Complex> terms_;
};

PauliOperator operator+(PauliOperator a, const PauliOperator& b);
PauliOperator operator-(PauliOperator a, const PauliOperator& b);
PauliOperator operator*(Complex c, PauliOperator a);

PauliOperator multiply(const PauliOperator& lhs, const PauliOperator& rhs);
PauliOperator operator*(const PauliOperator& a, const PauliOperator& b);

/// ab - ba; zero whenever the supports are disjoint.
PauliOperator commutator(const PauliOperator& a, const PauliOperator& b);

/// Conjugates coefficients; Pauli strings themselves are self-adjoint.
PauliOperator adjoint(const PauliOperator& a);

PauliOperator translate(const PauliOperator& a, const Coord& shift);

/// Normalized trace pairing <a,b> = tr(a^dag b)/2^n. Pauli strings are an
/// orthonormal family, so this is sum over strings of conj(c_a) * c_b.
Complex hs_inner(const PauliOperator& a, const PauliOperator& b);

/// Kronecker-product matrix of the operator over the listed sites, first
/// site most significant. Throws if the support is not inside the window.
Eigen::MatrixXcd to_dense(const PauliOperator& a, const std::vector<Coord>& window);

/// Inverse of to_dense: expand a 2^n x 2^n matrix in the Pauli basis of the
/// listed sites. Coefficients below drop_tol are discarded.
PauliOperator pauli_decompose(const Eigen::MatrixXcd& m, const std::vector<Coord>& window,
                              double drop_tol = PauliOperator::kDropTol);

std::string coord_label(const Coord& c);
Coord parse_coord(const std::string& text);

}  // namespace kmsbound
