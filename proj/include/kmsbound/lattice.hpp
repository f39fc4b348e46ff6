#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kmsbound/pauli.hpp"

namespace kmsbound {

/// A finite set of lattice sites, kept sorted. Windows are always explicit
/// site lists internally; boxes are just a convenient constructor.
class Window {
 public:
  Window() = default;
  explicit Window(std::vector<Coord> sites);

  /// {-ell..ell}^D
  static Window box(int dimension, int ell);
  /// 1D interval {lo..hi}
  static Window segment(int lo, int hi);

  const std::vector<Coord>& sites() const { return sites_; }
  std::size_t size() const { return sites_.size(); }
  bool empty() const { return sites_.empty(); }
  bool contains(const Coord& c) const;
  bool contains_all(const std::vector<Coord>& cs) const;
  int dimension() const;

  Window united(const Window& other) const;
  /// Sites of this window whose Chebyshev r-ball stays inside the window.
  Window shrunk(int r) const;

  std::string describe() const;

  bool operator==(const Window& other) const = default;

 private:
  std::vector<Coord> sites_;
};

/// Translation-invariant finite-range Hamiltonian H = sum_x tau_x(sum terms).
/// Terms are anchored near the origin and generated by translation on demand.
class InteractionSpec {
 public:
  InteractionSpec(int dimension, int range, std::vector<PauliOperator> terms);

  /// Parses the model file format:
  ///   dim D range r
  ///   param <name> <float>
  ///   term <coeff>[*<param>] <letter><coord> ...
  static InteractionSpec parse(std::istream& in, const std::string& filename = "<model>");
  static InteractionSpec load(const std::string& path);

  int dimension() const { return dimension_; }
  int range() const { return range_; }
  const std::vector<PauliOperator>& terms() const { return terms_; }
  const std::map<std::string, double>& parameters() const { return params_; }

  /// All pairs of translated terms within interaction distance commute.
  bool is_commuting() const;

 private:
  int dimension_;
  int range_;
  std::vector<PauliOperator> terms_;
  std::map<std::string, double> params_;
  mutable std::optional<bool> commuting_;
};

/// H_w: sum of translated terms entirely inside the window.
PauliOperator hamiltonian_in(const InteractionSpec& spec, const Window& w);

/// H~_w: sum of translated terms whose support intersects the window.
PauliOperator hamiltonian_touching(const InteractionSpec& spec, const Window& w);

/// Terms crossing the window boundary: hamiltonian_touching - hamiltonian_in.
PauliOperator surface_term(const InteractionSpec& spec, const Window& w);

/// w together with outside sites touched by terms intersecting w.
Window boundary_extension(const InteractionSpec& spec, const Window& w);

/// [H, a] for finitely supported a; equals [H~_supp(a), a].
PauliOperator commutator_with_hamiltonian(const InteractionSpec& spec, const PauliOperator& a);

}  // namespace kmsbound
