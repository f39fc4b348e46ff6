#include "kmsbound/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace kmsbound {

Window::Window(std::vector<Coord> sites) : sites_(std::move(sites)) {
  std::sort(sites_.begin(), sites_.end());
  sites_.erase(std::unique(sites_.begin(), sites_.end()), sites_.end());
  for (const auto& s : sites_) {
    if (s.size() != sites_.front().size()) {
      throw std::invalid_argument("window sites have mixed dimensions");
    }
  }
}

Window Window::box(int dimension, int ell) {
  if (dimension < 1 || ell < 0) throw std::invalid_argument("bad box parameters");
  std::vector<Coord> sites;
  Coord c(dimension, -ell);
  while (true) {
    sites.push_back(c);
    int d = dimension - 1;
    while (d >= 0) {
      if (c[d] < ell) {
        ++c[d];
        std::fill(c.begin() + d + 1, c.end(), -ell);
        break;
      }
      --d;
    }
    if (d < 0) break;
  }
  return Window(std::move(sites));
}

Window Window::segment(int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("empty segment");
  std::vector<Coord> sites;
  for (int x = lo; x <= hi; ++x) sites.push_back({x});
  return Window(std::move(sites));
}

bool Window::contains(const Coord& c) const {
  return std::binary_search(sites_.begin(), sites_.end(), c);
}

bool Window::contains_all(const std::vector<Coord>& cs) const {
  for (const auto& c : cs) {
    if (!contains(c)) return false;
  }
  return true;
}

int Window::dimension() const {
  if (sites_.empty()) throw std::logic_error("empty window has no dimension");
  return int(sites_.front().size());
}

Window Window::united(const Window& other) const {
  std::vector<Coord> sites = sites_;
  sites.insert(sites.end(), other.sites_.begin(), other.sites_.end());
  return Window(std::move(sites));
}

Window Window::shrunk(int r) const {
  if (r == 0) return *this;
  const int d = dimension();
  std::vector<Coord> kept;
  for (const auto& s : sites_) {
    Coord probe(d, 0);
    bool inside = true;
    std::vector<int> offset(d, -r);
    while (inside) {
      for (int k = 0; k < d; ++k) probe[k] = s[k] + offset[k];
      if (!contains(probe)) {
        inside = false;
        break;
      }
      int k = d - 1;
      while (k >= 0) {
        if (offset[k] < r) {
          ++offset[k];
          std::fill(offset.begin() + k + 1, offset.end(), -r);
          break;
        }
        --k;
      }
      if (k < 0) break;
    }
    if (inside) kept.push_back(s);
  }
  return Window(std::move(kept));
}

std::string Window::describe() const {
  // contiguous 1D windows get the compact {lo..hi} form
  if (!sites_.empty() && dimension() == 1) {
    int lo = sites_.front()[0], hi = sites_.back()[0];
    if (int(sites_.size()) == hi - lo + 1) {
      return "{" + std::to_string(lo) + ".." + std::to_string(hi) + "}";
    }
  }
  std::string out = "{";
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    if (i) out += ' ';
    out += coord_label(sites_[i]);
  }
  return out + "}";
}

InteractionSpec::InteractionSpec(int dimension, int range, std::vector<PauliOperator> terms)
    : dimension_(dimension), range_(range), terms_(std::move(terms)) {
  if (dimension_ < 1) throw std::invalid_argument("dimension must be positive");
  if (range_ < 0) throw std::invalid_argument("range must be nonnegative");
  for (const auto& t : terms_) {
    if (!t.is_hermitian()) throw std::invalid_argument("interaction term is not Hermitian");
    for (const auto& site : t.support()) {
      if (int(site.size()) != dimension_) {
        throw std::invalid_argument("term dimension does not match the lattice");
      }
      for (int x : site) {
        if (std::abs(x) > range_) {
          throw std::invalid_argument("term support escapes the declared range");
        }
      }
    }
  }
}

namespace {

double parse_coeff_expr(const std::string& expr, const std::map<std::string, double>& params,
                        const std::string& where) {
  std::size_t star = expr.find('*');
  try {
    if (star == std::string::npos) return std::stod(expr);
    double base = std::stod(expr.substr(0, star));
    std::string name = expr.substr(star + 1);
    auto it = params.find(name);
    if (it == params.end()) throw std::runtime_error(where + ": unknown parameter '" + name + "'");
    return base * it->second;
  } catch (const std::invalid_argument&) {
    throw std::runtime_error(where + ": bad coefficient '" + expr + "'");
  }
}

}  // namespace

InteractionSpec InteractionSpec::parse(std::istream& in, const std::string& filename) {
  int dimension = -1, range = -1;
  std::map<std::string, double> params;
  std::vector<PauliOperator> terms;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = filename + ":" + std::to_string(lineno);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head[0] == '#') continue;
    if (head == "dim") {
      std::string rangekw;
      if (!(ls >> dimension >> rangekw >> range) || rangekw != "range") {
        throw std::runtime_error(where + ": expected 'dim D range r'");
      }
    } else if (head == "param") {
      std::string name;
      double value;
      if (!(ls >> name >> value)) throw std::runtime_error(where + ": expected 'param name value'");
      params[name] = value;
    } else if (head == "term") {
      if (dimension < 0) throw std::runtime_error(where + ": 'term' before 'dim' header");
      std::string coeff_expr;
      if (!(ls >> coeff_expr)) throw std::runtime_error(where + ": missing coefficient");
      double coeff = parse_coeff_expr(coeff_expr, params, where);
      std::vector<std::pair<Coord, PauliLetter>> factors;
      std::string tok;
      while (ls >> tok) {
        PauliLetter l;
        try {
          l = letter_from_char(tok[0]);
        } catch (const std::invalid_argument&) {
          throw std::runtime_error(where + ": bad Pauli factor '" + tok + "'");
        }
        Coord c = parse_coord(tok.substr(1));
        if (int(c.size()) != dimension) {
          throw std::runtime_error(where + ": coordinate dimension mismatch in '" + tok + "'");
        }
        factors.emplace_back(std::move(c), l);
      }
      try {
        terms.emplace_back(PauliString(std::move(factors)), Complex(coeff, 0));
      } catch (const std::invalid_argument& e) {
        throw std::runtime_error(where + ": " + e.what());
      }
    } else {
      throw std::runtime_error(where + ": unknown directive '" + head + "'");
    }
  }
  if (dimension < 0) throw std::runtime_error(filename + ": missing 'dim D range r' header");
  try {
    return InteractionSpec(dimension, range, std::move(terms));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(filename + ": " + e.what());
  }
}

InteractionSpec InteractionSpec::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  return parse(in, path);
}

bool InteractionSpec::is_commuting() const {
  if (commuting_.has_value()) return *commuting_;
  bool ok = true;
  // check term_i against every translate of term_j whose support can overlap
  for (std::size_t i = 0; i < terms_.size() && ok; ++i) {
    for (std::size_t j = 0; j < terms_.size() && ok; ++j) {
      Coord shift(dimension_, -2 * range_ - 1);
      while (ok) {
        ok = commutator(terms_[i], translate(terms_[j], shift)).norm1() < 1e-12;
        int d = dimension_ - 1;
        while (d >= 0) {
          if (shift[d] < 2 * range_ + 1) {
            ++shift[d];
            std::fill(shift.begin() + d + 1, shift.end(), -2 * range_ - 1);
            break;
          }
          --d;
        }
        if (d < 0) break;
      }
    }
  }
  commuting_ = ok;
  return ok;
}

namespace {

// Enumerate translations x such that the translated term can touch the
// window, then filter by the given predicate on the translated support.
template <typename Pred>
void for_each_translate(const InteractionSpec& spec, const Window& w, Pred&& keep,
                        PauliOperator& acc) {
  if (w.empty()) return;
  const int d = spec.dimension();
  Coord lo = w.sites().front(), hi = w.sites().front();
  for (const auto& s : w.sites()) {
    for (int k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], s[k]);
      hi[k] = std::max(hi[k], s[k]);
    }
  }
  const int r = spec.range();
  for (const auto& term : spec.terms()) {
    if (term.is_zero()) continue;
    Coord shift(d);
    for (int k = 0; k < d; ++k) shift[k] = lo[k] - r;
    while (true) {
      PauliOperator t = translate(term, shift);
      if (keep(t.support())) acc += t;
      int k = d - 1;
      while (k >= 0) {
        if (shift[k] < hi[k] + r) {
          ++shift[k];
          for (int q = k + 1; q < d; ++q) shift[q] = lo[q] - r;
          break;
        }
        --k;
      }
      if (k < 0) break;
    }
  }
}

}  // namespace

PauliOperator hamiltonian_in(const InteractionSpec& spec, const Window& w) {
  PauliOperator acc;
  for_each_translate(
      spec, w, [&](const std::vector<Coord>& supp) { return w.contains_all(supp); }, acc);
  return acc;
}

PauliOperator hamiltonian_touching(const InteractionSpec& spec, const Window& w) {
  PauliOperator acc;
  for_each_translate(
      spec, w,
      [&](const std::vector<Coord>& supp) {
        for (const auto& s : supp) {
          if (w.contains(s)) return true;
        }
        return false;
      },
      acc);
  return acc;
}

PauliOperator surface_term(const InteractionSpec& spec, const Window& w) {
  return hamiltonian_touching(spec, w) - hamiltonian_in(spec, w);
}

Window boundary_extension(const InteractionSpec& spec, const Window& w) {
  PauliOperator touching = hamiltonian_touching(spec, w);
  Window extra{touching.support().empty() ? std::vector<Coord>{} : touching.support()};
  return w.united(extra);
}

PauliOperator commutator_with_hamiltonian(const InteractionSpec& spec, const PauliOperator& a) {
  auto supp = a.support();
  if (supp.empty()) return PauliOperator::zero();
  return commutator(hamiltonian_touching(spec, Window(std::move(supp))), a);
}

}  // namespace kmsbound
