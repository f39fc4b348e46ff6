#include "kmsbound/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kmsbound {

namespace {

const Complex kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};  // i^k

// Single-site product P_a P_b = i^k P_c with 0 = identity letter.
// Encodes XY = iZ, YZ = iX, ZX = iY and P^2 = I.
void single_site_product(std::uint8_t a, std::uint8_t b, std::uint8_t& c, int& phase_exp) {
  if (a == b) {
    c = 0;
    phase_exp = 0;
    return;
  }
  c = static_cast<std::uint8_t>(a ^ b);  // {1,2,3}: the remaining letter
  // cyclic (X,Y,Z) -> +i, anticyclic -> -i
  bool cyclic = (b == (a % 3) + 1);
  phase_exp = cyclic ? 1 : 3;
}

}  // namespace

char letter_char(PauliLetter l) {
  switch (l) {
    case PauliLetter::X: return 'X';
    case PauliLetter::Y: return 'Y';
    case PauliLetter::Z: return 'Z';
  }
  return '?';
}

PauliLetter letter_from_char(char c) {
  switch (c) {
    case 'X': return PauliLetter::X;
    case 'Y': return PauliLetter::Y;
    case 'Z': return PauliLetter::Z;
  }
  throw std::invalid_argument(std::string("not a Pauli letter: ") + c);
}

PauliString::PauliString(std::vector<std::pair<Coord, PauliLetter>> factors)
    : factors_(std::move(factors)) {
  std::sort(factors_.begin(), factors_.end());
  for (std::size_t i = 1; i < factors_.size(); ++i) {
    if (factors_[i - 1].first == factors_[i].first) {
      throw std::invalid_argument("duplicate site in Pauli string");
    }
  }
}

PauliString PauliString::single(const Coord& site, PauliLetter l) {
  PauliString s;
  s.factors_.emplace_back(site, l);
  return s;
}

std::vector<Coord> PauliString::support() const {
  std::vector<Coord> out;
  out.reserve(factors_.size());
  for (const auto& [site, l] : factors_) out.push_back(site);
  return out;
}

PauliString PauliString::translated(const Coord& shift) const {
  PauliString out;
  out.factors_ = factors_;
  for (auto& [site, l] : out.factors_) {
    if (site.size() != shift.size()) throw std::invalid_argument("translation dimension mismatch");
    for (std::size_t d = 0; d < shift.size(); ++d) site[d] += shift[d];
  }
  return out;
}

std::pair<PauliString, int> PauliString::multiply(const PauliString& lhs, const PauliString& rhs) {
  PauliString out;
  out.factors_.reserve(lhs.factors_.size() + rhs.factors_.size());
  int phase = 0;
  std::size_t i = 0, j = 0;
  while (i < lhs.factors_.size() || j < rhs.factors_.size()) {
    if (j == rhs.factors_.size() ||
        (i < lhs.factors_.size() && lhs.factors_[i].first < rhs.factors_[j].first)) {
      out.factors_.push_back(lhs.factors_[i++]);
    } else if (i == lhs.factors_.size() || rhs.factors_[j].first < lhs.factors_[i].first) {
      out.factors_.push_back(rhs.factors_[j++]);
    } else {
      std::uint8_t c;
      int k;
      single_site_product(static_cast<std::uint8_t>(lhs.factors_[i].second),
                          static_cast<std::uint8_t>(rhs.factors_[j].second), c, k);
      phase = (phase + k) % 4;
      if (c != 0) out.factors_.emplace_back(lhs.factors_[i].first, static_cast<PauliLetter>(c));
      ++i;
      ++j;
    }
  }
  return {out, phase};
}

bool PauliString::commutes_with(const PauliString& other) const {
  // Pauli strings either commute or anticommute; they anticommute iff the
  // number of sites with differing non-identity letters is odd.
  std::size_t i = 0, j = 0, clashes = 0;
  while (i < factors_.size() && j < other.factors_.size()) {
    if (factors_[i].first < other.factors_[j].first) {
      ++i;
    } else if (other.factors_[j].first < factors_[i].first) {
      ++j;
    } else {
      if (factors_[i].second != other.factors_[j].second) ++clashes;
      ++i;
      ++j;
    }
  }
  return clashes % 2 == 0;
}

std::string PauliString::label() const {
  if (factors_.empty()) return "I";
  std::string out;
  for (const auto& [site, l] : factors_) {
    if (!out.empty()) out += ' ';
    out += letter_char(l);
    out += coord_label(site);
  }
  return out;
}

void PauliOperator::add(const PauliString& s, Complex c) {
  auto it = terms_.find(s);
  if (it == terms_.end()) {
    if (std::abs(c) > kDropTol) terms_.emplace(s, c);
    return;
  }
  it->second += c;
  if (std::abs(it->second) <= kDropTol) terms_.erase(it);
}

Complex PauliOperator::coefficient(const PauliString& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Complex(0, 0) : it->second;
}

PauliOperator& PauliOperator::operator+=(const PauliOperator& other) {
  for (const auto& [s, c] : other.terms_) add(s, c);
  return *this;
}

PauliOperator& PauliOperator::operator-=(const PauliOperator& other) {
  for (const auto& [s, c] : other.terms_) add(s, -c);
  return *this;
}

PauliOperator& PauliOperator::operator*=(Complex c) {
  if (std::abs(c) <= kDropTol) {
    terms_.clear();
    return *this;
  }
  for (auto& [s, v] : terms_) v *= c;
  return *this;
}

std::vector<Coord> PauliOperator::support() const {
  std::vector<Coord> out;
  for (const auto& [s, c] : terms_) {
    for (const auto& [site, l] : s.factors()) out.push_back(site);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool PauliOperator::is_hermitian(double tol) const {
  // Stored strings carry no phase, so hermiticity = real coefficients.
  for (const auto& [s, c] : terms_) {
    if (std::abs(c.imag()) > tol) return false;
  }
  return true;
}

double PauliOperator::norm1() const {
  double out = 0;
  for (const auto& [s, c] : terms_) out += std::abs(c);
  return out;
}

PauliOperator operator+(PauliOperator a, const PauliOperator& b) { return a += b; }
PauliOperator operator-(PauliOperator a, const PauliOperator& b) { return a -= b; }
PauliOperator operator*(Complex c, PauliOperator a) { return a *= c; }

PauliOperator multiply(const PauliOperator& lhs, const PauliOperator& rhs) {
  PauliOperator out;
  for (const auto& [sa, ca] : lhs.terms()) {
    for (const auto& [sb, cb] : rhs.terms()) {
      auto [s, k] = PauliString::multiply(sa, sb);
      Complex c = ca * cb;
      switch (k) {
        case 1: c *= Complex(0, 1); break;
        case 2: c = -c; break;
        case 3: c *= Complex(0, -1); break;
        default: break;
      }
      out.add(s, c);
    }
  }
  return out;
}

PauliOperator operator*(const PauliOperator& a, const PauliOperator& b) { return multiply(a, b); }

PauliOperator commutator(const PauliOperator& a, const PauliOperator& b) {
  PauliOperator out;
  for (const auto& [sa, ca] : a.terms()) {
    for (const auto& [sb, cb] : b.terms()) {
      if (sa.commutes_with(sb)) continue;
      // anticommuting strings: ab - ba = 2 ab
      auto [s, k] = PauliString::multiply(sa, sb);
      Complex c = 2.0 * ca * cb;
      switch (k) {
        case 1: c *= Complex(0, 1); break;
        case 2: c = -c; break;
        case 3: c *= Complex(0, -1); break;
        default: break;
      }
      out.add(s, c);
    }
  }
  return out;
}

PauliOperator adjoint(const PauliOperator& a) {
  PauliOperator out;
  for (const auto& [s, c] : a.terms()) out.add(s, std::conj(c));
  return out;
}

PauliOperator translate(const PauliOperator& a, const Coord& shift) {
  PauliOperator out;
  for (const auto& [s, c] : a.terms()) out.add(s.translated(shift), c);
  return out;
}

Complex hs_inner(const PauliOperator& a, const PauliOperator& b) {
  // iterate over the smaller map
  const PauliOperator& small = a.size() <= b.size() ? a : b;
  const PauliOperator& large = a.size() <= b.size() ? b : a;
  Complex out = 0;
  for (const auto& [s, c] : small.terms()) {
    Complex other = large.coefficient(s);
    if (&small == &a) {
      out += std::conj(c) * other;
    } else {
      out += std::conj(other) * c;
    }
  }
  return out;
}

namespace {

Eigen::Matrix2cd letter_matrix(std::uint8_t l) {
  Eigen::Matrix2cd m;
  switch (l) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;                                  // X
    case 2: m << 0, Complex(0, -1), Complex(0, 1), 0; break;         // Y
    case 3: m << 1, 0, 0, -1; break;                                 // Z
  }
  return m;
}

}  // namespace

Eigen::MatrixXcd to_dense(const PauliOperator& a, const std::vector<Coord>& window) {
  const std::size_t n = window.size();
  const std::size_t dim = std::size_t(1) << n;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [s, c] : a.terms()) {
    // letters per window slot, identity where the string has no factor
    std::vector<std::uint8_t> letters(n, 0);
    for (const auto& [site, l] : s.factors()) {
      auto it = std::find(window.begin(), window.end(), site);
      if (it == window.end()) {
        throw std::invalid_argument("to_dense: operator support escapes the window at " +
                                    coord_label(site));
      }
      letters[std::size_t(it - window.begin())] = static_cast<std::uint8_t>(l);
    }
    // Pauli strings act on basis states as a bit permutation with a phase:
    // column s maps to row s ^ flip with amplitude phase(s).
    std::size_t flip = 0;
    for (std::size_t q = 0; q < n; ++q) {
      if (letters[q] == 1 || letters[q] == 2) flip |= (std::size_t(1) << (n - 1 - q));
    }
    for (std::size_t col = 0; col < dim; ++col) {
      Complex amp = c;
      for (std::size_t q = 0; q < n; ++q) {
        const bool bit = (col >> (n - 1 - q)) & 1;
        switch (letters[q]) {
          case 2: amp *= bit ? Complex(0, -1) : Complex(0, 1); break;  // Y
          case 3: amp *= bit ? -1.0 : 1.0; break;                      // Z
          default: break;
        }
      }
      out(col ^ flip, col) += amp;
    }
  }
  return out;
}

PauliOperator pauli_decompose(const Eigen::MatrixXcd& m, const std::vector<Coord>& window,
                              double drop_tol) {
  const std::size_t n = window.size();
  const std::size_t dim = std::size_t(1) << n;
  if (m.rows() != Eigen::Index(dim) || m.cols() != Eigen::Index(dim)) {
    throw std::invalid_argument("pauli_decompose: matrix size does not match window");
  }
  PauliOperator out;
  // c_P = tr(P m) / 2^n; computed per string via the permutation action,
  // cheap enough for the window sizes used here (<= 12 sites would be 4^12,
  // callers stay well below that).
  std::vector<std::uint8_t> letters(n, 0);
  const double norm = 1.0 / double(dim);
  while (true) {
    std::size_t flip = 0;
    for (std::size_t q = 0; q < n; ++q) {
      if (letters[q] == 1 || letters[q] == 2) flip |= (std::size_t(1) << (n - 1 - q));
    }
    Complex acc = 0;
    for (std::size_t col = 0; col < dim; ++col) {
      const std::size_t row = col ^ flip;
      Complex amp = 1.0;
      for (std::size_t q = 0; q < n; ++q) {
        const bool bit = (col >> (n - 1 - q)) & 1;
        switch (letters[q]) {
          case 2: amp *= bit ? Complex(0, -1) : Complex(0, 1); break;
          case 3: amp *= bit ? -1.0 : 1.0; break;
          default: break;
        }
      }
      // tr(P m) = sum_col <col| P m |col> = sum_col P(col^flip,col)... here we
      // accumulate P_{col,row}^* style directly: P|col> = amp |row>, so
      // tr(P m) = sum_col amp * m(col, row).
      acc += amp * m(col, row);
    }
    acc *= norm;
    if (std::abs(acc) > drop_tol) {
      std::vector<std::pair<Coord, PauliLetter>> factors;
      for (std::size_t q = 0; q < n; ++q) {
        if (letters[q] != 0) factors.emplace_back(window[q], static_cast<PauliLetter>(letters[q]));
      }
      out.add(PauliString(std::move(factors)), acc);
    }
    // next letter combination
    std::size_t q = n;
    while (q > 0) {
      --q;
      if (letters[q] < 3) {
        ++letters[q];
        std::fill(letters.begin() + q + 1, letters.end(), 0);
        break;
      }
      if (q == 0) return out;
    }
    if (n == 0) return out;
  }
}

std::string coord_label(const Coord& c) {
  std::string out;
  for (std::size_t d = 0; d < c.size(); ++d) {
    if (d) out += ',';
    out += std::to_string(c[d]);
  }
  return out;
}

Coord parse_coord(const std::string& text) {
  Coord out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    out.push_back(std::stoi(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty coordinate");
  return out;
}

std::string PauliOperator::render() const {
  if (terms_.empty()) return "(0,0)";
  std::ostringstream out;
  out.precision(17);
  bool first = true;
  for (const auto& [s, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << '(' << c.real() << ',' << c.imag() << ')';
    if (!s.is_identity()) out << ' ' << s.label();
  }
  return out.str();
}

PauliOperator PauliOperator::parse(const std::string& text) {
  PauliOperator out;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  if (pos == text.size()) return out;
  bool first = true;
  while (pos < text.size()) {
    skip_ws();
    if (!first) {
      if (text[pos] != '+') throw std::invalid_argument("expected '+' between operator terms");
      ++pos;
      skip_ws();
    }
    first = false;
    Complex coeff(1, 0);
    if (text[pos] == '(') {
      std::size_t close = text.find(')', pos);
      if (close == std::string::npos) throw std::invalid_argument("unterminated coefficient");
      std::string body = text.substr(pos + 1, close - pos - 1);
      std::size_t comma = body.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("coefficient needs '(re,im)'");
      coeff = Complex(std::stod(body.substr(0, comma)), std::stod(body.substr(comma + 1)));
      pos = close + 1;
    }
    std::vector<std::pair<Coord, PauliLetter>> factors;
    while (true) {
      skip_ws();
      if (pos >= text.size() || text[pos] == '+' || text[pos] == '(') break;
      char c = text[pos];
      if (c == 'I') {
        ++pos;
        continue;
      }
      PauliLetter l = letter_from_char(c);
      ++pos;
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '-' ||
              text[pos] == ',')) {
        ++pos;
      }
      if (start == pos) throw std::invalid_argument("Pauli letter without coordinate");
      factors.emplace_back(parse_coord(text.substr(start, pos - start)), l);
    }
    out.add(PauliString(std::move(factors)), coeff);
  }
  return out;
}

}  // namespace kmsbound
