#include "qevo/pauli.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qevo {

namespace {

std::uint64_t qubit_mask(int n_qubits) {
  return n_qubits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_qubits) - 1;
}

int popcount_u64(std::uint64_t v) { return std::popcount(v); }

Complex i_power(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

std::string format_weight(double w) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", w);
  return buf;
}

}  // namespace

PauliString::PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask)
    : n_qubits_(n_qubits), x_(x_mask), z_(z_mask) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) throw std::invalid_argument("PauliString: qubit count out of range");
  const std::uint64_t m = qubit_mask(n_qubits);
  if ((x_mask & ~m) || (z_mask & ~m)) throw std::invalid_argument("PauliString: mask exceeds qubit count");
}

PauliString PauliString::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("PauliString::parse: empty string");
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  for (std::size_t q = 0; q < text.size(); ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    switch (text[q]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default: throw std::invalid_argument("PauliString::parse: bad symbol '" + std::string(1, text[q]) + "'");
    }
  }
  return PauliString(static_cast<int>(text.size()), x, z);
}

PauliString PauliString::single(int n_qubits, int qubit, char op) {
  if (qubit < 0 || qubit >= n_qubits) throw std::out_of_range("PauliString::single: qubit out of range");
  std::string s(static_cast<std::size_t>(n_qubits), 'I');
  s[static_cast<std::size_t>(qubit)] = op;
  return parse(s);
}

char PauliString::op(int qubit) const noexcept {
  const bool xb = (x_ >> qubit) & 1;
  const bool zb = (z_ >> qubit) & 1;
  if (xb && zb) return 'Y';
  if (xb) return 'X';
  if (zb) return 'Z';
  return 'I';
}

int PauliString::weight() const noexcept { return popcount_u64(x_ | z_); }

std::string PauliString::str() const {
  std::string s(static_cast<std::size_t>(n_qubits_), 'I');
  for (int q = 0; q < n_qubits_; ++q) s[static_cast<std::size_t>(q)] = op(q);
  return s;
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (other.n_qubits_ != n_qubits_) throw std::invalid_argument("PauliString: qubit count mismatch");
  return ((popcount_u64(x_ & other.z_) + popcount_u64(z_ & other.x_)) & 1) == 0;
}

Complex PhasedPauli::phase() const noexcept { return i_power(phase_exponent); }

PhasedPauli multiply(const PhasedPauli& a, const PhasedPauli& b) {
  const PauliString& p = a.string;
  const PauliString& q = b.string;
  if (p.n_qubits() != q.n_qubits()) throw std::invalid_argument("multiply: qubit count mismatch");
  // Each string is i^{|x&z|} X^x Z^z; moving Z^{z1} past X^{x2} costs (-1)^{|z1&x2|}.
  const std::uint64_t x = p.x_mask() ^ q.x_mask();
  const std::uint64_t z = p.z_mask() ^ q.z_mask();
  int k = a.phase_exponent + b.phase_exponent;
  k += popcount_u64(p.x_mask() & p.z_mask()) + popcount_u64(q.x_mask() & q.z_mask());
  k += 2 * popcount_u64(p.z_mask() & q.x_mask());
  k -= popcount_u64(x & z);
  return PhasedPauli{((k % 4) + 4) % 4, PauliString(p.n_qubits(), x, z)};
}

StateVector apply_pauli(const PauliString& string, const StateVector& state) {
  if (string.n_qubits() != state.n_qubits()) throw std::invalid_argument("apply_pauli: qubit count mismatch");
  const std::uint64_t x = string.x_mask();
  const std::uint64_t z = string.z_mask();
  const Complex phase = i_power(popcount_u64(x & z));
  std::vector<Complex> out(state.dimension());
  const auto in = state.amplitudes();
  for (std::size_t i = 0; i < in.size(); ++i) {
    const Complex v = phase * in[i];
    out[i ^ x] = (popcount_u64(i & z) & 1) ? -v : v;
  }
  return StateVector::from_amplitudes(std::move(out));
}

Hamiltonian::Hamiltonian(int n_qubits, const std::vector<PauliTerm>& terms) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > PauliString::kMaxQubits) throw std::invalid_argument("Hamiltonian: qubit count out of range");
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> position;
  std::vector<PauliTerm> merged;
  for (const PauliTerm& t : terms) {
    if (t.string.n_qubits() != n_qubits) throw std::invalid_argument("Hamiltonian: term qubit count mismatch");
    if (!std::isfinite(t.weight)) throw std::invalid_argument("Hamiltonian: non-finite weight");
    const auto key = std::make_pair(t.string.x_mask(), t.string.z_mask());
    const auto [it, inserted] = position.emplace(key, merged.size());
    if (inserted) {
      merged.push_back(t);
    } else {
      merged[it->second].weight += t.weight;
    }
  }
  for (PauliTerm& t : merged) {
    if (std::abs(t.weight) >= kDropTolerance) terms_.push_back(std::move(t));
  }
}

void Hamiltonian::write(std::ostream& out) const {
  for (const PauliTerm& t : terms_) out << format_weight(t.weight) << ' ' << t.string.str() << '\n';
}

std::string Hamiltonian::to_text() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

Hamiltonian Hamiltonian::read(std::istream& in) {
  std::vector<PauliTerm> terms;
  int n_qubits = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string weight_text;
    std::string op_text;
    if (!(ls >> weight_text) || weight_text[0] == '#') continue;
    const std::string where = "Hamiltonian::read: line " + std::to_string(line_no);
    double w = 0.0;
    const auto [ptr, ec] = std::from_chars(weight_text.data(), weight_text.data() + weight_text.size(), w);
    if (ec != std::errc() || ptr != weight_text.data() + weight_text.size()) throw std::invalid_argument(where + ": bad weight");
    if (!(ls >> op_text)) throw std::invalid_argument(where + ": missing Pauli string");
    std::string extra;
    if (ls >> extra) throw std::invalid_argument(where + ": trailing tokens");
    PauliString s = PauliString::parse(op_text);
    if (n_qubits < 0) n_qubits = s.n_qubits();
    if (s.n_qubits() != n_qubits) throw std::invalid_argument(where + ": inconsistent qubit count");
    terms.push_back({w, s});
  }
  if (n_qubits < 0) throw std::invalid_argument("Hamiltonian::read: no terms");
  return Hamiltonian(n_qubits, terms);
}

Hamiltonian Hamiltonian::from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read(in);
}

void apply_hamiltonian(const Hamiltonian& h, std::span<const Complex> in, std::vector<Complex>& out) {
  if (in.size() != (std::size_t{1} << h.n_qubits())) throw std::invalid_argument("apply_hamiltonian: dimension mismatch");
  out.assign(in.size(), Complex{0.0, 0.0});
  for (const PauliTerm& t : h.terms()) {
    const std::uint64_t x = t.string.x_mask();
    const std::uint64_t z = t.string.z_mask();
    const Complex c = t.weight * i_power(popcount_u64(x & z));
    for (std::size_t i = 0; i < in.size(); ++i) {
      const Complex v = c * in[i];
      out[i ^ x] += (popcount_u64(i & z) & 1) ? -v : v;
    }
  }
}

}  // namespace qevo
