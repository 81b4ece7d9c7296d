#include "qlocal/pauli.hpp"

#include <bit>
#include <cinttypes>
#include <cstdio>
#include <sstream>

#include "qlocal/linalg.hpp"

namespace qlocal::pauli {

namespace {

int rank_of(bool x, bool z) { return x ? (z ? 2 : 1) : (z ? 3 : 0); }

constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};

// phase exponent (power of i) for letter products, [lhs][rhs]
constexpr int kPhaseExp[4][4] = {
    {0, 0, 0, 0},  // I*
    {0, 0, 1, 3},  // X* : XY=iZ, XZ=-iY
    {0, 3, 0, 1},  // Y* : YX=-iZ, YZ=iX
    {0, 1, 3, 0},  // Z* : ZX=iY, ZY=-iX
};

}  // namespace

PauliString::PauliString(int n_qubits, std::uint32_t x, std::uint32_t z)
    : n(n_qubits), x_mask(x), z_mask(z) {
  const std::uint32_t valid = (n >= 32) ? 0xffffffffu : ((1u << n) - 1u);
  if ((x_mask & ~valid) || (z_mask & ~valid))
    throw std::invalid_argument("PauliString: mask exceeds qubit count");
}

int PauliString::weight() const { return std::popcount(support()); }

std::string PauliString::label() const {
  std::string out(n, 'I');
  for (int q = 0; q < n; ++q) {
    const bool x = (x_mask >> q) & 1u;
    const bool z = (z_mask >> q) & 1u;
    out[q] = kLetters[rank_of(x, z)];
  }
  return out;
}

PauliString PauliString::from_label(const std::string& label) {
  PauliString p;
  p.n = static_cast<int>(label.size());
  for (int q = 0; q < p.n; ++q) {
    switch (label[q]) {
      case 'I': break;
      case 'X': p.x_mask |= 1u << q; break;
      case 'Y': p.x_mask |= 1u << q; p.z_mask |= 1u << q; break;
      case 'Z': p.z_mask |= 1u << q; break;
      default:
        throw std::invalid_argument("PauliString: bad label letter");
    }
  }
  return p;
}

std::uint64_t PauliString::key() const {
  std::uint64_t k = 0;
  for (int q = 0; q < n; ++q) {
    const bool x = (x_mask >> q) & 1u;
    const bool z = (z_mask >> q) & 1u;
    k |= static_cast<std::uint64_t>(rank_of(x, z)) << (2 * (n - 1 - q));
  }
  return k;
}

PauliString PauliString::from_key(int n, std::uint64_t key) {
  PauliString p;
  p.n = n;
  for (int q = 0; q < n; ++q) {
    const int rank = static_cast<int>((key >> (2 * (n - 1 - q))) & 3u);
    if (rank == 1 || rank == 2) p.x_mask |= 1u << q;
    if (rank == 2 || rank == 3) p.z_mask |= 1u << q;
  }
  return p;
}

DenseOperator PauliString::matrix() const {
  static const DenseOperator kSingle[4] = {
      (DenseOperator(2, 2) << 1, 0, 0, 1).finished(),
      (DenseOperator(2, 2) << 0, 1, 1, 0).finished(),
      (DenseOperator(2, 2) << 0, cplx(0, -1), cplx(0, 1), 0).finished(),
      (DenseOperator(2, 2) << 1, 0, 0, -1).finished(),
  };
  DenseOperator out = DenseOperator::Identity(1, 1);
  for (int q = 0; q < n; ++q) {
    const bool x = (x_mask >> q) & 1u;
    const bool z = (z_mask >> q) & 1u;
    out = kron(out, kSingle[rank_of(x, z)]);
  }
  return out;
}

std::pair<cplx, PauliString> multiply(const PauliString& lhs,
                                      const PauliString& rhs) {
  if (lhs.n != rhs.n)
    throw std::invalid_argument("PauliString multiply: size mismatch");
  int exp = 0;
  for (int q = 0; q < lhs.n; ++q) {
    const int a = rank_of((lhs.x_mask >> q) & 1u, (lhs.z_mask >> q) & 1u);
    const int b = rank_of((rhs.x_mask >> q) & 1u, (rhs.z_mask >> q) & 1u);
    exp += kPhaseExp[a][b];
  }
  static const cplx kPhases[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0),
                                  cplx(0, -1)};
  return {kPhases[exp % 4],
          PauliString(lhs.n, lhs.x_mask ^ rhs.x_mask, lhs.z_mask ^ rhs.z_mask)};
}

void PauliOperator::add(const PauliString& p, cplx coefficient) {
  if (p.n != n_)
    throw std::invalid_argument("PauliOperator::add: qubit count mismatch");
  const std::uint64_t k = p.key();
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    if (std::abs(coefficient) >= kCoeffPurgeThreshold)
      terms_.emplace(k, coefficient);
    return;
  }
  it->second += coefficient;
  if (std::abs(it->second) < kCoeffPurgeThreshold) terms_.erase(it);
}

cplx PauliOperator::coeff(const PauliString& p) const {
  auto it = terms_.find(p.key());
  return it == terms_.end() ? cplx(0, 0) : it->second;
}

PauliString PauliOperator::string_at(std::uint64_t key) const {
  return PauliString::from_key(n_, key);
}

bool PauliOperator::is_hermitian(double tol) const {
  for (const auto& [k, c] : terms_)
    if (std::abs(c.imag()) > tol) return false;
  return true;
}

int PauliOperator::max_weight() const {
  int w = 0;
  for (const auto& [k, c] : terms_)
    w = std::max(w, PauliString::from_key(n_, k).weight());
  return w;
}

PauliOperator PauliOperator::weight_filtered(int min_weight,
                                             int max_weight) const {
  PauliOperator out(n_);
  for (const auto& [k, c] : terms_) {
    const int w = PauliString::from_key(n_, k).weight();
    if (w >= min_weight && w <= max_weight) out.terms_.emplace(k, c);
  }
  return out;
}

PauliOperator& PauliOperator::operator+=(const PauliOperator& other) {
  if (n_ != other.n_)
    throw std::invalid_argument("PauliOperator: qubit count mismatch");
  for (const auto& [k, c] : other.terms_)
    add(PauliString::from_key(n_, k), c);
  return *this;
}

PauliOperator& PauliOperator::operator-=(const PauliOperator& other) {
  if (n_ != other.n_)
    throw std::invalid_argument("PauliOperator: qubit count mismatch");
  for (const auto& [k, c] : other.terms_)
    add(PauliString::from_key(n_, k), -c);
  return *this;
}

PauliOperator& PauliOperator::operator*=(cplx scale) {
  if (std::abs(scale) < kCoeffPurgeThreshold) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= scale;
  return *this;
}

PauliOperator operator*(const PauliOperator& a, const PauliOperator& b) {
  if (a.n_ != b.n_)
    throw std::invalid_argument("PauliOperator: qubit count mismatch");
  PauliOperator out(a.n_);
  for (const auto& [ka, ca] : a.terms_) {
    const PauliString pa = PauliString::from_key(a.n_, ka);
    for (const auto& [kb, cb] : b.terms_) {
      const auto [phase, p] = multiply(pa, PauliString::from_key(b.n_, kb));
      out.add(p, phase * ca * cb);
    }
  }
  return out;
}

PauliOperator PauliOperator::identity(int n_qubits) {
  PauliOperator out(n_qubits);
  out.add(PauliString(n_qubits, 0, 0), 1.0);
  return out;
}

std::string PauliOperator::to_text() const {
  std::string out;
  char buf[96];
  for (const auto& [k, c] : terms_) {
    std::snprintf(buf, sizeof buf, " %.17g %.17g\n", c.real(), c.imag());
    out += PauliString::from_key(n_, k).label();
    out += buf;
  }
  return out;
}

PauliOperator PauliOperator::from_text(const std::string& text) {
  std::istringstream in(text);
  std::string label;
  double re = 0, im = 0;
  PauliOperator out;
  bool first = true;
  while (in >> label >> re >> im) {
    const PauliString p = PauliString::from_label(label);
    if (first) {
      out = PauliOperator(p.n);
      first = false;
    }
    out.add(p, cplx(re, im));
  }
  return out;
}

void pauli_coeff_transform(std::vector<cplx>& flat, int n) {
  const std::size_t dim = std::size_t{1} << n;
  if (flat.size() != dim * dim)
    throw std::invalid_argument("pauli_coeff_transform: size mismatch");
  for (int b = 0; b < n; ++b) {
    const std::size_t bit = std::size_t{1} << b;
    for (std::size_t rr = 0; rr < dim / 2; ++rr) {
      const std::size_t r0 = ((rr & ~(bit - 1)) << 1) | (rr & (bit - 1));
      const std::size_t r1 = r0 | bit;
      for (std::size_t cc = 0; cc < dim / 2; ++cc) {
        const std::size_t c0 = ((cc & ~(bit - 1)) << 1) | (cc & (bit - 1));
        const std::size_t c1 = c0 | bit;
        const cplx m00 = flat[r0 * dim + c0];
        const cplx m01 = flat[r0 * dim + c1];
        const cplx m10 = flat[r1 * dim + c0];
        const cplx m11 = flat[r1 * dim + c1];
        flat[r0 * dim + c0] = 0.5 * (m00 + m11);             // I
        flat[r0 * dim + c1] = 0.5 * (m01 + m10);             // X
        flat[r1 * dim + c0] = 0.5 * cplx(0, 1) * (m01 - m10);  // Y
        flat[r1 * dim + c1] = 0.5 * (m00 - m11);             // Z
      }
    }
  }
}

void pauli_coeff_inverse(std::vector<cplx>& flat, int n) {
  const std::size_t dim = std::size_t{1} << n;
  if (flat.size() != dim * dim)
    throw std::invalid_argument("pauli_coeff_inverse: size mismatch");
  for (int b = 0; b < n; ++b) {
    const std::size_t bit = std::size_t{1} << b;
    for (std::size_t rr = 0; rr < dim / 2; ++rr) {
      const std::size_t r0 = ((rr & ~(bit - 1)) << 1) | (rr & (bit - 1));
      const std::size_t r1 = r0 | bit;
      for (std::size_t cc = 0; cc < dim / 2; ++cc) {
        const std::size_t c0 = ((cc & ~(bit - 1)) << 1) | (cc & (bit - 1));
        const std::size_t c1 = c0 | bit;
        const cplx sI = flat[r0 * dim + c0];
        const cplx sX = flat[r0 * dim + c1];
        const cplx sY = flat[r1 * dim + c0];
        const cplx sZ = flat[r1 * dim + c1];
        flat[r0 * dim + c0] = sI + sZ;
        flat[r0 * dim + c1] = sX - cplx(0, 1) * sY;
        flat[r1 * dim + c0] = sX + cplx(0, 1) * sY;
        flat[r1 * dim + c1] = sI - sZ;
      }
    }
  }
}

namespace {

std::vector<cplx> to_flat(const DenseOperator& m) {
  const std::size_t dim = static_cast<std::size_t>(m.rows());
  std::vector<cplx> flat(dim * dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) flat[r * dim + c] = m(r, c);
  return flat;
}

int checked_qubits(const DenseOperator& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("operator matrix must be square");
  const int n = qubits_from_dim(m.rows());
  if (n > caps::kMaxDenseQubits)
    throw std::invalid_argument("dense operator exceeds the qubit cap");
  return n;
}

}  // namespace

PauliOperator decompose(const DenseOperator& m) {
  const int n = checked_qubits(m);
  std::vector<cplx> flat = to_flat(m);
  pauli_coeff_transform(flat, n);
  const std::size_t dim = std::size_t{1} << n;
  PauliOperator out(n);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) {
      const cplx coeff = flat[r * dim + c];
      if (std::abs(coeff) < kCoeffPurgeThreshold) continue;
      const std::uint32_t z = reverse_low_bits(static_cast<std::uint32_t>(r), n);
      const std::uint32_t x =
          reverse_low_bits(static_cast<std::uint32_t>(r ^ c), n);
      out.add(PauliString(n, x, z), coeff);
    }
  return out;
}

DenseOperator reconstruct(const PauliOperator& op) {
  const int n = op.n();
  if (n > caps::kMaxDenseQubits)
    throw std::invalid_argument("dense operator exceeds the qubit cap");
  const std::size_t dim = std::size_t{1} << n;
  std::vector<cplx> flat(dim * dim, cplx(0, 0));
  for (const auto& [key, coeff] : op.terms()) {
    const PauliString p = PauliString::from_key(n, key);
    const std::size_t r = reverse_low_bits(p.z_mask, n);
    const std::size_t c = r ^ reverse_low_bits(p.x_mask, n);
    flat[r * dim + c] = coeff;
  }
  pauli_coeff_inverse(flat, n);
  DenseOperator out(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) out(r, c) = flat[r * dim + c];
  return out;
}

LocalityCertificate support_truncate(const PauliOperator& op, int k) {
  if (k < 0 || k > op.n())
    throw std::invalid_argument("support_truncate: k out of range");
  LocalityCertificate cert;
  cert.k = k;
  cert.witness = op.weight_filtered(0, k);
  const PauliOperator remainder = op.weight_filtered(k + 1, op.n());
  cert.eps = remainder.empty() ? 0.0 : operator_norm(reconstruct(remainder));
  cert.tln = 0.0;
  for (const auto& g : group_by_support(cert.witness)) cert.tln += g.norm;
  return cert;
}

std::vector<std::pair<int, double>> truncation_profile(
    const DenseOperator& m, const std::vector<int>& ks) {
  const int n = checked_qubits(m);
  std::vector<cplx> coeffs = to_flat(m);
  pauli_coeff_transform(coeffs, n);
  const std::size_t dim = std::size_t{1} << n;

  std::vector<std::pair<int, double>> out;
  out.reserve(ks.size());
  std::vector<cplx> rem(dim * dim);
  for (int k : ks) {
    if (k < 0 || k > n)
      throw std::invalid_argument("truncation_profile: k out of range");
    bool any = false;
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) {
        const bool keep = std::popcount(r | c) > k;
        const cplx v = keep ? coeffs[r * dim + c] : cplx(0, 0);
        rem[r * dim + c] = v;
        any = any || (keep && std::abs(v) >= kCoeffPurgeThreshold);
      }
    if (!any) {
      out.emplace_back(k, 0.0);
      continue;
    }
    pauli_coeff_inverse(rem, n);
    Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        view(rem.data(), dim, dim);
    out.emplace_back(k, operator_norm(DenseOperator(view)));
  }
  return out;
}

int max_pauli_weight(const DenseOperator& m, double threshold) {
  const int n = checked_qubits(m);
  std::vector<cplx> coeffs = to_flat(m);
  pauli_coeff_transform(coeffs, n);
  const std::size_t dim = std::size_t{1} << n;
  int w = 0;
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c)
      if (std::abs(coeffs[r * dim + c]) > threshold)
        w = std::max(w, std::popcount(r | c));
  return w;
}

PauliOperator subset_restrict(std::span<const LocalTerm> terms,
                              std::uint32_t subset_mask) {
  if (terms.empty()) return PauliOperator();
  PauliOperator out(terms.front().op.n());
  for (const auto& t : terms)
    if (t.support & subset_mask) out += t.op;
  return out;
}

std::vector<SupportGroup> group_by_support(const PauliOperator& op) {
  std::map<std::uint32_t, PauliOperator> groups;
  for (const auto& [key, coeff] : op.terms()) {
    const PauliString p = PauliString::from_key(op.n(), key);
    auto [it, inserted] = groups.try_emplace(p.support(), op.n());
    it->second.add(p, coeff);
  }
  std::vector<SupportGroup> out;
  out.reserve(groups.size());
  for (auto& [mask, group] : groups) {
    SupportGroup g;
    g.support = mask;
    g.norm = term_norm(group, mask);
    g.op = std::move(group);
    out.push_back(std::move(g));
  }
  return out;
}

double tln(std::span<const LocalTerm> terms) {
  double sum = 0.0;
  for (const auto& t : terms) sum += term_norm(t.op, t.support);
  return sum;
}

double term_norm(const PauliOperator& op, std::uint32_t declared_support) {
  if (op.empty()) return 0.0;
  const int nsub = std::popcount(declared_support);
  if (nsub > caps::kMaxDenseQubits)
    throw std::invalid_argument("term_norm: support exceeds the qubit cap");
  // Compress onto the support qubits; the norm is unchanged because the
  // operator acts as identity elsewhere.
  std::vector<int> qubit_slot(op.n(), -1);
  int slot = 0;
  for (int q = 0; q < op.n(); ++q)
    if ((declared_support >> q) & 1u) qubit_slot[q] = slot++;
  PauliOperator reduced(nsub);
  for (const auto& [key, coeff] : op.terms()) {
    const PauliString p = PauliString::from_key(op.n(), key);
    if (p.support() & ~declared_support)
      throw std::invalid_argument(
          "term_norm: operator leaves its declared support");
    std::uint32_t x = 0, z = 0;
    for (int q = 0; q < op.n(); ++q) {
      if (qubit_slot[q] < 0) continue;
      if ((p.x_mask >> q) & 1u) x |= 1u << qubit_slot[q];
      if ((p.z_mask >> q) & 1u) z |= 1u << qubit_slot[q];
    }
    reduced.add(PauliString(nsub, x, z), coeff);
  }
  if (nsub == 0) {
    cplx c(0, 0);
    for (const auto& [k, v] : reduced.terms()) c += v;
    return std::abs(c);
  }
  return operator_norm(reconstruct(reduced));
}

}  // namespace qlocal::pauli
