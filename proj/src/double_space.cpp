#include "cliffext/double_space.hpp"

#include <algorithm>
#include <numeric>

#include "cliffext/errors.hpp"

namespace cliffext {

PhaseFn::PhaseFn(std::int64_t denominator, std::vector<std::uint16_t> numerators)
    : den_(denominator), values_(std::move(numerators)) {
  if (den_ < 1 || den_ > 65535) throw ValidationError("phase table denominator out of range");
  for (auto v : values_)
    if (v >= den_) throw ValidationError("phase table numerator not reduced");
}

PhaseFn PhaseFn::zero(std::size_t size, std::int64_t denominator) {
  return PhaseFn(denominator, std::vector<std::uint16_t>(size, 0));
}

PhaseFn PhaseFn::from_phases(std::span<const Phase> phases, std::int64_t denominator) {
  std::vector<std::uint16_t> v(phases.size());
  for (std::size_t i = 0; i < phases.size(); ++i)
    v[i] = static_cast<std::uint16_t>(phases[i].numerator_over(denominator));
  return PhaseFn(denominator, std::move(v));
}

bool PhaseFn::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](std::uint16_t v) { return v == 0; });
}

PhaseFn PhaseFn::operator+(const PhaseFn& o) const {
  if (o.den_ != den_ || o.size() != size()) throw ValidationError("phase tables of different shape");
  std::vector<std::uint16_t> v(size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<std::uint16_t>((values_[i] + o.values_[i]) % den_);
  return PhaseFn(den_, std::move(v));
}

PhaseFn PhaseFn::operator-() const {
  std::vector<std::uint16_t> v(size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<std::uint16_t>((den_ - values_[i]) % den_);
  return PhaseFn(den_, std::move(v));
}

PhaseFn PhaseFn::operator-(const PhaseFn& o) const { return *this + (-o); }

DoubleSpace::DoubleSpace(FinAbGroup base) : base_(std::move(base)) {
  const auto& d = base_.orders();
  moduli_.insert(moduli_.end(), d.begin(), d.end());
  moduli_.insert(moduli_.end(), d.begin(), d.end());
  for (auto m : moduli_) {
    size_ *= static_cast<std::size_t>(m);
    if (size_ > kMaxSize)
      throw ResourceError("|V_A| for " + base_.spec() + " exceeds " + std::to_string(kMaxSize));
  }
  stride_.assign(dim(), 1);
  for (std::size_t i = dim(); i-- > 1;) stride_[i - 1] = stride_[i] * static_cast<std::size_t>(moduli_[i]);
  pair_weight_.resize(half());
  for (std::size_t i = 0; i < half(); ++i) pair_weight_[i] = phase_denominator() / d[i];
  coords_.resize(size_ * dim());
  for (std::size_t r = 0; r < size_; ++r)
    for (std::size_t i = 0; i < dim(); ++i)
      coords_[r * dim() + i] = static_cast<std::uint16_t>((r / stride_[i]) % static_cast<std::size_t>(moduli_[i]));
}

Rank DoubleSpace::rank_of(std::span<const std::int64_t> coords) const {
  if (coords.size() != dim()) throw ValidationError("coordinate vector has the wrong length");
  std::size_t r = 0;
  for (std::size_t i = 0; i < dim(); ++i) r += static_cast<std::size_t>(mod_floor(coords[i], moduli_[i])) * stride_[i];
  return static_cast<Rank>(r);
}

Rank DoubleSpace::rank_of(const GroupElem& a, const GroupElem& chi) const {
  if (!(a.group() == base_) || chi.group().orders() != base_.orders())
    throw ValidationError("element does not belong to the double of " + base_.spec());
  std::vector<std::int64_t> c(a.coords());
  c.insert(c.end(), chi.coords().begin(), chi.coords().end());
  return rank_of(c);
}

std::vector<std::int64_t> DoubleSpace::coord_vector(Rank r) const {
  auto c = coords(r);
  return {c.begin(), c.end()};
}

Rank DoubleSpace::add(Rank u, Rank v) const {
  auto cu = coords(u), cv = coords(v);
  std::size_t r = 0;
  for (std::size_t i = 0; i < dim(); ++i) {
    std::size_t s = static_cast<std::size_t>(cu[i]) + cv[i];
    if (s >= static_cast<std::size_t>(moduli_[i])) s -= static_cast<std::size_t>(moduli_[i]);
    r += s * stride_[i];
  }
  return static_cast<Rank>(r);
}

Rank DoubleSpace::neg(Rank u) const {
  auto cu = coords(u);
  std::size_t r = 0;
  for (std::size_t i = 0; i < dim(); ++i) {
    const std::size_t m = static_cast<std::size_t>(moduli_[i]);
    r += ((m - cu[i]) % m) * stride_[i];
  }
  return static_cast<Rank>(r);
}

Rank DoubleSpace::scale(std::int64_t n, Rank u) const {
  auto cu = coords(u);
  std::size_t r = 0;
  for (std::size_t i = 0; i < dim(); ++i)
    r += static_cast<std::size_t>(mod_floor(n % moduli_[i] * cu[i], moduli_[i])) * stride_[i];
  return static_cast<Rank>(r);
}

std::uint32_t DoubleSpace::beta_num(Rank u, Rank v) const {
  auto cu = coords(u), cv = coords(v);
  const std::size_t m = half();
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < m; ++i) acc += static_cast<std::int64_t>(cu[m + i]) * cv[i] * pair_weight_[i];
  return static_cast<std::uint32_t>(acc % phase_denominator());
}

std::uint32_t DoubleSpace::omega_num(Rank u, Rank v) const {
  const std::int64_t d = phase_denominator();
  return static_cast<std::uint32_t>((beta_num(u, v) + d - beta_num(v, u)) % d);
}

PhaseFn kappa(const DoubleSpace& space, Rank v) {
  std::vector<std::uint16_t> t(space.size());
  for (Rank u = 0; u < space.size(); ++u) t[u] = static_cast<std::uint16_t>(space.omega_num(v, u));
  return PhaseFn(space.phase_denominator(), std::move(t));
}

bool is_character(const DoubleSpace& space, const PhaseFn& lam) {
  if (lam.size() != space.size()) return false;
  const std::int64_t d = lam.denominator();
  // Additivity against generators suffices: it determines lam from its generator values.
  for (Rank u = 0; u < space.size(); ++u)
    for (std::size_t i = 0; i < space.dim(); ++i) {
      const Rank g = space.generator(i);
      if ((lam.num(u) + lam.num(g)) % d != lam.num(space.add(u, g))) return false;
    }
  return lam.num(0) == 0;
}

Rank kappa_inv(const DoubleSpace& space, const PhaseFn& chi) {
  if (chi.size() != space.size()) throw ValidationError("phase table has the wrong size for kappa_inv");
  // omega((a, x), e_i^A) = x_i / d_i and omega((a, x), e_i^dual) = -a_i / d_i.
  const std::size_t m = space.half();
  const std::int64_t den = chi.denominator();
  std::vector<std::int64_t> c(space.dim());
  for (std::size_t i = 0; i < m; ++i) {
    const std::int64_t d = space.modulus(i);
    const std::int64_t on_a = chi.num(space.generator(i)) * d;
    const std::int64_t on_dual = chi.num(space.generator(m + i)) * d;
    if (on_a % den != 0 || on_dual % den != 0)
      throw ValidationError("phase function is not a character of V_A (generator values off the lattice)");
    c[m + i] = on_a / den;
    c[i] = -(on_dual / den);
  }
  const Rank v = space.rank_of(c);
  const std::int64_t ratio = space.phase_denominator() % den == 0 ? space.phase_denominator() / den : 0;
  if (ratio == 0) throw ValidationError("phase table denominator incompatible with V_A");
  for (Rank u = 0; u < space.size(); ++u)
    if (space.omega_num(v, u) != static_cast<std::uint32_t>(chi.num(u) * ratio))
      throw ValidationError("phase function is not a character of V_A");
  return v;
}

EndoMap::EndoMap(std::vector<std::int64_t> moduli, std::vector<std::int64_t> row_major)
    : moduli_(std::move(moduli)), entries_(std::move(row_major)) {
  const std::size_t n = moduli_.size();
  if (entries_.size() != n * n) throw ValidationError("endomorphism matrix must be square of size " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto& e = entries_[i * n + j];
      e = mod_floor(e, moduli_[i]);
      if (e % (moduli_[i] / std::gcd(moduli_[i], moduli_[j])) != 0)
        throw ValidationError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                              ") is not a homomorphism of V_A");
    }
}

EndoMap EndoMap::identity(const DoubleSpace& space) { return scalar(space, 1); }

EndoMap EndoMap::scalar(const DoubleSpace& space, std::int64_t k) {
  const std::size_t n = space.dim();
  std::vector<std::int64_t> e(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = k;
  return EndoMap(space.moduli(), std::move(e));
}

EndoMap EndoMap::from_images(const DoubleSpace& space, std::span<const Rank> images) {
  const std::size_t n = space.dim();
  if (images.size() != n) throw ValidationError("need one image per generator");
  std::vector<std::int64_t> e(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    auto c = space.coords(images[j]);
    for (std::size_t i = 0; i < n; ++i) e[i * n + j] = c[i];
  }
  return EndoMap(space.moduli(), std::move(e));
}

std::vector<std::int64_t> EndoMap::apply(std::span<const std::int64_t> coords) const {
  const std::size_t n = dim();
  std::vector<std::int64_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc = (acc + entries_[i * n + j] * coords[j]) % moduli_[i];
    out[i] = mod_floor(acc, moduli_[i]);
  }
  return out;
}

Rank EndoMap::apply(const DoubleSpace& space, Rank u) const {
  const std::size_t n = dim();
  auto c = space.coords(u);
  std::int64_t out[64];
  if (n > 64) throw ResourceError("endomorphism dimension too large");
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc += entries_[i * n + j] * c[j];
    out[i] = acc % moduli_[i];
  }
  return space.rank_of(std::span<const std::int64_t>(out, n));
}

std::vector<std::uint16_t> EndoMap::permutation(const DoubleSpace& space) const {
  std::vector<std::uint16_t> p(space.size());
  for (Rank u = 0; u < space.size(); ++u) p[u] = static_cast<std::uint16_t>(apply(space, u));
  return p;
}

EndoMap EndoMap::operator*(const EndoMap& rhs) const {
  if (rhs.moduli_ != moduli_) throw ValidationError("composing endomorphisms of different spaces");
  const std::size_t n = dim();
  std::vector<std::int64_t> e(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      std::int64_t acc = 0;
      for (std::size_t j = 0; j < n; ++j) acc = (acc + entries_[i * n + j] * rhs.entries_[j * n + k]) % moduli_[i];
      e[i * n + k] = acc;
    }
  return EndoMap(moduli_, std::move(e));
}

std::string EndoMap::str() const {
  std::string out = "[";
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += "; ";
    for (std::size_t j = 0; j < n; ++j) {
      if (j) out += ' ';
      out += std::to_string(entries_[i * n + j]);
    }
  }
  return out + "]";
}

bool is_symplectic(const DoubleSpace& space, const EndoMap& t) {
  if (t.moduli() != space.moduli()) throw ValidationError("endomorphism does not act on this space");
  const std::size_t n = space.dim();
  std::vector<Rank> img(n);
  for (std::size_t j = 0; j < n; ++j) img[j] = t.apply(space, space.generator(j));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (space.omega_num(img[i], img[j]) != space.omega_num(space.generator(i), space.generator(j))) return false;
  std::vector<bool> hit(space.size(), false);
  for (Rank u = 0; u < space.size(); ++u) {
    const Rank w = t.apply(space, u);
    if (hit[w]) return false;
    hit[w] = true;
  }
  return true;
}

}  // namespace cliffext
