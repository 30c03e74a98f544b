#include "cliffext/bicharacter.hpp"

#include <numeric>
#include <set>

#include "cliffext/errors.hpp"

namespace cliffext {

namespace {

FinAbGroup double_group(const DoubleSpace& space) { return FinAbGroup::from_factors(space.moduli()); }

std::vector<std::vector<std::int64_t>> all_coords(const FinAbGroup& g) {
  std::vector<std::vector<std::int64_t>> out;
  for (auto& e : enumerate_elements(g)) out.push_back(e.coords());
  return out;
}

}  // namespace

Bicharacter::Bicharacter(FinAbGroup group, std::vector<Phase> pairings) : group_(std::move(group)), m_(std::move(pairings)) {
  const std::size_t n = group_.rank();
  if (m_.size() != n * n) throw ValidationError("bicharacter needs a square pairing matrix");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (std::gcd(group_.order(i), group_.order(j)) % m_[i * n + j].order() != 0)
        throw ValidationError("pairing (" + std::to_string(i) + "," + std::to_string(j) + ") = " + m_[i * n + j].str() +
                              " is not bilinear on " + group_.spec());
}

Bicharacter Bicharacter::zero(const FinAbGroup& group) {
  return Bicharacter(group, std::vector<Phase>(group.rank() * group.rank()));
}

Bicharacter Bicharacter::beta(const DoubleSpace& space) {
  const std::size_t n = space.dim();
  std::vector<Phase> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = space.beta(space.generator(i), space.generator(j));
  return Bicharacter(double_group(space), std::move(m));
}

Bicharacter Bicharacter::omega(const DoubleSpace& space) { return antisymmetrize(beta(space)); }

Bicharacter Bicharacter::from_table(const FinAbGroup& group, const std::vector<Phase>& table) {
  if (!is_biadditive_table(group, table)) throw ValidationError("table is not biadditive");
  const std::size_t n = group.rank(), size = static_cast<std::size_t>(group.size());
  // Generator g_i has rank prod_{k > i} d_k.
  std::vector<std::size_t> rank_of_gen(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = group.order(i) == 1 ? 0 : 1;
    for (std::size_t k = i + 1; k < n && r; ++k) r *= static_cast<std::size_t>(group.order(k));
    rank_of_gen[i] = r;
  }
  std::vector<Phase> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = table[rank_of_gen[i] * size + rank_of_gen[j]];
  return Bicharacter(group, std::move(m));
}

Phase Bicharacter::at(std::span<const std::int64_t> u, std::span<const std::int64_t> v) const {
  const std::size_t n = group_.rank();
  if (u.size() != n || v.size() != n) throw ValidationError("element has the wrong number of coordinates");
  Phase acc;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (u[i] && v[j]) acc = acc + m_[i * n + j].scaled(u[i] * v[j]);
  return acc;
}

std::vector<Phase> Bicharacter::table() const {
  const auto size = static_cast<std::size_t>(group_.size());
  if (size > kMaxTableSize) throw ResourceError("bicharacter tables are materialized only up to 64 elements");
  auto el = all_coords(group_);
  std::vector<Phase> t(size * size);
  for (std::size_t u = 0; u < size; ++u)
    for (std::size_t v = 0; v < size; ++v) t[u * size + v] = at(el[u], el[v]);
  return t;
}

bool Bicharacter::is_symmetric() const { return *this == transpose(); }

bool Bicharacter::is_alternating() const {
  const std::size_t n = group_.rank();
  for (std::size_t i = 0; i < n; ++i) {
    if (!m_[i * n + i].is_zero()) return false;
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(m_[i * n + j] + m_[j * n + i]).is_zero()) return false;
  }
  return true;
}

Bicharacter Bicharacter::transpose() const {
  const std::size_t n = group_.rank();
  std::vector<Phase> t(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[j * n + i] = m_[i * n + j];
  return Bicharacter(group_, std::move(t));
}

Bicharacter Bicharacter::operator+(const Bicharacter& o) const {
  if (!(o.group_ == group_)) throw ValidationError("bicharacters on different groups");
  std::vector<Phase> s(m_.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = m_[i] + o.m_[i];
  return Bicharacter(group_, std::move(s));
}

Bicharacter Bicharacter::operator-(const Bicharacter& o) const {
  if (!(o.group_ == group_)) throw ValidationError("bicharacters on different groups");
  std::vector<Phase> s(m_.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = m_[i] - o.m_[i];
  return Bicharacter(group_, std::move(s));
}

Bicharacter antisymmetrize(const Bicharacter& b) { return b - b.transpose(); }

bool is_biadditive_table(const FinAbGroup& group, const std::vector<Phase>& table) {
  const auto size = static_cast<std::size_t>(group.size());
  if (table.size() != size * size) return false;
  auto el = enumerate_elements(group);
  std::vector<std::size_t> sum(size * size);
  {
    // rank of u + v via coordinate lookup
    std::vector<std::int64_t> stride(group.rank(), 1);
    for (std::size_t i = group.rank(); i-- > 1;) stride[i - 1] = stride[i] * group.order(i);
    for (std::size_t u = 0; u < size; ++u)
      for (std::size_t v = 0; v < size; ++v) {
        auto w = el[u] + el[v];
        std::size_t r = 0;
        for (std::size_t i = 0; i < group.rank(); ++i) r += static_cast<std::size_t>(w[i] * stride[i]);
        sum[u * size + v] = r;
      }
  }
  for (std::size_t u = 0; u < size; ++u)
    for (std::size_t v = 0; v < size; ++v)
      for (std::size_t w = 0; w < size; ++w) {
        if (table[sum[u * size + v] * size + w] != table[u * size + w] + table[v * size + w]) return false;
        if (table[w * size + sum[u * size + v]] != table[w * size + u] + table[w * size + v]) return false;
      }
  return true;
}

TambaraReport tambara_check(const FinAbGroup& v, std::uint64_t max_bil) {
  const std::size_t n = v.rank();
  std::vector<std::int64_t> g(n * n);
  std::uint64_t bil = 1, alt = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      g[i * n + j] = std::gcd(v.order(i), v.order(j));
      bil *= static_cast<std::uint64_t>(g[i * n + j]);
      if (i < j) alt *= static_cast<std::uint64_t>(g[i * n + j]);
      if (bil > max_bil) throw ResourceError("|Bil(" + v.spec() + ")| exceeds the enumeration budget");
    }
  TambaraReport rep;
  rep.group = v.spec();
  const bool tables = v.size() <= static_cast<std::int64_t>(Bicharacter::kMaxTableSize);
  rep.tables_checked = tables;

  auto key_of = [&](const Bicharacter& b) {
    std::vector<std::int64_t> k;
    for (auto& p : b.pairings()) k.push_back(p.numerator_over(v.exponent()));
    return k;
  };

  // Every entry (i, j) ranges over multiples of 1 / gcd(d_i, d_j).
  std::set<std::vector<std::int64_t>> image, kernel, sym_set;
  bool all_alt = true;
  std::vector<std::int64_t> digit(n * n, 0);
  for (std::uint64_t idx = 0; idx < bil; ++idx) {
    std::vector<Phase> m(n * n);
    for (std::size_t e = 0; e < n * n; ++e) m[e] = Phase(digit[e], g[e]);
    Bicharacter b(v, m);
    Bicharacter a = antisymmetrize(b);
    if (!a.is_alternating()) all_alt = false;
    if (tables) {
      auto bt = b.table(), at = a.table();
      if (!is_biadditive_table(v, bt)) all_alt = false;
      // Alternating as a table: A(u, u) = 0 for every u.
      const auto size = static_cast<std::size_t>(v.size());
      for (std::size_t u = 0; u < size; ++u)
        if (!at[u * size + u].is_zero()) all_alt = false;
      bool sym_table = true;
      for (std::size_t x = 0; x < size && sym_table; ++x)
        for (std::size_t y = 0; y < size; ++y)
          if (bt[x * size + y] != bt[y * size + x]) {
            sym_table = false;
            break;
          }
      if (sym_table != b.is_symmetric()) all_alt = false;
    }
    image.insert(key_of(a));
    if (a == Bicharacter::zero(v)) kernel.insert(key_of(b));
    if (b.is_symmetric()) sym_set.insert(key_of(b));
    for (std::size_t e = n * n; e-- > 0;) {
      if (++digit[e] < g[e]) break;
      digit[e] = 0;
    }
  }
  // Alt(V) enumerated independently: zero diagonal, free upper triangle, lower = -upper.
  std::set<std::vector<std::int64_t>> alt_set;
  std::vector<std::pair<std::size_t, std::size_t>> upper;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) upper.emplace_back(i, j);
  std::vector<std::int64_t> up(upper.size(), 0);
  for (std::uint64_t idx = 0; idx < alt; ++idx) {
    std::vector<Phase> m(n * n);
    for (std::size_t e = 0; e < upper.size(); ++e) {
      auto [i, j] = upper[e];
      m[i * n + j] = Phase(up[e], g[i * n + j]);
      m[j * n + i] = -m[i * n + j];
    }
    alt_set.insert(key_of(Bicharacter(v, m)));
    for (std::size_t e = upper.size(); e-- > 0;) {
      auto [i, j] = upper[e];
      if (++up[e] < g[i * n + j]) break;
      up[e] = 0;
    }
  }
  rep.bil = bil;
  rep.sym = sym_set.size();
  rep.alt = alt_set.size();
  rep.image = image.size();
  rep.kernel = kernel.size();
  rep.images_alternating = all_alt;
  rep.kernel_is_sym = kernel == sym_set;
  rep.surjective = image == alt_set;
  return rep;
}

}  // namespace cliffext
