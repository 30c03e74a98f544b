#include "cliffext/abelian.hpp"

#include <algorithm>
#include <numeric>

#include "cliffext/errors.hpp"

namespace cliffext {

FinAbGroup::FinAbGroup() : FinAbGroup(std::vector<std::int64_t>{1}) {}

FinAbGroup::FinAbGroup(std::vector<std::int64_t> orders) : orders_(std::move(orders)) {
  if (orders_.empty()) orders_.push_back(1);
  for (auto d : orders_) {
    if (d < 1) throw ValidationError("cyclic factor order must be >= 1, got " + std::to_string(d));
    size_ *= d;
    exponent_ = std::lcm(exponent_, d);
  }
}

FinAbGroup FinAbGroup::make(std::vector<std::int64_t> orders) {
  std::sort(orders.begin(), orders.end(), std::greater<>());
  return FinAbGroup(std::move(orders));
}

FinAbGroup FinAbGroup::from_factors(std::vector<std::int64_t> orders) { return FinAbGroup(std::move(orders)); }

std::string FinAbGroup::spec() const {
  std::string out;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (i) out += 'x';
    out += 'Z' + std::to_string(orders_[i]);
  }
  return out;
}

FinAbGroup direct_sum(const FinAbGroup& b, const FinAbGroup& c) {
  std::vector<std::int64_t> orders;
  for (auto d : b.orders())
    if (d > 1) orders.push_back(d);
  for (auto d : c.orders())
    if (d > 1) orders.push_back(d);
  return FinAbGroup::from_factors(std::move(orders));
}

GroupElem::GroupElem(FinAbGroup group, std::vector<std::int64_t> coords)
    : group_(std::move(group)), coords_(std::move(coords)) {
  if (coords_.size() != group_.rank())
    throw ValidationError("element has " + std::to_string(coords_.size()) + " coordinates, group " +
                          group_.spec() + " needs " + std::to_string(group_.rank()));
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] = mod_floor(coords_[i], group_.order(i));
}

GroupElem GroupElem::zero(const FinAbGroup& group) {
  return GroupElem(group, std::vector<std::int64_t>(group.rank(), 0));
}

bool GroupElem::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](std::int64_t c) { return c == 0; });
}

GroupElem GroupElem::operator+(const GroupElem& o) const {
  if (!(group_ == o.group_))
    throw ValidationError("cannot add elements of " + group_.spec() + " and " + o.group_.spec());
  std::vector<std::int64_t> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] + o.coords_[i];
  return GroupElem(group_, std::move(c));
}

GroupElem GroupElem::operator-() const {
  std::vector<std::int64_t> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coords_[i];
  return GroupElem(group_, std::move(c));
}

GroupElem GroupElem::scaled(std::int64_t n) const {
  std::vector<std::int64_t> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod_floor(n, group_.order(i)) * coords_[i];
  return GroupElem(group_, std::move(c));
}

std::vector<GroupElem> enumerate_elements(const FinAbGroup& group) {
  std::vector<GroupElem> out;
  out.reserve(static_cast<std::size_t>(group.size()));
  std::vector<std::int64_t> c(group.rank(), 0);
  for (std::int64_t k = 0; k < group.size(); ++k) {
    out.emplace_back(group, c);
    for (std::size_t i = c.size(); i-- > 0;) {
      if (++c[i] < group.order(i)) break;
      c[i] = 0;
    }
  }
  return out;
}

Phase pairing(const GroupElem& chi, const GroupElem& a) {
  if (chi.group().orders() != a.group().orders())
    throw ValidationError("pairing shape mismatch: " + chi.group().spec() + " vs " + a.group().spec());
  Phase acc;
  for (std::size_t i = 0; i < a.coords().size(); ++i) acc = acc + Phase(chi[i] * a[i], a.group().order(i));
  return acc;
}

GroupHom::GroupHom(FinAbGroup source, FinAbGroup target, std::vector<std::int64_t> row_major)
    : source_(std::move(source)), target_(std::move(target)), m_(std::move(row_major)) {
  const std::size_t rows = target_.rank(), cols = source_.rank();
  if (m_.size() != rows * cols) throw ValidationError("homomorphism matrix has the wrong shape");
  for (std::size_t i = 0; i < rows; ++i) {
    const std::int64_t di = target_.order(i);
    for (std::size_t j = 0; j < cols; ++j) {
      auto& e = m_[i * cols + j];
      e = mod_floor(e, di);
      if (e % (di / std::gcd(di, source_.order(j))) != 0)
        throw ValidationError("matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                              ") does not define a homomorphism");
    }
  }
}

std::vector<std::int64_t> GroupHom::apply(const std::vector<std::int64_t>& coords) const {
  const std::size_t rows = target_.rank(), cols = source_.rank();
  std::vector<std::int64_t> out(rows, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < cols; ++j) acc = (acc + m_[i * cols + j] * coords[j]) % target_.order(i);
    out[i] = mod_floor(acc, target_.order(i));
  }
  return out;
}

GroupElem GroupHom::apply(const GroupElem& a) const {
  if (!(a.group() == source_)) throw ValidationError("homomorphism applied to an element of the wrong group");
  return GroupElem(target_, apply(a.coords()));
}

GroupHom dual_map(const GroupHom& psi) {
  // (psi^* chi)_j = d'_j * sum_i chi_i psi(i, j) / d_i.
  const FinAbGroup& a = psi.target();
  const FinAbGroup& a_prime = psi.source();
  std::vector<std::int64_t> m(a_prime.rank() * a.rank());
  for (std::size_t j = 0; j < a_prime.rank(); ++j) {
    for (std::size_t i = 0; i < a.rank(); ++i) {
      const std::int64_t num = a_prime.order(j) * psi.at(i, j);
      if (num % a.order(i) != 0) throw InternalError("dual map entry is not integral");
      m[j * a.rank() + i] = num / a.order(i);
    }
  }
  return GroupHom(a, a_prime, std::move(m));
}

int two_adic_valuation(std::int64_t n) {
  int v = 0;
  while (n > 0 && n % 2 == 0) {
    n /= 2;
    ++v;
  }
  return v;
}

PrimaryDecomposition primary_decompose(const FinAbGroup& group) {
  struct Part {
    std::int64_t order;
    std::size_t source;
  };
  std::vector<Part> odd, two;
  for (std::size_t i = 0; i < group.rank(); ++i) {
    const std::int64_t d = group.order(i);
    const std::int64_t p2 = std::int64_t{1} << two_adic_valuation(d);
    if (d / p2 > 1) odd.push_back({d / p2, i});
    if (p2 > 1) two.push_back({p2, i});
  }
  auto by_order = [](const Part& x, const Part& y) { return x.order > y.order; };
  std::stable_sort(odd.begin(), odd.end(), by_order);
  std::stable_sort(two.begin(), two.end(), by_order);

  std::vector<std::int64_t> odd_orders, two_orders;
  for (auto& p : odd) odd_orders.push_back(p.order);
  for (auto& p : two) two_orders.push_back(p.order);
  FinAbGroup odd_group = FinAbGroup::from_factors(odd_orders);
  FinAbGroup two_group = FinAbGroup::from_factors(two_orders);
  FinAbGroup parts = direct_sum(odd_group, two_group);

  const std::size_t m = group.rank(), k = parts.rank();
  std::vector<std::int64_t> to(k * m, 0), from(m * k, 0);
  std::vector<std::int64_t> odd_of(m, 1), two_of(m, 1);
  std::vector<std::ptrdiff_t> odd_pos(m, -1), two_pos(m, -1);
  for (std::size_t p = 0; p < odd.size(); ++p) {
    odd_pos[odd[p].source] = static_cast<std::ptrdiff_t>(p);
    odd_of[odd[p].source] = odd[p].order;
  }
  for (std::size_t q = 0; q < two.size(); ++q) {
    two_pos[two[q].source] = static_cast<std::ptrdiff_t>(odd.size() + q);
    two_of[two[q].source] = two[q].order;
  }
  for (std::size_t i = 0; i < m; ++i) {
    const std::int64_t o = odd_of[i], t = two_of[i], d = group.order(i);
    if (odd_pos[i] >= 0) {
      to[static_cast<std::size_t>(odd_pos[i]) * m + i] = 1;
      // CRT idempotent: 1 mod o, 0 mod t.
      from[i * k + static_cast<std::size_t>(odd_pos[i])] = mod_floor(t * mod_inverse(t, o), d);
    }
    if (two_pos[i] >= 0) {
      to[static_cast<std::size_t>(two_pos[i]) * m + i] = 1;
      from[i * k + static_cast<std::size_t>(two_pos[i])] = mod_floor(o * mod_inverse(o, t), d);
    }
  }
  GroupHom to_parts(group, parts, std::move(to));
  GroupHom from_parts(parts, group, std::move(from));
  return {std::move(odd_group), std::move(two_group), std::move(parts), std::move(to_parts), std::move(from_parts)};
}

}  // namespace cliffext
