#include "cliffext/symplectic_group.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "cliffext/errors.hpp"
#include "cliffext/kernels.hpp"

namespace cliffext {

namespace {

std::uint64_t mix(std::uint64_t key) { return key * 0x9E3779B97F4A7C15ULL; }

}  // namespace

SymplecticGroup::SymplecticGroup(std::shared_ptr<const DoubleSpace> space, std::vector<Rank> images)
    : space_(std::move(space)), dim_(space_->dim()) {
  const std::size_t n = images.size() / dim_;
  if (images.size() != n * dim_) throw InternalError("image list length is not a multiple of the dimension");
  // Key space is |V|^dim; refuse anything that does not fit in 63 bits.
  {
    long double span = 1;
    for (std::size_t i = 0; i < dim_; ++i) span *= static_cast<long double>(space_->size());
    if (span >= 9.2e18L) throw ResourceError("matrix key space too large for " + space_->base().spec());
  }
  std::vector<std::uint64_t> keys(n);
  for (std::size_t e = 0; e < n; ++e) keys[e] = key_of_images({images.data() + e * dim_, dim_});
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });

  const std::size_t vs = space_->size();
  keys_.resize(n);
  images_.resize(n * dim_);
  perms_.resize(n * vs);
  elements_.reserve(n);
  std::vector<std::uint8_t> hit(vs);
  for (std::size_t e = 0; e < n; ++e) {
    const std::size_t src = order[e];
    keys_[e] = keys[src];
    if (e && keys_[e] == keys_[e - 1]) throw InternalError("duplicate symplectic map in enumeration");
    std::copy_n(images.begin() + static_cast<std::ptrdiff_t>(src * dim_), dim_, images_.begin() + static_cast<std::ptrdiff_t>(e * dim_));
    elements_.push_back(EndoMap::from_images(*space_, this->images(e)));
    auto p = elements_.back().permutation(*space_);
    std::fill(hit.begin(), hit.end(), 0);
    for (auto w : p) {
      if (hit[w]) throw InternalError("enumerated map is not bijective: " + elements_.back().str());
      hit[w] = 1;
    }
    std::copy(p.begin(), p.end(), perms_.begin() + static_cast<std::ptrdiff_t>(e * vs));
  }

  std::size_t cap = 4;
  while (cap < 2 * n) cap <<= 1;
  slots_.assign(cap, 0);
  slot_shift_ = 64 - std::countr_zero(cap);
  for (std::size_t e = 0; e < n; ++e) {
    std::size_t h = static_cast<std::size_t>(mix(keys_[e]) >> slot_shift_);
    while (slots_[h]) h = (h + 1) & (cap - 1);
    slots_[h] = static_cast<std::uint32_t>(e + 1);
  }

  std::vector<Rank> id_images(dim_);
  for (std::size_t j = 0; j < dim_; ++j) id_images[j] = space_->generator(j);
  auto id = find_images(id_images);
  if (!id) throw InternalError("identity missing from symplectic group");
  identity_ = *id;

  inverse_.resize(n);
  std::vector<std::uint16_t> inv(vs);
  std::vector<Rank> img(dim_);
  for (std::size_t e = 0; e < n; ++e) {
    auto p = perm(e);
    for (std::size_t u = 0; u < vs; ++u) inv[p[u]] = static_cast<std::uint16_t>(u);
    for (std::size_t j = 0; j < dim_; ++j) img[j] = inv[space_->generator(j)];
    auto f = find_images(img);
    if (!f) throw InternalError("symplectic group not closed under inverse");
    inverse_[e] = *f;
  }
}

std::uint64_t SymplecticGroup::key_of_images(std::span<const Rank> images) const {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < dim_; ++i) {
    const auto m = static_cast<std::uint64_t>(space_->modulus(i));
    for (std::size_t j = 0; j < dim_; ++j) key = key * m + space_->coords(images[j])[i];
  }
  return key;
}

std::optional<std::size_t> SymplecticGroup::lookup(std::uint64_t key) const {
  const std::size_t mask = slots_.size() - 1;
  std::size_t h = static_cast<std::size_t>(mix(key) >> slot_shift_);
  while (slots_[h]) {
    const std::size_t e = slots_[h] - 1;
    if (keys_[e] == key) return e;
    h = (h + 1) & mask;
  }
  return std::nullopt;
}

std::optional<std::size_t> SymplecticGroup::find_images(std::span<const Rank> images) const {
  if (images.size() != dim_) throw ValidationError("need one image per generator");
  return lookup(key_of_images(images));
}

std::optional<std::size_t> SymplecticGroup::find(const EndoMap& t) const {
  if (t.moduli() != space_->moduli()) throw ValidationError("matrix does not act on this space");
  std::vector<Rank> img(dim_);
  for (std::size_t j = 0; j < dim_; ++j) img[j] = t.apply(*space_, space_->generator(j));
  auto f = find_images(img);
  if (f && !(elements_[*f] == t)) return std::nullopt;
  return f;
}

std::size_t SymplecticGroup::multiply(std::size_t i, std::size_t j) const {
  Rank img[64];
  auto p = perm(i);
  auto bj = images(j);
  for (std::size_t k = 0; k < dim_; ++k) img[k] = p[bj[k]];
  auto f = lookup(key_of_images({img, dim_}));
  if (!f) throw InternalError("symplectic group not closed under composition");
  return *f;
}

SymplecticGroup enumerate_sp(std::shared_ptr<const DoubleSpace> space, const EnumerationBudget& budget) {
  auto images = kernels::omp::symplectic_images(*space, budget.max_order);
  return SymplecticGroup(std::move(space), std::move(images));
}

std::size_t closure_size(const SymplecticGroup& group, std::span<const std::size_t> gens) {
  std::vector<std::uint8_t> seen(group.order(), 0);
  std::vector<std::size_t> queue{group.identity()};
  seen[group.identity()] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (auto g : gens) {
      const auto y = group.multiply(queue[head], g);
      if (!seen[y]) {
        seen[y] = 1;
        queue.push_back(y);
      }
    }
  return queue.size();
}

std::size_t element_order(const SymplecticGroup& group, std::size_t i) {
  std::size_t k = 1;
  for (std::size_t x = i; x != group.identity(); x = group.multiply(x, i)) ++k;
  return k;
}

std::vector<std::size_t> find_generating_set(const SymplecticGroup& group) {
  const std::size_t n = group.order();
  if (n == 1) return {};
  std::vector<std::size_t> ord(n);
  for (std::size_t i = 0; i < n; ++i) ord[i] = element_order(group, i);
  std::vector<std::size_t> by_order(n);
  std::iota(by_order.begin(), by_order.end(), 0);
  std::stable_sort(by_order.begin(), by_order.end(), [&](std::size_t a, std::size_t b) { return ord[a] > ord[b]; });

  const std::size_t a = by_order.front();
  if (ord[a] == n) return {a};
  constexpr std::size_t kPairAttempts = 256;
  for (std::size_t t = 1; t < std::min(n, kPairAttempts + 1); ++t) {
    const std::size_t gens[2] = {a, by_order[t]};
    if (closure_size(group, gens) == n) return {a, by_order[t]};
  }
  // Greedy: keep adding the first element outside the current closure.
  std::vector<std::size_t> gens{a};
  while (closure_size(group, gens) < n) {
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<std::size_t> queue{group.identity()};
    seen[group.identity()] = 1;
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (auto g : gens) {
        const auto y = group.multiply(queue[h], g);
        if (!seen[y]) {
          seen[y] = 1;
          queue.push_back(y);
        }
      }
    for (auto c : by_order)
      if (!seen[c]) {
        gens.push_back(c);
        break;
      }
  }
  return gens;
}

std::vector<std::uint32_t> right_multiplication_table(const SymplecticGroup& group, std::span<const std::size_t> gens) {
  const std::size_t n = group.order(), k = gens.size();
  std::vector<std::uint32_t> table(n * k);
#pragma omp parallel for schedule(static)
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t g = 0; g < k; ++g) table[t * k + g] = static_cast<std::uint32_t>(group.multiply(t, gens[g]));
  return table;
}

}  // namespace cliffext
