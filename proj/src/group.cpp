#include "dbc/group.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <utility>

#include "dbc/wire.hpp"

namespace dbc {

namespace {

constexpr std::uint32_t kMaxModulus = 10000;
constexpr std::uint16_t kMaxDegree = 7;  // 7! = 5040

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::uint64_t factorial(std::uint32_t n) {
  std::uint64_t f = 1;
  for (std::uint32_t k = 2; k <= n; ++k) f *= k;
  return f;
}

class AdditiveGroup final : public Group {
 public:
  explicit AdditiveGroup(std::uint32_t n)
      : Group(GroupDescriptor{"z" + std::to_string(n), n, true,
                              Capability::transparent}),
        n_(n) {}

  Family family() const override { return Family::additive; }
  std::uint32_t family_param() const override { return n_; }

 private:
  ElementPayload compose_payload(const ElementPayload& x,
                                 const ElementPayload& y) const override {
    const auto a = std::get<std::uint32_t>(x);
    const auto b = std::get<std::uint32_t>(y);
    return static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(a) + b) % n_);
  }

  ElementPayload identity_payload() const override {
    return std::uint32_t{0};
  }

  ElementPayload invert_payload(const ElementPayload& x) const override {
    const auto a = std::get<std::uint32_t>(x);
    return static_cast<std::uint32_t>((n_ - a) % n_);
  }

  ElementPayload random_payload(Rng& rng) const override {
    return static_cast<std::uint32_t>(rng.uniform_below(n_));
  }

  ElementPayload payload_at(std::uint64_t index) const override {
    return static_cast<std::uint32_t>(index);
  }

  bool valid_payload(const ElementPayload& x) const override {
    const auto* v = std::get_if<std::uint32_t>(&x);
    return v != nullptr && *v < n_;
  }

  std::uint32_t n_;
};

class MultiplicativeGroup final : public Group {
 public:
  explicit MultiplicativeGroup(std::uint32_t p)
      : Group(GroupDescriptor{"zstar" + std::to_string(p),
                              std::uint64_t{p} - 1, true,
                              Capability::transparent}),
        p_(p) {}

  Family family() const override { return Family::multiplicative; }
  std::uint32_t family_param() const override { return p_; }

 private:
  ElementPayload compose_payload(const ElementPayload& x,
                                 const ElementPayload& y) const override {
    const auto a = std::get<std::uint32_t>(x);
    const auto b = std::get<std::uint32_t>(y);
    return static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(a) * b) % p_);
  }

  ElementPayload identity_payload() const override {
    return std::uint32_t{1};
  }

  ElementPayload invert_payload(const ElementPayload& x) const override {
    // Extended Euclid; p prime and x in [1, p) make the inverse exist.
    std::int64_t a = std::get<std::uint32_t>(x);
    std::int64_t m = p_;
    std::int64_t u = 1;
    std::int64_t v = 0;
    while (m != 0) {
      const std::int64_t q = a / m;
      a -= q * m;
      std::swap(a, m);
      u -= q * v;
      std::swap(u, v);
    }
    u %= p_;
    if (u < 0) u += p_;
    return static_cast<std::uint32_t>(u);
  }

  ElementPayload random_payload(Rng& rng) const override {
    // Rejection sampling over [0, p): resample the single excluded residue.
    for (;;) {
      const auto r = static_cast<std::uint32_t>(rng.uniform_below(p_));
      if (r != 0) return r;
    }
  }

  ElementPayload payload_at(std::uint64_t index) const override {
    return static_cast<std::uint32_t>(index + 1);
  }

  bool valid_payload(const ElementPayload& x) const override {
    const auto* v = std::get_if<std::uint32_t>(&x);
    return v != nullptr && *v >= 1 && *v < p_;
  }

  std::uint32_t p_;
};

class SymmetricGroup final : public Group {
 public:
  explicit SymmetricGroup(std::uint16_t degree)
      : Group(GroupDescriptor{"s" + std::to_string(degree),
                              factorial(degree), degree <= 2,
                              Capability::transparent}),
        degree_(degree) {}

  Family family() const override { return Family::permutation; }
  std::uint32_t family_param() const override { return degree_; }

 private:
  ElementPayload compose_payload(const ElementPayload& x,
                                 const ElementPayload& y) const override {
    // (p o q)(i) = p(q(i)): the right argument is applied first.
    const auto& p = std::get<Permutation>(x);
    const auto& q = std::get<Permutation>(y);
    Permutation out(degree_);
    for (std::uint16_t i = 0; i < degree_; ++i) {
      out[i] = p[q[i]];
    }
    return out;
  }

  ElementPayload identity_payload() const override {
    Permutation out(degree_);
    std::iota(out.begin(), out.end(), std::uint16_t{0});
    return out;
  }

  ElementPayload invert_payload(const ElementPayload& x) const override {
    const auto& p = std::get<Permutation>(x);
    Permutation out(degree_);
    for (std::uint16_t i = 0; i < degree_; ++i) {
      out[p[i]] = i;
    }
    return out;
  }

  ElementPayload random_payload(Rng& rng) const override {
    // Fisher-Yates, exactly uniform over the n! permutations.
    Permutation out(degree_);
    std::iota(out.begin(), out.end(), std::uint16_t{0});
    for (std::uint16_t i = degree_; i > 1; --i) {
      const auto j = static_cast<std::uint16_t>(rng.uniform_below(i));
      std::swap(out[i - 1], out[j]);
    }
    return out;
  }

  ElementPayload payload_at(std::uint64_t index) const override {
    // Lehmer code unranking.
    Permutation pool(degree_);
    std::iota(pool.begin(), pool.end(), std::uint16_t{0});
    Permutation out;
    out.reserve(degree_);
    std::uint64_t rem = index;
    for (std::uint16_t k = degree_; k >= 1; --k) {
      const std::uint64_t f = factorial(k - 1);
      const auto d = static_cast<std::size_t>(rem / f);
      rem %= f;
      out.push_back(pool[d]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(d));
    }
    return out;
  }

  bool valid_payload(const ElementPayload& x) const override {
    const auto* p = std::get_if<Permutation>(&x);
    if (p == nullptr || p->size() != degree_) return false;
    std::vector<bool> seen(degree_, false);
    for (std::uint16_t v : *p) {
      if (v >= degree_ || seen[v]) return false;
      seen[v] = true;
    }
    return true;
  }

  std::uint16_t degree_;
};

// Wraps any transparent backend; everything except inversion delegates.
class SealedGroup final : public Group {
 public:
  explicit SealedGroup(GroupPtr inner)
      : Group(GroupDescriptor{"sealed-" + inner->id(),
                              inner->descriptor().order,
                              inner->descriptor().abelian,
                              Capability::sealed}),
        inner_(std::move(inner)) {}

  Family family() const override { return inner_->family(); }
  std::uint32_t family_param() const override {
    return inner_->family_param();
  }

 private:
  Element unwrap(const ElementPayload& payload) const {
    return Element{inner_->id(), payload};
  }

  ElementPayload compose_payload(const ElementPayload& x,
                                 const ElementPayload& y) const override {
    return inner_->compose(unwrap(x), unwrap(y)).payload;
  }

  ElementPayload identity_payload() const override {
    return inner_->identity().payload;
  }

  ElementPayload invert_payload(const ElementPayload&) const override {
    // Unreachable: Group::invert rejects sealed backends first.
    throw CapabilityUnavailable("inversion is not available on " + id());
  }

  ElementPayload random_payload(Rng& rng) const override {
    return inner_->random_element(rng).payload;
  }

  ElementPayload payload_at(std::uint64_t index) const override {
    return inner_->element_at(index).payload;
  }

  bool valid_payload(const ElementPayload& x) const override {
    return inner_->contains(unwrap(x));
  }

  GroupPtr inner_;
};

std::optional<std::uint32_t> parse_canonical_u32(std::string_view digits) {
  if (digits.empty() || digits.size() > 9) return std::nullopt;
  if (digits.size() > 1 && digits.front() == '0') return std::nullopt;
  std::uint32_t value = 0;
  const auto* end = digits.data() + digits.size();
  const auto [ptr, ec] = std::from_chars(digits.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

}  // namespace

std::uint64_t Group::order() const {
  if (!desc_.order.has_value()) {
    throw Error("group order is unknown for backend " + id());
  }
  return *desc_.order;
}

Element Group::compose(const Element& x, const Element& y) const {
  check_member(x);
  check_member(y);
  return own(compose_payload(x.payload, y.payload));
}

Element Group::identity() const { return own(identity_payload()); }

Element Group::invert(const Element& x) const {
  if (sealed()) {
    throw CapabilityUnavailable("inversion is not available on sealed backend " +
                                id());
  }
  check_member(x);
  return own(invert_payload(x.payload));
}

Element Group::random_element(Rng& rng) const {
  return own(random_payload(rng));
}

Element Group::element_at(std::uint64_t index) const {
  if (index >= order()) {
    throw std::out_of_range("element index " + std::to_string(index) +
                            " out of range for " + id());
  }
  return own(payload_at(index));
}

bool Group::contains(const Element& x) const {
  return x.backend == id() && valid_payload(x.payload);
}

void Group::check_member(const Element& x) const {
  if (x.backend != id()) {
    throw BackendMismatch("element of backend '" + x.backend +
                          "' used with backend '" + id() + "'");
  }
  if (!valid_payload(x.payload)) {
    throw MalformedEncoding("element payload is not canonical for " + id());
  }
}

GroupPtr make_additive(std::uint32_t n) {
  if (n < 1 || n > kMaxModulus) {
    throw MalformedEncoding("additive modulus out of range: " +
                            std::to_string(n));
  }
  return std::make_shared<AdditiveGroup>(n);
}

GroupPtr make_multiplicative(std::uint32_t p) {
  if (p < 2 || p > kMaxModulus || !is_prime(p)) {
    throw MalformedEncoding("multiplicative modulus must be a prime <= " +
                            std::to_string(kMaxModulus) + ", got " +
                            std::to_string(p));
  }
  return std::make_shared<MultiplicativeGroup>(p);
}

GroupPtr make_symmetric(std::uint16_t degree) {
  if (degree < 1 || degree > kMaxDegree) {
    throw MalformedEncoding("permutation degree out of range: " +
                            std::to_string(degree));
  }
  return std::make_shared<SymmetricGroup>(degree);
}

GroupPtr seal(GroupPtr base) {
  if (base->sealed()) {
    throw MalformedEncoding("backend is already sealed: " + base->id());
  }
  return std::make_shared<SealedGroup>(std::move(base));
}

GroupPtr make_backend(std::string_view id) {
  constexpr std::string_view kSealedPrefix = "sealed-";
  if (id.starts_with(kSealedPrefix)) {
    return seal(make_backend(id.substr(kSealedPrefix.size())));
  }
  if (id.starts_with("zstar")) {
    if (const auto p = parse_canonical_u32(id.substr(5))) {
      return make_multiplicative(*p);
    }
  } else if (id.starts_with("z")) {
    if (const auto n = parse_canonical_u32(id.substr(1))) {
      return make_additive(*n);
    }
  } else if (id.starts_with("s")) {
    if (const auto d = parse_canonical_u32(id.substr(1))) {
      if (*d <= kMaxDegree) {
        return make_symmetric(static_cast<std::uint16_t>(*d));
      }
      throw MalformedEncoding("permutation degree out of range: " +
                              std::to_string(*d));
    }
  }
  throw MalformedEncoding("unknown backend id: '" + std::string(id) + "'");
}

std::vector<std::uint8_t> encode_element(const Group& g, const Element& x) {
  g.check_member(x);
  std::vector<std::uint8_t> out;
  std::uint8_t tag = static_cast<std::uint8_t>(g.family());
  if (g.sealed()) tag |= kSealedTagBit;
  wire::put_u8(out, tag);
  switch (g.family()) {
    case Family::additive:
    case Family::multiplicative:
      wire::put_u32(out, g.family_param());
      wire::put_u32(out, std::get<std::uint32_t>(x.payload));
      break;
    case Family::permutation: {
      wire::put_u16(out, static_cast<std::uint16_t>(g.family_param()));
      for (std::uint16_t img : std::get<Permutation>(x.payload)) {
        wire::put_u16(out, img);
      }
      break;
    }
  }
  return out;
}

DecodedElement decode_any_element(std::span<const std::uint8_t> bytes) {
  wire::Reader r(bytes);
  const std::uint8_t tag = r.u8();
  const bool sealed_flag = (tag & kSealedTagBit) != 0;
  const std::uint8_t fam = tag & ~kSealedTagBit;

  GroupPtr base;
  ElementPayload payload;
  switch (fam) {
    case static_cast<std::uint8_t>(Family::additive): {
      base = make_additive(r.u32());
      payload = r.u32();
      break;
    }
    case static_cast<std::uint8_t>(Family::multiplicative): {
      base = make_multiplicative(r.u32());
      payload = r.u32();
      break;
    }
    case static_cast<std::uint8_t>(Family::permutation): {
      const std::uint16_t degree = r.u16();
      base = make_symmetric(degree);
      Permutation p(degree);
      for (std::uint16_t i = 0; i < degree; ++i) {
        p[i] = r.u16();
      }
      payload = std::move(p);
      break;
    }
    default:
      throw MalformedEncoding("unknown element tag byte");
  }

  GroupPtr g = sealed_flag ? seal(std::move(base)) : std::move(base);
  Element e{g->id(), std::move(payload)};
  if (!g->contains(e)) {
    throw MalformedEncoding("decoded element payload is not canonical for " +
                            g->id());
  }
  return DecodedElement{std::move(g), std::move(e), r.consumed()};
}

Element decode_element(const Group& g, std::span<const std::uint8_t> bytes) {
  DecodedElement d = decode_any_element(bytes);
  if (d.consumed != bytes.size()) {
    throw MalformedEncoding("trailing bytes after element encoding");
  }
  if (d.group->id() != g.id()) {
    throw MalformedEncoding("element belongs to backend '" + d.group->id() +
                            "', expected '" + g.id() + "'");
  }
  return std::move(d.element);
}

}  // namespace dbc
