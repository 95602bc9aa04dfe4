#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dbc/errors.hpp"
#include "dbc/rng.hpp"

namespace dbc {

// Capability tier of a backend. A transparent group exposes inversion; a
// sealed group refuses it, making code that would need an inverse fail loudly
// instead of silently relying on one.
enum class Capability { transparent, sealed };

// Wire tag families for the element encoding. Values are the tag bytes
// (without the sealed high bit).
enum class Family : std::uint8_t {
  additive = 0x01,
  multiplicative = 0x02,
  permutation = 0x03,
};

inline constexpr std::uint8_t kSealedTagBit = 0x80;

struct GroupDescriptor {
  std::string backend_id;
  std::optional<std::uint64_t> order;  // exact when known
  bool abelian = true;
  Capability capability = Capability::transparent;
};

// One-line permutation: images of 0..n-1 in order.
using Permutation = std::vector<std::uint16_t>;
using ElementPayload = std::variant<std::uint32_t, Permutation>;

// Opaque group element. The payload is always canonical: residues reduced
// into [0, n) (multiplicatively [1, p)), permutations bijections on
// {0..n-1}. Two elements are equal iff backend and canonical payload match,
// which coincides with byte equality of their encodings.
struct Element {
  std::string backend;
  ElementPayload payload;

  friend bool operator==(const Element&, const Element&) = default;
};

// A finite group. Backends are stateless and side-effect-free; the only
// source of randomness is the explicit Rng parameter. All returned elements
// are canonical.
class Group {
 public:
  virtual ~Group() = default;

  const GroupDescriptor& descriptor() const { return desc_; }
  const std::string& id() const { return desc_.backend_id; }
  bool sealed() const { return desc_.capability == Capability::sealed; }
  std::uint64_t order() const;

  Element compose(const Element& x, const Element& y) const;
  Element identity() const;
  // Throws CapabilityUnavailable on sealed backends.
  Element invert(const Element& x) const;
  Element random_element(Rng& rng) const;
  // Unranking: bijection from [0, order) onto the group, for exhaustive
  // tests and experiments.
  Element element_at(std::uint64_t index) const;

  bool contains(const Element& x) const;
  void check_member(const Element& x) const;

  virtual Family family() const = 0;
  // Backend parameter: n for additive, p for multiplicative, degree for
  // permutation groups.
  virtual std::uint32_t family_param() const = 0;

 protected:
  explicit Group(GroupDescriptor desc) : desc_(std::move(desc)) {}

  Element own(ElementPayload payload) const {
    return Element{desc_.backend_id, std::move(payload)};
  }

 private:
  virtual ElementPayload compose_payload(const ElementPayload& x,
                                         const ElementPayload& y) const = 0;
  virtual ElementPayload identity_payload() const = 0;
  virtual ElementPayload invert_payload(const ElementPayload& x) const = 0;
  virtual ElementPayload random_payload(Rng& rng) const = 0;
  virtual ElementPayload payload_at(std::uint64_t index) const = 0;
  virtual bool valid_payload(const ElementPayload& x) const = 0;

  GroupDescriptor desc_;
};

using GroupPtr = std::shared_ptr<const Group>;

// Backend factories. Backends are deliberately desk-scale: modular groups
// accept n, p <= 10000 and permutation groups degree <= 7, so "negligible"
// quantities like 1/|G| are measurable rates.
GroupPtr make_additive(std::uint32_t n);
GroupPtr make_multiplicative(std::uint32_t p);
GroupPtr make_symmetric(std::uint16_t degree);
GroupPtr seal(GroupPtr base);

// Parses a backend id: "z7", "zstar11", "s5", "sealed-z101".
GroupPtr make_backend(std::string_view id);

// Canonical element encoding: 1 tag byte (family, high bit set when sealed),
// backend parameters (4-byte big-endian n or p, 2-byte big-endian degree),
// then the payload (4-byte big-endian residue, or degree many 2-byte
// big-endian images). Injective on the group; tests compare byte-for-byte.
std::vector<std::uint8_t> encode_element(const Group& g, const Element& x);

// Strict inverse of encode_element for a known group: the whole span must be
// one element of exactly this backend.
Element decode_element(const Group& g, std::span<const std::uint8_t> bytes);

// Self-describing decode: reconstructs the backend from the tag and
// parameters. `consumed` supports sequential parsing of concatenated
// elements.
struct DecodedElement {
  GroupPtr group;
  Element element;
  std::size_t consumed = 0;
};
DecodedElement decode_any_element(std::span<const std::uint8_t> bytes);

}  // namespace dbc
