#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dbc/group.hpp"

namespace dbc {

enum class Role { submitter, comparer };

// A party's long-lived private key. Submitter keys blind on the left,
// comparer keys on the right; the distinction matters on non-abelian
// backends.
struct PrivateKey {
  Element key;
  Role role = Role::submitter;
};

// Left-encrypted credential: cipher = key * tag * secret.
struct SubmitterToken {
  Element cipher;
  Element tag;

  friend bool operator==(const SubmitterToken&, const SubmitterToken&) =
      default;
};

// Right-encrypted credential: cipher = secret * tag * key.
struct ComparerToken {
  Element cipher;
  Element tag;

  friend bool operator==(const ComparerToken&, const ComparerToken&) = default;
};

// One blinded comparison request: {r * cipher, r * key * tag} for a fresh r.
struct Challenge {
  Element blinded_cipher;
  Element blinded_tag;

  friend bool operator==(const Challenge&, const Challenge&) = default;
};

// What the authority returns during issuance: the requester's nonce and a
// fresh authority nonce composed around the secret, plus that nonce.
struct AuthorityResponse {
  Element cipher;
  Element authority_nonce;
};

enum class SessionState { awaiting_authority, complete };

// Per-party state across the issuance exchange. Single use: finishing the
// session consumes it, and a second finish raises SessionConsumed.
class IssuanceSession {
 public:
  IssuanceSession(Role role, Element first_nonce)
      : role_(role), first_nonce_(std::move(first_nonce)) {}

  Role role() const { return role_; }
  SessionState state() const {
    return consumed_ ? SessionState::complete
                     : SessionState::awaiting_authority;
  }
  const Element& first_nonce() const { return first_nonce_; }

  Element take_nonce();

 private:
  Role role_;
  Element first_nonce_;
  bool consumed_ = false;
};

PrivateKey make_private_key(const Group& g, Role role, Rng& rng);

// --- Issuance, submitter side ---------------------------------------------
// The submitter sends a fresh nonce, the authority wraps its secret with the
// nonce plus one of its own, and the submitter folds in a second private
// nonce and the key. Each operation has an Rng overload (fresh nonce) and an
// explicit-nonce overload for deterministic replay.

std::pair<IssuanceSession, Element> submitter_begin(const Group& g, Rng& rng);
std::pair<IssuanceSession, Element> submitter_begin(const Group& g,
                                                    const Element& first_nonce);

AuthorityResponse authority_issue_left(const Group& g, const Element& requester_nonce,
                                       const Element& secret, Rng& rng);
AuthorityResponse authority_issue_left(const Group& g, const Element& requester_nonce,
                                       const Element& secret,
                                       const Element& authority_nonce);

SubmitterToken submitter_finish(const Group& g, IssuanceSession& session,
                                const AuthorityResponse& response,
                                const PrivateKey& key, Rng& rng);
SubmitterToken submitter_finish(const Group& g, IssuanceSession& session,
                                const AuthorityResponse& response,
                                const PrivateKey& key,
                                const Element& blinding_nonce);

// --- Issuance, comparer side (mirrored) -----------------------------------

std::pair<IssuanceSession, Element> comparer_begin(const Group& g, Rng& rng);
std::pair<IssuanceSession, Element> comparer_begin(const Group& g,
                                                   const Element& first_nonce);

AuthorityResponse authority_issue_right(const Group& g, const Element& requester_nonce,
                                        const Element& secret, Rng& rng);
AuthorityResponse authority_issue_right(const Group& g, const Element& requester_nonce,
                                        const Element& secret,
                                        const Element& authority_nonce);

ComparerToken comparer_finish(const Group& g, IssuanceSession& session,
                              const AuthorityResponse& response,
                              const PrivateKey& key, Rng& rng);
ComparerToken comparer_finish(const Group& g, IssuanceSession& session,
                              const AuthorityResponse& response,
                              const PrivateKey& key,
                              const Element& blinding_nonce);

// --- Comparison ------------------------------------------------------------

// Blinds the token under a fresh r; r is ephemeral and never persisted, so
// two challenges from one token are unlinkable.
Challenge make_challenge(const Group& g, const SubmitterToken& token,
                         const PrivateKey& key, Rng& rng);
Challenge make_challenge(const Group& g, const SubmitterToken& token,
                         const PrivateKey& key, const Element& blinding);

// Accepts iff both tokens wrap the same secret: the comparer checks
// blinded_cipher * (tag * key) == blinded_tag * cipher, which cancels to
// secret equality because the carrier is a group.
bool compare(const Group& g, const Challenge& challenge,
             const ComparerToken& token, const PrivateKey& key);

// --- Splitting --------------------------------------------------------------

// Derives an independently keyed copy of a submitter credential. The copy
// compares identically to the parent against every comparer token.
struct SplitResult {
  PrivateKey key;
  SubmitterToken token;
};

SplitResult split_submitter_token(const Group& g, const SubmitterToken& token,
                                  const PrivateKey& key, Rng& rng);
SplitResult split_submitter_token(const Group& g, const SubmitterToken& token,
                                  const PrivateKey& key, const Element& fresh_key,
                                  const Element& tag_blinding);

// --- Serialization -----------------------------------------------------------
// Message = 4-byte big-endian body length, then body = tag byte plus the two
// encoded elements. Tag bytes: 0x10 submitter token, 0x11 comparer token,
// 0x12 challenge.

inline constexpr std::uint8_t kSubmitterTokenTag = 0x10;
inline constexpr std::uint8_t kComparerTokenTag = 0x11;
inline constexpr std::uint8_t kChallengeTag = 0x12;

std::vector<std::uint8_t> encode_submitter_token(const Group& g,
                                                 const SubmitterToken& token);
std::vector<std::uint8_t> encode_comparer_token(const Group& g,
                                                const ComparerToken& token);
std::vector<std::uint8_t> encode_challenge(const Group& g,
                                           const Challenge& challenge);

SubmitterToken decode_submitter_token(const Group& g,
                                      std::span<const std::uint8_t> bytes);
ComparerToken decode_comparer_token(const Group& g,
                                    std::span<const std::uint8_t> bytes);
Challenge decode_challenge(const Group& g, std::span<const std::uint8_t> bytes);

}  // namespace dbc
