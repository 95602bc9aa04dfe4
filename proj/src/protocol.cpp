#include "dbc/protocol.hpp"

#include <array>

#include "dbc/wire.hpp"

namespace dbc {

namespace {

void require_role(const PrivateKey& key, Role expected, const char* op) {
  if (key.role != expected) {
    throw RoleMismatch(std::string(op) + ": key has the wrong role");
  }
}

void require_role(const IssuanceSession& session, Role expected,
                  const char* op) {
  if (session.role() != expected) {
    throw RoleMismatch(std::string(op) + ": session has the wrong role");
  }
}

}  // namespace

Element IssuanceSession::take_nonce() {
  if (consumed_) {
    throw SessionConsumed("issuance session already finished");
  }
  consumed_ = true;
  return first_nonce_;
}

PrivateKey make_private_key(const Group& g, Role role, Rng& rng) {
  return PrivateKey{g.random_element(rng), role};
}

std::pair<IssuanceSession, Element> submitter_begin(const Group& g, Rng& rng) {
  return submitter_begin(g, g.random_element(rng));
}

std::pair<IssuanceSession, Element> submitter_begin(const Group& g,
                                                    const Element& first_nonce) {
  g.check_member(first_nonce);
  return {IssuanceSession(Role::submitter, first_nonce), first_nonce};
}

AuthorityResponse authority_issue_left(const Group& g,
                                       const Element& requester_nonce,
                                       const Element& secret, Rng& rng) {
  return authority_issue_left(g, requester_nonce, secret,
                              g.random_element(rng));
}

AuthorityResponse authority_issue_left(const Group& g,
                                       const Element& requester_nonce,
                                       const Element& secret,
                                       const Element& authority_nonce) {
  // {requester_nonce * authority_nonce * secret, authority_nonce}. The
  // authority's nonce sits between the requester's nonce and the secret, so
  // a requester who knows an inverse for its own nonce still cannot peel the
  // secret out.
  return AuthorityResponse{
      g.compose(g.compose(requester_nonce, authority_nonce), secret),
      authority_nonce};
}

SubmitterToken submitter_finish(const Group& g, IssuanceSession& session,
                                const AuthorityResponse& response,
                                const PrivateKey& key, Rng& rng) {
  return submitter_finish(g, session, response, key, g.random_element(rng));
}

SubmitterToken submitter_finish(const Group& g, IssuanceSession& session,
                                const AuthorityResponse& response,
                                const PrivateKey& key,
                                const Element& blinding_nonce) {
  require_role(key, Role::submitter, "submitter_finish");
  require_role(session, Role::submitter, "submitter_finish");
  // Validate inputs before consuming the session so a mismatch leaves it
  // reusable.
  g.check_member(response.cipher);
  g.check_member(response.authority_nonce);
  g.check_member(blinding_nonce);
  g.check_member(key.key);
  const Element first_nonce = session.take_nonce();

  // tag = l_L * l_R * l_T; cipher = key * l_L * (l_R * l_T * secret)
  //     = key * tag * secret.
  Element tag = g.compose(g.compose(blinding_nonce, first_nonce),
                          response.authority_nonce);
  Element cipher = g.compose(g.compose(key.key, blinding_nonce),
                             response.cipher);
  return SubmitterToken{std::move(cipher), std::move(tag)};
}

std::pair<IssuanceSession, Element> comparer_begin(const Group& g, Rng& rng) {
  return comparer_begin(g, g.random_element(rng));
}

std::pair<IssuanceSession, Element> comparer_begin(const Group& g,
                                                   const Element& first_nonce) {
  g.check_member(first_nonce);
  return {IssuanceSession(Role::comparer, first_nonce), first_nonce};
}

AuthorityResponse authority_issue_right(const Group& g,
                                        const Element& requester_nonce,
                                        const Element& secret, Rng& rng) {
  return authority_issue_right(g, requester_nonce, secret,
                               g.random_element(rng));
}

AuthorityResponse authority_issue_right(const Group& g,
                                        const Element& requester_nonce,
                                        const Element& secret,
                                        const Element& authority_nonce) {
  // Mirror of the left flow: {secret * authority_nonce * requester_nonce,
  // authority_nonce}.
  return AuthorityResponse{
      g.compose(g.compose(secret, authority_nonce), requester_nonce),
      authority_nonce};
}

ComparerToken comparer_finish(const Group& g, IssuanceSession& session,
                              const AuthorityResponse& response,
                              const PrivateKey& key, Rng& rng) {
  return comparer_finish(g, session, response, key, g.random_element(rng));
}

ComparerToken comparer_finish(const Group& g, IssuanceSession& session,
                              const AuthorityResponse& response,
                              const PrivateKey& key,
                              const Element& blinding_nonce) {
  require_role(key, Role::comparer, "comparer_finish");
  require_role(session, Role::comparer, "comparer_finish");
  g.check_member(response.cipher);
  g.check_member(response.authority_nonce);
  g.check_member(blinding_nonce);
  g.check_member(key.key);
  const Element first_nonce = session.take_nonce();

  // tag = r_T * r_L * r_R; cipher = (secret * r_T * r_L) * r_R * key
  //     = secret * tag * key.
  Element tag = g.compose(g.compose(response.authority_nonce, first_nonce),
                          blinding_nonce);
  Element cipher = g.compose(g.compose(response.cipher, blinding_nonce),
                             key.key);
  return ComparerToken{std::move(cipher), std::move(tag)};
}

Challenge make_challenge(const Group& g, const SubmitterToken& token,
                         const PrivateKey& key, Rng& rng) {
  return make_challenge(g, token, key, g.random_element(rng));
}

Challenge make_challenge(const Group& g, const SubmitterToken& token,
                         const PrivateKey& key, const Element& blinding) {
  require_role(key, Role::submitter, "make_challenge");
  Element blinded_cipher = g.compose(blinding, token.cipher);
  Element blinded_tag = g.compose(g.compose(blinding, key.key), token.tag);
  return Challenge{std::move(blinded_cipher), std::move(blinded_tag)};
}

bool compare(const Group& g, const Challenge& challenge,
             const ComparerToken& token, const PrivateKey& key) {
  require_role(key, Role::comparer, "compare");
  const Element lhs = g.compose(challenge.blinded_cipher,
                                g.compose(token.tag, key.key));
  const Element rhs = g.compose(challenge.blinded_tag, token.cipher);
  return lhs == rhs;
}

SplitResult split_submitter_token(const Group& g, const SubmitterToken& token,
                                  const PrivateKey& key, Rng& rng) {
  const Element fresh_key = g.random_element(rng);
  const Element tag_blinding = g.random_element(rng);
  return split_submitter_token(g, token, key, fresh_key, tag_blinding);
}

SplitResult split_submitter_token(const Group& g, const SubmitterToken& token,
                                  const PrivateKey& key,
                                  const Element& fresh_key,
                                  const Element& tag_blinding) {
  require_role(key, Role::submitter, "split_submitter_token");
  // New key gamma = r; new tag c = s * key * tag; new cipher = r * s * cipher
  // = gamma * c * secret.
  Element cipher = g.compose(g.compose(fresh_key, tag_blinding), token.cipher);
  Element tag = g.compose(g.compose(tag_blinding, key.key), token.tag);
  return SplitResult{PrivateKey{fresh_key, Role::submitter},
                     SubmitterToken{std::move(cipher), std::move(tag)}};
}

namespace {

std::vector<std::uint8_t> encode_pair_message(const Group& g, std::uint8_t tag,
                                              const Element& first,
                                              const Element& second) {
  std::vector<std::uint8_t> body;
  wire::put_u8(body, tag);
  const auto a = encode_element(g, first);
  const auto b = encode_element(g, second);
  body.insert(body.end(), a.begin(), a.end());
  body.insert(body.end(), b.begin(), b.end());

  std::vector<std::uint8_t> out;
  wire::put_u32(out, static_cast<std::uint32_t>(body.size()));
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

std::pair<Element, Element> decode_pair_message(
    const Group& g, std::uint8_t expected_tag,
    std::span<const std::uint8_t> bytes) {
  wire::Reader r(bytes);
  const std::uint32_t length = r.u32();
  if (length != r.remaining()) {
    throw MalformedEncoding("message length prefix disagrees with body size");
  }
  const std::uint8_t tag = r.u8();
  if (tag != expected_tag) {
    throw MalformedEncoding("unexpected message tag byte");
  }

  auto body = r.rest();
  DecodedElement first = decode_any_element(body);
  DecodedElement second = decode_any_element(body.subspan(first.consumed));
  if (first.consumed + second.consumed != body.size()) {
    throw MalformedEncoding("trailing bytes after message elements");
  }
  if (first.group->id() != g.id() || second.group->id() != g.id()) {
    throw MalformedEncoding("message elements do not belong to backend " +
                            g.id());
  }
  return {std::move(first.element), std::move(second.element)};
}

}  // namespace

std::vector<std::uint8_t> encode_submitter_token(const Group& g,
                                                 const SubmitterToken& token) {
  return encode_pair_message(g, kSubmitterTokenTag, token.cipher, token.tag);
}

std::vector<std::uint8_t> encode_comparer_token(const Group& g,
                                                const ComparerToken& token) {
  return encode_pair_message(g, kComparerTokenTag, token.cipher, token.tag);
}

std::vector<std::uint8_t> encode_challenge(const Group& g,
                                           const Challenge& challenge) {
  return encode_pair_message(g, kChallengeTag, challenge.blinded_cipher,
                             challenge.blinded_tag);
}

SubmitterToken decode_submitter_token(const Group& g,
                                      std::span<const std::uint8_t> bytes) {
  auto [cipher, tag] = decode_pair_message(g, kSubmitterTokenTag, bytes);
  return SubmitterToken{std::move(cipher), std::move(tag)};
}

ComparerToken decode_comparer_token(const Group& g,
                                    std::span<const std::uint8_t> bytes) {
  auto [cipher, tag] = decode_pair_message(g, kComparerTokenTag, bytes);
  return ComparerToken{std::move(cipher), std::move(tag)};
}

Challenge decode_challenge(const Group& g,
                           std::span<const std::uint8_t> bytes) {
  auto [cipher, tag] = decode_pair_message(g, kChallengeTag, bytes);
  return Challenge{std::move(cipher), std::move(tag)};
}

}  // namespace dbc
