/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "vdic/gateway.hpp"

#include "detail/json_util.hpp"

namespace vdic {

Json GatewayConfig::to_json() const {
  return Json{{"bind_address", bind_address},
              {"token_ttl_s", token_ttl_s},
              {"challenge_ttl_s", challenge_ttl_s},
              {"max_body_bytes", static_cast<std::int64_t>(max_body_bytes)}};
}

GatewayConfig GatewayConfig::from_json(const Json& j) {
  detail::require_keys(
      j, {"bind_address", "token_ttl_s", "challenge_ttl_s", "max_body_bytes"}, {},
      "gateway config");
  GatewayConfig cfg;
  cfg.bind_address = detail::get_string(j, "bind_address", "gateway config");
  cfg.token_ttl_s = j.at("token_ttl_s").get<std::int64_t>();
  cfg.challenge_ttl_s = j.at("challenge_ttl_s").get<std::int64_t>();
  cfg.max_body_bytes = j.at("max_body_bytes").get<std::size_t>();
  if (cfg.token_ttl_s <= 0) {
    throw Error(Errc::invalid_argument, "token ttl must be positive");
  }
  return cfg;
}

std::string encode_token(const TokenPayload& payload, const KeyPair& signer) {
  Json header{{"alg", "EdDSA"}, {"typ", "JWT"}};
  Json claims{{"iss", payload.iss}, {"sub", payload.sub},  {"scope", payload.scope},
              {"iat", payload.iat}, {"exp", payload.exp},  {"jti", payload.jti}};
  std::string signing_input = to_base64url(canonicalize(header)) + "." +
                              to_base64url(canonicalize(claims));
  Signature sig = sign(to_bytes(signing_input), signer);
  return signing_input + "." + to_base64url(BytesView(sig.data(), sig.size()));
}

TokenPayload decode_token(const std::string& token, const Key32& signing_public) {
  auto first = token.find('.');
  auto second = token.rfind('.');
  if (first == std::string::npos || second == first) {
    throw GatewayError(401, "malformed", "token is not a three-part JWT");
  }
  std::string signing_input = token.substr(0, second);
  TokenPayload payload;
  try {
    Json header = parse_json(from_base64url(token.substr(0, first)));
    if (header.at("alg") != "EdDSA" || header.at("typ") != "JWT") {
      throw GatewayError(401, "malformed", "unsupported token header");
    }
    Bytes sig_raw = from_base64url(token.substr(second + 1));
    if (sig_raw.size() != 64) {
      throw GatewayError(401, "bad_signature", "token signature is not 64 bytes");
    }
    Signature sig{};
    std::copy(sig_raw.begin(), sig_raw.end(), sig.begin());
    if (!verify(to_bytes(signing_input), sig, signing_public)) {
      throw GatewayError(401, "bad_signature", "token signature does not verify");
    }
    Json claims =
        parse_json(from_base64url(token.substr(first + 1, second - first - 1)));
    detail::require_keys(claims, {"iss", "sub", "scope", "iat", "exp", "jti"}, {},
                         "token payload");
    payload.iss = detail::get_string(claims, "iss", "token payload");
    payload.sub = detail::get_string(claims, "sub", "token payload");
    payload.scope = detail::get_string(claims, "scope", "token payload");
    payload.iat = claims.at("iat").get<std::int64_t>();
    payload.exp = claims.at("exp").get<std::int64_t>();
    payload.jti = detail::get_string(claims, "jti", "token payload");
  } catch (const GatewayError&) {
    throw;
  } catch (const Error& e) {
    throw GatewayError(401, "malformed", std::string("invalid token: ") + e.what());
  } catch (const Json::exception& e) {
    throw GatewayError(401, "malformed", std::string("invalid token: ") + e.what());
  }
  if (payload.scope != "read" && payload.scope != "readwrite") {
    throw GatewayError(401, "malformed", "unknown token scope: " + payload.scope);
  }
  return payload;
}

Gateway::Gateway(GatewayConfig config, Did vdic, KeyPair vdic_kp, LedgerStore& ledger,
                 ClusterHandle cluster, std::shared_ptr<Clock> clock)
    : config_(std::move(config)),
      vdic_(std::move(vdic)),
      vdic_kp_(vdic_kp),
      ledger_(ledger),
      cluster_(std::move(cluster)),
      clock_(std::move(clock)),
      challenges_(std::make_unique<ChallengeStore>()) {
  if (did_from_keypair(vdic_kp_) != vdic_) {
    throw Error(Errc::invalid_argument, "gateway keypair does not match the VDIC DID");
  }
}

AuthChallenge Gateway::request_challenge() {
  AuthChallenge challenge;
  challenge.nonce = to_hex(random_bytes(16));
  challenge.issued_at_s = clock_->unix_seconds();
  challenge.ttl_s = config_.challenge_ttl_s;
  std::lock_guard lock(challenges_->mutex);
  challenges_->entries[challenge.nonce] = {challenge.issued_at_s, false};
  return challenge;
}

std::string Gateway::authenticate(const Presentation& vp, const std::string& nonce) {
  std::int64_t now = clock_->unix_seconds();
  {
    std::lock_guard lock(challenges_->mutex);
    auto it = challenges_->entries.find(nonce);
    if (it == challenges_->entries.end()) {
      throw GatewayError(401, "bad_nonce", "unknown challenge nonce");
    }
    if (it->second.consumed) {
      throw GatewayError(401, "bad_nonce", "challenge nonce already used");
    }
    if (now - it->second.issued_at_s >= config_.challenge_ttl_s) {
      challenges_->entries.erase(it);
      throw GatewayError(401, "bad_nonce", "challenge nonce expired");
    }
    it->second.consumed = true;
  }

  ledger_.refresh();
  VerificationResult result = verify_presentation(vp, ledger_, nonce);
  if (!result.valid()) {
    std::string detail = "presentation rejected:";
    for (const auto& [check, message] : result.failures) {
      detail += " [" + check + "] " + message;
    }
    throw GatewayError(401, "invalid_presentation", detail);
  }

  DidDocument vdic_doc = ledger_.resolve(vdic_);
  const Did& leader = vdic_doc.controller.front();
  const Credential* access = nullptr;
  for (const auto& cred : vp.credentials) {
    if (!cred.has_type(kAccessCredentialType)) continue;
    if (cred.issuer != leader) {
      throw GatewayError(403, "wrong_issuer",
                         "access credential not issued by this VDIC's leader");
    }
    if (cred.claim("vdic") != std::optional<std::string>(vdic_.str())) {
      throw GatewayError(403, "wrong_vdic",
                         "access credential was issued for a different VDIC");
    }
    access = &cred;
  }
  if (access == nullptr) {
    throw GatewayError(403, "wrong_issuer",
                       "presentation carries no access credential for this VDIC");
  }
  std::optional<std::string> scope = access->claim("scope");
  if (scope != std::optional<std::string>("read") &&
      scope != std::optional<std::string>("readwrite")) {
    throw GatewayError(403, "wrong_vdic", "access credential has no usable scope");
  }

  // Revocation check: delisting from the registry kills authentication even
  // while the credential signature stays valid.
  if (!is_authorized(ledger_, vdic_, vp.holder, ActorRole::dapp)) {
    throw GatewayError(403, "revoked",
                       "holder is not listed in the trusted actor registry");
  }

  TokenPayload payload;
  payload.iss = vdic_.str();
  payload.sub = vp.holder.str();
  payload.scope = *scope;
  payload.iat = now;
  payload.exp = now + config_.token_ttl_s;
  payload.jti = to_hex(random_bytes(8));
  return encode_token(payload, vdic_kp_);
}

TokenPayload Gateway::verify_token(const std::string& token) const {
  TokenPayload payload = decode_token(token, vdic_kp_.signing_public);
  if (payload.iss != vdic_.str()) {
    throw GatewayError(401, "bad_signature", "token issuer is not this VDIC");
  }
  if (clock_->unix_seconds() >= payload.exp) {
    throw GatewayError(401, "expired", "token has expired");
  }
  return payload;
}

Cid Gateway::handle_write(const std::string& token, BytesView body, WriteWait wait) {
  TokenPayload payload = verify_token(token);
  if (payload.scope != "readwrite") {
    throw GatewayError(403, "scope", "token scope does not allow writes");
  }
  if (body.size() > config_.max_body_bytes) {
    throw GatewayError(413, "too_large",
                       "body exceeds configured maximum of " +
                           std::to_string(config_.max_body_bytes) + " bytes");
  }
  auto [cid, completion] = cluster_.add_and_pin(body);
  if (wait == WriteWait::all) {
    completion.wait();
  }
  return cid;
}

Bytes Gateway::handle_read(const std::string& token, const Cid& cid) {
  verify_token(token);
  try {
    return cluster_.get(cid);
  } catch (const Error& e) {
    if (e.code() == Errc::not_found) {
      throw GatewayError(404, "not_found", e.what());
    }
    throw;
  }
}

}  // namespace vdic
