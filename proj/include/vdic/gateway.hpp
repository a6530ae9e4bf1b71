/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "vdic/cluster.hpp"
#include "vdic/credentials.hpp"
#include "vdic/errors.hpp"
#include "vdic/registry.hpp"

namespace vdic {

struct GatewayConfig {
  std::string bind_address = "127.0.0.1:7528";
  std::int64_t token_ttl_s = 300;
  std::int64_t challenge_ttl_s = 60;
  std::size_t max_body_bytes = 8 * 1024 * 1024;

  Json to_json() const;
  static GatewayConfig from_json(const Json& j);
};

struct AuthChallenge {
  std::string nonce;  // 16 random bytes, hex
  std::int64_t issued_at_s;
  std::int64_t ttl_s;
};

struct TokenPayload {
  std::string iss;  // VDIC DID
  std::string sub;  // DApp DID
  std::string scope;  // "read" | "readwrite"
  std::int64_t iat = 0;
  std::int64_t exp = 0;
  std::string jti;
};

enum class WriteWait { leader, all };

/// Credential-gated middleware in front of the leader's cluster node.
/// Authentication exchanges a presentation for a signed bearer token; the
/// revocation check happens here, at authentication time, so a delisted
/// DApp keeps access only until its token expires.
class Gateway {
 public:
  Gateway(GatewayConfig config, Did vdic, KeyPair vdic_kp, LedgerStore& ledger,
          ClusterHandle cluster, std::shared_ptr<Clock> clock);

  AuthChallenge request_challenge();

  /// Verifies the presentation against the challenge nonce, requires an
  /// access credential issued by this VDIC's leader for this VDIC, and
  /// checks the holder is still listed in the trusted actor registry.
  /// Returns the serialized token. Throws GatewayError (401/403).
  std::string authenticate(const Presentation& vp, const std::string& nonce);

  /// Throws GatewayError on bad signature, malformed token, or expiry
  /// (now == exp is already expired).
  TokenPayload verify_token(const std::string& token) const;

  Cid handle_write(const std::string& token, BytesView body,
                   WriteWait wait = WriteWait::leader);

  Bytes handle_read(const std::string& token, const Cid& cid);

  const Did& vdic() const { return vdic_; }
  const GatewayConfig& config() const { return config_; }
  ClusterHandle& cluster() { return cluster_; }

 private:
  struct ChallengeState {
    std::int64_t issued_at_s;
    bool consumed;
  };
  struct ChallengeStore {
    std::mutex mutex;
    std::map<std::string, ChallengeState> entries;
  };

  GatewayConfig config_;
  Did vdic_;
  KeyPair vdic_kp_;
  LedgerStore& ledger_;
  ClusterHandle cluster_;
  std::shared_ptr<Clock> clock_;
  std::unique_ptr<ChallengeStore> challenges_;
};

/// "EdDSA" JWT: base64url(header).base64url(payload).base64url(signature).
std::string encode_token(const TokenPayload& payload, const KeyPair& signer);

/// Signature and shape check only; expiry is the gateway's to enforce.
TokenPayload decode_token(const std::string& token, const Key32& signing_public);

}  // namespace vdic
