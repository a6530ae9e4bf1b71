/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "vdic/identity.hpp"

namespace vdic {

inline constexpr char kCredentialBaseType[] = "VerifiableCredential";
inline constexpr char kNodeOperatorCredentialType[] = "VdicNodeOperatorCredential";
inline constexpr char kAccessCredentialType[] = "VdicAccessCredential";
inline constexpr char kIdentityCredentialType[] = "IdentityCredential";
inline constexpr char kMotiveCredentialType[] = "MotiveCredential";

struct CredentialProof {
  std::string verification_method;
  std::string created;
  std::string signature;  // base64

  Json to_json() const;
  static CredentialProof from_json(const Json& j);
};

struct Credential {
  std::string id;  // urn:vdic:cred:<digest>
  std::vector<std::string> types;
  Did issuer;
  Did subject;
  std::map<std::string, std::string> claims;
  std::string issuance_date;  // RFC 3339
  std::optional<CredentialProof> proof;

  Json to_json() const;
  static Credential from_json(const Json& j);
  Bytes signing_payload() const;

  bool has_type(const std::string& type) const;
  std::optional<std::string> claim(const std::string& key) const;
};

struct Presentation {
  Did holder;
  std::vector<Credential> credentials;
  std::string created;  // RFC 3339
  std::string nonce;
  std::optional<CredentialProof> proof;

  Json to_json() const;
  static Presentation from_json(const Json& j);
  Bytes signing_payload() const;

  Bytes serialize() const { return canonicalize(to_json()); }
};

/// Outcome of credential or presentation verification. Failures are data,
/// never exceptions: (check, detail) with check one of "signature",
/// "issuer-resolution", "holder-binding", "expiry/format", "fetch".
struct VerificationResult {
  std::vector<std::pair<std::string, std::string>> failures;

  bool valid() const { return failures.empty(); }
  void fail(std::string check, std::string detail) {
    failures.emplace_back(std::move(check), std::move(detail));
  }
};

/// Immutable blob store addressed by location strings. Presentations are
/// stored at content-derived locations; explicit locations carry other
/// public payloads. Optionally directory-backed, one file per location.
class PresentationStore {
 public:
  PresentationStore() = default;
  explicit PresentationStore(std::filesystem::path dir);

  /// Stores at "vpstore://<sha256 hex>" derived from the bytes.
  std::string put(BytesView bytes);

  /// Stores at an explicit location. Rewriting a location with different
  /// bytes is a conflict; identical bytes are a no-op.
  void put_at(const std::string& location, BytesView bytes);

  std::optional<Bytes> get(const std::string& location) const;
  std::vector<std::string> locations() const;

 private:
  std::filesystem::path file_for(const std::string& location) const;
  void persist(const std::string& location, BytesView bytes);

  mutable std::shared_mutex mutex_;
  std::map<std::string, Bytes> blobs_;
  std::filesystem::path dir_;
};

Credential issue_credential(const KeyPair& issuer_kp, const Did& issuer,
                            const Did& subject, std::vector<std::string> types,
                            std::map<std::string, std::string> claims,
                            std::int64_t now_s);

VerificationResult verify_credential(const Credential& cred,
                                     const LedgerStore& resolver);

Presentation create_presentation(const KeyPair& holder_kp, const Did& holder,
                                 std::vector<Credential> credentials,
                                 std::string nonce, std::int64_t now_s);

VerificationResult verify_presentation(
    const Presentation& vp, const LedgerStore& resolver,
    const std::optional<std::string>& expected_nonce = std::nullopt);

inline constexpr char kLinkedPresentationServiceType[] =
    "LinkedVerifiablePresentation";

struct LinkResult {
  std::string location;
  std::int64_t document_version;
};

/// Stores the presentation and republishes the holder document with a
/// LinkedVerifiablePresentation service entry pointing at it.
LinkResult link_presentation(PresentationStore& store, LedgerStore& ledger,
                             const KeyPair& holder_kp,
                             const DidDocument& holder_doc,
                             const Presentation& vp, std::int64_t now_s);

struct LinkedPresentation {
  std::string location;
  std::optional<Presentation> presentation;
  VerificationResult result;
};

/// One entry per linked service endpoint; unreachable or invalid payloads
/// surface as failures, not errors. Throws only when `did` is unknown.
std::vector<LinkedPresentation> fetch_linked_presentations(
    const Did& did, const LedgerStore& resolver, const PresentationStore& store);

}  // namespace vdic
