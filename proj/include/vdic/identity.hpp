/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "vdic/canonical.hpp"
#include "vdic/clock.hpp"
#include "vdic/crypto.hpp"

namespace vdic {

/// did:vdic:<base58(signing_public)>. Parsing then re-serializing is the
/// identity; equality is canonical-string equality.
class Did {
 public:
  Did() = default;

  static Did from_signing_public(const Key32& signing_public);
  static Did parse(const std::string& text);

  const std::string& str() const { return value_; }
  Key32 signing_public() const;

  bool empty() const { return value_.empty(); }

  friend bool operator==(const Did& a, const Did& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Did& a, const Did& b) { return a.value_ != b.value_; }
  friend bool operator<(const Did& a, const Did& b) { return a.value_ < b.value_; }

 private:
  explicit Did(std::string value) : value_(std::move(value)) {}
  std::string value_;
};

struct ServiceEntry {
  std::string id;    // "<owner did>#<fragment>"
  std::string type;
  std::vector<std::string> service_endpoint;

  Json to_json() const;
  static ServiceEntry from_json(const Json& j);
};

struct VerificationMethod {
  std::string id;
  std::string type;        // "Ed25519VerificationKey2018" | "X25519KeyAgreementKey2019"
  std::string controller;  // did string
  std::string public_key_base58;

  Json to_json() const;
  static VerificationMethod from_json(const Json& j);
};

struct DocumentProof {
  std::string verification_method;  // "<signer did>#<fragment>"
  std::string created;              // RFC 3339
  std::string signature;            // base64

  Json to_json() const;
  static DocumentProof from_json(const Json& j);
};

struct DidDocument {
  std::vector<std::string> context{"https://www.w3.org/ns/did/v1"};
  Did id;
  std::vector<Did> controller;
  std::vector<VerificationMethod> verification_method;
  std::vector<std::string> authentication;
  std::vector<ServiceEntry> service;
  std::int64_t version = 1;
  std::optional<DocumentProof> proof;

  Json to_json() const;
  static DidDocument from_json(const Json& j);

  /// Bytes the proof signature covers: the document with the proof's
  /// signature field removed. Proof metadata stays inside the signed
  /// payload so it cannot be swapped after issuance.
  Bytes signing_payload() const;

  const VerificationMethod* find_method(const std::string& method_id) const;
  const ServiceEntry* find_service(const std::string& service_id) const;
  std::string signing_method_id() const { return id.str() + "#key-1"; }
  std::string agreement_method_id() const { return id.str() + "#key-agreement-1"; }

  /// Public signing key carried by the single authentication method.
  Key32 authentication_key() const;
  /// Public X25519 key, when the document carries one.
  std::optional<Key32> agreement_key() const;
};

struct LedgerEntry {
  Did did;
  std::int64_t version;
  DidDocument document;
};

/// Append-only public record of DID documents, stood in for a blockchain.
/// Optionally file-backed as JSON lines; concurrent readers, single writer.
class LedgerStore {
 public:
  LedgerStore() = default;
  explicit LedgerStore(std::filesystem::path file);

  /// Validates version succession and the controller proof, then appends.
  /// Returns the accepted version.
  std::int64_t publish(const DidDocument& doc);

  DidDocument resolve(const Did& did) const;
  std::optional<DidDocument> try_resolve(const Did& did) const;
  bool contains(const Did& did) const;
  std::int64_t latest_version(const Did& did) const;  // 0 when absent

  std::vector<LedgerEntry> entries() const;
  std::size_t size() const;

  /// Picks up lines appended to the backing file by other processes.
  void refresh();

 private:
  void append_validated(const DidDocument& doc, bool persist);
  void load_file();
  std::optional<DidDocument> latest_locked(const Did& did) const;
  void validate(const DidDocument& doc) const;

  mutable std::shared_mutex mutex_;
  std::vector<LedgerEntry> entries_;
  std::map<std::string, std::size_t> latest_index_;  // did -> entries_ index
  std::filesystem::path file_;
  std::streamoff file_offset_ = 0;
};

/// Builds a document carrying the pair's verification keys. Self-controlled
/// documents come back self-signed; otherwise the caller signs with a
/// controller key before publishing. `now_s` stamps the proof.
DidDocument create_did_document(const Did& did, const std::vector<Did>& controller,
                                const KeyPair& kp, std::int64_t now_s = 0);

Did did_from_keypair(const KeyPair& kp);

/// Sets the proof, signing with `signer_kp` as `verification_method_id`.
void sign_document(DidDocument& doc, const KeyPair& signer_kp,
                   const std::string& verification_method_id,
                   const std::string& created);

}  // namespace vdic
