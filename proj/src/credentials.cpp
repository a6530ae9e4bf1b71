/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "vdic/credentials.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>

#include "detail/json_util.hpp"

namespace vdic {

using detail::get_string;
using detail::require_keys;

Json CredentialProof::to_json() const {
  return Json{{"verificationMethod", verification_method},
              {"created", created},
              {"signature", signature}};
}

CredentialProof CredentialProof::from_json(const Json& j) {
  require_keys(j, {"verificationMethod", "created", "signature"}, {}, "proof");
  CredentialProof proof;
  proof.verification_method = get_string(j, "verificationMethod", "proof");
  proof.created = get_string(j, "created", "proof");
  proof.signature = get_string(j, "signature", "proof");
  return proof;
}

Json Credential::to_json() const {
  Json j;
  j["id"] = id;
  j["types"] = types;
  j["issuer"] = issuer.str();
  j["subject"] = subject.str();
  j["claims"] = claims;
  j["issuanceDate"] = issuance_date;
  if (proof) {
    j["proof"] = proof->to_json();
  }
  return j;
}

Credential Credential::from_json(const Json& j) {
  require_keys(j, {"id", "types", "issuer", "subject", "claims", "issuanceDate"},
               {"proof"}, "credential");
  Credential cred;
  cred.id = get_string(j, "id", "credential");
  if (!j.at("types").is_array()) {
    throw Error(Errc::malformed, "credential types is not an array");
  }
  for (const auto& t : j.at("types")) {
    if (!t.is_string()) {
      throw Error(Errc::malformed, "credential type entries must be strings");
    }
    cred.types.push_back(t.get<std::string>());
  }
  cred.issuer = Did::parse(get_string(j, "issuer", "credential"));
  cred.subject = Did::parse(get_string(j, "subject", "credential"));
  if (!j.at("claims").is_object()) {
    throw Error(Errc::malformed, "credential claims is not an object");
  }
  for (const auto& [key, value] : j.at("claims").items()) {
    if (!value.is_string()) {
      throw Error(Errc::malformed, "credential claim values must be strings");
    }
    cred.claims[key] = value.get<std::string>();
  }
  cred.issuance_date = get_string(j, "issuanceDate", "credential");
  if (j.contains("proof")) {
    cred.proof = CredentialProof::from_json(j.at("proof"));
  }
  return cred;
}

Bytes Credential::signing_payload() const {
  Json j = to_json();
  if (j.contains("proof")) {
    j["proof"].erase("signature");
  }
  return canonicalize(j);
}

bool Credential::has_type(const std::string& type) const {
  return std::find(types.begin(), types.end(), type) != types.end();
}

std::optional<std::string> Credential::claim(const std::string& key) const {
  auto it = claims.find(key);
  if (it == claims.end()) {
    return std::nullopt;
  }
  return it->second;
}

Json Presentation::to_json() const {
  Json j;
  j["holder"] = holder.str();
  Json creds = Json::array();
  for (const auto& c : credentials) creds.push_back(c.to_json());
  j["credentials"] = std::move(creds);
  j["created"] = created;
  j["nonce"] = nonce;
  if (proof) {
    j["proof"] = proof->to_json();
  }
  return j;
}

Presentation Presentation::from_json(const Json& j) {
  require_keys(j, {"holder", "credentials", "created", "nonce"}, {"proof"},
               "presentation");
  Presentation vp;
  vp.holder = Did::parse(get_string(j, "holder", "presentation"));
  if (!j.at("credentials").is_array()) {
    throw Error(Errc::malformed, "presentation credentials is not an array");
  }
  for (const auto& c : j.at("credentials")) {
    vp.credentials.push_back(Credential::from_json(c));
  }
  vp.created = get_string(j, "created", "presentation");
  vp.nonce = get_string(j, "nonce", "presentation");
  if (j.contains("proof")) {
    vp.proof = CredentialProof::from_json(j.at("proof"));
  }
  return vp;
}

Bytes Presentation::signing_payload() const {
  Json j = to_json();
  if (j.contains("proof")) {
    j["proof"].erase("signature");
  }
  return canonicalize(j);
}

Credential issue_credential(const KeyPair& issuer_kp, const Did& issuer,
                            const Did& subject, std::vector<std::string> types,
                            std::map<std::string, std::string> claims,
                            std::int64_t now_s) {
  if (issuer != did_from_keypair(issuer_kp)) {
    throw Error(Errc::invalid_argument, "issuer DID does not match the keypair");
  }
  Credential cred;
  if (std::find(types.begin(), types.end(), kCredentialBaseType) == types.end()) {
    types.insert(types.begin(), kCredentialBaseType);
  }
  cred.types = std::move(types);
  cred.issuer = issuer;
  cred.subject = subject;
  cred.claims = std::move(claims);
  cred.issuance_date = format_rfc3339(now_s);
  // Content-derived id: stable for identical issuance inputs.
  Key32 digest = sha256(canonicalize(cred.to_json()));
  cred.id = "urn:vdic:cred:" + to_hex(BytesView(digest.data(), digest.size()));
  cred.proof = CredentialProof{issuer.str() + "#key-1", cred.issuance_date, ""};
  Signature sig = sign(cred.signing_payload(), issuer_kp);
  cred.proof->signature = to_base64(BytesView(sig.data(), sig.size()));
  return cred;
}

namespace {

void check_credential(const Credential& cred, const LedgerStore& resolver,
                      VerificationResult& out, const std::string& prefix) {
  if (!cred.has_type(kCredentialBaseType)) {
    out.fail("expiry/format", prefix + "missing base credential type");
  }
  try {
    parse_rfc3339(cred.issuance_date);
  } catch (const Error&) {
    out.fail("expiry/format", prefix + "issuanceDate is not RFC 3339");
  }
  if (!cred.proof) {
    out.fail("signature", prefix + "credential carries no proof");
    return;
  }

  std::optional<DidDocument> issuer_doc = resolver.try_resolve(cred.issuer);
  if (!issuer_doc) {
    out.fail("issuer-resolution",
             prefix + "issuer not found on ledger: " + cred.issuer.str());
    return;
  }
  if (cred.proof->verification_method.rfind(cred.issuer.str() + "#", 0) != 0) {
    out.fail("signature", prefix + "proof method does not belong to the issuer");
    return;
  }
  try {
    Signature sig = detail::signature_from_base64(cred.proof->signature);
    if (!verify(cred.signing_payload(), sig, issuer_doc->authentication_key())) {
      out.fail("signature", prefix + "credential signature does not verify");
    }
  } catch (const Error& e) {
    out.fail("signature", prefix + e.what());
  }
}

}  // namespace

VerificationResult verify_credential(const Credential& cred,
                                     const LedgerStore& resolver) {
  VerificationResult result;
  check_credential(cred, resolver, result, "");
  return result;
}

Presentation create_presentation(const KeyPair& holder_kp, const Did& holder,
                                 std::vector<Credential> credentials,
                                 std::string nonce, std::int64_t now_s) {
  if (holder != did_from_keypair(holder_kp)) {
    throw Error(Errc::invalid_argument, "holder DID does not match the keypair");
  }
  for (const auto& cred : credentials) {
    if (cred.subject != holder) {
      throw Error(Errc::invalid_argument,
                  "presentation may only carry the holder's own credentials");
    }
  }
  Presentation vp;
  vp.holder = holder;
  vp.credentials = std::move(credentials);
  vp.created = format_rfc3339(now_s);
  vp.nonce = std::move(nonce);
  vp.proof = CredentialProof{holder.str() + "#key-1", vp.created, ""};
  Signature sig = sign(vp.signing_payload(), holder_kp);
  vp.proof->signature = to_base64(BytesView(sig.data(), sig.size()));
  return vp;
}

VerificationResult verify_presentation(
    const Presentation& vp, const LedgerStore& resolver,
    const std::optional<std::string>& expected_nonce) {
  VerificationResult result;
  try {
    parse_rfc3339(vp.created);
  } catch (const Error&) {
    result.fail("expiry/format", "presentation created is not RFC 3339");
  }
  if (expected_nonce && vp.nonce != *expected_nonce) {
    result.fail("holder-binding", "nonce does not match the issued challenge");
  }

  std::optional<DidDocument> holder_doc = resolver.try_resolve(vp.holder);
  if (!holder_doc) {
    result.fail("holder-binding",
                "holder not found on ledger: " + vp.holder.str());
  } else if (!vp.proof) {
    result.fail("signature", "presentation carries no proof");
  } else if (vp.proof->verification_method.rfind(vp.holder.str() + "#", 0) != 0) {
    result.fail("signature", "proof method does not belong to the holder");
  } else {
    try {
      Signature sig = detail::signature_from_base64(vp.proof->signature);
      if (!verify(vp.signing_payload(), sig, holder_doc->authentication_key())) {
        result.fail("signature", "presentation signature does not verify");
      }
    } catch (const Error& e) {
      result.fail("signature", e.what());
    }
  }

  for (const auto& cred : vp.credentials) {
    std::string prefix = "credential " + cred.id + ": ";
    if (cred.subject != vp.holder) {
      result.fail("holder-binding", prefix + "subject is not the holder");
    }
    check_credential(cred, resolver, result, prefix);
  }
  return result;
}

PresentationStore::PresentationStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
  for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
    if (!entry.is_regular_file()) continue;
    std::string name = entry.path().filename().string();
    auto sep = name.find("__");
    if (sep == std::string::npos) continue;
    std::string location = name.substr(0, sep) + "://" + name.substr(sep + 2);
    std::ifstream in(entry.path(), std::ios::binary);
    Bytes bytes((std::istreambuf_iterator<char>(in)),
                std::istreambuf_iterator<char>());
    blobs_[location] = std::move(bytes);
  }
}

std::filesystem::path PresentationStore::file_for(const std::string& location) const {
  auto sep = location.find("://");
  if (sep == std::string::npos) {
    throw Error(Errc::invalid_argument, "location has no scheme: " + location);
  }
  return dir_ / (location.substr(0, sep) + "__" + location.substr(sep + 3));
}

void PresentationStore::persist(const std::string& location, BytesView bytes) {
  if (dir_.empty()) return;
  std::ofstream out(file_for(location), std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(Errc::io_error, "cannot write presentation store entry");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

std::string PresentationStore::put(BytesView bytes) {
  Key32 digest = sha256(bytes);
  std::string location =
      "vpstore://" + to_hex(BytesView(digest.data(), digest.size()));
  put_at(location, bytes);
  return location;
}

void PresentationStore::put_at(const std::string& location, BytesView bytes) {
  std::unique_lock lock(mutex_);
  auto it = blobs_.find(location);
  if (it != blobs_.end()) {
    if (it->second == Bytes(bytes.begin(), bytes.end())) {
      return;
    }
    throw Error(Errc::conflict, "location already holds different bytes: " + location);
  }
  Bytes copy(bytes.begin(), bytes.end());
  persist(location, copy);
  blobs_[location] = std::move(copy);
}

std::optional<Bytes> PresentationStore::get(const std::string& location) const {
  std::shared_lock lock(mutex_);
  auto it = blobs_.find(location);
  if (it == blobs_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::vector<std::string> PresentationStore::locations() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  out.reserve(blobs_.size());
  for (const auto& [location, bytes] : blobs_) out.push_back(location);
  return out;
}

LinkResult link_presentation(PresentationStore& store, LedgerStore& ledger,
                             const KeyPair& holder_kp,
                             const DidDocument& holder_doc,
                             const Presentation& vp, std::int64_t now_s) {
  Did holder = did_from_keypair(holder_kp);
  std::string location = store.put(vp.serialize());

  DidDocument updated = holder_doc;
  updated.version = holder_doc.version + 1;
  int n = 1;
  std::string entry_id;
  do {
    entry_id = holder.str() + "#vp-" + std::to_string(n++);
  } while (updated.find_service(entry_id) != nullptr);
  updated.service.push_back(
      {entry_id, kLinkedPresentationServiceType, {location}});
  sign_document(updated, holder_kp, holder_doc.signing_method_id(),
                format_rfc3339(now_s));
  std::int64_t version = ledger.publish(updated);
  return {location, version};
}

std::vector<LinkedPresentation> fetch_linked_presentations(
    const Did& did, const LedgerStore& resolver, const PresentationStore& store) {
  DidDocument doc = resolver.resolve(did);
  std::vector<LinkedPresentation> out;
  for (const auto& entry : doc.service) {
    if (entry.type != kLinkedPresentationServiceType) continue;
    for (const auto& location : entry.service_endpoint) {
      LinkedPresentation item;
      item.location = location;
      std::optional<Bytes> bytes = store.get(location);
      if (!bytes) {
        item.result.fail("fetch", "location not found: " + location);
        out.push_back(std::move(item));
        continue;
      }
      try {
        Presentation vp = Presentation::from_json(parse_json(*bytes));
        item.presentation = vp;
        item.result = verify_presentation(vp, resolver);
        if (vp.holder != did) {
          item.result.fail("holder-binding",
                           "linked presentation holder is not the document subject");
        }
      } catch (const Error& e) {
        item.result.fail("fetch", std::string("invalid payload: ") + e.what());
      }
      out.push_back(std::move(item));
    }
  }
  return out;
}

}  // namespace vdic
