/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "vdic/identity.hpp"

#include <fstream>
#include <mutex>

#include "detail/json_util.hpp"
#include "vdic/errors.hpp"

namespace vdic {

using detail::get_string;
using detail::key_from_base58;
using detail::require_keys;

namespace {

constexpr char kDidPrefix[] = "did:vdic:";
constexpr char kSigningKeyType[] = "Ed25519VerificationKey2018";
constexpr char kAgreementKeyType[] = "X25519KeyAgreementKey2019";

}  // namespace

Did Did::from_signing_public(const Key32& signing_public) {
  return Did(std::string(kDidPrefix) +
             to_base58(BytesView(signing_public.data(), signing_public.size())));
}

Did Did::parse(const std::string& text) {
  if (text.rfind(kDidPrefix, 0) != 0) {
    throw Error(Errc::malformed, "not a did:vdic identifier: " + text);
  }
  std::string suffix = text.substr(sizeof(kDidPrefix) - 1);
  Bytes raw = from_base58(suffix);
  if (raw.size() != 32 || to_base58(raw) != suffix) {
    throw Error(Errc::malformed, "non-canonical did:vdic identifier: " + text);
  }
  return Did(text);
}

Key32 Did::signing_public() const {
  if (value_.empty()) {
    throw Error(Errc::invalid_argument, "empty DID");
  }
  return key_from_base58(value_.substr(sizeof(kDidPrefix) - 1), "DID key");
}

Did did_from_keypair(const KeyPair& kp) {
  return Did::from_signing_public(kp.signing_public);
}

Json ServiceEntry::to_json() const {
  return Json{{"id", id}, {"type", type}, {"serviceEndpoint", service_endpoint}};
}

ServiceEntry ServiceEntry::from_json(const Json& j) {
  require_keys(j, {"id", "type", "serviceEndpoint"}, {}, "service entry");
  ServiceEntry entry;
  entry.id = get_string(j, "id", "service entry");
  entry.type = get_string(j, "type", "service entry");
  if (!j.at("serviceEndpoint").is_array()) {
    throw Error(Errc::malformed, "serviceEndpoint is not an array");
  }
  for (const auto& ep : j.at("serviceEndpoint")) {
    if (!ep.is_string()) {
      throw Error(Errc::malformed, "serviceEndpoint entries must be strings");
    }
    entry.service_endpoint.push_back(ep.get<std::string>());
  }
  return entry;
}

Json VerificationMethod::to_json() const {
  return Json{{"id", id},
              {"type", type},
              {"controller", controller},
              {"publicKeyBase58", public_key_base58}};
}

VerificationMethod VerificationMethod::from_json(const Json& j) {
  require_keys(j, {"id", "type", "controller", "publicKeyBase58"}, {},
               "verification method");
  VerificationMethod vm;
  vm.id = get_string(j, "id", "verification method");
  vm.type = get_string(j, "type", "verification method");
  vm.controller = get_string(j, "controller", "verification method");
  vm.public_key_base58 = get_string(j, "publicKeyBase58", "verification method");
  return vm;
}

Json DocumentProof::to_json() const {
  return Json{{"verificationMethod", verification_method},
              {"created", created},
              {"signature", signature}};
}

DocumentProof DocumentProof::from_json(const Json& j) {
  require_keys(j, {"verificationMethod", "created", "signature"}, {}, "proof");
  DocumentProof proof;
  proof.verification_method = get_string(j, "verificationMethod", "proof");
  proof.created = get_string(j, "created", "proof");
  proof.signature = get_string(j, "signature", "proof");
  return proof;
}

Json DidDocument::to_json() const {
  Json j;
  j["@context"] = context;
  j["id"] = id.str();
  Json controllers = Json::array();
  for (const auto& c : controller) controllers.push_back(c.str());
  j["controller"] = std::move(controllers);
  Json methods = Json::array();
  for (const auto& vm : verification_method) methods.push_back(vm.to_json());
  j["verificationMethod"] = std::move(methods);
  j["authentication"] = authentication;
  Json services = Json::array();
  for (const auto& s : service) services.push_back(s.to_json());
  j["service"] = std::move(services);
  j["version"] = version;
  if (proof) {
    j["proof"] = proof->to_json();
  }
  return j;
}

DidDocument DidDocument::from_json(const Json& j) {
  require_keys(j,
               {"@context", "id", "controller", "verificationMethod",
                "authentication", "service", "version"},
               {"proof"}, "DID document");
  DidDocument doc;
  doc.context.clear();
  for (const auto& c : j.at("@context")) {
    doc.context.push_back(c.get<std::string>());
  }
  doc.id = Did::parse(get_string(j, "id", "DID document"));
  doc.controller.clear();
  for (const auto& c : j.at("controller")) {
    doc.controller.push_back(Did::parse(c.get<std::string>()));
  }
  for (const auto& vm : j.at("verificationMethod")) {
    doc.verification_method.push_back(VerificationMethod::from_json(vm));
  }
  for (const auto& a : j.at("authentication")) {
    doc.authentication.push_back(a.get<std::string>());
  }
  for (const auto& s : j.at("service")) {
    doc.service.push_back(ServiceEntry::from_json(s));
  }
  if (!j.at("version").is_number_integer()) {
    throw Error(Errc::malformed, "DID document version is not an integer");
  }
  doc.version = j.at("version").get<std::int64_t>();
  if (j.contains("proof")) {
    doc.proof = DocumentProof::from_json(j.at("proof"));
  }
  return doc;
}

Bytes DidDocument::signing_payload() const {
  Json j = to_json();
  if (j.contains("proof")) {
    j["proof"].erase("signature");
  }
  return canonicalize(j);
}

const VerificationMethod* DidDocument::find_method(const std::string& method_id) const {
  for (const auto& vm : verification_method) {
    if (vm.id == method_id) return &vm;
  }
  return nullptr;
}

const ServiceEntry* DidDocument::find_service(const std::string& service_id) const {
  for (const auto& s : service) {
    if (s.id == service_id) return &s;
  }
  return nullptr;
}

Key32 DidDocument::authentication_key() const {
  if (authentication.size() != 1) {
    throw Error(Errc::malformed, "document must carry exactly one authentication method");
  }
  const VerificationMethod* vm = find_method(authentication.front());
  if (vm == nullptr || vm->type != kSigningKeyType) {
    throw Error(Errc::malformed, "authentication method missing or of wrong type");
  }
  return key_from_base58(vm->public_key_base58, "authentication key");
}

std::optional<Key32> DidDocument::agreement_key() const {
  for (const auto& vm : verification_method) {
    if (vm.type == kAgreementKeyType) {
      return key_from_base58(vm.public_key_base58, "agreement key");
    }
  }
  return std::nullopt;
}

DidDocument create_did_document(const Did& did, const std::vector<Did>& controller,
                                const KeyPair& kp, std::int64_t now_s) {
  if (did != did_from_keypair(kp)) {
    throw Error(Errc::invalid_argument, "DID does not match the supplied keypair");
  }
  DidDocument doc;
  doc.id = did;
  doc.controller = controller.empty() ? std::vector<Did>{did} : controller;
  doc.verification_method = {
      {doc.signing_method_id(), kSigningKeyType, did.str(),
       to_base58(BytesView(kp.signing_public.data(), kp.signing_public.size()))},
      {doc.agreement_method_id(), kAgreementKeyType, did.str(),
       to_base58(BytesView(kp.agreement_public.data(), kp.agreement_public.size()))},
  };
  doc.authentication = {doc.signing_method_id()};
  doc.version = 1;
  bool self_controlled = false;
  for (const auto& c : doc.controller) self_controlled = self_controlled || c == did;
  if (self_controlled) {
    sign_document(doc, kp, doc.signing_method_id(), format_rfc3339(now_s));
  }
  return doc;
}

void sign_document(DidDocument& doc, const KeyPair& signer_kp,
                   const std::string& verification_method_id,
                   const std::string& created) {
  doc.proof = DocumentProof{verification_method_id, created, ""};
  Signature sig = sign(doc.signing_payload(), signer_kp);
  doc.proof->signature = to_base64(BytesView(sig.data(), sig.size()));
}

LedgerStore::LedgerStore(std::filesystem::path file) : file_(std::move(file)) {
  load_file();
}

void LedgerStore::load_file() {
  if (file_.empty() || !std::filesystem::exists(file_)) {
    return;
  }
  std::ifstream in(file_);
  if (!in) {
    throw Error(Errc::io_error, "cannot open ledger file " + file_.string());
  }
  in.seekg(file_offset_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json j = parse_json(line);
    DidDocument doc = DidDocument::from_json(j.at("document"));
    validate(doc);
    entries_.push_back({doc.id, doc.version, doc});
    latest_index_[doc.id.str()] = entries_.size() - 1;
  }
  file_offset_ = static_cast<std::streamoff>(std::filesystem::file_size(file_));
}

void LedgerStore::refresh() {
  std::unique_lock lock(mutex_);
  load_file();
}

void LedgerStore::validate(const DidDocument& doc) const {
  if (doc.context.empty()) {
    throw Error(Errc::malformed, "document has no @context");
  }
  if (doc.controller.empty()) {
    throw Error(Errc::malformed, "document has no controller");
  }
  if (doc.version < 1) {
    throw Error(Errc::malformed, "document version must be positive");
  }
  if (!doc.proof) {
    throw Error(Errc::unauthorized, "document has no proof");
  }
  // The method-specific id is the signing key, so the authentication key is
  // pinned to the DID itself.
  Key32 auth_key = doc.authentication_key();
  if (auth_key != doc.id.signing_public()) {
    throw Error(Errc::malformed,
                "authentication key does not match the DID-embedded key");
  }

  std::optional<DidDocument> previous = latest_locked(doc.id);
  std::int64_t expected = previous ? previous->version + 1 : 1;
  if (doc.version != expected) {
    throw Error(Errc::stale_version,
                "expected version " + std::to_string(expected) + " for " +
                    doc.id.str() + ", got " + std::to_string(doc.version));
  }

  // Updates must be signed by a controller of the *previous* revision;
  // first revisions by a controller they declare themselves.
  const std::vector<Did>& authorized =
      previous ? previous->controller : doc.controller;
  std::string vm_id = doc.proof->verification_method;
  auto hash_pos = vm_id.find('#');
  if (hash_pos == std::string::npos) {
    throw Error(Errc::malformed, "proof verificationMethod has no fragment");
  }
  Did signer = Did::parse(vm_id.substr(0, hash_pos));
  bool signer_authorized = false;
  for (const auto& c : authorized) signer_authorized = signer_authorized || c == signer;
  if (!signer_authorized) {
    throw Error(Errc::unauthorized,
                "proof signer " + signer.str() + " is not a controller");
  }

  Key32 signer_key{};
  if (signer == doc.id) {
    signer_key = auth_key;
  } else {
    std::optional<DidDocument> signer_doc = latest_locked(signer);
    if (!signer_doc) {
      throw Error(Errc::not_found,
                  "controller document not published: " + signer.str());
    }
    signer_key = signer_doc->authentication_key();
  }

  Signature sig = detail::signature_from_base64(doc.proof->signature);
  if (!verify(doc.signing_payload(), sig, signer_key)) {
    throw Error(Errc::unauthorized, "document proof does not verify");
  }
}

void LedgerStore::append_validated(const DidDocument& doc, bool persist) {
  validate(doc);
  if (persist && !file_.empty()) {
    std::ofstream out(file_, std::ios::app);
    if (!out) {
      throw Error(Errc::io_error, "cannot append to ledger file " + file_.string());
    }
    Json line{{"did", doc.id.str()}, {"version", doc.version},
              {"document", doc.to_json()}};
    out << canonicalize_to_string(line) << "\n";
    out.flush();
    file_offset_ = static_cast<std::streamoff>(std::filesystem::file_size(file_));
  }
  entries_.push_back({doc.id, doc.version, doc});
  latest_index_[doc.id.str()] = entries_.size() - 1;
}

std::int64_t LedgerStore::publish(const DidDocument& doc) {
  std::unique_lock lock(mutex_);
  append_validated(doc, /*persist=*/true);
  return doc.version;
}

std::optional<DidDocument> LedgerStore::latest_locked(const Did& did) const {
  auto it = latest_index_.find(did.str());
  if (it == latest_index_.end()) {
    return std::nullopt;
  }
  return entries_[it->second].document;
}

DidDocument LedgerStore::resolve(const Did& did) const {
  std::shared_lock lock(mutex_);
  std::optional<DidDocument> doc = latest_locked(did);
  if (!doc) {
    throw Error(Errc::not_found, "DID not found: " + did.str());
  }
  return *doc;
}

std::optional<DidDocument> LedgerStore::try_resolve(const Did& did) const {
  std::shared_lock lock(mutex_);
  return latest_locked(did);
}

bool LedgerStore::contains(const Did& did) const {
  std::shared_lock lock(mutex_);
  return latest_index_.count(did.str()) > 0;
}

std::int64_t LedgerStore::latest_version(const Did& did) const {
  std::shared_lock lock(mutex_);
  std::optional<DidDocument> doc = latest_locked(did);
  return doc ? doc->version : 0;
}

std::vector<LedgerEntry> LedgerStore::entries() const {
  std::shared_lock lock(mutex_);
  return entries_;
}

std::size_t LedgerStore::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

}  // namespace vdic
