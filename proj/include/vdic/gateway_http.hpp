/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <memory>
#include <string>
#include <thread>

#include "vdic/gateway.hpp"

namespace vdic {

/// HTTP surface over a Gateway:
///   GET  /health               -> {"status":"ok","vdic":...}
///   POST /auth/challenge       -> {"nonce":..., "ttl":...}
///   POST /auth/token           (body: serialized presentation) -> {"token","expires_in"}
///   POST /data?wait=all|leader (raw body, Bearer auth) -> {"cid":...}
///   GET  /data/{cid}           (Bearer auth) -> raw bytes
class GatewayServer {
 public:
  explicit GatewayServer(Gateway& gateway);
  ~GatewayServer();

  GatewayServer(const GatewayServer&) = delete;
  GatewayServer& operator=(const GatewayServer&) = delete;

  /// Binds host:port (port 0 picks a free one) and serves on a background
  /// thread. Returns the bound port.
  int start(const std::string& host, int port);

  void stop();

  bool running() const;

 private:
  struct Impl;
  Gateway& gateway_;
  std::unique_ptr<Impl> impl_;
  std::thread serve_thread_;
};

}  // namespace vdic
