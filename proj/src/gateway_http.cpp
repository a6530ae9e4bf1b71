/**
 * Copyright 2026 VDIC Project Contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "vdic/gateway_http.hpp"

#include <httplib.h>

namespace vdic {

namespace {

void reply_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(canonicalize_to_string(body), "application/json");
}

void reply_error(httplib::Response& res, const GatewayError& e) {
  reply_json(res, e.http_status(), Json{{"error", e.reason()}, {"detail", e.what()}});
}

std::string bearer_token(const httplib::Request& req) {
  std::string auth = req.get_header_value("Authorization");
  constexpr char kPrefix[] = "Bearer ";
  if (auth.rfind(kPrefix, 0) != 0) {
    throw GatewayError(401, "unauthorized", "missing bearer token");
  }
  return auth.substr(sizeof(kPrefix) - 1);
}

}  // namespace

struct GatewayServer::Impl {
  httplib::Server server;
};

GatewayServer::GatewayServer(Gateway& gateway)
    : gateway_(gateway), impl_(std::make_unique<Impl>()) {
  auto& server = impl_->server;
  server.set_payload_max_length(gateway_.config().max_body_bytes + 1024 * 1024);

  server.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
    reply_json(res, 200,
               Json{{"status", "ok"}, {"vdic", gateway_.vdic().str()}});
  });

  server.Post("/auth/challenge",
              [this](const httplib::Request&, httplib::Response& res) {
                AuthChallenge challenge = gateway_.request_challenge();
                reply_json(res, 200,
                           Json{{"nonce", challenge.nonce}, {"ttl", challenge.ttl_s}});
              });

  server.Post("/auth/token", [this](const httplib::Request& req,
                                    httplib::Response& res) {
    try {
      Presentation vp = Presentation::from_json(parse_json(req.body));
      std::string token = gateway_.authenticate(vp, vp.nonce);
      reply_json(res, 200,
                 Json{{"token", token},
                      {"expires_in", gateway_.config().token_ttl_s}});
    } catch (const GatewayError& e) {
      reply_error(res, e);
    } catch (const Error& e) {
      reply_json(res, 400, Json{{"error", "malformed"}, {"detail", e.what()}});
    }
  });

  server.Post("/data", [this](const httplib::Request& req, httplib::Response& res) {
    try {
      WriteWait wait = WriteWait::leader;
      if (req.has_param("wait")) {
        std::string mode = req.get_param_value("wait");
        if (mode == "all") {
          wait = WriteWait::all;
        } else if (mode != "leader") {
          throw GatewayError(400, "malformed", "wait must be 'all' or 'leader'");
        }
      }
      Bytes body = to_bytes(req.body);
      Cid cid = gateway_.handle_write(bearer_token(req), body, wait);
      reply_json(res, 200, Json{{"cid", cid.str()}});
    } catch (const GatewayError& e) {
      reply_error(res, e);
    } catch (const Error& e) {
      reply_json(res, 400, Json{{"error", "malformed"}, {"detail", e.what()}});
    }
  });

  server.Get("/data/:cid", [this](const httplib::Request& req,
                                  httplib::Response& res) {
    try {
      Cid cid = Cid::parse(req.path_params.at("cid"));
      Bytes bytes = gateway_.handle_read(bearer_token(req), cid);
      res.status = 200;
      res.set_content(to_string(bytes), "application/octet-stream");
    } catch (const GatewayError& e) {
      reply_error(res, e);
    } catch (const Error& e) {
      int status = e.code() == Errc::malformed ? 400 : 404;
      reply_json(res, status, Json{{"error", errc_name(e.code())}, {"detail", e.what()}});
    }
  });
}

GatewayServer::~GatewayServer() { stop(); }

int GatewayServer::start(const std::string& host, int port) {
  auto& server = impl_->server;
  int bound = port;
  if (port == 0) {
    bound = server.bind_to_any_port(host);
    if (bound < 0) {
      throw Error(Errc::io_error, "cannot bind gateway to " + host);
    }
  } else if (!server.bind_to_port(host, port)) {
    throw Error(Errc::io_error,
                "cannot bind gateway to " + host + ":" + std::to_string(port));
  }
  serve_thread_ = std::thread([&server] { server.listen_after_bind(); });
  server.wait_until_ready();
  return bound;
}

void GatewayServer::stop() {
  if (impl_ && impl_->server.is_running()) {
    impl_->server.stop();
  }
  if (serve_thread_.joinable()) {
    serve_thread_.join();
  }
}

bool GatewayServer::running() const { return impl_ && impl_->server.is_running(); }

}  // namespace vdic
