#pragma once

// Binds service::handle to HTTP on localhost, with CORS for a local UI.

#include <string>

#include <httplib.h>

#include "qdilog/service.hpp"

namespace qdilog::service {

inline void install_routes(httplib::Server& srv, const Limits& lim = {}) {
  srv.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                           {"Access-Control-Allow-Methods", "POST, OPTIONS"},
                           {"Access-Control-Allow-Headers", "Content-Type"}});
  srv.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  for (const char* path : {"/frame", "/mutate", "/eval", "/compare", "/search"}) {
    srv.Post(path, [lim](const httplib::Request& req, httplib::Response& res) {
      Response r = handle(req.path, req.body, lim);
      res.status = r.status;
      res.set_content(r.body.dump(), "application/json");
    });
  }
}

/// Blocks serving on host:port.  Returns false if the port cannot be bound.
inline bool serve(const std::string& host, int port, const Limits& lim = {}) {
  httplib::Server srv;
  install_routes(srv, lim);
  return srv.listen(host, port);
}

}  // namespace qdilog::service
