#include "sonia/service/server.hpp"

#include <boost/asio.hpp>
#include <boost/beast.hpp>
#include <boost/beast/websocket.hpp>
#include <deque>
#include <iostream>
#include <map>
#include <thread>

#include "sonia/scene/bundle.hpp"
#include "sonia/service/protocol.hpp"
#include "sonia/session/engine.hpp"

namespace sonia::service {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace {

struct Content {
  std::shared_ptr<const session::Engine> engine;
  std::string scene_bytes;
  std::map<std::string, std::string, std::less<>> mesh_bytes;
};

class WsSession : public std::enable_shared_from_this<WsSession> {
 public:
  WsSession(tcp::socket socket, const std::shared_ptr<const Content>& content)
      : ws_(std::move(socket)), content_(content), protocol_(content->engine) {}

  void run(http::request<http::string_body> req) {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(req, [self = shared_from_this()](beast::error_code ec) {
      if (!ec) self->read();
    });
  }

 private:
  void read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return;
      self->on_read();
    });
  }

  void on_read() {
    const std::string text = beast::buffers_to_string(buffer_.data());
    buffer_.consume(buffer_.size());
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string::npos) end = text.size();
      std::string_view line(text.data() + start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (!line.empty()) outbox_.push_back(protocol_.handle(line).dump());
      start = end + 1;
    }
    write_next();
  }

  void write_next() {
    if (outbox_.empty()) {
      read();
      return;
    }
    ws_.text(true);
    ws_.async_write(asio::buffer(outbox_.front()), [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return;
      self->outbox_.pop_front();
      self->write_next();
    });
  }

  websocket::stream<beast::tcp_stream> ws_;
  beast::flat_buffer buffer_;
  std::shared_ptr<const Content> content_;
  ProtocolSession protocol_;
  std::deque<std::string> outbox_;
};

class HttpSession : public std::enable_shared_from_this<HttpSession> {
 public:
  HttpSession(tcp::socket socket, std::shared_ptr<const Content> content)
      : stream_(std::move(socket)), content_(std::move(content)) {}

  void run() { read(); }

 private:
  void read() {
    req_ = {};
    stream_.expires_after(std::chrono::seconds(30));
    http::async_read(stream_, buffer_, req_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) {
        beast::error_code ignored;
        self->stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
        return;
      }
      self->on_read();
    });
  }

  void on_read() {
    if (websocket::is_upgrade(req_) && req_.target() == "/session") {
      stream_.expires_never();
      std::make_shared<WsSession>(stream_.release_socket(), content_)->run(std::move(req_));
      return;
    }
    res_ = respond();
    http::async_write(stream_, res_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) return;
      if (self->res_.need_eof()) {
        beast::error_code ignored;
        self->stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
        return;
      }
      self->read();
    });
  }

  http::response<http::string_body> respond() const {
    auto reply = [&](http::status status, std::string_view type, std::string body) {
      http::response<http::string_body> res{status, req_.version()};
      res.set(http::field::content_type, std::string(type));
      res.set(http::field::access_control_allow_origin, "*");
      res.keep_alive(req_.keep_alive());
      res.body() = std::move(body);
      res.prepare_payload();
      return res;
    };
    if (req_.method() != http::verb::get) {
      return reply(http::status::method_not_allowed, "text/plain", "method not allowed\n");
    }
    const std::string_view target(req_.target().data(), req_.target().size());
    if (target == "/health") return reply(http::status::ok, "text/plain", "ok\n");
    if (target == "/scene") return reply(http::status::ok, "application/json", content_->scene_bytes);
    constexpr std::string_view kMeshes = "/meshes/";
    if (target.starts_with(kMeshes)) {
      const auto it = content_->mesh_bytes.find(target.substr(kMeshes.size()));
      if (it != content_->mesh_bytes.end()) return reply(http::status::ok, "application/json", it->second);
    }
    return reply(http::status::not_found, "text/plain", "not found\n");
  }

  beast::tcp_stream stream_;
  beast::flat_buffer buffer_;
  std::shared_ptr<const Content> content_;
  http::request<http::string_body> req_;
  http::response<http::string_body> res_;
};

}  // namespace

struct Server::Impl {
  ServerOptions options;
  std::shared_ptr<const Content> content;
  asio::io_context io;
  std::optional<tcp::acceptor> acceptor;
  std::vector<std::thread> threads;
  unsigned short bound_port = 0;

  void bind() {
    const tcp::endpoint endpoint(asio::ip::make_address(options.host), options.port);
    acceptor.emplace(io);
    beast::error_code ec;
    acceptor->open(endpoint.protocol(), ec);
    if (!ec) acceptor->set_option(asio::socket_base::reuse_address(true), ec);
    if (!ec) acceptor->bind(endpoint, ec);
    if (!ec) acceptor->listen(asio::socket_base::max_listen_connections, ec);
    if (ec) throw std::runtime_error("cannot listen on " + options.host + ":" + std::to_string(options.port) + ": " + ec.message());
    bound_port = acceptor->local_endpoint().port();
    accept();
  }

  void accept() {
    acceptor->async_accept(asio::make_strand(io), [this](beast::error_code ec, tcp::socket socket) {
      if (ec == asio::error::operation_aborted) return;
      if (!ec) std::make_shared<HttpSession>(std::move(socket), content)->run();
      accept();
    });
  }
};

Server::Server(std::shared_ptr<const scene::CompiledScene> scene, ServerOptions options)
    : impl_(std::make_unique<Impl>()) {
  impl_->options = std::move(options);
  auto content = std::make_shared<Content>();
  content->scene_bytes = scene::dump_canonical(scene::scene_to_json(*scene));
  for (const auto& [id, mesh] : scene->meshes) {
    auto j = scene::mesh_to_json(mesh);
    j["id"] = id;
    content->mesh_bytes.emplace(id, j.dump());
  }
  content->engine = std::make_shared<const session::Engine>(std::move(scene));
  impl_->content = std::move(content);
}

Server::~Server() { stop(); }

void Server::start() {
  impl_->bind();
  const unsigned n = std::max(1u, impl_->options.threads);
  for (unsigned i = 0; i < n; ++i) impl_->threads.emplace_back([this] { impl_->io.run(); });
}

void Server::run() {
  impl_->bind();
  impl_->io.run();
}

void Server::stop() {
  impl_->io.stop();
  for (auto& t : impl_->threads) {
    if (t.joinable()) t.join();
  }
  impl_->threads.clear();
}

unsigned short Server::port() const { return impl_->bound_port; }

}  // namespace sonia::service
