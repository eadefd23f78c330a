#include <boost/asio/connect.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "doctest.h"
#include "sonia/pack/loader.hpp"
#include "sonia/scene/bundle.hpp"
#include "sonia/service/server.hpp"
#include "test_support.hpp"

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;
using nlohmann::json;
using namespace sonia;

namespace {

std::shared_ptr<const scene::CompiledScene> anxiety_scene() {
  const auto pack = pack::load_pack(testing::anxiety_pack());
  REQUIRE(pack.ok());
  auto s = scene::compile_scene(*pack.value);
  REQUIRE(s.ok());
  return std::make_shared<const scene::CompiledScene>(std::move(*s.value));
}

http::response<http::string_body> get(unsigned short port, const std::string& target,
                                      http::verb verb = http::verb::get) {
  asio::io_context ioc;
  beast::tcp_stream stream(ioc);
  stream.connect(tcp::endpoint(asio::ip::make_address("127.0.0.1"), port));
  http::request<http::empty_body> req{verb, target, 11};
  req.set(http::field::host, "127.0.0.1");
  http::write(stream, req);
  beast::flat_buffer buffer;
  http::response<http::string_body> res;
  http::read(stream, buffer, res);
  beast::error_code ec;
  stream.socket().shutdown(tcp::socket::shutdown_both, ec);
  return res;
}

class WsClient {
 public:
  explicit WsClient(unsigned short port) : ws_(ioc_) {
    ws_.next_layer().connect(tcp::endpoint(asio::ip::make_address("127.0.0.1"), port));
    ws_.handshake("127.0.0.1", "/session");
  }
  ~WsClient() {
    beast::error_code ec;
    ws_.close(websocket::close_code::normal, ec);
  }
  void send(const std::string& text) { ws_.write(asio::buffer(text)); }
  json receive() {
    beast::flat_buffer buffer;
    ws_.read(buffer);
    return json::parse(beast::buffers_to_string(buffer.data()));
  }
  json call(const std::string& text) {
    send(text);
    return receive();
  }

 private:
  asio::io_context ioc_;
  websocket::stream<tcp::socket> ws_;
};

}  // namespace

TEST_CASE("http endpoints") {
  const auto scene = anxiety_scene();
  service::Server server(scene, {"127.0.0.1", 0, 2});
  server.start();
  const auto port = server.port();
  REQUIRE(port != 0);

  const auto health = get(port, "/health");
  CHECK(health.result() == http::status::ok);

  const auto bundle = get(port, "/scene");
  CHECK(bundle.result() == http::status::ok);
  CHECK(bundle.body() == scene::dump_canonical(scene::scene_to_json(*scene)));
  CHECK(scene::scene_from_json(json::parse(bundle.body())) == *scene);

  const auto mesh = get(port, "/meshes/amygdala");
  CHECK(mesh.result() == http::status::ok);
  CHECK(scene::mesh_from_json(json::parse(mesh.body())) == scene->meshes.at("amygdala"));

  CHECK(get(port, "/meshes/thalamus").result() == http::status::not_found);
  CHECK(get(port, "/nowhere").result() == http::status::not_found);
  CHECK(get(port, "/scene", http::verb::post).result() == http::status::method_not_allowed);
  server.stop();
}

TEST_CASE("scene bytes are identical across restarts") {
  std::string first;
  for (int i = 0; i < 2; ++i) {
    service::Server server(anxiety_scene(), {"127.0.0.1", 0, 1});
    server.start();
    const auto body = get(server.port(), "/scene").body();
    if (i == 0) first = body;
    else CHECK(body == first);
    server.stop();
  }
}

TEST_CASE("websocket sessions") {
  service::Server server(anxiety_scene(), {"127.0.0.1", 0, 2});
  server.start();

  SUBCASE("one reply per message, in order") {
    WsClient ws(server.port());
    CHECK(ws.call(R"({"type":"select_structure","id":"amygdala"})").at("type") == "effects");
    CHECK(ws.call(R"({"type":"select_connection","source":"amygdala","target":"mpfc"})").at("code") == "E_PHASE");
    CHECK(ws.call("garbage").at("code") == "E_PARSE");
    // Two newline-delimited messages in one frame get two replies.
    ws.send("{\"type\":\"get_progress\"}\n{\"type\":\"get_state\"}");
    CHECK(ws.receive().at("type") == "progress");
    const auto state = ws.receive();
    CHECK(state.at("type") == "state");
    CHECK(state.at("state").at("visited_structures") == json::array({"amygdala"}));
  }
  SUBCASE("sessions are independent") {
    WsClient a(server.port());
    WsClient b(server.port());
    a.call(R"({"type":"select_structure","id":"mpfc"})");
    CHECK(b.call(R"({"type":"get_state"})").at("state").at("visited_structures").empty());
    CHECK(a.call(R"({"type":"get_state"})").at("state").at("visited_structures").size() == 1);
  }
  server.stop();
}
