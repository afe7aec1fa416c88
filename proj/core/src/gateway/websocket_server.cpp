#include "seamquest/gateway/websocket_server.hpp"

#include <deque>
#include <mutex>
#include <thread>
#include <vector>

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/post.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

namespace seamquest::gateway {

namespace beast = boost::beast;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

namespace {

constexpr std::size_t kMaxMessageBytes = 64 * 1024;

class Connection : public std::enable_shared_from_this<Connection> {
 public:
  explicit Connection(tcp::socket socket)
      : ws_(std::move(socket)), transport_([this](const std::string& f) { enqueue(f); }) {}

  ChannelTransport& transport() { return transport_; }

  void start(std::function<void(std::shared_ptr<Connection>)> on_open) {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.read_message_max(kMaxMessageBytes);
    ws_.text(true);
    ws_.async_accept([self = shared_from_this(), on_open = std::move(on_open)](beast::error_code ec) {
      if (ec) {
        self->transport_.close();
        return;
      }
      self->read();
      on_open(self);
    });
  }

  /// Called by the session thread when it is done; flushes then closes.
  void finish() {
    net::post(ws_.get_executor(), [self = shared_from_this()] {
      self->finishing_ = true;
      if (self->outbox_.empty()) self->close();
    });
  }

  void abort() {
    net::post(ws_.get_executor(), [self = shared_from_this()] {
      self->transport_.close();
      beast::error_code ignored;
      beast::get_lowest_layer(self->ws_).socket().close(ignored);
    });
  }

 private:
  void enqueue(const std::string& frame) {
    net::post(ws_.get_executor(), [self = shared_from_this(), frame] {
      if (self->closing_) return;
      self->outbox_.push_back(frame);
      if (self->outbox_.size() == 1) self->write();
    });
  }

  void write() {
    ws_.async_write(net::buffer(outbox_.front()), [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) {
        self->outbox_.clear();
        self->transport_.close();
        return;
      }
      self->outbox_.pop_front();
      if (!self->outbox_.empty()) {
        self->write();
      } else if (self->finishing_) {
        self->close();
      }
    });
  }

  void read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) {
        self->transport_.close();
        return;
      }
      self->transport_.push(beast::buffers_to_string(self->buffer_.data()));
      self->buffer_.consume(self->buffer_.size());
      self->read();
    });
  }

  void close() {
    if (closing_) return;
    closing_ = true;
    ws_.async_close(websocket::close_code::normal,
                    [self = shared_from_this()](beast::error_code) { self->transport_.close(); });
  }

  websocket::stream<beast::tcp_stream> ws_;
  beast::flat_buffer buffer_;
  std::deque<std::string> outbox_;
  bool finishing_{false};
  bool closing_{false};
  ChannelTransport transport_;
};

}  // namespace

struct WebSocketServer::Impl {
  Impl(const std::string& address, unsigned short port, SessionHandler h)
      : acceptor(ioc), handler(std::move(h)) {
    const tcp::endpoint endpoint(net::ip::make_address(address), port);
    acceptor.open(endpoint.protocol());
    acceptor.set_option(net::socket_base::reuse_address(true));
    acceptor.bind(endpoint);
    acceptor.listen(net::socket_base::max_listen_connections);
  }

  void accept() {
    acceptor.async_accept(net::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
      if (ec) return;  // listener closed
      auto conn = std::make_shared<Connection>(std::move(socket));
      {
        std::lock_guard lock(mutex);
        connections.push_back(conn);
      }
      conn->start([this](std::shared_ptr<Connection> c) {
        std::lock_guard lock(mutex);
        sessions.emplace_back([this, c] {
          try {
            handler(c->transport());
          } catch (...) {
            // a failing session must not take the server down
          }
          c->finish();
        });
      });
      ++accepted;
      if (max_sessions == 0 || accepted < max_sessions) {
        accept();
      } else {
        beast::error_code ignored;
        acceptor.close(ignored);
      }
    });
  }

  void join_sessions() {
    std::vector<std::thread> threads;
    {
      std::lock_guard lock(mutex);
      threads.swap(sessions);
    }
    for (auto& t : threads) t.join();
  }

  net::io_context ioc;
  tcp::acceptor acceptor;
  SessionHandler handler;
  std::mutex mutex;
  std::vector<std::thread> sessions;
  std::vector<std::weak_ptr<Connection>> connections;
  std::size_t accepted{0};
  std::size_t max_sessions{0};
};

WebSocketServer::WebSocketServer(const std::string& address, unsigned short port, SessionHandler handler)
    : impl_(std::make_unique<Impl>(address, port, std::move(handler))) {}

WebSocketServer::~WebSocketServer() {
  impl_->ioc.stop();
  {
    std::lock_guard lock(impl_->mutex);
    for (auto& weak : impl_->connections) {
      if (auto c = weak.lock()) c->transport().close();
    }
  }
  impl_->join_sessions();
}

unsigned short WebSocketServer::port() const { return impl_->acceptor.local_endpoint().port(); }

void WebSocketServer::run(std::size_t max_sessions) {
  impl_->max_sessions = max_sessions;
  impl_->accept();
  impl_->ioc.run();
  impl_->join_sessions();
}

void WebSocketServer::stop() {
  Impl* impl = impl_.get();
  net::post(impl->ioc, [impl] {
    beast::error_code ignored;
    impl->acceptor.close(ignored);
    std::lock_guard lock(impl->mutex);
    for (auto& weak : impl->connections) {
      if (auto c = weak.lock()) c->abort();
    }
  });
}

}  // namespace seamquest::gateway
