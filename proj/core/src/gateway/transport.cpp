#include "seamquest/gateway/transport.hpp"

namespace seamquest::gateway {

void ChannelTransport::push(std::string frame) {
  {
    std::lock_guard lock(mutex_);
    if (closed_) return;
    inbox_.push_back(std::move(frame));
  }
  ready_.notify_one();
}

void ChannelTransport::close() {
  {
    std::lock_guard lock(mutex_);
    closed_ = true;
  }
  ready_.notify_all();
}

bool ChannelTransport::closed() const {
  std::lock_guard lock(mutex_);
  return closed_;
}

bool ChannelTransport::receive(std::vector<std::string>& frames, bool wait) {
  std::unique_lock lock(mutex_);
  if (wait) ready_.wait(lock, [this] { return closed_ || !inbox_.empty(); });
  while (!inbox_.empty()) {
    frames.push_back(std::move(inbox_.front()));
    inbox_.pop_front();
  }
  return !closed_;
}

void ChannelTransport::send(const std::string& frame) {
  if (closed()) throw TransportError("peer disconnected");
  sink_(frame);
}

bool ScriptedTransport::receive(std::vector<std::string>& frames, bool /*wait*/) {
  if (batches_.empty()) return false;
  for (auto& f : batches_.front()) frames.push_back(std::move(f));
  batches_.pop_front();
  return true;
}

}  // namespace seamquest::gateway
