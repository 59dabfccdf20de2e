#pragma once

#include <functional>
#include <string>

#include "predict/llm/chat.hpp"

namespace predict::llm {

// A chat-completion provider. Implementations must be safe to call from
// several threads at once.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual ChatResponse chat(const ChatRequest& request) = 0;
  virtual std::string id() const = 0;
};

// Computes responses with a user-supplied function. Used for synthetic
// generators in tests and analyses.
class CallbackBackend final : public Backend {
 public:
  using Fn = std::function<std::string(const ChatRequest&)>;
  CallbackBackend(std::string id, Fn fn) : id_(std::move(id)), fn_(std::move(fn)) {}

  ChatResponse chat(const ChatRequest& request) override;
  std::string id() const override { return id_; }

 private:
  std::string id_;
  Fn fn_;
};

}  // namespace predict::llm
