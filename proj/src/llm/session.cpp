#include "predict/llm/session.hpp"

#include <algorithm>
#include <fstream>

namespace predict::llm {

void TranscriptSink::add(ChatExchange e) {
  std::lock_guard lock(mu_);
  items_.push_back(std::move(e));
}

std::vector<ChatExchange> TranscriptSink::sorted() const {
  std::vector<ChatExchange> out;
  {
    std::lock_guard lock(mu_);
    out = items_;
  }
  std::stable_sort(out.begin(), out.end(), [](const ChatExchange& a, const ChatExchange& b) {
    if (a.stream != b.stream) return a.stream < b.stream;
    return a.seq < b.seq;
  });
  return out;
}

std::size_t TranscriptSink::size() const {
  std::lock_guard lock(mu_);
  return items_.size();
}

void TranscriptSink::write_jsonl(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw MissingFile("cannot write " + path.string());
  for (const auto& e : sorted()) out << to_json(e).dump() << '\n';
}

LlmSession::LlmSession(Backend& backend, std::string stream, TranscriptSink* sink)
    : backend_(backend), stream_(std::move(stream)), sink_(sink) {}

namespace {

int* counter_for(CallCounts& c, std::string_view t) {
  if (t == tag::coalesce) return &c.coalesce;
  if (t == tag::refine) return &c.refine;
  if (t == tag::breakdown) return &c.breakdown;
  if (t == tag::regenerate) return &c.regenerate;
  if (t == tag::validate) return &c.validate;
  if (t == tag::generate) return &c.generate;
  if (t == tag::judge) return &c.judge;
  if (t == tag::user_write) return &c.user_write;
  return nullptr;
}

bool is_retry(std::string_view t) { return t.size() > 6 && t.substr(t.size() - 6) == ".retry"; }

}  // namespace

ChatResponse LlmSession::send(const ChatRequest& req) {
  ChatRequest r = req;
  r.stream = stream_;
  if (is_retry(r.tag)) {
    ++counts_.retries;
  } else if (auto* c = counter_for(counts_, r.tag)) {
    ++*c;
  }
  try {
    auto resp = backend_.chat(r);
    counts_.prompt_tokens += resp.prompt_tokens;
    counts_.completion_tokens += resp.completion_tokens;
    return resp;
  } catch (const Error& ex) {
    log(r, ChatResponse{}, false, ex.what());
    throw;
  }
}

void LlmSession::log(const ChatRequest& req, ChatResponse resp, bool parsed, std::string error) {
  const auto seq = seq_++;
  if (!sink_) return;
  ChatExchange e;
  e.stream = stream_;
  e.seq = seq;
  e.request = req;
  e.request.stream = stream_;
  e.response = std::move(resp);
  e.parsed = parsed;
  e.error = std::move(error);
  sink_->add(std::move(e));
}

ChatResponse LlmSession::call(ChatRequest req) {
  auto resp = send(req);
  log(req, resp, true, "");
  return resp;
}

CallCounts LlmSession::take_counts() {
  auto c = counts_;
  counts_ = CallCounts{};
  return c;
}

}  // namespace predict::llm
