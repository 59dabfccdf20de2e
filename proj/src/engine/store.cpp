#include "predict/engine/store.hpp"

namespace predict::engine {

void ExampleStore::append(StoredExample e) {
  auto key = std::make_pair(e.task.user_id, e.task.context_id);
  by_key_[key].push_back(std::move(e));
}

std::vector<StoredExample> ExampleStore::retrieve(const std::string& user_id, const std::string& context_id,
                                                  int k) const {
  std::vector<StoredExample> out;
  auto it = by_key_.find({user_id, context_id});
  if (it == by_key_.end() || k <= 0) return out;
  const auto& items = it->second;
  for (auto r = items.rbegin(); r != items.rend() && static_cast<int>(out.size()) < k; ++r) out.push_back(*r);
  return out;
}

std::size_t ExampleStore::size(const std::string& user_id, const std::string& context_id) const {
  auto it = by_key_.find({user_id, context_id});
  return it == by_key_.end() ? 0 : it->second.size();
}

}  // namespace predict::engine
