#include "predict/plume/agents.hpp"

#include "predict/core/error.hpp"
#include "predict/core/text.hpp"
#include "predict/llm/parse.hpp"

namespace predict::plume {

llm::Bindings task_bindings(const WritingTask& task) {
  const auto w = task_words(task.kind);
  return {{"output_noun", w.output_noun}, {"input_noun", w.input_noun},   {"input_title", w.input_title},
          {"input_marker", w.input_marker}, {"determiner", w.determiner}, {"task_verb", w.task_verb},
          {"task_content", task.content}};
}

namespace {

WritingSample fenced(llm::LlmSession& s, llm::ChatRequest req, std::string_view tag, const WriteOptions& opts,
                     Author author) {
  req.tag = std::string(tag);
  req.temperature = opts.temperature;
  req.max_tokens = opts.max_tokens;
  auto body = s.ask(req, [](const std::string& t) { return llm::extract_triple_quoted(t); });
  if (!body) throw ExtractionError("no triple-quoted " + std::string(tag) + " output after re-ask");
  return {std::move(*body), author};
}

}  // namespace

WritingSample synthetic_user_write(llm::LlmSession& s, const WritingTask& task, const PreferenceSet& true_prefs,
                                   const WriteOptions& opts) {
  auto b = task_bindings(task);
  b["preferences"] = true_prefs.rendered();
  return fenced(s, llm::render_template("synthetic_user", b), llm::tag::user_write, opts, Author::user);
}

WritingSample agent_write(llm::LlmSession& s, const WritingTask& task, const PreferenceSet& prefs,
                          const WriteOptions& opts, Author author) {
  auto b = task_bindings(task);
  b["preferences"] = prefs.rendered();
  const auto tag = author == Author::candidate ? llm::tag::regenerate : llm::tag::generate;
  return fenced(s, llm::render_template("agent_write", b), tag, opts, author);
}

WritingSample no_preference_write(llm::LlmSession& s, const WritingTask& task, const WriteOptions& opts) {
  auto req = llm::render_template("no_preference", task_bindings(task));
  req.tag = std::string(llm::tag::generate);
  req.temperature = opts.temperature;
  req.max_tokens = opts.max_tokens;
  auto resp = s.call(req);
  try {
    return {llm::extract_triple_quoted(resp.text), Author::agent};
  } catch (const FenceNotFound&) {
    return {text::trim(resp.text), Author::agent};
  }
}

std::string render_icl_examples(const std::vector<IclExample>& examples) {
  std::string out;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    auto b = task_bindings(examples[i].task);
    b["index"] = std::to_string(i);
    b["completion"] = examples[i].completion;
    if (i) out += "\n\n";
    out += llm::render_text(llm::find_prompt("icl_example").user, b);
  }
  return out;
}

WritingSample icl_write(llm::LlmSession& s, const WritingTask& task, const std::vector<IclExample>& examples,
                        const WriteOptions& opts) {
  auto b = task_bindings(task);
  b["examples"] = render_icl_examples(examples);
  return fenced(s, llm::render_template("icl", b), llm::tag::generate, opts, Author::agent);
}

WritingSample icl_preferences_write(llm::LlmSession& s, const WritingTask& task,
                                    const std::vector<IclExample>& examples, const PreferenceSet& prefs,
                                    const WriteOptions& opts) {
  auto b = task_bindings(task);
  b["examples"] = render_icl_examples(examples);
  b["preferences"] = prefs.rendered();
  return fenced(s, llm::render_template("icl_preferences", b), llm::tag::generate, opts, Author::agent);
}

}  // namespace predict::plume
